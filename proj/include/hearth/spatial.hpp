#pragma once

#include "hearth/camera.hpp"
#include "hearth/scene.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hearth {

struct Ray {
    Vec3 origin;
    Vec3 direction; ///< unit length
    double maxLength = 1.0;
    double radius = 0.0; ///< 0 for a thin ray, otherwise a sphere cast
};

struct CastHit {
    std::string objectId;
    double t = 0.0;
    Vec3 point;
    bool operator==(const CastHit&) const = default;
};

/// Equal-t tie window; ties resolve to the lexicographically smallest id.
inline constexpr double kTieEpsilon = 1e-9;

enum class ColliderKind : std::uint8_t { Wall, Object, Prop };

struct Collider {
    Aabb box;
    std::string ownerId;
    ColliderKind kind = ColliderKind::Wall;
    bool transparent = false;
    int instance = -1; ///< index into Scene::objects or Scene::props, -1 for walls
};

/// Every enabled collider of a scene snapshot: walls, then objects, then
/// props. Held objects contribute nothing.
std::vector<Collider> gather_colliders(const Scene& scene, const ObjectClassCatalog& catalog = default_catalog());

struct CastFilter {
    const std::set<std::string>* ignore = nullptr;
    bool passTransparent = false;
    /// Transparent colliders owned by this id are never skipped.
    std::string_view keepId;

    bool skips(const Collider& c) const
    {
        if (passTransparent && c.transparent && c.ownerId != keepId) return true;
        return ignore && ignore->count(c.ownerId) != 0;
    }
};

/// Hit against a collider index, before translation into a CastHit.
struct RawHit {
    int collider = -1;
    double t = 0.0;
};

// --- Primitive tests (shared by the BVH and the brute-force scan) ---------

/// Entry parameter of a thin or thick ray into a box, clipped to
/// [0, maxLength]. Thick rays test against the box's Minkowski sum with a
/// sphere, decomposed into three slabs, twelve edge cylinders and eight
/// corner spheres.
std::optional<double> ray_box_entry(const Ray& ray, const Aabb& box);

/// Thin-ray slab test returning the [t0, t1] interval (unclipped).
bool slab_interval(const Vec3& origin, const Vec3& dir, const Aabb& box, double& t0, double& t1);

/// Overlap predicate for the swept agent capsule inflated by the skin.
bool capsule_overlaps(const AgentState& agent, const Aabb& box);

/// Largest free distance along `dir` (unit) before the inflated capsule
/// touches `box`, capped at `limit`.
double capsule_free_distance(const AgentState& agent, const Vec3& dir, double limit, const Aabb& box);

// --- Bounding volume hierarchy ---------------------------------------------

class Bvh {
public:
    Bvh() = default;
    explicit Bvh(std::vector<Collider> colliders);

    const std::vector<Collider>& colliders() const { return colliders_; }
    bool empty() const { return colliders_.empty(); }

    std::optional<RawHit> cast_raw(const Ray& ray, const CastFilter& filter = {}) const;
    std::optional<CastHit> cast(const Ray& ray, const CastFilter& filter = {}) const;
    double sweep_capsule(const AgentState& agent, const Vec3& displacement) const;
    /// Indices of colliders whose boxes intersect the camera frustum.
    std::vector<int> frustum_query(const Camera& camera) const;

    std::size_t node_count() const { return nodes_.size(); }

private:
    struct Node {
        Aabb bounds;
        int left = -1;  ///< child index, or -1 for a leaf
        int right = -1;
        int first = 0;  ///< leaf range into order_
        int count = 0;
    };

    int build(int first, int count);

    std::vector<Collider> colliders_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
};

Bvh build_bvh(const Scene& scene, const ObjectClassCatalog& catalog = default_catalog());

/// Straight scans over the collider list. Kept as the oracle for the BVH.
namespace brute {
std::optional<RawHit> cast_raw(std::span<const Collider> colliders, const Ray& ray, const CastFilter& filter = {});
std::optional<CastHit> cast(std::span<const Collider> colliders, const Ray& ray, const CastFilter& filter = {});
double sweep_capsule(std::span<const Collider> colliders, const AgentState& agent, const Vec3& displacement);
std::vector<int> frustum_query(std::span<const Collider> colliders, const Camera& camera);
} // namespace brute

// --- Scene-level entry points ----------------------------------------------

std::optional<CastHit> cast(const Ray& ray, const Scene& scene, const std::set<std::string>& ignore,
                            bool passTransparent);

/// Max free distance in [0, |displacement|] for the agent capsule.
double sweep_capsule(const AgentState& agent, const Vec3& displacement, const Scene& scene);

/// True iff the box intersects the view frustum; touching counts.
bool frustum_contains(const Camera& camera, const Aabb& box);

/// Point of (box intersected with the frustum) nearest to the camera.
std::optional<Vec3> nearest_point_in_frustum(const Camera& camera, const Aabb& box);

inline constexpr double kPlacementPitch = 0.05;

/// First placement (origin position) for an object whose origin-relative
/// world box is `objBox`, scanning the receptacle interior on the placement
/// grid from back-left to front-right in the receptacle's own frame.
/// Candidates must not overlap any other collider by more than the skin.
std::optional<Vec3> fit_in_receptacle(const Aabb& objBox, const ObjectInstance& receptacle, const Scene& scene,
                                      std::string_view ignoreId = {},
                                      const ObjectClassCatalog& catalog = default_catalog());

} // namespace hearth
