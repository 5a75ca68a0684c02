#pragma once

#include "hearth/camera.hpp"
#include "hearth/spatial.hpp"

#include <string>
#include <vector>

namespace hearth {

inline constexpr double kDefaultVisibilityDistance = 1.5;

struct ObjectVisibility {
    std::string objectId;
    bool visible = false;
    bool interactable = false;
    /// Agent center to the nearest point of the object's world box.
    double distance = 0.0;
    bool operator==(const ObjectVisibility&) const = default;
};

/// One entry per interactable object instance, in Scene::objects order.
struct VisibilityReport {
    std::vector<ObjectVisibility> entries;

    const ObjectVisibility* find(std::string_view id) const;
    bool operator==(const VisibilityReport&) const = default;
};

/// In-frustum, within distance, and a thick ray aimed at the nearest
/// in-frustum point of the object reaches it with transparent colliders
/// ignored. When the ray toward the whole box misses, rays toward each of
/// the object's own colliders are tried. Held objects are never visible.
VisibilityReport compute_visibility(const Scene& scene, const Camera& camera, const Bvh& bvh,
                                    double visibilityDistance = kDefaultVisibilityDistance,
                                    const ObjectClassCatalog& catalog = default_catalog());

/// Re-casts the same ray for every visible object, this time with
/// transparent colliders blocking.
VisibilityReport compute_interactability(const Scene& scene, const Camera& camera, const Bvh& bvh,
                                         VisibilityReport report,
                                         double visibilityDistance = kDefaultVisibilityDistance,
                                         const ObjectClassCatalog& catalog = default_catalog());

/// Both passes for the agent's own camera at the given resolution.
VisibilityReport compute_report(const Scene& scene, const Bvh& bvh, int width, int height,
                                double visibilityDistance = kDefaultVisibilityDistance,
                                const ObjectClassCatalog& catalog = default_catalog());

/// Thick visibility ray from the camera toward the nearest in-frustum point
/// of `box`, or none when the box is outside the frustum.
std::optional<Ray> visibility_ray(const Camera& camera, const Aabb& box, double visibilityDistance);

} // namespace hearth
