#pragma once

#include "hearth/catalog.hpp"
#include "hearth/geometry.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hearth {

/// Overlap tolerance shared by every collision and containment test.
inline constexpr double kSkin = 0.005;

enum class RoomCategory { Kitchen, LivingRoom, Bedroom, Bathroom };

std::string_view to_string(RoomCategory c);
std::optional<RoomCategory> parse_room_category(std::string_view s);

struct ObjectInstance {
    std::string objectId;
    std::string category;
    int variantIndex = 0;
    Vec3 position;
    int rotationYaw = 0;
    bool isOpen = false;
    bool isToggled = false;
    bool isSliced = false;
    bool isPickedUp = false;
    std::optional<std::string> parentReceptacle;
    std::vector<std::string> containedIds;
    Vec3 velocity;

    bool operator==(const ObjectInstance&) const = default;
};

struct AgentState {
    int agentId = 0;
    Vec3 position;
    int rotationYaw = 0;
    int cameraHorizon = 0;
    std::optional<std::string> heldObjectId;
    double capsuleRadius = 0.2;
    double capsuleHeight = 1.8;

    bool operator==(const AgentState&) const = default;

    /// Capsule axis midpoint; distances for visibility are measured from here.
    Vec3 center() const { return position + Vec3{0, capsuleHeight / 2, 0}; }
};

struct Scene {
    int sceneNumber = 1;
    RoomCategory roomCategory = RoomCategory::Kitchen;
    Aabb floorBounds;
    std::vector<Aabb> walls;
    std::vector<ObjectInstance> objects;
    std::vector<ObjectInstance> props;
    AgentState agent;
    std::uint64_t randomizeSeed = 0;

    bool operator==(const Scene&) const = default;

    ObjectInstance* find_object(std::string_view id);
    const ObjectInstance* find_object(std::string_view id) const;
};

// --- Geometry derived from class + instance state -------------------------

/// Local extents scaled by the instance's variant, rotated, and translated.
Aabb to_world(const Aabb& local, const ObjectInstance& inst, const ObjectClass& cls);

/// Collision boxes in world space. Receptacles are shells around their
/// interior; open doors sit at their open extents. Empty while held.
std::vector<Aabb> collider_boxes(const ObjectInstance& inst, const ObjectClass& cls);

/// Union of the collision geometry (computed even while the object is held).
Aabb world_bounds(const ObjectInstance& inst, const ObjectClass& cls);

std::optional<Aabb> interior_world(const ObjectInstance& inst, const ObjectClass& cls);

/// Distance between the agent capsule axis and a box, minus nothing: callers
/// compare against the radius.
double capsule_axis_distance(const AgentState& agent, const Aabb& box);

// --- Validation ------------------------------------------------------------

enum class ViolationCode {
    InvalidSceneNumber,
    InvalidBounds,
    NonFinite,
    DuplicateId,
    UnknownCategory,
    VariantOutOfRange,
    InvalidYaw,
    IllegalFlag,
    BrokenReference,
    ContainmentCycle,
    ContainmentViolation,
    HeldState,
    OutOfBounds,
    Interpenetration,
    AgentOverlap,
    InvalidHorizon,
    InvalidAgentShape,
};

std::string_view to_string(ViolationCode c);

struct Violation {
    ViolationCode code;
    std::string path;
    std::string message;
};

std::vector<Violation> validate_scene(const Scene& scene,
                                      const ObjectClassCatalog& catalog = default_catalog());

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Parses and validates scene-format text.
Scene load_scene(std::string_view text, const ObjectClassCatalog& catalog = default_catalog());

/// Canonical text: sorted keys, two-space indent, one scalar per line,
/// shortest round-trip decimal formatting. Throws ValidationError unless the
/// scene validates.
std::string serialize_scene(const Scene& scene, const ObjectClassCatalog& catalog = default_catalog());

/// Same bytes as serialize_scene without the validation pass.
std::string canonical_scene_text(const Scene& scene);

} // namespace hearth
