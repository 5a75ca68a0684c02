#include "hearth/scene.hpp"

#include "hearth/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace hearth {

std::string_view to_string(RoomCategory c)
{
    switch (c) {
    case RoomCategory::Kitchen: return "kitchen";
    case RoomCategory::LivingRoom: return "livingroom";
    case RoomCategory::Bedroom: return "bedroom";
    case RoomCategory::Bathroom: return "bathroom";
    }
    return "kitchen";
}

std::optional<RoomCategory> parse_room_category(std::string_view s)
{
    if (s == "kitchen") return RoomCategory::Kitchen;
    if (s == "livingroom") return RoomCategory::LivingRoom;
    if (s == "bedroom") return RoomCategory::Bedroom;
    if (s == "bathroom") return RoomCategory::Bathroom;
    return std::nullopt;
}

ObjectInstance* Scene::find_object(std::string_view id)
{
    for (auto& o : objects) {
        if (o.objectId == id) return &o;
    }
    return nullptr;
}

const ObjectInstance* Scene::find_object(std::string_view id) const
{
    return const_cast<Scene*>(this)->find_object(id);
}

// --- Derived geometry ------------------------------------------------------

namespace {

double variant_scale(const ObjectInstance& inst, const ObjectClass& cls)
{
    if (inst.variantIndex < 0 || inst.variantIndex >= cls.numVariants()) return 1.0;
    return cls.variants[static_cast<std::size_t>(inst.variantIndex)].scale;
}

// Decomposes outer \ inner into at most six disjoint slabs. The +z slab is
// returned last so callers can drop it (an open door).
std::vector<Aabb> shell(const Aabb& o, const Aabb& i, bool keep_front)
{
    std::vector<Aabb> out;
    auto add = [&](const Vec3& lo, const Vec3& hi) {
        if (hi.x - lo.x > 0 && hi.y - lo.y > 0 && hi.z - lo.z > 0) out.push_back({lo, hi});
    };
    add(o.min, {o.max.x, i.min.y, o.max.z});
    add({o.min.x, i.max.y, o.min.z}, o.max);
    add({o.min.x, i.min.y, o.min.z}, {i.min.x, i.max.y, o.max.z});
    add({i.max.x, i.min.y, o.min.z}, {o.max.x, i.max.y, o.max.z});
    add({i.min.x, i.min.y, o.min.z}, {i.max.x, i.max.y, i.min.z});
    if (keep_front) add({i.min.x, i.min.y, i.max.z}, {i.max.x, i.max.y, o.max.z});
    return out;
}

std::vector<Aabb> local_colliders(const ObjectInstance& inst, const ObjectClass& cls)
{
    if (cls.receptacle && cls.interiorExtents) {
        bool door_open = cls.openable && inst.isOpen;
        auto boxes = shell(cls.closedExtents, *cls.interiorExtents, !door_open);
        if (door_open) boxes.push_back(*cls.openExtents);
        return boxes;
    }
    if (cls.openable && inst.isOpen && cls.openExtents) return {*cls.openExtents};
    return {cls.closedExtents};
}

} // namespace

Aabb to_world(const Aabb& local, const ObjectInstance& inst, const ObjectClass& cls)
{
    double s = variant_scale(inst, cls);
    Aabb scaled{local.min * s, local.max * s};
    return rotate_yaw(scaled, inst.rotationYaw).translated(inst.position);
}

std::vector<Aabb> collider_boxes(const ObjectInstance& inst, const ObjectClass& cls)
{
    if (inst.isPickedUp) return {};
    auto boxes = local_colliders(inst, cls);
    for (auto& b : boxes) b = to_world(b, inst, cls);
    return boxes;
}

Aabb world_bounds(const ObjectInstance& inst, const ObjectClass& cls)
{
    auto boxes = local_colliders(inst, cls);
    Aabb out = to_world(boxes.front(), inst, cls);
    for (std::size_t k = 1; k < boxes.size(); ++k) out = out.merged(to_world(boxes[k], inst, cls));
    return out;
}

std::optional<Aabb> interior_world(const ObjectInstance& inst, const ObjectClass& cls)
{
    if (!cls.interiorExtents) return std::nullopt;
    return to_world(*cls.interiorExtents, inst, cls);
}

double capsule_axis_distance(const AgentState& agent, const Aabb& box)
{
    double r = agent.capsuleRadius;
    double y0 = agent.position.y + r;
    double y1 = agent.position.y + agent.capsuleHeight - r;
    double dx = std::max({0.0, box.min.x - agent.position.x, agent.position.x - box.max.x});
    double dz = std::max({0.0, box.min.z - agent.position.z, agent.position.z - box.max.z});
    double dy = std::max({0.0, box.min.y - y1, y0 - box.max.y});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// --- Validation ------------------------------------------------------------

std::string_view to_string(ViolationCode c)
{
    switch (c) {
    case ViolationCode::InvalidSceneNumber: return "InvalidSceneNumber";
    case ViolationCode::InvalidBounds: return "InvalidBounds";
    case ViolationCode::NonFinite: return "NonFinite";
    case ViolationCode::DuplicateId: return "DuplicateId";
    case ViolationCode::UnknownCategory: return "UnknownCategory";
    case ViolationCode::VariantOutOfRange: return "VariantOutOfRange";
    case ViolationCode::InvalidYaw: return "InvalidYaw";
    case ViolationCode::IllegalFlag: return "IllegalFlag";
    case ViolationCode::BrokenReference: return "BrokenReference";
    case ViolationCode::ContainmentCycle: return "ContainmentCycle";
    case ViolationCode::ContainmentViolation: return "ContainmentViolation";
    case ViolationCode::HeldState: return "HeldState";
    case ViolationCode::OutOfBounds: return "OutOfBounds";
    case ViolationCode::Interpenetration: return "Interpenetration";
    case ViolationCode::AgentOverlap: return "AgentOverlap";
    case ViolationCode::InvalidHorizon: return "InvalidHorizon";
    case ViolationCode::InvalidAgentShape: return "InvalidAgentShape";
    }
    return "Unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& v)
{
    std::string msg = "scene failed validation:";
    for (const auto& x : v) {
        msg += "\n  ";
        msg += to_string(x.code);
        msg += " at ";
        msg += x.path;
        if (!x.message.empty()) msg += ": " + x.message;
    }
    return msg;
}

struct Owned {
    Aabb box;
    std::string owner;
};

} // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations))
{}

std::vector<Violation> validate_scene(const Scene& scene, const ObjectClassCatalog& catalog)
{
    std::vector<Violation> out;
    auto flag = [&](ViolationCode code, std::string path, std::string message = {}) {
        out.push_back({code, std::move(path), std::move(message)});
    };

    if (scene.sceneNumber < 1 || scene.sceneNumber > 120) {
        flag(ViolationCode::InvalidSceneNumber, "scene_number", "must be in [1, 120]");
    }
    if (!scene.floorBounds.finite() || !scene.floorBounds.valid()) {
        flag(ViolationCode::InvalidBounds, "floor_bounds");
    }
    for (std::size_t i = 0; i < scene.walls.size(); ++i) {
        if (!scene.walls[i].finite() || !scene.walls[i].valid()) {
            flag(ViolationCode::InvalidBounds, "walls[" + std::to_string(i) + "]");
        }
    }

    // Resolve classes and check per-instance invariants.
    std::unordered_map<std::string, std::string> id_paths;
    std::vector<Owned> colliders;
    for (std::size_t i = 0; i < scene.walls.size(); ++i) {
        colliders.push_back({scene.walls[i], "Wall_" + std::to_string(i)});
    }

    auto check_list = [&](const std::vector<ObjectInstance>& list, const char* name, bool interactable) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const ObjectInstance& o = list[i];
            std::string path = std::string(name) + "[" + std::to_string(i) + "]";
            if (!id_paths.emplace(o.objectId, path).second) {
                flag(ViolationCode::DuplicateId, path + ".object_id", "duplicate id '" + o.objectId + "'");
            }
            const ObjectClass* cls = catalog.find(o.category);
            if (!cls) {
                flag(ViolationCode::UnknownCategory, path + ".class", "unknown category '" + o.category + "'");
                continue;
            }
            if (cls->interactable != interactable) {
                flag(ViolationCode::IllegalFlag, path + ".class",
                     interactable ? "non-interactable class in objects list" : "interactable class in props list");
            }
            if (o.variantIndex < 0 || o.variantIndex >= cls->numVariants()) {
                flag(ViolationCode::VariantOutOfRange, path + ".variant",
                     "variant " + std::to_string(o.variantIndex) + " not in [0, " +
                         std::to_string(cls->numVariants()) + ")");
            }
            if (!is_quantized_yaw(o.rotationYaw)) flag(ViolationCode::InvalidYaw, path + ".rotation_yaw");
            if (!o.position.finite()) flag(ViolationCode::NonFinite, path + ".position");
            if (!o.velocity.finite()) flag(ViolationCode::NonFinite, path + ".velocity");
            if (o.isOpen && !cls->openable) flag(ViolationCode::IllegalFlag, path + ".is_open");
            if (o.isToggled && !cls->toggleable) flag(ViolationCode::IllegalFlag, path + ".is_toggled");
            if (o.isSliced && !cls->sliceable) flag(ViolationCode::IllegalFlag, path + ".is_sliced");
            if (o.isPickedUp && !cls->pickupable) flag(ViolationCode::IllegalFlag, path + ".is_picked_up");
            if (!o.containedIds.empty() && !cls->receptacle) {
                flag(ViolationCode::IllegalFlag, path + ".contained_ids", "class is not a receptacle");
            }
            if (!interactable && (o.parentReceptacle || !o.containedIds.empty() || o.isPickedUp)) {
                flag(ViolationCode::IllegalFlag, path, "props cannot take part in containment or be held");
            }
            if (o.isPickedUp) {
                if (o.parentReceptacle) flag(ViolationCode::HeldState, path + ".parent_receptacle");
                if (!(o.velocity == Vec3{})) flag(ViolationCode::HeldState, path + ".velocity");
                if (scene.agent.heldObjectId != o.objectId) {
                    flag(ViolationCode::HeldState, path + ".is_picked_up", "agent is not holding this object");
                }
                continue;
            }
            if (!o.position.finite()) continue;
            Aabb bounds = world_bounds(o, *cls);
            const Aabb& fb = scene.floorBounds;
            if (bounds.min.x < fb.min.x - kSkin || bounds.max.x > fb.max.x + kSkin ||
                bounds.min.z < fb.min.z - kSkin || bounds.max.z > fb.max.z + kSkin) {
                flag(ViolationCode::OutOfBounds, path + ".position", "object leaves the floor bounds");
            }
            for (const Aabb& b : collider_boxes(o, *cls)) colliders.push_back({b, o.objectId});
        }
    };
    check_list(scene.objects, "objects", true);
    check_list(scene.props, "props", false);

    // Containment links: both directions must agree and form a forest.
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        const ObjectInstance& o = scene.objects[i];
        std::string path = "objects[" + std::to_string(i) + "]";
        if (o.parentReceptacle) {
            const ObjectInstance* parent = scene.find_object(*o.parentReceptacle);
            const ObjectClass* pcls = parent ? catalog.find(parent->category) : nullptr;
            if (!parent || !pcls || !pcls->receptacle) {
                flag(ViolationCode::BrokenReference, path + ".parent_receptacle",
                     "'" + *o.parentReceptacle + "' is not a receptacle instance");
            } else if (std::find(parent->containedIds.begin(), parent->containedIds.end(), o.objectId) ==
                       parent->containedIds.end()) {
                flag(ViolationCode::BrokenReference, path + ".parent_receptacle",
                     "parent does not list this object");
            } else if (const ObjectClass* cls = catalog.find(o.category)) {
                auto interior = interior_world(*parent, *pcls);
                // An open door may swing past the receptacle; the body may not.
                ObjectInstance body = o;
                body.isOpen = false;
                if (interior && !interior->contains(world_bounds(body, *cls), kSkin)) {
                    flag(ViolationCode::ContainmentViolation, path + ".position",
                         "extends outside the interior of '" + parent->objectId + "'");
                }
            }
        }
        std::set<std::string> seen;
        for (std::size_t k = 0; k < o.containedIds.size(); ++k) {
            const std::string& cid = o.containedIds[k];
            const ObjectInstance* child = scene.find_object(cid);
            std::string cpath = path + ".contained_ids[" + std::to_string(k) + "]";
            if (!seen.insert(cid).second) flag(ViolationCode::DuplicateId, cpath);
            if (!child || child->parentReceptacle != o.objectId) {
                flag(ViolationCode::BrokenReference, cpath, "'" + cid + "' does not name this receptacle");
            }
        }
    }
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        const ObjectInstance* cur = &scene.objects[i];
        std::size_t hops = 0;
        while (cur && cur->parentReceptacle && hops <= scene.objects.size()) {
            cur = scene.find_object(*cur->parentReceptacle);
            ++hops;
        }
        if (hops > scene.objects.size()) {
            flag(ViolationCode::ContainmentCycle, "objects[" + std::to_string(i) + "].parent_receptacle");
        }
    }

    // Held object bookkeeping on the agent side.
    const AgentState& a = scene.agent;
    if (a.heldObjectId) {
        const ObjectInstance* held = scene.find_object(*a.heldObjectId);
        if (!held || !held->isPickedUp) {
            flag(ViolationCode::HeldState, "agent.held_object_id", "held object is missing or not picked up");
        }
    }

    for (std::size_t i = 0; i < colliders.size(); ++i) {
        for (std::size_t j = i + 1; j < colliders.size(); ++j) {
            if (colliders[i].owner == colliders[j].owner) continue;
            double depth = penetration_depth(colliders[i].box, colliders[j].box);
            if (depth > kSkin) {
                flag(ViolationCode::Interpenetration, colliders[i].owner + "/" + colliders[j].owner,
                     "penetration " + std::to_string(depth) + " m");
            }
        }
    }

    if (a.capsuleRadius != 0.2 || a.capsuleHeight != 1.8 || a.agentId != 0) {
        flag(ViolationCode::InvalidAgentShape, "agent", "capsule must be r=0.2 m, h=1.8 m, agent_id 0");
    }
    if (!a.position.finite()) flag(ViolationCode::NonFinite, "agent.position");
    if (!is_quantized_yaw(a.rotationYaw)) flag(ViolationCode::InvalidYaw, "agent.rotation_yaw");
    if (a.cameraHorizon % 30 != 0 || a.cameraHorizon < -30 || a.cameraHorizon > 60) {
        flag(ViolationCode::InvalidHorizon, "agent.camera_horizon", "must be a multiple of 30 in [-30, 60]");
    }
    const Aabb& fb = scene.floorBounds;
    if (a.position.x - a.capsuleRadius < fb.min.x - kSkin || a.position.x + a.capsuleRadius > fb.max.x + kSkin ||
        a.position.z - a.capsuleRadius < fb.min.z - kSkin || a.position.z + a.capsuleRadius > fb.max.z + kSkin) {
        flag(ViolationCode::OutOfBounds, "agent.position", "capsule leaves the floor bounds");
    }
    for (const auto& c : colliders) {
        double depth = a.capsuleRadius - capsule_axis_distance(a, c.box);
        if (depth > kSkin) {
            flag(ViolationCode::AgentOverlap, "agent.position",
                 "capsule penetrates '" + c.owner + "' by " + std::to_string(depth) + " m");
        }
    }
    return out;
}

// --- Text format -----------------------------------------------------------

namespace {

Json instance_to_json(const ObjectInstance& o)
{
    return Json{
        {"class", o.category},
        {"contained_ids", o.containedIds},
        {"is_open", o.isOpen},
        {"is_picked_up", o.isPickedUp},
        {"is_sliced", o.isSliced},
        {"is_toggled", o.isToggled},
        {"object_id", o.objectId},
        {"parent_receptacle", o.parentReceptacle ? Json(*o.parentReceptacle) : Json(nullptr)},
        {"position", to_json_array(o.position)},
        {"rotation_yaw", o.rotationYaw},
        {"variant", o.variantIndex},
        {"velocity", to_json_array(o.velocity)},
    };
}

ObjectInstance instance_from_json(const Json& j, const std::string& path)
{
    ObjectInstance o;
    o.category = read_string(require(j, "class"), path + ".class");
    const Json& contained = require(j, "contained_ids");
    if (!contained.is_array()) throw JsonFieldError(path + ".contained_ids: expected array");
    for (std::size_t k = 0; k < contained.size(); ++k) {
        o.containedIds.push_back(read_string(contained[k], path + ".contained_ids[" + std::to_string(k) + "]"));
    }
    o.isOpen = read_bool(require(j, "is_open"), path + ".is_open");
    o.isPickedUp = read_bool(require(j, "is_picked_up"), path + ".is_picked_up");
    o.isSliced = read_bool(require(j, "is_sliced"), path + ".is_sliced");
    o.isToggled = read_bool(require(j, "is_toggled"), path + ".is_toggled");
    o.objectId = read_string(require(j, "object_id"), path + ".object_id");
    o.parentReceptacle = read_optional_string(require(j, "parent_receptacle"), path + ".parent_receptacle");
    o.position = read_vec3(require(j, "position"), path + ".position");
    o.rotationYaw = read_int(require(j, "rotation_yaw"), path + ".rotation_yaw");
    o.variantIndex = read_int(require(j, "variant"), path + ".variant");
    o.velocity = read_vec3(require(j, "velocity"), path + ".velocity");
    return o;
}

Json scene_to_json(const Scene& s)
{
    Json walls = Json::array();
    for (const auto& w : s.walls) walls.push_back(to_json(w));
    Json objects = Json::array();
    for (const auto& o : s.objects) objects.push_back(instance_to_json(o));
    Json props = Json::array();
    for (const auto& o : s.props) props.push_back(instance_to_json(o));
    const AgentState& a = s.agent;
    Json agent{
        {"agent_id", a.agentId},
        {"camera_horizon", a.cameraHorizon},
        {"capsule_height", a.capsuleHeight},
        {"capsule_radius", a.capsuleRadius},
        {"held_object_id", a.heldObjectId ? Json(*a.heldObjectId) : Json(nullptr)},
        {"position", to_json_array(a.position)},
        {"rotation_yaw", a.rotationYaw},
    };
    return Json{
        {"agent", agent},
        {"floor_bounds", to_json(s.floorBounds)},
        {"objects", objects},
        {"props", props},
        {"room_category", std::string(to_string(s.roomCategory))},
        {"scene_number", s.sceneNumber},
        {"seed", s.randomizeSeed},
        {"walls", walls},
    };
}

Scene scene_from_json(const Json& j)
{
    Scene s;
    s.sceneNumber = read_int(require(j, "scene_number"), "scene_number");
    std::string room = read_string(require(j, "room_category"), "room_category");
    auto cat = parse_room_category(room);
    if (!cat) throw JsonFieldError("room_category: unknown value '" + room + "'");
    s.roomCategory = *cat;
    s.floorBounds = read_aabb(require(j, "floor_bounds"), "floor_bounds");
    const Json& walls = require(j, "walls");
    if (!walls.is_array()) throw JsonFieldError("walls: expected array");
    for (std::size_t i = 0; i < walls.size(); ++i) {
        s.walls.push_back(read_aabb(walls[i], "walls[" + std::to_string(i) + "]"));
    }
    for (const char* key : {"objects", "props"}) {
        const Json& list = require(j, key);
        if (!list.is_array()) throw JsonFieldError(std::string(key) + ": expected array");
        auto& dst = std::string_view(key) == "objects" ? s.objects : s.props;
        for (std::size_t i = 0; i < list.size(); ++i) {
            dst.push_back(instance_from_json(list[i], std::string(key) + "[" + std::to_string(i) + "]"));
        }
    }
    const Json& a = require(j, "agent");
    s.agent.agentId = read_int(require(a, "agent_id"), "agent.agent_id");
    s.agent.cameraHorizon = read_int(require(a, "camera_horizon"), "agent.camera_horizon");
    s.agent.capsuleHeight = read_number(require(a, "capsule_height"), "agent.capsule_height");
    s.agent.capsuleRadius = read_number(require(a, "capsule_radius"), "agent.capsule_radius");
    s.agent.heldObjectId = read_optional_string(require(a, "held_object_id"), "agent.held_object_id");
    s.agent.position = read_vec3(require(a, "position"), "agent.position");
    s.agent.rotationYaw = read_int(require(a, "rotation_yaw"), "agent.rotation_yaw");
    const Json& seed = require(j, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
        throw JsonFieldError("seed: expected unsigned integer");
    }
    s.randomizeSeed = seed.get<std::uint64_t>();
    return s;
}

} // namespace

Scene load_scene(std::string_view text, const ObjectClassCatalog& catalog)
{
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed scene text: ") + e.what());
    }
    Scene s;
    try {
        s = scene_from_json(j);
    } catch (const JsonFieldError& e) {
        throw ParseError(e.what());
    } catch (const Json::exception& e) {
        throw ParseError(e.what());
    }
    if (auto v = validate_scene(s, catalog); !v.empty()) throw ValidationError(std::move(v));
    return s;
}

std::string canonical_scene_text(const Scene& scene)
{
    return scene_to_json(scene).dump(2) + "\n";
}

std::string serialize_scene(const Scene& scene, const ObjectClassCatalog& catalog)
{
    if (auto v = validate_scene(scene, catalog); !v.empty()) throw ValidationError(std::move(v));
    return canonical_scene_text(scene);
}

} // namespace hearth
