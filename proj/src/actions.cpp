#include "hearth/actions.hpp"

#include "hearth/scene_gen.hpp"

#include <algorithm>
#include <cmath>

namespace hearth {

std::string_view to_string(ErrorCode c)
{
    switch (c) {
    case ErrorCode::None: return "None";
    case ErrorCode::InvalidAction: return "InvalidAction";
    case ErrorCode::InvalidObjectId: return "InvalidObjectId";
    case ErrorCode::NotVisible: return "NotVisible";
    case ErrorCode::NotInteractable: return "NotInteractable";
    case ErrorCode::NotOpenable: return "NotOpenable";
    case ErrorCode::AlreadyOpen: return "AlreadyOpen";
    case ErrorCode::AlreadyClosed: return "AlreadyClosed";
    case ErrorCode::NotPickupable: return "NotPickupable";
    case ErrorCode::HandFull: return "HandFull";
    case ErrorCode::HandEmpty: return "HandEmpty";
    case ErrorCode::NoSpace: return "NoSpace";
    case ErrorCode::ClosedReceptacle: return "ClosedReceptacle";
    case ErrorCode::NotToggleable: return "NotToggleable";
    case ErrorCode::AlreadyToggled: return "AlreadyToggled";
    case ErrorCode::NotSliceable: return "NotSliceable";
    case ErrorCode::AlreadySliced: return "AlreadySliced";
    case ErrorCode::NotMovable: return "NotMovable";
    case ErrorCode::Blocked: return "Blocked";
    case ErrorCode::OutOfRange: return "OutOfRange";
    }
    return "InvalidAction";
}

bool is_known_action(std::string_view name)
{
    return std::find(std::begin(kActionNames), std::end(kActionNames), name) != std::end(kActionNames);
}

// --- Wire schema -------------------------------------------------------------

namespace {

Vec3 read_wire_vec3(const Json& j, const char* key)
{
    if (!j.is_object()) throw SchemaError(std::string(key) + ": expected {x, y, z}");
    Vec3 v;
    const char* names[] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k) {
        auto it = j.find(names[k]);
        if (it == j.end() || !it->is_number()) throw SchemaError(std::string(key) + "." + names[k] + ": expected number");
        v[k] = it->get<double>();
    }
    return v;
}

Json wire_vec3(const Vec3& v) { return Json{{"x", v.x}, {"y", v.y}, {"z", v.z}}; }

template <typename T, typename Read>
void read_opt(const Json& j, const char* key, std::optional<T>& out, Read read)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return;
    out = read(*it);
}

bool requires_object(std::string_view a)
{
    return a == "OpenObject" || a == "CloseObject" || a == "PickupObject" || a == "ToggleObjectOn" ||
           a == "ToggleObjectOff" || a == "SliceObject" || a == "ApplyForce";
}

} // namespace

ActionRequest parse_action_request(const Json& j)
{
    if (!j.is_object()) throw SchemaError("action request must be an object");
    ActionRequest r;
    auto act = j.find("action");
    if (act == j.end() || !act->is_string()) throw SchemaError("action: expected string");
    r.action = act->get<std::string>();

    auto str = [](const char* key) {
        return [key](const Json& v) {
            if (!v.is_string()) throw SchemaError(std::string(key) + ": expected string");
            return v.get<std::string>();
        };
    };
    auto num = [](const char* key) {
        return [key](const Json& v) {
            if (!v.is_number()) throw SchemaError(std::string(key) + ": expected number");
            return v.get<double>();
        };
    };
    auto integer = [](const char* key) {
        return [key](const Json& v) {
            if (!v.is_number_integer()) throw SchemaError(std::string(key) + ": expected integer");
            auto x = v.get<long long>();
            if (x < -1000000000LL || x > 1000000000LL) throw SchemaError(std::string(key) + ": out of range");
            return static_cast<int>(x);
        };
    };
    auto boolean = [](const char* key) {
        return [key](const Json& v) {
            if (!v.is_boolean()) throw SchemaError(std::string(key) + ": expected boolean");
            return v.get<bool>();
        };
    };
    auto vec = [](const char* key) { return [key](const Json& v) { return read_wire_vec3(v, key); }; };

    read_opt(j, "objectId", r.objectId, str("objectId"));
    read_opt(j, "receptacleId", r.receptacleId, str("receptacleId"));
    read_opt(j, "magnitude", r.magnitude, num("magnitude"));
    read_opt(j, "direction", r.direction, vec("direction"));
    read_opt(j, "position", r.position, vec("position"));
    read_opt(j, "rotation", r.rotation, integer("rotation"));
    read_opt(j, "horizon", r.horizon, integer("horizon"));
    read_opt(j, "seed", r.seed, [](const Json& v) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            throw SchemaError("seed: expected non-negative integer");
        }
        return v.get<std::uint64_t>();
    });
    std::optional<int> agent;
    read_opt(j, "agentId", agent, integer("agentId"));
    r.agentId = agent.value_or(0);
    read_opt(j, "scene", r.scene, integer("scene"));
    read_opt(j, "gridSize", r.gridSize, num("gridSize"));
    read_opt(j, "visibilityDistance", r.visibilityDistance, num("visibilityDistance"));
    read_opt(j, "width", r.width, integer("width"));
    read_opt(j, "height", r.height, integer("height"));
    read_opt(j, "renderDepth", r.renderDepth, boolean("renderDepth"));
    read_opt(j, "renderInstanceIds", r.renderInstanceIds, boolean("renderInstanceIds"));
    read_opt(j, "maxSettleSteps", r.maxSettleSteps, integer("maxSettleSteps"));

    if (auto err = check_schema(r)) throw SchemaError(*err);
    return r;
}

ActionRequest parse_action_request(std::string_view text)
{
    Json j = Json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded()) throw SchemaError("body is not valid JSON");
    return parse_action_request(j);
}

Json action_to_json(const ActionRequest& r)
{
    Json j{{"action", r.action}};
    if (r.objectId) j["objectId"] = *r.objectId;
    if (r.receptacleId) j["receptacleId"] = *r.receptacleId;
    if (r.magnitude) j["magnitude"] = *r.magnitude;
    if (r.direction) j["direction"] = wire_vec3(*r.direction);
    if (r.position) j["position"] = wire_vec3(*r.position);
    if (r.rotation) j["rotation"] = *r.rotation;
    if (r.horizon) j["horizon"] = *r.horizon;
    if (r.seed) j["seed"] = *r.seed;
    if (r.agentId != 0) j["agentId"] = r.agentId;
    if (r.scene) j["scene"] = *r.scene;
    if (r.gridSize) j["gridSize"] = *r.gridSize;
    if (r.visibilityDistance) j["visibilityDistance"] = *r.visibilityDistance;
    if (r.width) j["width"] = *r.width;
    if (r.height) j["height"] = *r.height;
    if (r.renderDepth) j["renderDepth"] = *r.renderDepth;
    if (r.renderInstanceIds) j["renderInstanceIds"] = *r.renderInstanceIds;
    if (r.maxSettleSteps) j["maxSettleSteps"] = *r.maxSettleSteps;
    return j;
}

std::optional<std::string> check_schema(const ActionRequest& r)
{
    if (r.action.empty()) return "action: must not be empty";
    if (r.agentId != 0) return "agentId: only agent 0 is simulated";
    if (requires_object(r.action) && !r.objectId) return r.action + " requires objectId";
    if (r.action == "PutObject" && !r.receptacleId) return "PutObject requires receptacleId";
    if (r.action == "ApplyForce" && (!r.magnitude || !r.direction)) return "ApplyForce requires magnitude and direction";
    return std::nullopt;
}

std::optional<std::string> check_config(const SessionConfig& c)
{
    if (!(c.gridSize >= 0.05 && c.gridSize <= 1.0)) return "gridSize must be in [0.05, 1.0]";
    if (!(c.visibilityDistance > 0.0 && std::isfinite(c.visibilityDistance))) return "visibilityDistance must be > 0";
    if (c.width < 64 || c.height < 64 || c.width > 4096 || c.height > 4096) {
        return "width and height must be in [64, 4096]";
    }
    if (c.physics.maxSettleSteps < 1 || c.physics.maxSettleSteps > 100000) return "maxSettleSteps must be >= 1";
    return std::nullopt;
}

// --- Simulation ----------------------------------------------------------------

namespace {

ActionOutcome ok() { return {}; }

ActionOutcome fail(ErrorCode code, std::string message)
{
    return {false, code, std::move(message)};
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// Colliders of `boxes` (owned by `owner`) against everything else and the
// agent capsule.
std::optional<std::string> placement_conflict(const Scene& s, const std::string& owner, const std::vector<Aabb>& boxes,
                                              const ObjectClassCatalog& catalog)
{
    for (const auto& c : gather_colliders(s, catalog)) {
        if (c.ownerId == owner) continue;
        for (const auto& b : boxes) {
            if (penetration_depth(b, c.box) > kSkin) return "would intersect " + c.ownerId;
        }
    }
    for (const auto& b : boxes) {
        if (s.agent.capsuleRadius - capsule_axis_distance(s.agent, b) > kSkin) return "would intersect the agent";
    }
    return std::nullopt;
}

void detach(Scene& s, ObjectInstance& o)
{
    if (!o.parentReceptacle) return;
    if (ObjectInstance* p = s.find_object(*o.parentReceptacle)) std::erase(p->containedIds, o.objectId);
    o.parentReceptacle.reset();
}

void attach(Scene& s, ObjectInstance& o, const std::string& receptacleId)
{
    o.parentReceptacle = receptacleId;
    ObjectInstance* r = s.find_object(receptacleId);
    r->containedIds.push_back(o.objectId);
    std::sort(r->containedIds.begin(), r->containedIds.end());
}

} // namespace

void update_held_pose(Scene& scene, const ObjectClassCatalog& catalog)
{
    if (!scene.agent.heldObjectId) return;
    ObjectInstance* o = scene.find_object(*scene.agent.heldObjectId);
    if (!o) return;
    const AgentState& a = scene.agent;
    Vec3 hand = a.position + Vec3{0, kEyeHeight - kHandDrop, 0} + yaw_forward(a.rotationYaw) * kHandForward;
    ObjectInstance probe = *o;
    probe.position = {};
    Aabb b = world_bounds(probe, catalog.at(o->category));
    o->position = hand - b.center();
}

Simulation::Simulation(int sceneNumber, SessionConfig config, const ObjectClassCatalog& catalog)
    : Simulation(generate_scene(sceneNumber, catalog), config, catalog)
{}

Simulation::Simulation(Scene scene, SessionConfig config, const ObjectClassCatalog& catalog)
    : catalog_(&catalog), scene_(std::move(scene)), config_(config)
{
    if (auto err = check_config(config_)) throw OutOfRangeError("OutOfRange: " + *err);
    refresh();
}

Camera Simulation::camera() const
{
    return Camera::from_agent(scene_.agent, config_.width, config_.height, config_.visibilityDistance);
}

FrameSet Simulation::render(int threads) const
{
    if (work_) work_->fetch_add(1);
    RenderOptions opts{config_.renderDepth, config_.renderInstanceIds};
    if (threads == 1) return render_frame_serial(scene_, camera(), bvh_, opts, *catalog_);
    return render_frame(scene_, camera(), bvh_, opts, threads, *catalog_);
}

void Simulation::refresh()
{
    bvh_ = build_bvh(scene_, *catalog_);
    report_ = compute_report(scene_, bvh_, config_.width, config_.height, config_.visibilityDistance, *catalog_);
}

ActionOutcome Simulation::step(const ActionRequest& req)
{
    if (work_) work_->fetch_add(1);
    lastAction_ = req.action;
    ActionOutcome out;
    if (auto err = check_schema(req)) {
        out = fail(ErrorCode::InvalidAction, *err);
    } else if (!is_known_action(req.action)) {
        out = fail(ErrorCode::InvalidAction, "unknown action '" + req.action + "'");
    } else {
        Scene s = scene_;
        SessionConfig cfg = config_;
        try {
            out = dispatch(req, s, cfg);
        } catch (const std::exception& e) {
            out = fail(ErrorCode::InvalidAction, e.what());
        }
        if (out.success) {
            if (req.action != "Stop") {
                s = settle(std::move(s), cfg.physics, *catalog_).scene;
                update_held_pose(s, *catalog_);
            }
            scene_ = std::move(s);
            config_ = cfg;
            refresh();
        }
    }
    lastOutcome_ = out;
    return out;
}

ActionOutcome Simulation::check_target(const std::string& id) const
{
    const ObjectVisibility* v = report_.find(id);
    if (!v || !scene_.find_object(id)) return fail(ErrorCode::InvalidObjectId, "no object '" + id + "'");
    if (v->distance > config_.visibilityDistance) {
        return fail(ErrorCode::NotInteractable, id + " is beyond the visibility distance");
    }
    if (!v->visible) return fail(ErrorCode::NotVisible, id + " is not visible");
    if (!v->interactable) return fail(ErrorCode::NotInteractable, id + " is obstructed");
    return ok();
}

ActionOutcome Simulation::dispatch(const ActionRequest& req, Scene& s, SessionConfig& cfg)
{
    const std::string& a = req.action;
    AgentState& agent = s.agent;
    if (a == "Stop") return ok();
    if (a == "Initialize" || a == "Reset") {
        if (a == "Initialize") {
            if (req.gridSize) cfg.gridSize = *req.gridSize;
            if (req.visibilityDistance) cfg.visibilityDistance = *req.visibilityDistance;
            if (req.width) cfg.width = *req.width;
            if (req.height) cfg.height = *req.height;
            if (req.renderDepth) cfg.renderDepth = *req.renderDepth;
            if (req.renderInstanceIds) cfg.renderInstanceIds = *req.renderInstanceIds;
            if (req.maxSettleSteps) cfg.physics.maxSettleSteps = *req.maxSettleSteps;
            if (auto err = check_config(cfg)) return fail(ErrorCode::OutOfRange, *err);
        }
        if (a == "Reset" || req.scene) {
            int n = req.scene.value_or(s.sceneNumber);
            if (n < 1 || n > kSceneCount) return fail(ErrorCode::OutOfRange, "scene must be in [1, 120]");
            s = generate_scene(n, *catalog_);
        }
        return ok();
    }
    if (a == "RandomizeObjects") {
        auto r = randomize_objects(s, req.seed.value_or(0), *catalog_);
        if (!r.ok) {
            std::string ids;
            for (const auto& f : r.failures) ids += (ids.empty() ? "" : ", ") + f;
            return fail(ErrorCode::NoSpace, "no receptacle fits: " + ids);
        }
        s = std::move(r.scene);
        return ok();
    }
    const Vec3 fwd = yaw_forward(agent.rotationYaw);
    const Vec3 right = yaw_right(agent.rotationYaw);
    if (a == "MoveAhead") return move(req, s, fwd);
    if (a == "MoveBack") return move(req, s, -fwd);
    if (a == "MoveRight") return move(req, s, right);
    if (a == "MoveLeft") return move(req, s, -right);
    if (a == "RotateRight" || a == "RotateLeft") {
        agent.rotationYaw = (agent.rotationYaw + (a == "RotateRight" ? 90 : 270)) % 360;
        return ok();
    }
    if (a == "LookUp" || a == "LookDown") {
        int h = agent.cameraHorizon + (a == "LookDown" ? 30 : -30);
        if (h < kMinHorizon || h > kMaxHorizon) return fail(ErrorCode::OutOfRange, "camera horizon limit reached");
        agent.cameraHorizon = h;
        return ok();
    }
    if (a == "Teleport") return teleport(req, s);
    if (a == "OpenObject") return open_close(req, s, true);
    if (a == "CloseObject") return open_close(req, s, false);
    if (a == "PickupObject") return pickup(req, s);
    if (a == "PutObject") return put(req, s);
    if (a == "ToggleObjectOn") return toggle(req, s, true);
    if (a == "ToggleObjectOff") return toggle(req, s, false);
    if (a == "SliceObject") return slice(req, s);
    if (a == "ApplyForce") return apply_force(req, s);
    if (a == "ThrowObject") return throw_object(req, s);
    return fail(ErrorCode::InvalidAction, "unknown action '" + a + "'");
}

ActionOutcome Simulation::move(const ActionRequest& req, Scene& s, const Vec3& dir)
{
    double mag = req.magnitude.value_or(config_.gridSize);
    if (!(mag > 0.0 && std::isfinite(mag))) return fail(ErrorCode::OutOfRange, "magnitude must be > 0");
    double free = bvh_.sweep_capsule(s.agent, dir * mag);
    if (free < mag) return fail(ErrorCode::Blocked, "path blocked after " + std::to_string(free) + " m");
    s.agent.position += dir * mag;
    return ok();
}

ActionOutcome Simulation::teleport(const ActionRequest& req, Scene& s)
{
    AgentState target = s.agent;
    if (req.position) {
        if (!req.position->finite()) return fail(ErrorCode::OutOfRange, "position must be finite");
        target.position = {req.position->x, 0.0, req.position->z};
    }
    if (req.rotation) {
        if (!is_quantized_yaw(*req.rotation)) return fail(ErrorCode::OutOfRange, "rotation must be 0, 90, 180 or 270");
        target.rotationYaw = *req.rotation;
    }
    if (req.horizon) {
        if (*req.horizon % 30 != 0 || *req.horizon < kMinHorizon || *req.horizon > kMaxHorizon) {
            return fail(ErrorCode::OutOfRange, "horizon must be a multiple of 30 in [-30, 60]");
        }
        target.cameraHorizon = *req.horizon;
    }
    const Aabb& fb = s.floorBounds;
    const double r = target.capsuleRadius;
    if (target.position.x - r < fb.min.x || target.position.x + r > fb.max.x || target.position.z - r < fb.min.z ||
        target.position.z + r > fb.max.z) {
        return fail(ErrorCode::Blocked, "target pose leaves the floor");
    }
    for (const auto& c : bvh_.colliders()) {
        if (r - capsule_axis_distance(target, c.box) > kSkin) {
            return fail(ErrorCode::Blocked, "target pose intersects " + c.ownerId);
        }
    }
    s.agent = target;
    return ok();
}

ActionOutcome Simulation::open_close(const ActionRequest& req, Scene& s, bool open)
{
    const std::string& id = *req.objectId;
    if (auto r = check_target(id); !r.success) return r;
    ObjectInstance& o = *s.find_object(id);
    const ObjectClass& cls = catalog_->at(o.category);
    if (!cls.openable) return fail(ErrorCode::NotOpenable, id + " cannot be opened");
    if (o.isOpen == open) return fail(open ? ErrorCode::AlreadyOpen : ErrorCode::AlreadyClosed, id);
    ObjectInstance flipped = o;
    flipped.isOpen = open;
    if (auto conflict = placement_conflict(s, id, collider_boxes(flipped, cls), *catalog_)) {
        return fail(ErrorCode::Blocked, id + " " + *conflict);
    }
    o.isOpen = open;
    return ok();
}

ActionOutcome Simulation::pickup(const ActionRequest& req, Scene& s)
{
    const std::string& id = *req.objectId;
    if (auto r = check_target(id); !r.success) return r;
    ObjectInstance& o = *s.find_object(id);
    if (!catalog_->at(o.category).pickupable) return fail(ErrorCode::NotPickupable, id + " cannot be picked up");
    if (s.agent.heldObjectId) return fail(ErrorCode::HandFull, "already holding " + *s.agent.heldObjectId);
    detach(s, o);
    o.isPickedUp = true;
    o.velocity = {};
    s.agent.heldObjectId = id;
    return ok();
}

ActionOutcome Simulation::put(const ActionRequest& req, Scene& s)
{
    if (!s.agent.heldObjectId) return fail(ErrorCode::HandEmpty, "not holding anything");
    const std::string& rid = *req.receptacleId;
    if (auto r = check_target(rid); !r.success) return r;
    ObjectInstance& rec = *s.find_object(rid);
    const ObjectClass& rcls = catalog_->at(rec.category);
    if (!rcls.receptacle) return fail(ErrorCode::NoSpace, rid + " is not a receptacle");
    if (rcls.openable && !rec.isOpen) return fail(ErrorCode::ClosedReceptacle, rid + " is closed");
    ObjectInstance& held = *s.find_object(*s.agent.heldObjectId);
    ObjectInstance probe = held;
    probe.position = {};
    auto spot = fit_in_receptacle(world_bounds(probe, catalog_->at(held.category)), rec, s, held.objectId, *catalog_);
    if (!spot) return fail(ErrorCode::NoSpace, held.objectId + " does not fit in " + rid);
    held.position = *spot;
    held.isPickedUp = false;
    attach(s, held, rid);
    s.agent.heldObjectId.reset();
    return ok();
}

ActionOutcome Simulation::toggle(const ActionRequest& req, Scene& s, bool on)
{
    const std::string& id = *req.objectId;
    if (auto r = check_target(id); !r.success) return r;
    ObjectInstance& o = *s.find_object(id);
    if (!catalog_->at(o.category).toggleable) return fail(ErrorCode::NotToggleable, id + " cannot be toggled");
    if (o.isToggled == on) return fail(ErrorCode::AlreadyToggled, id + (on ? " is already on" : " is already off"));
    o.isToggled = on;
    return ok();
}

ActionOutcome Simulation::slice(const ActionRequest& req, Scene& s)
{
    const std::string& id = *req.objectId;
    if (auto r = check_target(id); !r.success) return r;
    auto it = std::find_if(s.objects.begin(), s.objects.end(), [&](const auto& o) { return o.objectId == id; });
    const ObjectClass& cls = catalog_->at(it->category);
    const ObjectClass* piece_cls = catalog_->find(sliced_category(it->category));
    if (!cls.sliceable || !cls.sliceCount || !piece_cls) return fail(ErrorCode::NotSliceable, id + " cannot be sliced");
    if (it->isSliced) return fail(ErrorCode::AlreadySliced, id);

    const ObjectInstance original = *it;
    const int n = *cls.sliceCount;
    std::string suffix = id.substr(id.rfind('_') + 1);
    double scale = cls.variants[static_cast<std::size_t>(original.variantIndex)].scale;
    const Aabb& c = cls.closedExtents;
    double slab = (c.max.x - c.min.x) / n;

    std::vector<ObjectInstance> pieces;
    for (int k = 0; k < n; ++k) {
        ObjectInstance p;
        p.objectId = piece_cls->category + "_" + suffix + "_" + std::to_string(k);
        if (s.find_object(p.objectId)) return fail(ErrorCode::AlreadySliced, p.objectId + " already exists");
        p.category = piece_cls->category;
        p.variantIndex = original.variantIndex;
        p.rotationYaw = original.rotationYaw;
        double offset = (c.min.x + (k + 0.5) * slab) * scale;
        p.position = original.position + rotate_yaw(Vec3{offset, 0, 0}, original.rotationYaw);
        p.parentReceptacle = original.parentReceptacle;
        pieces.push_back(std::move(p));
    }
    if (original.parentReceptacle) {
        auto& ids = s.find_object(*original.parentReceptacle)->containedIds;
        std::erase(ids, id);
        for (const auto& p : pieces) ids.push_back(p.objectId);
        std::sort(ids.begin(), ids.end());
    }
    it = s.objects.erase(it);
    s.objects.insert(it, pieces.begin(), pieces.end());
    return ok();
}

ActionOutcome Simulation::apply_force(const ActionRequest& req, Scene& s)
{
    const std::string& id = *req.objectId;
    if (!finite_nonneg(*req.magnitude)) return fail(ErrorCode::OutOfRange, "magnitude must be >= 0");
    const Vec3& d = *req.direction;
    if (!d.finite() || std::abs(length(d) - 1.0) > 1e-6) return fail(ErrorCode::OutOfRange, "direction must be unit length");
    if (auto r = check_target(id); !r.success) return r;
    ObjectInstance& o = *s.find_object(id);
    if (!catalog_->at(o.category).movable()) return fail(ErrorCode::NotMovable, id + " is static");
    apply_impulse(s, o, d, *req.magnitude, *catalog_);
    return ok();
}

ActionOutcome Simulation::throw_object(const ActionRequest& req, Scene& s)
{
    if (!s.agent.heldObjectId) return fail(ErrorCode::HandEmpty, "not holding anything");
    double mag = req.magnitude.value_or(0.0);
    if (!finite_nonneg(mag)) return fail(ErrorCode::OutOfRange, "magnitude must be >= 0");
    ObjectInstance& o = *s.find_object(*s.agent.heldObjectId);
    const ObjectClass& cls = catalog_->at(o.category);
    o.isPickedUp = false;
    // Long objects can reach back into the capsule from the carry pose;
    // release them just far enough ahead to clear it.
    Vec3 fwd = yaw_forward(s.agent.rotationYaw);
    double clearance = s.agent.capsuleRadius + 2 * kSkin;
    Aabb b = world_bounds(o, cls);
    Vec3 axis = s.agent.position;
    double near = std::min(dot(b.min - axis, fwd), dot(b.max - axis, fwd));
    if (near < clearance) o.position += fwd * (clearance - near);
    if (auto conflict = placement_conflict(s, o.objectId, collider_boxes(o, cls), *catalog_)) {
        return fail(ErrorCode::Blocked, o.objectId + " " + *conflict);
    }
    s.agent.heldObjectId.reset();
    apply_impulse(s, o, camera().forward(), mag, *catalog_);
    return ok();
}

} // namespace hearth
