#include "hearth/physics.hpp"

#include <algorithm>
#include <cmath>

namespace hearth {

namespace {

constexpr double kSupportTol = 1e-6;
constexpr double kSideOverlap = 1e-9;

struct Obstacle {
    Aabb box;
    const ObjectInstance* owner = nullptr;
};

bool participates(const ObjectInstance& o, const ObjectClass& cls)
{
    return cls.movable() && !o.isPickedUp && !o.parentReceptacle;
}

double overlap_1d(const Aabb& a, const Aabb& b, int k)
{
    return std::min(a.max[k], b.max[k]) - std::max(a.min[k], b.min[k]);
}

// Obstacles for one body: every other collider, plus the agent's capsule as
// its bounding column.
std::vector<Obstacle> obstacles_for(const Scene& scene, const ObjectInstance& body, const ObjectClassCatalog& catalog)
{
    std::vector<Obstacle> out;
    for (const Aabb& w : scene.walls) out.push_back({w, nullptr});
    auto add = [&](const std::vector<ObjectInstance>& list) {
        for (const auto& o : list) {
            if (&o == &body || o.isPickedUp) continue;
            const ObjectClass* cls = catalog.find(o.category);
            if (!cls) continue;
            for (const Aabb& b : collider_boxes(o, *cls)) out.push_back({b, &o});
        }
    };
    add(scene.objects);
    add(scene.props);
    const AgentState& a = scene.agent;
    out.push_back({{a.position - Vec3{a.capsuleRadius, 0, a.capsuleRadius},
                    a.position + Vec3{a.capsuleRadius, a.capsuleHeight, a.capsuleRadius}},
                   nullptr});
    return out;
}

bool supported(const Aabb& box, const std::vector<Obstacle>& obstacles)
{
    if (std::abs(box.min.y) <= kSupportTol) return true;
    for (const auto& o : obstacles) {
        if (std::abs(o.box.max.y - box.min.y) > kSupportTol) continue;
        if (overlap_1d(box, o.box, 0) > kSideOverlap && overlap_1d(box, o.box, 2) > kSideOverlap) return true;
    }
    return false;
}

// Largest signed move along axis k (same sign as `delta`, never longer)
// before the box touches an obstacle. Floor is the plane y = 0.
double clamp_move(const Aabb& box, int k, double delta, const std::vector<Obstacle>& obstacles, bool& hit)
{
    hit = false;
    double allowed = std::abs(delta);
    int i = (k + 1) % 3, j = (k + 2) % 3;
    auto limit = [&](double gap) {
        gap = std::max(0.0, gap);
        if (gap < allowed) {
            allowed = gap;
            hit = true;
        } else if (gap == allowed) {
            hit = true;
        }
    };
    if (k == 1 && delta < 0.0) limit(box.min.y);
    for (const auto& o : obstacles) {
        if (overlap_1d(box, o.box, i) <= kSideOverlap || overlap_1d(box, o.box, j) <= kSideOverlap) continue;
        if (delta > 0.0 && o.box.min[k] >= box.max[k] - kSkin) limit(o.box.min[k] - box.max[k]);
        if (delta < 0.0 && o.box.max[k] <= box.min[k] + kSkin) limit(box.min[k] - o.box.max[k]);
    }
    return delta > 0.0 ? allowed : -allowed;
}

double speed(const Vec3& v) { return length(v); }

} // namespace

bool integrate_step(Scene& scene, const PhysicsConfig& cfg, const ObjectClassCatalog& catalog)
{
    bool any = false;
    for (auto& body : scene.objects) {
        const ObjectClass* cls = catalog.find(body.category);
        if (!cls || !participates(body, *cls)) continue;
        auto obstacles = obstacles_for(scene, body, catalog);
        Aabb box = world_bounds(body, *cls);
        if (body.velocity == Vec3{} && supported(box, obstacles)) continue;
        any = true;

        Vec3& v = body.velocity;
        v.y -= cfg.gravity * cfg.dt;
        // Vertical first so a landing body slides on its new support.
        for (int k : {1, 0, 2}) {
            if (v[k] == 0.0) continue;
            bool hit = false;
            double d = clamp_move(box, k, v[k] * cfg.dt, obstacles, hit);
            body.position[k] += d;
            box.min[k] += d;
            box.max[k] += d;
            if (hit) {
                double vn = v[k];
                v[k] = std::abs(vn) < cfg.bounceThreshold ? 0.0 : -cls->restitution * vn;
            }
        }
        if (supported(box, obstacles)) {
            if (v.y < 0.0) v.y = 0.0;
            double h = std::hypot(v.x, v.z);
            if (h > 0.0) {
                double slowed = std::max(0.0, h - cls->friction * cfg.gravity * cfg.dt);
                v.x *= slowed / h;
                v.z *= slowed / h;
            }
        }
    }
    return any;
}

SettleResult settle(Scene scene, const PhysicsConfig& cfg, const ObjectClassCatalog& catalog)
{
    auto resting = [&](const ObjectInstance& body, const ObjectClass& cls) {
        if (speed(body.velocity) >= cfg.restSpeed) return false;
        return supported(world_bounds(body, cls), obstacles_for(scene, body, catalog));
    };
    auto all_resting = [&] {
        for (const auto& body : scene.objects) {
            const ObjectClass* cls = catalog.find(body.category);
            if (cls && participates(body, *cls) && !resting(body, *cls)) return false;
        }
        return true;
    };

    int steps = 0;
    while (steps < cfg.maxSettleSteps && !all_resting()) {
        if (!integrate_step(scene, cfg, catalog)) break;
        ++steps;
    }

    for (auto& body : scene.objects) {
        const ObjectClass* cls = catalog.find(body.category);
        if (!cls || !participates(body, *cls) || !resting(body, *cls)) continue;
        body.velocity = {};
        if (!cls->pickupable) continue;
        Aabb box = world_bounds(body, *cls);
        ObjectInstance* home = nullptr;
        for (auto& r : scene.objects) {
            const ObjectClass* rcls = catalog.find(r.category);
            if (&r == &body || !rcls || !rcls->receptacle) continue;
            auto interior = interior_world(r, *rcls);
            if (!interior || !interior->contains(box, 1e-9)) continue;
            if (!home || r.objectId < home->objectId) home = &r;
        }
        if (home) {
            body.parentReceptacle = home->objectId;
            home->containedIds.push_back(body.objectId);
            std::sort(home->containedIds.begin(), home->containedIds.end());
        }
    }
    return {std::move(scene), steps};
}

double total_energy(const Scene& scene, const PhysicsConfig& cfg, const ObjectClassCatalog& catalog)
{
    double e = 0.0;
    for (const auto& body : scene.objects) {
        const ObjectClass* cls = catalog.find(body.category);
        if (!cls || !cls->movable() || body.isPickedUp) continue;
        e += 0.5 * cls->mass * dot(body.velocity, body.velocity) + cls->mass * cfg.gravity * body.position.y;
    }
    return e;
}

void apply_impulse(Scene& scene, ObjectInstance& body, const Vec3& direction, double magnitude,
                   const ObjectClassCatalog& catalog)
{
    const ObjectClass& cls = catalog.at(body.category);
    body.velocity += direction * (magnitude / cls.mass);
    if (body.parentReceptacle) {
        if (ObjectInstance* parent = scene.find_object(*body.parentReceptacle)) {
            std::erase(parent->containedIds, body.objectId);
        }
        body.parentReceptacle.reset();
    }
}

} // namespace hearth
