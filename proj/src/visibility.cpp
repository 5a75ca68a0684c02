#include "hearth/visibility.hpp"

#include <algorithm>
#include <unordered_map>

namespace hearth {

const ObjectVisibility* VisibilityReport::find(std::string_view id) const
{
    for (const auto& e : entries) {
        if (e.objectId == id) return &e;
    }
    return nullptr;
}

std::optional<Ray> visibility_ray(const Camera& camera, const Aabb& box, double visibilityDistance)
{
    if (!frustum_contains(camera, box)) return std::nullopt;
    auto target = nearest_point_in_frustum(camera, box);
    if (!target) return std::nullopt;
    Ray ray;
    ray.origin = camera.position;
    ray.maxLength = visibilityDistance + kVisibilityRayExtra;
    ray.radius = kThickRayRadius;
    Vec3 d = *target - camera.position;
    double len = length(d);
    // Camera inside the box: any direction reaches it at t = 0.
    ray.direction = len > 1e-12 ? d / len : camera.forward();
    return ray;
}

namespace {

bool ray_reaches(const Bvh& bvh, const Ray& ray, const std::string& id, bool passTransparent)
{
    CastFilter filter;
    filter.passTransparent = passTransparent;
    filter.keepId = id;
    auto hit = bvh.cast(ray, filter);
    return hit && hit->objectId == id;
}

using OwnedBoxes = std::unordered_map<std::string_view, std::vector<Aabb>>;

OwnedBoxes owned_boxes(const Bvh& bvh)
{
    OwnedBoxes out;
    for (const auto& c : bvh.colliders()) out[c.ownerId].push_back(c.box);
    return out;
}

// The ray toward the whole box comes first. Hollow or opened objects can
// leave that target in empty space, so each own collider is tried next,
// nearest first.
bool any_ray_reaches(const Bvh& bvh, const Camera& camera, const Aabb& box, const OwnedBoxes& owned,
                     const std::string& id, double visibilityDistance, bool passTransparent)
{
    if (auto ray = visibility_ray(camera, box, visibilityDistance)) {
        if (ray_reaches(bvh, *ray, id, passTransparent)) return true;
    } else {
        return false;
    }
    auto it = owned.find(id);
    if (it == owned.end()) return false;
    std::vector<std::pair<double, Ray>> rays;
    for (const Aabb& part : it->second) {
        if (auto ray = visibility_ray(camera, part, visibilityDistance)) {
            rays.emplace_back(part.distance_to(camera.position), *ray);
        }
    }
    std::stable_sort(rays.begin(), rays.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [d, ray] : rays) {
        if (ray_reaches(bvh, ray, id, passTransparent)) return true;
    }
    return false;
}

} // namespace

VisibilityReport compute_visibility(const Scene& scene, const Camera& camera, const Bvh& bvh,
                                    double visibilityDistance, const ObjectClassCatalog& catalog)
{
    VisibilityReport report;
    report.entries.reserve(scene.objects.size());
    const Vec3 center = scene.agent.center();
    const OwnedBoxes owned = owned_boxes(bvh);
    for (const auto& o : scene.objects) {
        ObjectVisibility v;
        v.objectId = o.objectId;
        const ObjectClass& cls = catalog.at(o.category);
        Aabb box = world_bounds(o, cls);
        v.distance = box.distance_to(center);
        if (!o.isPickedUp && v.distance <= visibilityDistance) {
            v.visible = any_ray_reaches(bvh, camera, box, owned, o.objectId, visibilityDistance, true);
        }
        report.entries.push_back(std::move(v));
    }
    return report;
}

VisibilityReport compute_interactability(const Scene& scene, const Camera& camera, const Bvh& bvh,
                                         VisibilityReport report, double visibilityDistance,
                                         const ObjectClassCatalog& catalog)
{
    const OwnedBoxes owned = owned_boxes(bvh);
    for (std::size_t i = 0; i < report.entries.size() && i < scene.objects.size(); ++i) {
        ObjectVisibility& v = report.entries[i];
        v.interactable = false;
        if (!v.visible) continue;
        const ObjectInstance& o = scene.objects[i];
        Aabb box = world_bounds(o, catalog.at(o.category));
        v.interactable = any_ray_reaches(bvh, camera, box, owned, o.objectId, visibilityDistance, false);
    }
    return report;
}

VisibilityReport compute_report(const Scene& scene, const Bvh& bvh, int width, int height,
                                double visibilityDistance, const ObjectClassCatalog& catalog)
{
    Camera camera = Camera::from_agent(scene.agent, width, height, visibilityDistance);
    auto report = compute_visibility(scene, camera, bvh, visibilityDistance, catalog);
    return compute_interactability(scene, camera, bvh, std::move(report), visibilityDistance, catalog);
}

} // namespace hearth
