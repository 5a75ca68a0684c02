#pragma once

#include "hearth/actions.hpp"
#include "hearth/catalog.hpp"
#include "hearth/scene.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace hearth::test {

/// Empty walled room with the agent at (w/2, 0, 1) facing +z.
inline Scene empty_room(double w = 6.0, double d = 6.0)
{
    Scene s;
    s.sceneNumber = 1;
    s.roomCategory = RoomCategory::Kitchen;
    s.floorBounds = {{0, 0, 0}, {w, 2.5, d}};
    s.walls = {
        {{0, 0, -0.1}, {w, 2.5, 0}},
        {{0, 0, d}, {w, 2.5, d + 0.1}},
        {{-0.1, 0, -0.1}, {0, 2.5, d + 0.1}},
        {{w, 0, -0.1}, {w + 0.1, 2.5, d + 0.1}},
    };
    s.agent.position = {w / 2, 0, 1};
    return s;
}

inline ObjectInstance& add_object(Scene& s, const std::string& category, const std::string& id, Vec3 pos,
                                  int yaw = 0)
{
    ObjectInstance o;
    o.objectId = id;
    o.category = category;
    o.position = pos;
    o.rotationYaw = yaw;
    s.objects.push_back(o);
    return s.objects.back();
}

inline void contain(Scene& s, const std::string& parent, const std::string& child)
{
    s.find_object(child)->parentReceptacle = parent;
    s.find_object(parent)->containedIds.push_back(child);
}

inline Aabb bounds_of(const Scene& s, const std::string& id)
{
    const ObjectInstance* o = s.find_object(id);
    return world_bounds(*o, default_catalog().at(o->category));
}

/// Euclidean distance from a point to a box (zero inside).
inline double point_box_distance(const Vec3& p, const Aabb& b)
{
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
        double e = std::max({0.0, b.min[k] - p[k], p[k] - b.max[k]});
        d2 += e * e;
    }
    return std::sqrt(d2);
}

inline ActionRequest act(std::string action, std::optional<std::string> objectId = {})
{
    ActionRequest r;
    r.action = std::move(action);
    r.objectId = std::move(objectId);
    return r;
}

inline std::string fixture_path(const std::string& name)
{
    return std::string(HEARTH_FIXTURE_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Agent facing +z at the origin row, a Fridge whose front face sits
/// `distance` meters from the agent center. Nothing else in view.
inline Scene fridge_at_distance(double distance)
{
    Scene s = empty_room();
    ObjectInstance& f = add_object(s, "Fridge", "Fridge_1", {3, 0, 0}, 180);
    Aabb b = world_bounds(f, default_catalog().at("Fridge"));
    double front = s.agent.center().z + distance;
    f.position.z += front - b.min.z;
    return s;
}

/// Glass shower door between the agent and a sponge on the floor; the camera
/// looks down 30 degrees so the sponge is in view.
inline Scene glass_fixture()
{
    Scene s = empty_room();
    s.roomCategory = RoomCategory::Bathroom;
    s.sceneNumber = 91;
    s.agent.position.z = 1.5;
    s.agent.cameraHorizon = 30;
    add_object(s, "ShowerDoor", "ShowerDoor_1", {3, 0, 2.0});
    add_object(s, "Sponge", "Sponge_1", {3, 0, 2.1});
    return s;
}

/// Counter with a microwave on it, facing the agent, whose front face is
/// `distance` meters from the agent center.
inline Scene microwave_fixture(double distance)
{
    Scene s = empty_room();
    ObjectInstance& counter = add_object(s, "CounterTop", "CounterTop_1", {3, 0, 3.0}, 180);
    const ObjectClassCatalog& cat = default_catalog();
    double top = interior_world(counter, cat.at("CounterTop"))->min.y;
    add_object(s, "Microwave", "Microwave_1", {3, top, 3.0}, 180);
    contain(s, "CounterTop_1", "Microwave_1");
    Aabb mb = bounds_of(s, "Microwave_1");
    s.agent.position.z = mb.min.z - distance;
    return s;
}

} // namespace hearth::test
