#include "hearth/scene_gen.hpp"

#include "hearth/rng.hpp"
#include "hearth/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hearth {

namespace {

constexpr double kWallThickness = 0.1;
constexpr double kWallHeight = 2.5;
constexpr double kFurnitureGap = 0.05;

struct Template {
    double minWidth, maxWidth, minDepth, maxDepth;
    std::vector<std::string> backWall;
    std::vector<std::string> frontWall;
    /// Static items that sit inside a host receptacle: (item, host classes).
    std::vector<std::pair<std::string, std::vector<std::string>>> onSurfaces;
    /// Side-wall fixtures: (item, mount height).
    std::vector<std::pair<std::string, double>> wallFixtures;
    std::vector<std::string> pickupPool;
    int minPickups, maxPickups;
    std::vector<std::string> surfaceClutter;
};

const Template& template_for(RoomCategory c)
{
    static const Template kitchen{
        5.0, 6.5, 4.5, 6.0,
        {"CounterTop", "Sink", "StoveBurner", "CounterTop", "Fridge"},
        {"Cabinet", "Cabinet", "Drawer", "DiningTable", "GarbageCan"},
        {{"Microwave", {"CounterTop"}}, {"CoffeeMachine", {"CounterTop"}}, {"Toaster", {"CounterTop"}},
         {"Faucet", {"CounterTop"}}, {"StoveKnob", {"StoveBurner"}}},
        {{"LightSwitch", 1.2}, {"Window", 1.0}, {"Painting", 1.4}},
        {"Apple", "Bread", "Tomato", "Potato", "Lettuce", "Egg", "Mug", "Cup", "Bowl", "Plate", "Pan", "Pot",
         "Kettle", "Knife", "ButterKnife", "Fork", "Spoon", "Spatula", "Ladle", "SaltShaker", "PepperShaker",
         "DishSponge", "SoapBottle", "WineBottle", "Bottle", "PaperTowelRoll"},
        6, 10,
        {"PaperStack"},
    };
    static const Template living{
        5.0, 7.0, 5.0, 6.5,
        {"Sofa", "SideTable", "FloorLamp", "HousePlant"},
        {"TVStand", "Shelf", "ArmChair", "Ottoman", "Crate"},
        {{"Television", {"TVStand"}}, {"DeskLamp", {"SideTable"}}},
        {{"Painting", 1.4}, {"Window", 1.0}, {"LightSwitch", 1.2}, {"Curtains", 0.0}},
        {"Book", "Pen", "CellPhone", "KeyChain", "CreditCard", "RemoteControl", "Pillow", "Laptop", "Newspaper",
         "Vase", "Statue", "Box", "Candle", "Watch", "CD", "TeddyBear", "Cloth"},
        5, 9,
        {"Magazine", "PaperStack"},
    };
    static const Template bedroom{
        4.5, 6.0, 4.5, 6.0,
        {"Bed", "SideTable", "Desk"},
        {"Dresser", "Shelf", "Chair", "LaundryHamper", "GarbageCan", "Crate"},
        {{"DeskLamp", {"Desk", "SideTable"}}},
        {{"Blinds", 1.0}, {"Mirror", 1.1}, {"LightSwitch", 1.2}, {"Painting", 1.4}},
        {"Book", "Pen", "CellPhone", "KeyChain", "CreditCard", "Pillow", "Laptop", "AlarmClock", "Watch", "CD",
         "BaseballBat", "BasketBall", "TennisRacket", "TeddyBear", "Cloth", "Statue", "Box", "Candle", "Vase"},
        5, 9,
        {"Magazine"},
    };
    static const Template bathroom{
        3.5, 4.5, 3.5, 4.5,
        {"Bathtub", "Toilet"},
        {"Sink", "Shelf", "LaundryHamper", "GarbageCan"},
        {{"Faucet", {"Shelf", "Toilet"}}},
        {{"Mirror", 1.1}, {"LightSwitch", 1.2}, {"ShowerHead", 1.9}},
        {"HandTowel", "Towel", "ToiletPaper", "SoapBar", "ScrubBrush", "Plunger", "SprayBottle", "TissueBox",
         "Sponge", "SoapBottle", "Cloth", "DishSponge"},
        4, 7,
        {"PaperStack"},
    };
    switch (c) {
    case RoomCategory::Kitchen: return kitchen;
    case RoomCategory::LivingRoom: return living;
    case RoomCategory::Bedroom: return bedroom;
    case RoomCategory::Bathroom: return bathroom;
    }
    return kitchen;
}

double snap(double v) { return std::round(v / 0.05) * 0.05; }

class SceneBuilder {
public:
    SceneBuilder(int sceneNumber, const ObjectClassCatalog& catalog)
        : catalog_(catalog), rng_(static_cast<std::uint64_t>(sceneNumber), 0x5CE4E)
    {
        scene_.sceneNumber = sceneNumber;
        scene_.roomCategory = room_category_for(sceneNumber);
    }

    Scene build()
    {
        const Template& t = template_for(scene_.roomCategory);
        width_ = snap(rng_.uniform(t.minWidth, t.maxWidth));
        depth_ = snap(rng_.uniform(t.minDepth, t.maxDepth));
        scene_.floorBounds = {{0, 0, 0}, {width_, kWallHeight, depth_}};
        build_walls();
        place_along_wall(t.backWall, false);
        place_along_wall(t.frontWall, true);
        if (scene_.roomCategory == RoomCategory::Bathroom) add_shower_door();
        for (const auto& [item, hosts] : t.onSurfaces) place_on_host(item, hosts, true);
        place_wall_fixtures(t.wallFixtures);
        place_pickups(t);
        for (const auto& c : t.surfaceClutter) place_on_host(c, {}, false);
        place_agent();
        return scene_;
    }

private:
    void build_walls()
    {
        const double w = width_, d = depth_, k = kWallThickness, h = kWallHeight;
        scene_.walls = {
            {{0, 0, -k}, {w, h, 0}},
            {{0, 0, d}, {w, h, d + k}},
            {{-k, 0, -k}, {0, h, d + k}},
            {{w, 0, -k}, {w + k, h, d + k}},
        };
    }

    std::string next_id(const std::string& category)
    {
        return category + "_" + std::to_string(++counts_[category]);
    }

    ObjectInstance make(const std::string& category)
    {
        ObjectInstance o;
        o.category = category;
        o.objectId = next_id(category);
        o.variantIndex = select_variant(category, scene_.sceneNumber, catalog_);
        return o;
    }

    void add(ObjectInstance o)
    {
        if (catalog_.at(o.category).interactable) {
            scene_.objects.push_back(std::move(o));
        } else {
            scene_.props.push_back(std::move(o));
        }
    }

    bool clear_of_everything(const ObjectInstance& o) const
    {
        const ObjectClass& cls = catalog_.at(o.category);
        for (const auto& c : gather_colliders(scene_, catalog_)) {
            for (const auto& b : collider_boxes(o, cls)) {
                if (penetration_depth(b, c.box) > 0.0) return false;
            }
        }
        return true;
    }

    // Back wall items face +z (yaw 0); front wall items face -z (yaw 180).
    void place_along_wall(const std::vector<std::string>& items, bool front)
    {
        double cursor = 0.1;
        for (const auto& category : items) {
            const ObjectClass& cls = catalog_.at(category);
            double w = cls.closedExtents.size().x;
            double d = cls.closedExtents.size().z;
            if (cursor + w > width_ - 0.1) continue;
            ObjectInstance o = make(category);
            o.rotationYaw = front ? 180 : 0;
            o.position = {front ? width_ - cursor - w / 2 : cursor + w / 2, 0.0, front ? depth_ - d / 2 : d / 2};
            cursor += w + kFurnitureGap;
            if (front) maxFrontDepth_ = std::max(maxFrontDepth_, d);
            else maxBackDepth_ = std::max(maxBackDepth_, d);
            add(std::move(o));
        }
    }

    // Glass door standing just in front of the right half of the bathtub.
    void add_shower_door()
    {
        const ObjectInstance* tub = nullptr;
        for (const auto& o : scene_.objects) {
            if (o.category == "Bathtub") tub = &o;
        }
        if (!tub) return;
        Aabb tb = world_bounds(*tub, catalog_.at(tub->category));
        ObjectInstance door = make("ShowerDoor");
        door.position = {tb.max.x - 0.4, 0.0, tb.max.z + 0.02};
        add(std::move(door));
    }

    // Places `category` into the first host (in seeded order) where it fits.
    void place_on_host(const std::string& category, const std::vector<std::string>& hostClasses, bool link)
    {
        std::vector<std::size_t> hosts;
        for (std::size_t i = 0; i < scene_.objects.size(); ++i) {
            const auto& o = scene_.objects[i];
            const ObjectClass& cls = catalog_.at(o.category);
            if (!cls.receptacle || cls.openable) continue;
            if (!hostClasses.empty() &&
                std::find(hostClasses.begin(), hostClasses.end(), o.category) == hostClasses.end()) {
                continue;
            }
            hosts.push_back(i);
        }
        rng_.shuffle(std::span(hosts));
        ObjectInstance item = make(category);
        const ObjectClass& cls = catalog_.at(category);
        item.rotationYaw = 0;
        for (std::size_t h : hosts) {
            ObjectInstance host = scene_.objects[h];
            item.rotationYaw = host.rotationYaw;
            ObjectInstance at_origin = item;
            at_origin.position = {};
            auto spot = fit_in_receptacle(world_bounds(at_origin, cls), host, scene_, item.objectId, catalog_);
            if (!spot) continue;
            item.position = *spot;
            if (link) {
                item.parentReceptacle = host.objectId;
                auto& ids = scene_.objects[h].containedIds;
                ids.push_back(item.objectId);
                std::sort(ids.begin(), ids.end());
            }
            add(std::move(item));
            return;
        }
        --counts_[category];
    }

    // Fixtures hang on the side walls, in the band between the furniture rows.
    void place_wall_fixtures(const std::vector<std::pair<std::string, double>>& fixtures)
    {
        double lo = maxBackDepth_ + 0.1;
        double hi = depth_ - maxFrontDepth_ - 0.1;
        bool left = true;
        for (const auto& [category, height] : fixtures) {
            const ObjectClass& cls = catalog_.at(category);
            double w = cls.closedExtents.size().x;
            double d = cls.closedExtents.size().z;
            if (hi - lo < w) continue;
            for (int attempt = 0; attempt < 8; ++attempt) {
                ObjectInstance o = make(category);
                double z = snap(rng_.uniform(lo + w / 2, hi - w / 2));
                // Yaw 90 faces +x (mounted on the x = 0 wall), 270 faces -x.
                o.rotationYaw = left ? 90 : 270;
                o.position = {left ? d / 2 : width_ - d / 2, height, z};
                if (clear_of_everything(o)) {
                    add(std::move(o));
                    break;
                }
                --counts_[category];
            }
            left = !left;
        }
        // A sticky note on whichever side wall has room.
        ObjectInstance note = make("StickyNote");
        note.rotationYaw = 90;
        note.position = {0.0025, 1.5, snap((lo + hi) / 2)};
        if (hi > lo && clear_of_everything(note)) add(std::move(note));
        else --counts_["StickyNote"];
    }

    void place_pickups(const Template& t)
    {
        std::vector<std::string> pool = t.pickupPool;
        rng_.shuffle(std::span(pool));
        int want = t.minPickups + static_cast<int>(rng_.below(static_cast<std::uint64_t>(t.maxPickups - t.minPickups + 1)));
        int placed = 0;
        for (const auto& category : pool) {
            if (placed >= want) break;
            std::size_t before = scene_.objects.size();
            place_on_host_any(category);
            if (scene_.objects.size() > before) ++placed;
        }
    }

    // Pickupables may also go into openable receptacles.
    void place_on_host_any(const std::string& category)
    {
        std::vector<std::size_t> hosts;
        for (std::size_t i = 0; i < scene_.objects.size(); ++i) {
            if (catalog_.at(scene_.objects[i].category).receptacle) hosts.push_back(i);
        }
        rng_.shuffle(std::span(hosts));
        ObjectInstance item = make(category);
        const ObjectClass& cls = catalog_.at(category);
        for (std::size_t h : hosts) {
            const ObjectInstance& host = scene_.objects[h];
            auto spot = fit_in_receptacle(world_bounds(item, cls).translated(-item.position), host, scene_,
                                          item.objectId, catalog_);
            if (!spot) continue;
            item.position = *spot;
            item.parentReceptacle = host.objectId;
            auto& ids = scene_.objects[h].containedIds;
            ids.push_back(item.objectId);
            std::sort(ids.begin(), ids.end());
            add(std::move(item));
            return;
        }
        --counts_[category];
    }

    void place_agent()
    {
        auto colliders = gather_colliders(scene_, catalog_);
        std::vector<Vec3> free;
        AgentState probe;
        for (double x = 0.5; x <= width_ - 0.5 + 1e-9; x += 0.25) {
            for (double z = 0.5; z <= depth_ - 0.5 + 1e-9; z += 0.25) {
                probe.position = {x, 0.0, z};
                bool ok = std::all_of(colliders.begin(), colliders.end(), [&](const Collider& c) {
                    return capsule_axis_distance(probe, c.box) >= probe.capsuleRadius + 0.05;
                });
                if (ok) free.push_back(probe.position);
            }
        }
        AgentState& a = scene_.agent;
        a.position = free.empty() ? Vec3{width_ / 2, 0, depth_ / 2} : free[rng_.below(free.size())];
        a.rotationYaw = 90 * static_cast<int>(rng_.below(4));
        a.cameraHorizon = 0;
    }

    const ObjectClassCatalog& catalog_;
    CounterRng rng_;
    Scene scene_;
    double width_ = 0.0, depth_ = 0.0;
    double maxBackDepth_ = 0.0, maxFrontDepth_ = 0.0;
    std::map<std::string, int> counts_;
};

} // namespace

RoomCategory room_category_for(int sceneNumber)
{
    if (sceneNumber < 1 || sceneNumber > kSceneCount) {
        throw OutOfRangeError("OutOfRange: scene number " + std::to_string(sceneNumber) + " not in [1, 120]");
    }
    static constexpr RoomCategory order[] = {RoomCategory::Kitchen, RoomCategory::LivingRoom, RoomCategory::Bedroom,
                                             RoomCategory::Bathroom};
    return order[(sceneNumber - 1) / 30];
}

Scene generate_scene(int sceneNumber, const ObjectClassCatalog& catalog)
{
    room_category_for(sceneNumber);
    return SceneBuilder(sceneNumber, catalog).build();
}

int select_variant(std::string_view category, int sceneNumber, const ObjectClassCatalog& catalog)
{
    const ObjectClass& cls = catalog.at(category);
    return sceneNumber % cls.numVariants();
}

RandomizeResult randomize_objects(const Scene& scene, std::uint64_t seed, const ObjectClassCatalog& catalog)
{
    Scene s = scene;
    CounterRng rng(mix64(static_cast<std::uint64_t>(scene.sceneNumber)) ^ seed, 0x4A2D);

    std::vector<std::size_t> movers;
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        const ObjectInstance& o = s.objects[i];
        if (catalog.at(o.category).pickupable && !o.isPickedUp) movers.push_back(i);
    }
    if (movers.empty()) return {scene, true, {}};

    // Lift every mover out of the world first; a temporarily "held" object
    // has no colliders.
    for (std::size_t i : movers) {
        ObjectInstance& o = s.objects[i];
        if (o.parentReceptacle) {
            if (ObjectInstance* p = s.find_object(*o.parentReceptacle)) std::erase(p->containedIds, o.objectId);
            o.parentReceptacle.reset();
        }
        o.isPickedUp = true;
        o.velocity = {};
    }
    std::sort(movers.begin(), movers.end(),
              [&](std::size_t a, std::size_t b) { return s.objects[a].objectId < s.objects[b].objectId; });
    rng.shuffle(std::span(movers));

    std::vector<std::size_t> receptacles;
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        if (catalog.at(s.objects[i].category).receptacle) receptacles.push_back(i);
    }
    std::sort(receptacles.begin(), receptacles.end(),
              [&](std::size_t a, std::size_t b) { return s.objects[a].objectId < s.objects[b].objectId; });

    RandomizeResult result;
    for (std::size_t i : movers) {
        ObjectInstance& o = s.objects[i];
        const ObjectClass& cls = catalog.at(o.category);
        Aabb box = world_bounds(o, cls).translated(-o.position);
        auto order = receptacles;
        rng.shuffle(std::span(order));
        bool placed = false;
        for (std::size_t r : order) {
            auto spot = fit_in_receptacle(box, s.objects[r], s, o.objectId, catalog);
            if (!spot) continue;
            o.position = *spot;
            o.isPickedUp = false;
            o.parentReceptacle = s.objects[r].objectId;
            auto& ids = s.objects[r].containedIds;
            ids.push_back(o.objectId);
            std::sort(ids.begin(), ids.end());
            placed = true;
            break;
        }
        if (!placed) result.failures.push_back(o.objectId);
    }
    if (!result.failures.empty()) {
        result.ok = false;
        result.scene = scene;
        return result;
    }
    s.randomizeSeed = seed;
    result.scene = std::move(s);
    return result;
}

} // namespace hearth
