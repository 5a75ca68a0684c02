#include "hearth/catalog.hpp"

#include "hearth/json_io.hpp"
#include "hearth/rng.hpp"

#include <sstream>

namespace hearth {

namespace {

// Geometry shorthands. Every box has its origin at the bottom center.
Aabb footprint(double w, double h, double d)
{
    return {{-w / 2, 0.0, -d / 2}, {w / 2, h, d / 2}};
}

struct Entry {
    ObjectClass cls;
    Rgb base;
};

class Builder {
public:
    Builder(std::string name, Rgb base) { e_.cls.category = std::move(name); e_.base = base; }

    Builder& solid(double w, double h, double d)
    {
        e_.cls.closedExtents = footprint(w, h, d);
        return *this;
    }

    // Flat support surface: a solid slab of height `top` with free space of
    // `clearance` above it that forms the receptacle interior.
    Builder& surface(double w, double top, double d, double clearance)
    {
        e_.cls.receptacle = true;
        e_.cls.closedExtents = footprint(w, top + clearance, d);
        e_.cls.interiorExtents = Aabb{{-w / 2, top, -d / 2}, {w / 2, top + clearance, d / 2}};
        return *this;
    }

    // Closed shell with walls of thickness t on every side.
    Builder& box(double w, double h, double d, double t)
    {
        e_.cls.receptacle = true;
        e_.cls.closedExtents = footprint(w, h, d);
        e_.cls.interiorExtents = Aabb{{-w / 2 + t, t, -d / 2 + t}, {w / 2 - t, h - t, d / 2 - t}};
        return *this;
    }

    // Open-topped basin: walls of thickness t, cavity `depth` deep.
    Builder& basin(double w, double h, double d, double depth, double t)
    {
        e_.cls.receptacle = true;
        e_.cls.closedExtents = footprint(w, h, d);
        e_.cls.interiorExtents = Aabb{{-w / 2 + t, h - depth, -d / 2 + t}, {w / 2 - t, h, d / 2 - t}};
        return *this;
    }

    // Front door hinged on the left edge; open, it stands perpendicular to
    // the front face.
    Builder& swing_door()
    {
        const Aabb& c = e_.cls.closedExtents;
        double t = door_thickness();
        double w = c.max.x - c.min.x;
        e_.cls.openable = true;
        e_.cls.openExtents = Aabb{{c.min.x, c.min.y, c.max.z}, {c.min.x + t, c.max.y, c.max.z + w}};
        return *this;
    }

    // Front panel pulled straight out by `travel`.
    Builder& slide_door(double travel)
    {
        const Aabb& c = e_.cls.closedExtents;
        double t = door_thickness();
        e_.cls.openable = true;
        e_.cls.openExtents = Aabb{{c.min.x, c.min.y, c.max.z - t + travel}, {c.max.x, c.max.y, c.max.z + travel}};
        return *this;
    }

    Builder& opens_to(const Aabb& open)
    {
        e_.cls.openable = true;
        e_.cls.openExtents = open;
        return *this;
    }

    Builder& pickup(double mass, double mu = 0.5)
    {
        e_.cls.pickupable = true;
        e_.cls.mobility = Mobility::Movable;
        e_.cls.mass = mass;
        e_.cls.friction = mu;
        return *this;
    }

    Builder& fixed(double mass = 50.0) { e_.cls.mass = mass; e_.cls.friction = 0.8; return *this; }
    Builder& toggle() { e_.cls.toggleable = true; return *this; }
    Builder& slices(int n) { e_.cls.sliceable = true; e_.cls.sliceCount = n; return *this; }
    Builder& glass() { e_.cls.transparent = true; return *this; }
    Builder& bouncy(double e) { e_.cls.restitution = e; return *this; }
    Builder& clutter() { e_.cls.interactable = false; return *this; }
    Builder& variants(int n) { nvariants_ = n; return *this; }

    Entry build() const
    {
        Entry out = e_;
        out.cls.variants = make_variants(out.cls.category, out.base, nvariants_, out.cls.pickupable);
        return out;
    }

    static std::vector<VariantParams> make_variants(const std::string& category, Rgb base, int n,
                                                    bool scaled)
    {
        CounterRng rng(fnv1a(category.data(), category.size()), 0xC010);
        std::vector<VariantParams> out;
        for (int i = 0; i < n; ++i) {
            auto jitter = [&](std::uint8_t c) {
                int v = static_cast<int>(c) + (i == 0 ? 0 : static_cast<int>(rng.below(49)) - 24);
                return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
            };
            VariantParams p;
            p.color = {jitter(base.r), jitter(base.g), jitter(base.b)};
            p.scale = scaled ? 0.9 + 0.05 * (i % 5) : 1.0;
            out.push_back(p);
        }
        return out;
    }

private:
    double door_thickness() const
    {
        if (e_.cls.receptacle && e_.cls.interiorExtents) {
            return e_.cls.closedExtents.max.z - e_.cls.interiorExtents->max.z;
        }
        return e_.cls.closedExtents.max.z - e_.cls.closedExtents.min.z;
    }

    Entry e_;
    int nvariants_ = 1;
};

ObjectClass sliced_class(const ObjectClass& parent)
{
    ObjectClass s;
    s.category = sliced_category(parent.category);
    s.pickupable = true;
    s.mobility = Mobility::Movable;
    s.variants = parent.variants;
    int n = *parent.sliceCount;
    s.mass = parent.mass / n;
    s.friction = parent.friction;
    s.restitution = parent.restitution;
    const Aabb& c = parent.closedExtents;
    double half = (c.max.x - c.min.x) / (2.0 * n);
    s.closedExtents = {{-half, c.min.y, c.min.z}, {half, c.max.y, c.max.z}};
    return s;
}

std::vector<ObjectClass> shipped_classes()
{
    std::vector<Entry> e;
    auto add = [&](const Builder& b) { e.push_back(b.build()); };

    // Static receptacles.
    add(Builder("CounterTop", {186, 180, 170}).surface(1.2, 0.9, 0.6, 0.5).fixed(120).variants(3));
    add(Builder("Cabinet", {140, 100, 70}).box(0.6, 0.8, 0.5, 0.03).swing_door().fixed(40).variants(3));
    add(Builder("Drawer", {150, 110, 80}).box(0.5, 0.3, 0.45, 0.03).slide_door(0.35).fixed(15).variants(2));
    add(Builder("Fridge", {220, 222, 226}).box(0.8, 1.8, 0.7, 0.05).swing_door().fixed(90).variants(3));
    add(Builder("Microwave", {60, 60, 64}).box(0.5, 0.3, 0.4, 0.03).swing_door().toggle().fixed(15).variants(3));
    add(Builder("Sink", {200, 205, 210}).basin(0.8, 0.9, 0.6, 0.2, 0.05).fixed(60).variants(2));
    add(Builder("StoveBurner", {40, 40, 44}).surface(0.6, 0.9, 0.6, 0.3).toggle().fixed(70).variants(2));
    add(Builder("DiningTable", {120, 84, 50}).surface(1.4, 0.75, 0.9, 0.5).fixed(40).variants(4));
    add(Builder("CoffeeTable", {110, 80, 56}).surface(1.0, 0.45, 0.6, 0.4).fixed(25).variants(3));
    add(Builder("SideTable", {130, 96, 66}).surface(0.5, 0.6, 0.5, 0.4).fixed(12).variants(3));
    add(Builder("Desk", {150, 120, 90}).surface(1.2, 0.75, 0.6, 0.5).fixed(35).variants(3));
    add(Builder("Dresser", {160, 126, 96}).box(1.0, 0.9, 0.5, 0.03).swing_door().fixed(60).variants(3));
    add(Builder("Shelf", {170, 150, 120}).surface(0.8, 0.9, 0.35, 0.5).fixed(20).variants(2));
    add(Builder("GarbageCan", {90, 96, 90}).basin(0.35, 0.5, 0.35, 0.45, 0.02).fixed(5).variants(2));
    add(Builder("Bathtub", {235, 235, 230}).basin(1.6, 0.55, 0.75, 0.4, 0.06).fixed(100).variants(2));
    add(Builder("Bed", {200, 190, 210}).surface(1.5, 0.55, 2.0, 0.5).fixed(80).variants(4));
    add(Builder("Sofa", {96, 110, 140}).surface(2.0, 0.45, 0.9, 0.5).fixed(60).variants(4));
    add(Builder("ArmChair", {120, 90, 110}).surface(0.9, 0.45, 0.85, 0.4).fixed(30).variants(3));
    add(Builder("Ottoman", {140, 70, 60}).surface(0.6, 0.4, 0.6, 0.3).fixed(10).variants(2));
    add(Builder("TVStand", {70, 60, 56}).surface(1.4, 0.5, 0.45, 0.6).fixed(30).variants(2));
    add(Builder("Toilet", {245, 245, 245}).surface(0.4, 0.45, 0.65, 0.3).fixed(30).variants(1));
    add(Builder("Safe", {80, 84, 90}).box(0.4, 0.4, 0.4, 0.04).swing_door().fixed(60).variants(1));
    add(Builder("LaundryHamper", {180, 170, 140}).basin(0.45, 0.6, 0.45, 0.55, 0.02).fixed(3).variants(2));
    add(Builder("Chair", {110, 80, 60}).surface(0.45, 0.45, 0.45, 0.3).fixed(6).variants(3));

    // Static fixtures.
    add(Builder("ShowerDoor", {190, 220, 230}).solid(0.8, 1.9, 0.02)
            .opens_to({{-1.18, 0.0, -0.01}, {-0.38, 1.9, 0.01}}).glass().fixed(20));
    add(Builder("ShowerCurtain", {200, 160, 170}).solid(1.0, 1.8, 0.04)
            .opens_to({{-0.5, 0.0, -0.02}, {-0.3, 1.8, 0.02}}).fixed(2));
    add(Builder("Faucet", {190, 190, 196}).solid(0.05, 0.25, 0.2).toggle().fixed(2).variants(2));
    add(Builder("StoveKnob", {30, 30, 30}).solid(0.04, 0.04, 0.03).toggle().fixed(0.1));
    add(Builder("CoffeeMachine", {50, 40, 40}).solid(0.25, 0.38, 0.3).toggle().fixed(5).variants(2));
    add(Builder("Toaster", {200, 200, 205}).solid(0.28, 0.2, 0.18).toggle().fixed(2).variants(2));
    add(Builder("LightSwitch", {240, 240, 236}).solid(0.08, 0.12, 0.02).toggle().fixed(0.1));
    add(Builder("FloorLamp", {210, 200, 170}).solid(0.35, 1.6, 0.35).toggle().fixed(6).variants(2));
    add(Builder("DeskLamp", {230, 210, 150}).solid(0.2, 0.45, 0.2).toggle().fixed(2).variants(2));
    add(Builder("Television", {20, 20, 24}).solid(1.0, 0.6, 0.08).toggle().fixed(12).variants(2));
    add(Builder("Mirror", {200, 220, 230}).solid(0.6, 0.8, 0.02).fixed(5));
    add(Builder("Painting", {170, 80, 60}).solid(0.6, 0.5, 0.03).fixed(2).variants(5));
    add(Builder("Window", {170, 200, 230}).solid(1.0, 1.0, 0.02).fixed(10));
    add(Builder("Blinds", {230, 225, 210}).solid(1.0, 1.0, 0.03)
            .opens_to({{-0.5, 0.8, -0.015}, {0.5, 1.0, 0.015}}).fixed(2));
    add(Builder("Curtains", {150, 40, 50}).solid(1.2, 1.8, 0.05)
            .opens_to({{-0.6, 0.0, -0.025}, {-0.4, 1.8, 0.025}}).fixed(2).variants(3));
    add(Builder("HousePlant", {50, 120, 60}).solid(0.3, 0.6, 0.3).fixed(4).variants(3));
    add(Builder("ShowerHead", {180, 180, 186}).solid(0.15, 0.1, 0.2).toggle().fixed(1));

    // Food; each sliceable class gets a matching "<Category>Sliced" class.
    add(Builder("Apple", {190, 30, 40}).solid(0.08, 0.08, 0.08).pickup(0.2).slices(2).variants(10));
    add(Builder("Bread", {196, 150, 90}).solid(0.30, 0.12, 0.14).pickup(0.5).slices(4).variants(30));
    add(Builder("Tomato", {220, 50, 40}).solid(0.08, 0.07, 0.08).pickup(0.15).slices(3).variants(8));
    add(Builder("Potato", {170, 130, 80}).solid(0.10, 0.07, 0.07).pickup(0.2).slices(3).variants(6));
    add(Builder("Lettuce", {90, 170, 70}).solid(0.18, 0.16, 0.18).pickup(0.4).slices(3).variants(6));

    // Kitchenware.
    add(Builder("Egg", {240, 230, 210}).solid(0.05, 0.06, 0.05).pickup(0.06).variants(4));
    add(Builder("Mug", {230, 230, 220}).solid(0.10, 0.10, 0.10).pickup(0.5, 0.4).variants(8));
    add(Builder("Cup", {200, 210, 230}).solid(0.08, 0.10, 0.08).pickup(0.2).variants(6));
    add(Builder("Bowl", {220, 200, 180}).solid(0.16, 0.07, 0.16).pickup(0.3).variants(6));
    add(Builder("Plate", {245, 245, 240}).solid(0.24, 0.03, 0.24).pickup(0.4).variants(6));
    add(Builder("Pan", {50, 50, 55}).solid(0.30, 0.06, 0.30).pickup(1.2).variants(4));
    add(Builder("Pot", {160, 160, 170}).solid(0.26, 0.18, 0.26).pickup(1.5).variants(4));
    add(Builder("Kettle", {180, 60, 50}).solid(0.20, 0.22, 0.16).pickup(1.0).variants(4));
    add(Builder("Knife", {200, 200, 210}).solid(0.30, 0.02, 0.04).pickup(0.15).variants(3));
    add(Builder("ButterKnife", {210, 210, 215}).solid(0.20, 0.02, 0.03).pickup(0.05).variants(3));
    add(Builder("Fork", {205, 205, 210}).solid(0.19, 0.02, 0.03).pickup(0.05).variants(3));
    add(Builder("Spoon", {205, 205, 210}).solid(0.18, 0.02, 0.04).pickup(0.05).variants(3));
    add(Builder("Spatula", {40, 40, 40}).solid(0.30, 0.03, 0.07).pickup(0.1).variants(3));
    add(Builder("Ladle", {190, 190, 195}).solid(0.30, 0.06, 0.09).pickup(0.15).variants(3));
    add(Builder("SaltShaker", {240, 240, 240}).solid(0.04, 0.09, 0.04).pickup(0.1).variants(3));
    add(Builder("PepperShaker", {60, 60, 60}).solid(0.04, 0.09, 0.04).pickup(0.1).variants(3));
    add(Builder("DishSponge", {240, 220, 60}).solid(0.10, 0.04, 0.07).pickup(0.03).variants(4));
    add(Builder("SoapBottle", {100, 180, 200}).solid(0.08, 0.20, 0.08).pickup(0.4).variants(5));
    add(Builder("WineBottle", {40, 80, 50}).solid(0.08, 0.32, 0.08).pickup(1.2).variants(5));
    add(Builder("Bottle", {120, 170, 120}).solid(0.07, 0.25, 0.07).pickup(0.6).variants(5));
    add(Builder("PaperTowelRoll", {245, 245, 245}).solid(0.12, 0.25, 0.12).pickup(0.3).variants(2));

    // General household items.
    add(Builder("Book", {120, 40, 40}).solid(0.20, 0.04, 0.26)
            .opens_to({{-0.2, 0.0, -0.13}, {0.2, 0.02, 0.13}}).pickup(0.6).variants(12));
    add(Builder("Pen", {30, 60, 160}).solid(0.14, 0.015, 0.015).pickup(0.02).variants(4));
    add(Builder("CellPhone", {30, 30, 34}).solid(0.07, 0.01, 0.14).toggle().pickup(0.18).variants(4));
    add(Builder("KeyChain", {200, 180, 60}).solid(0.05, 0.02, 0.05).pickup(0.05).variants(3));
    add(Builder("CreditCard", {60, 90, 160}).solid(0.085, 0.005, 0.054).pickup(0.01).variants(4));
    add(Builder("RemoteControl", {40, 40, 44}).solid(0.05, 0.025, 0.18).pickup(0.15).variants(3));
    add(Builder("Pillow", {220, 210, 190}).solid(0.50, 0.15, 0.35).pickup(0.5).variants(6));
    add(Builder("Laptop", {150, 150, 155}).solid(0.34, 0.03, 0.24)
            .opens_to({{-0.17, 0.0, -0.12}, {0.17, 0.24, 0.12}}).toggle().pickup(1.8).variants(4));
    add(Builder("Newspaper", {210, 210, 200}).solid(0.30, 0.02, 0.40).pickup(0.2).variants(3));
    add(Builder("Vase", {60, 110, 160}).solid(0.12, 0.30, 0.12).pickup(0.8).variants(6));
    add(Builder("Statue", {150, 140, 120}).solid(0.12, 0.30, 0.12).pickup(2.0).variants(5));
    add(Builder("Box", {170, 130, 90}).solid(0.30, 0.25, 0.30)
            .opens_to({{-0.15, 0.0, -0.15}, {0.15, 0.40, 0.15}}).pickup(0.4).variants(3));
    add(Builder("Candle", {240, 230, 200}).solid(0.07, 0.12, 0.07).toggle().pickup(0.2).variants(4));
    add(Builder("Watch", {180, 160, 90}).solid(0.04, 0.01, 0.04).pickup(0.05).variants(4));
    add(Builder("AlarmClock", {200, 60, 60}).solid(0.12, 0.10, 0.06).pickup(0.3).variants(4));
    add(Builder("CD", {200, 200, 220}).solid(0.12, 0.01, 0.12).pickup(0.02).variants(4));
    add(Builder("BaseballBat", {180, 140, 90}).solid(0.80, 0.07, 0.07).pickup(0.9).variants(2));
    add(Builder("BasketBall", {220, 110, 40}).solid(0.24, 0.24, 0.24).pickup(0.6, 0.6).bouncy(0.6));
    add(Builder("TennisRacket", {40, 120, 60}).solid(0.70, 0.03, 0.28).pickup(0.3).variants(2));
    add(Builder("TeddyBear", {160, 110, 70}).solid(0.25, 0.30, 0.20).pickup(0.4).variants(4));
    add(Builder("Cloth", {120, 160, 200}).solid(0.30, 0.02, 0.30).pickup(0.1).variants(6));

    // Bathroom items.
    add(Builder("HandTowel", {230, 220, 200}).solid(0.30, 0.02, 0.20).pickup(0.1).variants(5));
    add(Builder("Towel", {200, 220, 230}).solid(0.50, 0.03, 0.30).pickup(0.3).variants(5));
    add(Builder("ToiletPaper", {250, 250, 250}).solid(0.11, 0.10, 0.11).pickup(0.1));
    add(Builder("SoapBar", {240, 200, 210}).solid(0.08, 0.03, 0.05).pickup(0.1).variants(4));
    add(Builder("ScrubBrush", {200, 60, 60}).solid(0.10, 0.25, 0.10).pickup(0.2).variants(2));
    add(Builder("Plunger", {120, 40, 30}).solid(0.15, 0.45, 0.15).pickup(0.5));
    add(Builder("SprayBottle", {90, 160, 220}).solid(0.10, 0.25, 0.08).pickup(0.5).variants(3));
    add(Builder("TissueBox", {210, 200, 230}).solid(0.24, 0.10, 0.12).pickup(0.2).variants(4));
    add(Builder("Sponge", {250, 220, 80}).solid(0.10, 0.05, 0.07).pickup(0.03).variants(3));

    // Non-interactable clutter. Never appears in metadata.
    add(Builder("StickyNote", {250, 240, 120}).solid(0.08, 0.08, 0.005).clutter().fixed(0.01).variants(3));
    add(Builder("Crate", {140, 110, 80}).solid(0.40, 0.30, 0.40).clutter().fixed(8).variants(2));
    add(Builder("PaperStack", {235, 235, 225}).solid(0.25, 0.08, 0.30).clutter().fixed(1).variants(2));
    add(Builder("Magazine", {180, 60, 120}).solid(0.22, 0.01, 0.28).clutter().fixed(0.2).variants(3));

    std::vector<ObjectClass> out;
    out.reserve(e.size() + 8);
    for (auto& entry : e) {
        out.push_back(entry.cls);
        if (entry.cls.sliceable) out.push_back(sliced_class(entry.cls));
    }
    return out;
}

Json class_to_json(const ObjectClass& c)
{
    Json variants = Json::array();
    for (const auto& v : c.variants) {
        variants.push_back({{"color", {v.color.r, v.color.g, v.color.b}}, {"scale", v.scale}});
    }
    return Json{
        {"category", c.category},
        {"interactable", c.interactable},
        {"pickupable", c.pickupable},
        {"openable", c.openable},
        {"toggleable", c.toggleable},
        {"sliceable", c.sliceable},
        {"receptacle", c.receptacle},
        {"transparent", c.transparent},
        {"mobility", c.movable() ? "movable" : "static"},
        {"variants", variants},
        {"mass", c.mass},
        {"friction", c.friction},
        {"restitution", c.restitution},
        {"closed_extents", to_json(c.closedExtents)},
        {"open_extents", c.openExtents ? to_json(*c.openExtents) : Json(nullptr)},
        {"interior_extents", c.interiorExtents ? to_json(*c.interiorExtents) : Json(nullptr)},
        {"slice_count", c.sliceCount ? Json(*c.sliceCount) : Json(nullptr)},
    };
}

ObjectClass class_from_json(const Json& j)
{
    ObjectClass c;
    c.category = read_string(require(j, "category"), "category");
    c.interactable = read_bool(require(j, "interactable"), "interactable");
    c.pickupable = read_bool(require(j, "pickupable"), "pickupable");
    c.openable = read_bool(require(j, "openable"), "openable");
    c.toggleable = read_bool(require(j, "toggleable"), "toggleable");
    c.sliceable = read_bool(require(j, "sliceable"), "sliceable");
    c.receptacle = read_bool(require(j, "receptacle"), "receptacle");
    c.transparent = read_bool(require(j, "transparent"), "transparent");
    std::string mobility = read_string(require(j, "mobility"), "mobility");
    if (mobility != "static" && mobility != "movable") throw JsonFieldError("mobility: unknown value");
    c.mobility = mobility == "movable" ? Mobility::Movable : Mobility::Static;
    const Json& variants = require(j, "variants");
    if (!variants.is_array()) throw JsonFieldError("variants: expected array");
    for (const auto& v : variants) {
        const Json& color = require(v, "color");
        if (!color.is_array() || color.size() != 3) throw JsonFieldError("variants.color");
        VariantParams p;
        p.color = {static_cast<std::uint8_t>(read_int(color[0], "color")),
                   static_cast<std::uint8_t>(read_int(color[1], "color")),
                   static_cast<std::uint8_t>(read_int(color[2], "color"))};
        p.scale = read_number(require(v, "scale"), "variants.scale");
        c.variants.push_back(p);
    }
    c.mass = read_number(require(j, "mass"), "mass");
    c.friction = read_number(require(j, "friction"), "friction");
    c.restitution = read_number(require(j, "restitution"), "restitution");
    c.closedExtents = read_aabb(require(j, "closed_extents"), "closed_extents");
    if (const Json& o = require(j, "open_extents"); !o.is_null()) c.openExtents = read_aabb(o, "open_extents");
    if (const Json& i = require(j, "interior_extents"); !i.is_null()) {
        c.interiorExtents = read_aabb(i, "interior_extents");
    }
    if (const Json& s = require(j, "slice_count"); !s.is_null()) c.sliceCount = read_int(s, "slice_count");
    return c;
}

} // namespace

ObjectClassCatalog::ObjectClassCatalog(std::vector<ObjectClass> classes) : classes_(std::move(classes))
{
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (!index_.emplace(classes_[i].category, i).second) {
            throw CatalogError("duplicate category '" + classes_[i].category + "'");
        }
    }
}

const ObjectClass* ObjectClassCatalog::find(std::string_view category) const
{
    auto it = index_.find(std::string(category));
    return it == index_.end() ? nullptr : &classes_[it->second];
}

const ObjectClass& ObjectClassCatalog::at(std::string_view category) const
{
    if (const ObjectClass* c = find(category)) return *c;
    throw CatalogError("UnknownCategory: '" + std::string(category) + "'");
}

std::size_t ObjectClassCatalog::interactable_count() const
{
    return static_cast<std::size_t>(
        std::count_if(classes_.begin(), classes_.end(), [](const ObjectClass& c) { return c.interactable; }));
}

std::vector<std::string> ObjectClassCatalog::check() const
{
    std::vector<std::string> problems;
    for (const auto& c : classes_) {
        auto bad = [&](const std::string& what) { problems.push_back(c.category + ": " + what); };
        if (c.variants.empty()) bad("numVariants must be >= 1");
        if (c.pickupable && !c.movable()) bad("pickupable class must be movable");
        if (!c.closedExtents.valid()) bad("closedExtents min > max");
        if (c.openable != c.openExtents.has_value()) bad("openExtents required iff openable");
        if (c.receptacle != c.interiorExtents.has_value()) bad("interiorExtents required iff receptacle");
        if (c.sliceable != c.sliceCount.has_value()) bad("sliceCount required iff sliceable");
        if (c.sliceCount && *c.sliceCount < 1) bad("sliceCount must be positive");
        if (c.interiorExtents && !c.closedExtents.contains(*c.interiorExtents)) {
            bad("interiorExtents must lie inside closedExtents");
        }
        if (!(c.mass > 0.0)) bad("mass must be positive");
        if (!(c.friction >= 0.0)) bad("friction must be >= 0");
        if (!(c.restitution >= 0.0 && c.restitution <= 1.0)) bad("restitution must be in [0, 1]");
        for (const auto& v : c.variants) {
            if (!(v.scale > 0.0)) bad("variant scale must be positive");
        }
        if (c.sliceable && !find(sliced_category(c.category))) bad("missing sliced class");
    }
    return problems;
}

std::string ObjectClassCatalog::to_jsonl() const
{
    std::string out;
    for (const auto& c : classes_) {
        out += class_to_json(c).dump();
        out += '\n';
    }
    return out;
}

ObjectClassCatalog ObjectClassCatalog::from_jsonl(std::string_view text)
{
    std::vector<ObjectClass> classes;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            classes.push_back(class_from_json(Json::parse(line)));
        } catch (const std::exception& ex) {
            throw CatalogError("catalog line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return ObjectClassCatalog(std::move(classes));
}

const ObjectClassCatalog& default_catalog()
{
    static const ObjectClassCatalog catalog(shipped_classes());
    return catalog;
}

} // namespace hearth
