#include "support.hpp"

#include "hearth/scene_gen.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hearth;
using namespace hearth::test;

namespace {

bool has_code(const std::vector<Violation>& v, ViolationCode code)
{
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.code == code; });
}

// Rotation oracle: apply the yaw to all eight corners explicitly and take
// the bounding box. yaw 90 maps +z onto +x.
Aabb rotate_by_corners(const Aabb& b, int yaw)
{
    double rad = yaw * 3.14159265358979323846 / 180.0;
    double c = std::round(std::cos(rad)), s = std::round(std::sin(rad));
    Aabb out{{1e9, 1e9, 1e9}, {-1e9, -1e9, -1e9}};
    for (double x : {b.min.x, b.max.x}) {
        for (double y : {b.min.y, b.max.y}) {
            for (double z : {b.min.z, b.max.z}) {
                Vec3 p{x * c + z * s, y, -x * s + z * c};
                out.min = cwise_min(out.min, p);
                out.max = cwise_max(out.max, p);
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("catalog has 102 interactable categories and 30 bread variants")
{
    const auto& cat = default_catalog();
    CHECK(cat.interactable_count() == 102);
    CHECK(cat.at("Bread").numVariants() == 30);
    CHECK(cat.check().empty());
    CHECK_THROWS_AS(cat.at("Unicorn"), CatalogError);
}

TEST_CASE("catalog survives a JSON lines round trip")
{
    const auto& cat = default_catalog();
    ObjectClassCatalog copy = ObjectClassCatalog::from_jsonl(cat.to_jsonl());
    REQUIRE(copy.classes().size() == cat.classes().size());
    for (std::size_t i = 0; i < cat.classes().size(); ++i) CHECK(copy.classes()[i] == cat.classes()[i]);
}

TEST_CASE("catalog classes are internally consistent")
{
    for (const auto& c : default_catalog().classes()) {
        INFO(c.category);
        CHECK(c.numVariants() >= 1);
        CHECK(c.mass > 0.0);
        CHECK(c.closedExtents.valid());
        if (c.openable && !c.receptacle) CHECK(c.openExtents.has_value());
        if (c.sliceable) CHECK(c.sliceCount.value_or(0) >= 2);
        if (c.interiorExtents) CHECK(c.closedExtents.contains(*c.interiorExtents, 1e-12));
        if (c.pickupable) CHECK(c.movable());
    }
}

TEST_CASE("to_world matches an explicit corner rotation")
{
    const auto& cat = default_catalog();
    for (const char* name : {"Fridge", "Bread", "Laptop", "Microwave"}) {
        const ObjectClass& cls = cat.at(name);
        for (int yaw : {0, 90, 180, 270}) {
            ObjectInstance o;
            o.category = name;
            o.variantIndex = cls.numVariants() - 1;
            o.rotationYaw = yaw;
            o.position = {1.25, 0.5, -2.0};
            double s = cls.variants.back().scale;
            Aabb scaled{cls.closedExtents.min * s, cls.closedExtents.max * s};
            Aabb expect = rotate_by_corners(scaled, yaw).translated(o.position);
            Aabb got = to_world(cls.closedExtents, o, cls);
            INFO(name << " yaw " << yaw);
            for (int k = 0; k < 3; ++k) {
                CHECK(got.min[k] == doctest::Approx(expect.min[k]).epsilon(1e-12));
                CHECK(got.max[k] == doctest::Approx(expect.max[k]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("receptacle colliders cover the shell and leave the interior empty")
{
    const auto& cat = default_catalog();
    for (const char* name : {"Fridge", "Microwave", "Cabinet"}) {
        const ObjectClass& cls = cat.at(name);
        for (bool open : {false, true}) {
            ObjectInstance o;
            o.category = name;
            o.isOpen = open;
            auto boxes = collider_boxes(o, cls);
            Aabb inner = *interior_world(o, cls);
            Aabb outer = to_world(cls.closedExtents, o, cls);
            // Sample a grid through the outer box: points strictly inside the
            // interior are never covered, shell points are covered unless
            // they belong to the open door face.
            for (int i = 0; i <= 10; ++i) {
                for (int j = 0; j <= 10; ++j) {
                    for (int k = 0; k <= 10; ++k) {
                        Vec3 p{outer.min.x + (outer.max.x - outer.min.x) * (i + 0.05) / 10.1,
                               outer.min.y + (outer.max.y - outer.min.y) * (j + 0.05) / 10.1,
                               outer.min.z + (outer.max.z - outer.min.z) * (k + 0.05) / 10.1};
                        bool covered = std::any_of(boxes.begin(), boxes.end(), [&](const Aabb& b) {
                            return point_box_distance(p, b) == 0.0;
                        });
                        bool interior = p.x > inner.min.x && p.x < inner.max.x && p.y > inner.min.y &&
                                        p.y < inner.max.y && p.z > inner.min.z && p.z < inner.max.z;
                        bool doorFace = p.z > inner.max.z && p.x > inner.min.x && p.x < inner.max.x &&
                                        p.y > inner.min.y && p.y < inner.max.y;
                        INFO(name << " open=" << open);
                        if (interior) CHECK_FALSE(covered);
                        else if (!(doorFace && open)) CHECK(covered);
                    }
                }
            }
        }
    }
}

TEST_CASE("held objects have no colliders")
{
    ObjectInstance o;
    o.category = "Apple";
    o.isPickedUp = true;
    CHECK(collider_boxes(o, default_catalog().at("Apple")).empty());
}

TEST_CASE("scene serialization round-trips and is canonical")
{
    for (int n : {1, 45, 77, 120}) {
        Scene s = generate_scene(n);
        std::string text = serialize_scene(s);
        Scene back = load_scene(text);
        CHECK(back == s);
        CHECK(serialize_scene(back) == text);
    }
}

TEST_CASE("golden scene fixture matches generation")
{
    CHECK(serialize_scene(generate_scene(17)) == read_text(fixture_path("golden_scene_17.json")));
}

TEST_CASE("load_scene rejects malformed and invalid input")
{
    CHECK_THROWS_AS(load_scene("{not json"), ParseError);
    CHECK_THROWS_AS(load_scene("[]"), ParseError);
    Scene s = generate_scene(3);
    Json j = Json::parse(serialize_scene(s));
    j["objects"][0]["class"] = "Unicorn";
    CHECK_THROWS_AS(load_scene(j.dump()), ValidationError);
}

TEST_CASE("validator flags seeded defects")
{
    Scene base = microwave_fixture(1.0);
    REQUIRE(validate_scene(base).empty());

    SUBCASE("duplicate id")
    {
        Scene s = base;
        s.objects.push_back(s.objects.front());
        CHECK(has_code(validate_scene(s), ViolationCode::DuplicateId));
    }
    SUBCASE("broken parent reference")
    {
        Scene s = base;
        s.find_object("Microwave_1")->parentReceptacle = "Nope_1";
        CHECK(has_code(validate_scene(s), ViolationCode::BrokenReference));
    }
    SUBCASE("containment cycle")
    {
        Scene s = base;
        s.find_object("CounterTop_1")->parentReceptacle = "Microwave_1";
        s.find_object("Microwave_1")->containedIds.push_back("CounterTop_1");
        CHECK(has_code(validate_scene(s), ViolationCode::ContainmentCycle));
    }
    SUBCASE("interpenetration")
    {
        Scene s = base;
        add_object(s, "Fridge", "Fridge_1", s.find_object("CounterTop_1")->position);
        CHECK(has_code(validate_scene(s), ViolationCode::Interpenetration));
    }
    SUBCASE("agent overlap")
    {
        Scene s = base;
        s.agent.position.z = s.find_object("CounterTop_1")->position.z;
        CHECK(has_code(validate_scene(s), ViolationCode::AgentOverlap));
    }
    SUBCASE("illegal flag")
    {
        Scene s = base;
        s.find_object("CounterTop_1")->isOpen = true;
        CHECK(has_code(validate_scene(s), ViolationCode::IllegalFlag));
    }
    SUBCASE("held state")
    {
        Scene s = base;
        s.agent.heldObjectId = "Microwave_1";
        CHECK(has_code(validate_scene(s), ViolationCode::HeldState));
    }
    SUBCASE("out of bounds")
    {
        Scene s = base;
        s.agent.position.x = -1.0;
        CHECK(has_code(validate_scene(s), ViolationCode::OutOfBounds));
    }
    SUBCASE("bad yaw and horizon")
    {
        Scene s = base;
        s.agent.rotationYaw = 45;
        s.agent.cameraHorizon = 15;
        auto v = validate_scene(s);
        CHECK(has_code(v, ViolationCode::InvalidYaw));
        CHECK(has_code(v, ViolationCode::InvalidHorizon));
    }
}
