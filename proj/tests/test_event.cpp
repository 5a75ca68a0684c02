#include "support.hpp"

#include "hearth/event.hpp"
#include "hearth/rng.hpp"
#include "hearth/scene_gen.hpp"

#include <doctest.h>

#include <set>

using namespace hearth;
using namespace hearth::test;

namespace {

SessionConfig all_buffers()
{
    SessionConfig cfg;
    cfg.renderDepth = true;
    cfg.renderInstanceIds = true;
    return cfg;
}

} // namespace

TEST_CASE("base64 matches the standard test vectors")
{
    const std::pair<std::string, std::string> vectors[] = {
        {"", ""}, {"f", "Zg=="}, {"fo", "Zm8="}, {"foo", "Zm9v"},
        {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"},
    };
    for (const auto& [plain, coded] : vectors) {
        CHECK(base64_encode(plain.data(), plain.size()) == coded);
        auto back = base64_decode(coded);
        CHECK(std::string(back.begin(), back.end()) == plain);
    }
    CHECK_THROWS_AS(base64_decode("Zm9v!"), DecodeError);
    CHECK_THROWS_AS(base64_decode("Zm9"), DecodeError);
}

TEST_CASE("base64 round trips arbitrary bytes")
{
    CounterRng rng(3);
    for (int n = 0; n < 200; ++n) {
        std::vector<std::uint8_t> bytes(static_cast<std::size_t>(n) * 7);
        for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.below(256));
        CHECK(base64_decode(base64_encode(bytes.data(), bytes.size())) == bytes);
    }
}

TEST_CASE("clutter props never reach the metadata")
{
    Scene s = empty_room();
    add_object(s, "Mug", "Mug_1", {3, 0, 2.5});
    const char* clutter[] = {"StickyNote", "Crate", "PaperStack", "Magazine", "Crate"};
    for (int k = 0; k < 5; ++k) {
        ObjectInstance p;
        p.objectId = std::string(clutter[k]) + "_" + std::to_string(k + 1);
        p.category = clutter[k];
        p.position = {0.5 + k * 1.0, 0, 5.0};
        s.props.push_back(p);
    }
    REQUIRE(validate_scene(s).empty());
    Json m = build_metadata(Simulation(s, {}));
    REQUIRE(m["objects"].size() == 1);
    CHECK(m["objects"][0]["objectId"] == "Mug_1");
}

TEST_CASE("metadata mirrors the committed state")
{
    Simulation sim(17, all_buffers());
    Json m = build_metadata(sim);
    CHECK(validate_metadata(m).empty());
    CHECK(m["sceneName"] == "Scene_17");
    CHECK(m["screenWidth"] == 300);
    CHECK(m["screenHeight"] == 300);
    const Scene& s = sim.scene();
    REQUIRE(m["objects"].size() == s.objects.size());
    std::set<std::string> ids;
    for (const auto& o : m["objects"]) {
        std::string id = o["objectId"];
        ids.insert(id);
        const ObjectInstance* inst = s.find_object(id);
        REQUIRE(inst);
        const ObjectClass& cls = sim.catalog().at(inst->category);
        const ObjectVisibility* v = sim.visibility().find(id);
        INFO(id);
        CHECK(o["objectType"] == inst->category);
        CHECK(o["position"]["x"] == inst->position.x);
        CHECK(o["position"]["y"] == inst->position.y);
        CHECK(o["position"]["z"] == inst->position.z);
        CHECK(o["rotationYaw"] == inst->rotationYaw);
        CHECK(o["distance"] == v->distance);
        CHECK(o["visible"] == v->visible);
        CHECK(o["interactable"] == v->interactable);
        CHECK(o["pickupable"] == cls.pickupable);
        CHECK(o["openable"] == cls.openable);
        CHECK(o["isOpen"] == inst->isOpen);
        CHECK(o["toggleable"] == cls.toggleable);
        CHECK(o["sliceable"] == cls.sliceable);
        CHECK(o["receptacle"] == cls.receptacle);
        CHECK(o["mass"] == cls.mass);
        CHECK(o["receptacleObjectIds"].get<std::vector<std::string>>() == inst->containedIds);
        CHECK(o["parentReceptacle"] == (inst->parentReceptacle ? Json(*inst->parentReceptacle) : Json(nullptr)));
    }
    CHECK(ids.size() == s.objects.size());
    for (const auto& p : s.props) CHECK(ids.count(p.objectId) == 0);
    CHECK(m["agent"]["rotationYaw"] == s.agent.rotationYaw);
    CHECK(m["agent"]["heldObjectId"].is_null());
}

TEST_CASE("failed actions are reported in-band with a frame")
{
    Simulation sim(17, {});
    sim.step(act("OpenObject", "Ghost_1"));
    Event e = build_event(sim, sim.render(1));
    CHECK(e.metadata["lastAction"] == "OpenObject");
    CHECK(e.metadata["lastActionSuccess"] == false);
    CHECK(e.metadata["errorCode"] == "InvalidObjectId");
    CHECK_FALSE(e.metadata["errorMessage"].get<std::string>().empty());
    CHECK(e.frame.rgb.size() == 300u * 300u * 3u);
    CHECK(validate_metadata(e.metadata).empty());

    sim.step(act("RotateRight"));
    Json ok = build_metadata(sim);
    CHECK(ok["lastActionSuccess"] == true);
    CHECK(ok["errorCode"] == "None");
}

TEST_CASE("identical states build identical bytes")
{
    Simulation a(42, all_buffers());
    Simulation b(42, all_buffers());
    for (const char* verb : {"MoveAhead", "RotateLeft", "LookDown"}) {
        a.step(act(verb));
        b.step(act(verb));
    }
    CHECK(encode_event(build_event(a, a.render(1))) == encode_event(build_event(b, b.render(2))));
}

TEST_CASE("encode and decode are inverse")
{
    Simulation sim(17, all_buffers());
    Event e = build_event(sim, sim.render(1));
    std::string body = encode_event(e);
    Event back = decode_event(body);
    CHECK(back == e);
    CHECK(back.frame.rgb.size() == 270000);
    CHECK(back.frame.depth.size() == 90000);
    CHECK(back.frame.idTable == e.frame.idTable);
    CHECK(encode_event(back) == body);

    Json j = Json::parse(body);
    CHECK(j["format"] == "RGB24");
    CHECK(j["width"] == 300);
    CHECK(j["height"] == 300);

    // Depth travels as little-endian IEEE floats.
    auto raw = base64_decode(j["depth_b64"].get<std::string>());
    float first;
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(raw[static_cast<std::size_t>(b)]) << (8 * b);
    std::memcpy(&first, &bits, 4);
    CHECK(first == e.frame.depth[0]);

    Simulation plain(17, {});
    Event p = build_event(plain, plain.render(1));
    Json pj = Json::parse(encode_event(p));
    CHECK_FALSE(pj.contains("depth_b64"));
    CHECK_FALSE(pj.contains("ids_b64"));
    CHECK(decode_event(pj.dump()) == p);
}

TEST_CASE("malformed bodies raise DecodeError")
{
    Simulation sim(3, all_buffers());
    Json good = Json::parse(encode_event(build_event(sim, sim.render(1))));
    CHECK_THROWS_AS(decode_event("{not json"), DecodeError);
    CHECK_THROWS_AS(decode_event("[]"), DecodeError);
    for (const char* key : {"frame_b64", "metadata", "width", "height", "format"}) {
        Json bad = good;
        bad.erase(key);
        INFO(key);
        CHECK_THROWS_AS(decode_event(bad.dump()), DecodeError);
    }
    auto mutate = [&](auto f) {
        Json bad = good;
        f(bad);
        return bad.dump();
    };
    CHECK_THROWS_AS(decode_event(mutate([](Json& j) { j["format"] = "RGBA32"; })), DecodeError);
    CHECK_THROWS_AS(decode_event(mutate([](Json& j) { j["width"] = 299; })), DecodeError);
    CHECK_THROWS_AS(decode_event(mutate([](Json& j) { j["width"] = 0; })), DecodeError);
    CHECK_THROWS_AS(decode_event(mutate([](Json& j) { j["frame_b64"] = "@@@@"; })), DecodeError);
    CHECK_THROWS_AS(decode_event(mutate([](Json& j) { j["depth_b64"] = "AAAA"; })), DecodeError);
    CHECK_THROWS_AS(decode_event(mutate([](Json& j) { j.erase("id_table"); })), DecodeError);
    CHECK_THROWS_AS(decode_event(mutate([](Json& j) { j["id_table"] = Json::array(); })), DecodeError);
}

TEST_CASE("metadata validator flags schema breaks")
{
    Simulation sim(17, {});
    Json good = build_metadata(sim);
    REQUIRE(validate_metadata(good).empty());
    auto problems_after = [&](auto f) {
        Json bad = good;
        f(bad);
        return validate_metadata(bad).size();
    };
    CHECK(problems_after([](Json& m) { m.erase("sceneName"); }) > 0);
    CHECK(problems_after([](Json& m) { m["screenWidth"] = "300"; }) > 0);
    CHECK(problems_after([](Json& m) { m["lastActionSuccess"] = false; }) > 0);
    CHECK(problems_after([](Json& m) { m["agent"]["position"].erase("y"); }) > 0);
    CHECK(problems_after([](Json& m) { m["objects"][0]["visible"] = 1; }) > 0);
    CHECK(problems_after([](Json& m) { std::swap(m["objects"][0], m["objects"][1]); }) > 0);
    CHECK(problems_after([](Json& m) {
        m["objects"][0]["visible"] = false;
        m["objects"][0]["interactable"] = true;
    }) > 0);
    CHECK(validate_metadata(Json::array()).size() == 1);
}

TEST_CASE("metadata stays schema-valid across random valid actions")
{
    const std::vector<std::string> verbs(std::begin(kActionNames), std::end(kActionNames));
    Simulation sim(60, {});
    CounterRng rng(60, 1);
    for (int i = 0; i < 10000; ++i) {
        ActionRequest r;
        r.action = verbs[rng.below(verbs.size())];
        if (r.action == "Initialize" || r.action == "Reset") r.action = "Stop";
        const auto& objs = sim.scene().objects;
        if (!objs.empty()) {
            r.objectId = objs[rng.below(objs.size())].objectId;
            r.receptacleId = objs[rng.below(objs.size())].objectId;
        }
        r.magnitude = rng.uniform(0.1, 1.0);
        r.direction = Vec3{1, 0, 0};
        if (r.action == "Teleport") r.position = Vec3{rng.uniform(0, 6), 0, rng.uniform(0, 6)};
        if (r.action == "RandomizeObjects") r.seed = rng.below(100);
        sim.step(r);
        auto problems = validate_metadata(build_metadata(sim));
        INFO("step " << i << " " << action_to_json(r).dump());
        REQUIRE(problems.empty());
    }
}
