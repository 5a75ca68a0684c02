// Acceptance report: one PASS/FAIL line per primary criterion, with the
// measured values and runtime. Exits nonzero when any line fails.
#include "support.hpp"

#include "hearth/bench.hpp"
#include "hearth/physics.hpp"
#include "hearth/protocol.hpp"
#include "hearth/rng.hpp"
#include "hearth/scene_gen.hpp"
#include "hearth/visibility.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

using namespace hearth;
using namespace hearth::test;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

bool report(const std::string& name, double budgetSeconds, const std::function<void(Verdict&)>& body)
{
    Verdict v;
    auto t0 = Clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    v.require(secs < budgetSeconds, "runtime over " + std::to_string(budgetSeconds) + " s");
    std::printf("%s  %-28s %7.2fs %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), secs, v.detail.str().c_str());
    std::fflush(stdout);
    return v.pass;
}

std::string hex(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool id_in_frame(const Scene& s, const std::string& id)
{
    SessionConfig cfg;
    cfg.renderInstanceIds = true;
    FrameSet f = Simulation(s, cfg).render(1);
    for (int r = 0; r < f.height; ++r) {
        for (int c = 0; c < f.width; ++c) {
            if (f.id_at(c, r) == id) return true;
        }
    }
    return false;
}

void visibility_threshold(Verdict& v)
{
    Scene near = fridge_at_distance(1.49);
    Scene far = fridge_at_distance(1.51);
    Simulation a(near, {});
    Simulation b(far, {});
    const ObjectVisibility* na = a.visibility().find("Fridge_1");
    const ObjectVisibility* fb = b.visibility().find("Fridge_1");
    v.detail << "1.49 m visible=" << na->visible << ", 1.51 m visible=" << fb->visible;
    bool inFrame = id_in_frame(far, "Fridge_1");
    v.detail << ", 1.51 m in id buffer=" << inFrame;
    v.require(na->visible, "near object visible");
    v.require(!fb->visible, "far object not visible");
    v.require(inFrame, "far object rendered");
}

void transparency(Verdict& v)
{
    Simulation sim(glass_fixture(), {});
    const ObjectVisibility* e = sim.visibility().find("Sponge_1");
    v.detail << "visible=" << e->visible << " interactable=" << e->interactable;
    v.require(e->visible && !e->interactable, "visible through glass, not interactable");
    for (const char* verb : {"OpenObject", "PickupObject"}) {
        ActionOutcome o = sim.step(act(verb, "Sponge_1"));
        v.detail << " " << verb << "=" << to_string(o.errorCode);
        v.require(o.errorCode == ErrorCode::NotInteractable, std::string(verb) + " fails NotInteractable");
    }
}

void microwave(Verdict& v)
{
    Simulation far(microwave_fixture(2.0), {});
    ActionOutcome a = far.step(act("OpenObject", "Microwave_1"));
    Simulation near(microwave_fixture(1.0), {});
    ActionOutcome b = near.step(act("OpenObject", "Microwave_1"));
    bool open = near.scene().find_object("Microwave_1")->isOpen;
    v.detail << "2.0 m: " << to_string(a.errorCode) << ", 1.0 m: " << to_string(b.errorCode) << " isOpen=" << open;
    v.require(!a.success && !far.scene().find_object("Microwave_1")->isOpen, "2.0 m fails");
    v.require(b.success && open, "1.0 m opens");
}

void determinism(Verdict& v)
{
    for (int n : {1, 17, 60, 91, 120}) {
        v.require(serialize_scene(generate_scene(n)) == serialize_scene(generate_scene(n)),
                  "scene " + std::to_string(n) + " byte-identical");
    }
    Json script = Json::parse(read_text(fixture_path("script_50_scene17.json")));
    SessionConfig cfg;
    cfg.renderDepth = true;
    cfg.renderInstanceIds = true;
    std::vector<std::vector<std::string>> frames;
    std::vector<std::string> finals;
    for (int threads : {1, 4}) {
        for (int run = 0; run < 2; ++run) {
            Simulation sim(17, cfg);
            std::vector<std::string> hashes;
            for (const auto& a : script["actions"]) {
                sim.step(parse_action_request(a));
                hashes.push_back(hex(sim.render(threads).hash()));
            }
            frames.push_back(hashes);
            std::string state = canonical_scene_text(sim.scene());
            finals.push_back(hex(fnv1a(state.data(), state.size())));
        }
    }
    std::vector<std::string> golden = script["frame_hashes"].get<std::vector<std::string>>();
    for (std::size_t i = 0; i < frames.size(); ++i) {
        v.require(frames[i] == golden, "frame hashes run " + std::to_string(i));
        v.require(finals[i] == script["final_state_hash"], "final state run " + std::to_string(i));
    }
    v.detail << "5 scenes x2, 50-step script x4 (1 and 4 render threads), final " << finals[0];
}

void catalog_counts(Verdict& v)
{
    const auto& cat = default_catalog();
    std::map<RoomCategory, int> histogram;
    int invalid = 0;
    for (int n = 1; n <= kSceneCount; ++n) {
        Scene s = generate_scene(n);
        ++histogram[s.roomCategory];
        invalid += !validate_scene(s).empty();
    }
    v.detail << "interactable=" << cat.interactable_count() << " Bread variants=" << cat.at("Bread").numVariants()
             << " scenes=" << kSceneCount << " per category=";
    for (auto [c, k] : histogram) v.detail << k << " ";
    v.require(cat.interactable_count() == 102, "102 interactable categories");
    v.require(cat.at("Bread").numVariants() == 30, "30 Bread variants");
    v.require(kSceneCount == 120 && histogram.size() == 4, "120 scenes in 4 categories");
    for (auto [c, k] : histogram) v.require(k == 30, "30 scenes per category");
    v.require(invalid == 0, "all scenes validate");
}

Scene mug_scene(Vec3 pos)
{
    Scene s = empty_room(8.0, 4.0);
    s.agent.position = {7.5, 0, 3.5};
    add_object(s, "Mug", "Mug_1", pos);
    return s;
}

void physics(Verdict& v)
{
    PhysicsConfig cfg;
    Scene s = mug_scene({1, 0, 2});
    apply_impulse(s, s.objects[0], {1, 0, 0}, 2.0);
    double speed = length(s.objects[0].velocity);
    v.detail << "(a) speed=" << speed;
    v.require(std::abs(speed - 4.0) <= 1e-6, "impulse speed");

    Scene f = mug_scene({1, 0, 2});
    f.objects[0].velocity = {4, 0, 0};
    double mu = default_catalog().at("Mug").friction;
    double dist = settle(f, cfg).scene.objects[0].position.x - 1.0;
    double analytic = 16.0 / (2 * mu * cfg.gravity);
    v.detail << " (b) stop=" << dist << " vs " << analytic;
    v.require(std::abs(dist - analytic) <= 0.05, "friction stop distance");

    Scene d = mug_scene({1, 1.0, 2});
    double rest = settle(d, cfg).scene.objects[0].position.y;
    Scene c = empty_room();
    ObjectInstance& counter = add_object(c, "CounterTop", "CounterTop_1", {3, 0, 3});
    double top = interior_world(counter, default_catalog().at("CounterTop"))->min.y;
    add_object(c, "Mug", "Mug_1", {3, top + 1.0, 3});
    double restCounter = settle(c, cfg).scene.find_object("Mug_1")->position.y - top;
    v.detail << " (c) floor=" << rest << " counter=" << restCounter;
    v.require(std::abs(rest) <= 1e-3 && std::abs(restCounter) <= 1e-3, "drop settles on support");

    double worst = -1e300;
    CounterRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Scene e = empty_room(8.0, 6.0);
        e.agent.position = {7.5, 0, 5.5};
        const char* kinds[] = {"Mug", "Apple", "Bread", "Box", "Bowl", "Pillow"};
        for (int k = 0; k < 8; ++k) {
            std::string cat = kinds[rng.below(6)];
            ObjectInstance& o = add_object(e, cat, cat + "_" + std::to_string(k + 1),
                                           {0.5 + k * 0.9, rng.uniform(0, 1.5), rng.uniform(1, 5)});
            o.velocity = {rng.uniform(-3, 3), rng.uniform(-1, 1), rng.uniform(-3, 3)};
        }
        double en = total_energy(e, cfg);
        for (int step = 0; step < cfg.maxSettleSteps; ++step) {
            integrate_step(e, cfg);
            double next = total_energy(e, cfg);
            worst = std::max(worst, next - en);
            en = next;
        }
    }
    v.detail << " (d) max energy rise=" << worst;
    v.require(worst <= 1e-6, "energy non-increasing");
}

Vec3 random_unit(CounterRng& rng)
{
    for (;;) {
        Vec3 d{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        double l = length(d);
        if (l > 1e-3 && l <= 1.0) return d / l;
    }
}

void spatial_oracle(Verdict& v)
{
    long casts = 0, sweeps = 0, mismatches = 0;
    for (int n : {1, 17, 60, 91, 120}) {
        Scene s = generate_scene(n);
        Bvh bvh = build_bvh(s);
        const auto& cs = bvh.colliders();
        CounterRng rng(static_cast<std::uint64_t>(n), 1234);
        for (int i = 0; i < 10000; ++i) {
            Ray r{{rng.uniform(s.floorBounds.min.x, s.floorBounds.max.x), rng.uniform(0, 2.4),
                   rng.uniform(s.floorBounds.min.z, s.floorBounds.max.z)},
                  random_unit(rng), rng.uniform(0.2, 10), rng.below(2) ? 0.0 : kThickRayRadius};
            CastFilter f;
            f.passTransparent = rng.below(2) == 1;
            auto a = bvh.cast_raw(r, f);
            auto b = brute::cast_raw(cs, r, f);
            bool same = a.has_value() == b.has_value() && (!a || (a->collider == b->collider && a->t == b->t));
            mismatches += !same;
            ++casts;
        }
        for (int i = 0; i < 10000; ++i) {
            AgentState ag = s.agent;
            ag.position = {rng.uniform(s.floorBounds.min.x, s.floorBounds.max.x), 0,
                           rng.uniform(s.floorBounds.min.z, s.floorBounds.max.z)};
            Vec3 d{rng.uniform(-2, 2), 0, rng.uniform(-2, 2)};
            mismatches += bvh.sweep_capsule(ag, d) != brute::sweep_capsule(cs, ag, d);
            ++sweeps;
        }
    }
    v.detail << casts << " casts + " << sweeps << " sweeps over 5 scenes, mismatches=" << mismatches;
    v.require(mismatches == 0, "100% agreement");
}

void protocol(Verdict& v)
{
    PullServer server;
    int port = server.start();
    v.require(port > 0, "server bound");
    if (port <= 0) return;
    httplib::Client client("127.0.0.1", port);
    client.set_read_timeout(60, 0);

    const char* verbs[] = {"MoveAhead", "MoveBack", "MoveLeft", "MoveRight", "RotateLeft", "RotateRight",
                           "LookUp", "LookDown"};
    auto walk = [&](std::uint64_t seed, int n) {
        CounterRng rng(seed);
        std::vector<std::string> out;
        for (int i = 0; i < n; ++i) out.push_back(Json{{"action", verbs[rng.below(8)]}}.dump());
        return out;
    };
    auto create = [&](int scene) {
        auto res = client.Post("/sessions", Json{{"scene", scene}}.dump(), "application/json");
        if (!res || res->status != 201) throw std::runtime_error("session creation failed");
        return Json::parse(res->body)["session_id"].get<std::string>();
    };
    auto step = [&](const std::string& id, const std::string& body) {
        auto res = client.Post("/sessions/" + id + "/step", body, "application/json");
        if (!res || res->status != 200) throw std::runtime_error("step failed");
        return res->body;
    };

    std::string id = create(3);
    int valid = 0;
    std::size_t frameLen = 0;
    for (const auto& a : walk(100, 100)) {
        Event e = decode_event(step(id, a));
        frameLen = e.frame.rgb.size();
        valid += validate_metadata(e.metadata).empty() && frameLen == 270000;
    }
    v.detail << "pull walk " << valid << "/100 valid, frame " << frameLen << " B";
    v.require(valid == 100, "pull walk schema-valid with 270000-byte frames");

    std::vector<std::string> script(7, R"({"action":"MoveAhead"})");
    script.push_back(R"({"action":"Stop"})");
    ScriptedResponder responder(script);
    std::atomic<std::uint64_t> work{0};
    responder.watch(&work);
    PushOptions opts;
    opts.workCounter = &work;
    PushResult pr = run_push_loop(responder.start(), 3, {}, opts);
    responder.stop();
    v.detail << "; push executed=" << pr.executed << " violations=" << responder.blocking_violations();
    v.require(pr.status == PushResult::Status::Stopped && pr.executed == 7, "push executes scripted count");
    v.require(responder.blocking_violations() == 0 && work.load() > 0, "push is blocking");

    auto a = walk(7, 30), b = walk(8, 30);
    std::string alone = create(12);
    std::vector<std::string> s1, s2;
    for (const auto& x : a) s1.push_back(step(alone, x));
    std::string mixA = create(12), mixB = create(12);
    for (std::size_t i = 0; i < a.size(); ++i) {
        step(mixB, b[i]);
        step(mixB, R"({"action":"RandomizeObjects","seed":3})");
        s2.push_back(step(mixA, a[i]));
    }
    v.detail << "; isolation " << (s1 == s2 ? "byte-exact" : "DIFFERS");
    v.require(s1 == s2, "session isolation");
    server.stop();
}

// Set when the only benchmark shortfall is scaling on a machine with fewer
// than four hardware threads, where the criterion cannot apply.
bool gScalingHardwareLimited = false;

void benchmark(Verdict& v, int steps)
{
    unsigned hw = std::thread::hardware_concurrency();
    // Single-worker rates take the best of two runs to damp scheduler noise.
    auto run = [&](int workers, int size, BenchMode mode) {
        BenchConfig cfg;
        cfg.workers = workers;
        cfg.steps = steps;
        cfg.width = size;
        cfg.height = size;
        cfg.mode = mode;
        double best = 0.0;
        for (int rep = 0; rep < (workers == 1 ? 2 : 1); ++rep) {
            BenchReport r = run_benchmark(cfg);
            std::printf("      %-6s workers=%d %dx%d steps=%d wall=%.2fs aps=%.1f\n",
                        std::string(to_string(mode)).c_str(), workers, size, size, steps, r.wallSeconds,
                        r.actionsPerSecond);
            std::fflush(stdout);
            best = std::max(best, r.actionsPerSecond);
        }
        return best;
    };
    std::printf("      hardware threads: %u; paper reference: %.0f a/s (1 worker), %.0f a/s (8 workers)\n", hw,
                kPaperSingleWorkerAps, kPaperEightWorkerAps);
    double one = run(1, 300, BenchMode::Render);
    double eight = run(8, 300, BenchMode::Render);
    double r150 = run(1, 150, BenchMode::Render);
    double r600 = run(1, 600, BenchMode::Render);
    double meta = run(1, 300, BenchMode::Meta);
    double scaling = eight / one;
    v.detail << "scaling 8/1=" << scaling << " (hw threads " << hw << "); 150/300/600 aps=" << r150 << "/" << one << "/"
             << r600 << "; meta/render=" << meta / one << "; paper ref 70/240 a/s";
    v.require(scaling >= 2.5, "8 workers >= 2.5x 1 worker");
    v.require(r150 > one && one > r600, "rate falls with resolution");
    v.require(meta >= 10 * one, "meta >= 10x render");
    gScalingHardwareLimited = scaling < 2.5 && hw < 4 && r150 > one && one > r600 && meta >= 10 * one;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance report"};
    bool skipBenchmark = false, onlyBenchmark = false;
    int benchSteps = 200;
    app.add_flag("--skip-benchmark", skipBenchmark, "Skip the throughput criterion");
    app.add_flag("--only-benchmark", onlyBenchmark, "Run only the throughput criterion");
    app.add_option("--bench-steps", benchSteps, "Steps per benchmark worker")->check(CLI::Range(100, 100000));
    CLI11_PARSE(app, argc, argv);

    bool ok = true;
    if (!onlyBenchmark) {
        ok &= report("visibility-threshold", 1, visibility_threshold);
        ok &= report("transparency", 1, transparency);
        ok &= report("microwave-precondition", 1, microwave);
        ok &= report("determinism", 30, determinism);
        ok &= report("catalog-counts", 5, catalog_counts);
        ok &= report("physics", 5, physics);
        ok &= report("spatial-oracle", 30, spatial_oracle);
        ok &= report("protocol", 60, protocol);
    }
    if (!skipBenchmark) {
        bool benchOk = report("benchmark", 300, [&](Verdict& v) { benchmark(v, benchSteps); });
        if (!benchOk && ok && gScalingHardwareLimited) {
            std::printf("NOTE  scaling needs >= 4 hardware threads; this machine has %u, so the failure is reported "
                        "as skipped (exit 77)\n", std::thread::hardware_concurrency());
            return 77;
        }
        ok &= benchOk;
    }
    return ok ? 0 : 1;
}
