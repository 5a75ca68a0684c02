#include "support.hpp"

#include "hearth/bench.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace hearth;
using namespace hearth::test;

namespace {

BenchConfig small(BenchMode mode = BenchMode::Meta)
{
    BenchConfig cfg;
    cfg.mode = mode;
    cfg.steps = 100;
    cfg.width = 64;
    cfg.height = 64;
    return cfg;
}

} // namespace

TEST_CASE("compiled-in action mix equals the data file")
{
    ActionMix file = parse_action_mix(read_text(std::string(HEARTH_DATA_DIR) + "/action_mix_v1.json"));
    CHECK(file == builtin_action_mix());
    CHECK(file.version == 1);
    CHECK(file.total_weight() == 1000);
    // Moves 450, rotations 200, look 50.
    CHECK(file.navigation_share() == doctest::Approx(0.7));
}

TEST_CASE("malformed action mixes are rejected")
{
    for (const char* bad : {"", "[]", R"({"version":1,"seed":1})", R"({"version":1,"seed":-1,"entries":[]})",
                            R"({"version":1,"seed":1,"entries":[]})",
                            R"({"version":1,"seed":1,"entries":[{"action":"Dance","weight":1}]})",
                            R"({"version":1,"seed":1,"entries":[{"action":"MoveAhead","weight":0}]})"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_action_mix(bad), std::invalid_argument);
    }
}

TEST_CASE("scripted draws follow the mix weights")
{
    const ActionMix& mix = builtin_action_mix();
    Simulation sim(17, {});
    CounterRng rng(mix.seed, 0);
    std::map<std::string, int> counts;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        ActionRequest r = next_scripted_action(rng, mix, sim);
        ++counts[r.action];
        if (r.action == "PutObject") CHECK(r.receptacleId.has_value());
        if (r.action == "ApplyForce") {
            CHECK(r.magnitude.has_value());
            CHECK(r.direction.has_value());
        }
        if (r.action.find("Object") != std::string::npos && r.action != "PutObject") CHECK(r.objectId.has_value());
    }
    for (const auto& e : mix.entries) {
        double expect = static_cast<double>(e.weight) / mix.total_weight();
        double got = static_cast<double>(counts[e.action]) / n;
        // Five binomial standard deviations.
        double sigma = std::sqrt(expect * (1 - expect) / n);
        INFO(e.action);
        CHECK(std::abs(got - expect) <= 5 * sigma);
    }
    CHECK(counts.size() == mix.entries.size());
}

TEST_CASE("worker scripts are deterministic and distinct per worker")
{
    BenchConfig cfg = small();
    CHECK(scripted_state_hash(cfg, 0) == scripted_state_hash(cfg, 0));
    CHECK(scripted_state_hash(cfg, 0) != scripted_state_hash(cfg, 1));
    BenchReport a = run_benchmark(cfg);
    CHECK(a.stateHashes == std::vector<std::uint64_t>{scripted_state_hash(cfg, 0)});
    // Rendering does not change the simulated state.
    BenchReport r = run_benchmark(small(BenchMode::Render));
    CHECK(r.stateHashes == a.stateHashes);
}

TEST_CASE("threads and processes run the same scripts")
{
    BenchConfig cfg = small();
    cfg.workers = 3;
    BenchReport threads = run_benchmark(cfg);
    cfg.procs = true;
    BenchReport procs = run_benchmark(cfg);
    CHECK(threads.stateHashes == procs.stateHashes);
    CHECK(std::set<std::uint64_t>(threads.stateHashes.begin(), threads.stateHashes.end()).size() == 3);
    for (int w = 0; w < 3; ++w) CHECK(threads.stateHashes[static_cast<std::size_t>(w)] == scripted_state_hash(cfg, w));
}

TEST_CASE("report arithmetic")
{
    BenchConfig cfg = small();
    cfg.workers = 2;
    BenchReport r = run_benchmark(cfg);
    CHECK(r.workers == 2);
    CHECK(r.steps == 100);
    CHECK(r.wallSeconds > 0);
    CHECK(r.actionsPerSecond == doctest::Approx(2 * 100 / r.wallSeconds));
    REQUIRE(r.perWorkerRates.size() == 2);
    // Workers overlap, so the aggregate never exceeds the sum of per-worker rates.
    CHECK(r.actionsPerSecond <= (r.perWorkerRates[0] + r.perWorkerRates[1]) * (1 + 1e-9));

    Json j = report_to_json(r);
    CHECK(j["paper_reference_aps"]["workers_1"] == kPaperSingleWorkerAps);
    CHECK(j["paper_reference_aps"]["workers_8"] == kPaperEightWorkerAps);
    CHECK(j["mode"] == "meta");
}

TEST_CASE("csv rows line up with the header")
{
    BenchReport r;
    r.mode = BenchMode::Render;
    r.workers = 8;
    r.width = 300;
    r.height = 300;
    r.steps = 1000;
    r.wallSeconds = 12.5;
    r.actionsPerSecond = 640;
    CHECK(csv_header() == "mode,workers,width,height,steps,wall_s,aps");
    CHECK(to_csv_row(r) == "render,8,300,300,1000,12.500000,640.000000");
    auto fields = [](const std::string& s) { return std::count(s.begin(), s.end(), ',') + 1; };
    CHECK(fields(csv_header()) == fields(to_csv_row(r)));
}

TEST_CASE("argument checks")
{
    BenchConfig cfg = small();
    cfg.workers = 0;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
    cfg.workers = 1;
    cfg.steps = 99;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
    cfg.steps = 100;
    cfg.mix.entries.clear();
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
}
