#include "hearth/bench.hpp"

#include "hearth/event.hpp"

#include <chrono>
#include <cstring>
#include <sstream>
#include <thread>

#include <sys/wait.h>
#include <unistd.h>

namespace hearth {

namespace {

// Keep in sync with data/action_mix_v1.json; a test compares the two.
constexpr const char* kBuiltinMix = R"mix(
{
  "version": 1,
  "seed": 20171214,
  "entries": [
    {"action": "MoveAhead", "weight": 300},
    {"action": "MoveBack", "weight": 50},
    {"action": "MoveLeft", "weight": 50},
    {"action": "MoveRight", "weight": 50},
    {"action": "RotateRight", "weight": 100},
    {"action": "RotateLeft", "weight": 100},
    {"action": "LookUp", "weight": 25},
    {"action": "LookDown", "weight": 25},
    {"action": "OpenObject", "weight": 60},
    {"action": "CloseObject", "weight": 60},
    {"action": "PickupObject", "weight": 50},
    {"action": "PutObject", "weight": 50},
    {"action": "ToggleObjectOn", "weight": 30},
    {"action": "ToggleObjectOff", "weight": 30},
    {"action": "ApplyForce", "weight": 20}
  ]
}
)mix";

bool is_navigation(std::string_view a)
{
    return a.starts_with("Move") || a.starts_with("Rotate") || a.starts_with("Look");
}

} // namespace

int ActionMix::total_weight() const
{
    int t = 0;
    for (const auto& e : entries) t += e.weight;
    return t;
}

double ActionMix::navigation_share() const
{
    int nav = 0;
    for (const auto& e : entries) {
        if (is_navigation(e.action)) nav += e.weight;
    }
    return static_cast<double>(nav) / total_weight();
}

ActionMix parse_action_mix(std::string_view text)
{
    Json j = Json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("action mix is not a JSON object");
    ActionMix mix;
    try {
        mix.version = read_int(require(j, "version"), "version");
        const Json& seed = require(j, "seed");
        if (!seed.is_number_unsigned()) throw JsonFieldError("seed: expected non-negative integer");
        mix.seed = seed.get<std::uint64_t>();
        const Json& entries = require(j, "entries");
        if (!entries.is_array() || entries.empty()) throw JsonFieldError("entries: expected non-empty array");
        for (const auto& e : entries) {
            ActionMixEntry entry{read_string(require(e, "action"), "action"), read_int(require(e, "weight"), "weight")};
            if (!is_known_action(entry.action) || entry.weight <= 0) {
                throw JsonFieldError("entries: bad entry '" + entry.action + "'");
            }
            mix.entries.push_back(std::move(entry));
        }
    } catch (const JsonFieldError& e) {
        throw std::invalid_argument(std::string("action mix: ") + e.what());
    }
    return mix;
}

const ActionMix& builtin_action_mix()
{
    static const ActionMix mix = parse_action_mix(kBuiltinMix);
    return mix;
}

ActionRequest next_scripted_action(CounterRng& rng, const ActionMix& mix, const Simulation& sim)
{
    std::uint64_t pick = rng.below(static_cast<std::uint64_t>(mix.total_weight()));
    const ActionMixEntry* chosen = &mix.entries.front();
    for (const auto& e : mix.entries) {
        if (pick < static_cast<std::uint64_t>(e.weight)) {
            chosen = &e;
            break;
        }
        pick -= static_cast<std::uint64_t>(e.weight);
    }
    ActionRequest req;
    req.action = chosen->action;
    if (is_navigation(req.action)) return req;

    const Scene& s = sim.scene();
    const ObjectClassCatalog& catalog = sim.catalog();
    auto affords = [&](const ObjectClass& c) {
        const std::string& a = req.action;
        if (a == "OpenObject" || a == "CloseObject") return c.openable;
        if (a == "PickupObject") return c.pickupable;
        if (a == "PutObject") return c.receptacle;
        if (a == "ToggleObjectOn" || a == "ToggleObjectOff") return c.toggleable;
        if (a == "ApplyForce") return c.movable();
        return true;
    };
    std::vector<std::string> visible, any;
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        const ObjectInstance& o = s.objects[i];
        if (!affords(catalog.at(o.category))) continue;
        any.push_back(o.objectId);
        if (sim.visibility().entries[i].interactable) visible.push_back(o.objectId);
    }
    const auto& pool = !visible.empty() ? visible : any;
    std::string target = pool.empty() ? std::string("None_0") : pool[rng.below(pool.size())];
    if (req.action == "PutObject") {
        req.receptacleId = target;
    } else {
        req.objectId = target;
    }
    if (req.action == "ApplyForce") {
        req.magnitude = 0.2;
        req.direction = yaw_forward(s.agent.rotationYaw);
    }
    return req;
}

std::string_view to_string(BenchMode m) { return m == BenchMode::Render ? "render" : "meta"; }

namespace {

struct WorkerResult {
    double seconds = 0.0;
    std::uint64_t hash = 0;
};

WorkerResult run_worker(const BenchConfig& cfg, int worker)
{
    SessionConfig sc;
    sc.width = cfg.width;
    sc.height = cfg.height;
    Simulation sim(cfg.scene, sc);
    CounterRng rng(cfg.mix.seed, static_cast<std::uint64_t>(worker));
    std::size_t sink = 0;
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < cfg.steps; ++i) {
        sim.step(next_scripted_action(rng, cfg.mix, sim));
        if (cfg.mode == BenchMode::Render) {
            sink += encode_event(build_event(sim, sim.render(1))).size();
        } else {
            sink += build_metadata(sim).dump().size();
        }
    }
    WorkerResult r;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string text = canonical_scene_text(sim.scene());
    r.hash = fnv1a(text.data(), text.size()) ^ (sink == 0 ? 1 : 0);
    return r;
}

std::uint64_t hash_only(const BenchConfig& cfg, int worker)
{
    SessionConfig sc;
    sc.width = cfg.width;
    sc.height = cfg.height;
    Simulation sim(cfg.scene, sc);
    CounterRng rng(cfg.mix.seed, static_cast<std::uint64_t>(worker));
    for (int i = 0; i < cfg.steps; ++i) sim.step(next_scripted_action(rng, cfg.mix, sim));
    std::string text = canonical_scene_text(sim.scene());
    return fnv1a(text.data(), text.size());
}

std::vector<WorkerResult> run_processes(const BenchConfig& cfg)
{
    struct Child {
        pid_t pid;
        int fd;
    };
    std::vector<Child> children;
    for (int w = 0; w < cfg.workers; ++w) {
        int fds[2];
        if (pipe(fds) != 0) throw SessionSpawnFailure("pipe() failed");
        pid_t pid = fork();
        if (pid < 0) throw SessionSpawnFailure("fork() failed");
        if (pid == 0) {
            close(fds[0]);
            WorkerResult r = run_worker(cfg, w);
            ssize_t written = write(fds[1], &r, sizeof r);
            _exit(written == static_cast<ssize_t>(sizeof r) ? 0 : 1);
        }
        close(fds[1]);
        children.push_back({pid, fds[0]});
    }
    std::vector<WorkerResult> out;
    bool failed = false;
    for (const auto& c : children) {
        WorkerResult r;
        ssize_t got = read(c.fd, &r, sizeof r);
        close(c.fd);
        int status = 0;
        waitpid(c.pid, &status, 0);
        if (got != static_cast<ssize_t>(sizeof r) || !WIFEXITED(status) || WEXITSTATUS(status) != 0) failed = true;
        out.push_back(r);
    }
    if (failed) throw SessionSpawnFailure("a benchmark worker process failed");
    return out;
}

} // namespace

BenchReport run_benchmark(const BenchConfig& cfg)
{
    if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (cfg.steps < 100) throw std::invalid_argument("steps must be >= 100");
    if (cfg.mix.entries.empty()) throw std::invalid_argument("action mix is empty");

    std::vector<WorkerResult> results(static_cast<std::size_t>(cfg.workers));
    auto start = std::chrono::steady_clock::now();
    if (cfg.procs) {
        results = run_processes(cfg);
    } else {
        std::vector<std::thread> threads;
        try {
            for (int w = 0; w < cfg.workers; ++w) {
                threads.emplace_back([&, w] { results[static_cast<std::size_t>(w)] = run_worker(cfg, w); });
            }
        } catch (const std::system_error& e) {
            for (auto& t : threads) t.join();
            throw SessionSpawnFailure(e.what());
        }
        for (auto& t : threads) t.join();
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    BenchReport r;
    r.mode = cfg.mode;
    r.workers = cfg.workers;
    r.width = cfg.width;
    r.height = cfg.height;
    r.steps = cfg.steps;
    r.wallSeconds = wall;
    r.actionsPerSecond = static_cast<double>(cfg.workers) * cfg.steps / wall;
    for (const auto& w : results) {
        r.perWorkerRates.push_back(cfg.steps / w.seconds);
        r.stateHashes.push_back(w.hash);
    }
    return r;
}

std::uint64_t scripted_state_hash(const BenchConfig& config, int worker) { return hash_only(config, worker); }

std::string csv_header() { return "mode,workers,width,height,steps,wall_s,aps"; }

std::string to_csv_row(const BenchReport& r)
{
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << to_string(r.mode) << ',' << r.workers << ',' << r.width << ',' << r.height << ',' << r.steps
       << ',' << r.wallSeconds << ',' << r.actionsPerSecond;
    return os.str();
}

Json report_to_json(const BenchReport& r)
{
    Json hashes = Json::array();
    for (auto h : r.stateHashes) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        hashes.push_back(buf);
    }
    return Json{
        {"mode", to_string(r.mode)},
        {"workers", r.workers},
        {"width", r.width},
        {"height", r.height},
        {"steps", r.steps},
        {"wall_s", r.wallSeconds},
        {"aps", r.actionsPerSecond},
        {"per_worker_aps", r.perWorkerRates},
        {"state_hashes", hashes},
        {"hardware_threads", std::thread::hardware_concurrency()},
        {"paper_reference_aps", {{"workers_1", kPaperSingleWorkerAps}, {"workers_8", kPaperEightWorkerAps}}},
    };
}

} // namespace hearth
