#pragma once

#include "hearth/actions.hpp"
#include "hearth/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hearth {

struct ActionMixEntry {
    std::string action;
    int weight = 0;
    bool operator==(const ActionMixEntry&) const = default;
};

/// Versioned weighted action table driving benchmark workers.
struct ActionMix {
    int version = 0;
    std::uint64_t seed = 0;
    std::vector<ActionMixEntry> entries;
    bool operator==(const ActionMix&) const = default;

    int total_weight() const;
    /// Share of the weight on moves, rotations and look actions.
    double navigation_share() const;
};

ActionMix parse_action_mix(std::string_view text);
/// Compiled-in copy of data/action_mix_v1.json.
const ActionMix& builtin_action_mix();

/// Next scripted request for `sim`, drawn from `mix`. Interaction targets
/// are chosen among objects with the right affordance, preferring visible
/// ones; the result depends only on the RNG and the simulation state.
ActionRequest next_scripted_action(CounterRng& rng, const ActionMix& mix, const Simulation& sim);

enum class BenchMode { Render, Meta };

std::string_view to_string(BenchMode m);

class SessionSpawnFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BenchConfig {
    int workers = 1;
    int steps = 1000;
    int width = 300;
    int height = 300;
    BenchMode mode = BenchMode::Render;
    /// Separate OS processes instead of threads.
    bool procs = false;
    int scene = 17;
    ActionMix mix = builtin_action_mix();
};

struct BenchReport {
    BenchMode mode = BenchMode::Render;
    int workers = 0;
    int width = 0;
    int height = 0;
    int steps = 0;
    double wallSeconds = 0.0;
    double actionsPerSecond = 0.0;
    std::vector<double> perWorkerRates;
    /// Hash of each worker's final serialized scene.
    std::vector<std::uint64_t> stateHashes;
};

/// Runs `workers` independent sessions, each stepping `steps` scripted
/// actions (rendering and encoding a full event per step in render mode,
/// metadata only in meta mode). Throws std::invalid_argument for
/// workers < 1 or steps < 100 and SessionSpawnFailure when a worker cannot
/// be started.
BenchReport run_benchmark(const BenchConfig& config);

/// Same script without timing: the final state hash of one worker.
std::uint64_t scripted_state_hash(const BenchConfig& config, int worker);

inline constexpr double kPaperSingleWorkerAps = 70.0;
inline constexpr double kPaperEightWorkerAps = 240.0;

std::string csv_header();
std::string to_csv_row(const BenchReport& r);
Json report_to_json(const BenchReport& r);

} // namespace hearth
