#include "hearth/bench.hpp"
#include "hearth/protocol.hpp"
#include "hearth/scene_gen.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace hearth;

namespace {

PullServer* g_server = nullptr;

void on_signal(int)
{
    if (g_server) g_server->stop();
}

bool write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

int cmd_gen(int scene, bool all, const std::string& out)
{
    if (all) {
        if (out.empty()) {
            std::cerr << "gen --all needs --out DIR\n";
            return 2;
        }
        std::filesystem::create_directories(out);
        for (int n = 1; n <= kSceneCount; ++n) {
            auto path = std::filesystem::path(out) / (scene_name(n) + ".json");
            if (!write_file(path, serialize_scene(generate_scene(n)))) {
                std::cerr << "cannot write " << path << "\n";
                return 1;
            }
        }
        return 0;
    }
    std::string text = serialize_scene(generate_scene(scene));
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    if (!write_file(out, text)) {
        std::cerr << "cannot write " << out << "\n";
        return 1;
    }
    return 0;
}

int cmd_serve(int port, const ServerConfig& cfg)
{
    if (port < 0) {
        const char* env = std::getenv("HEARTH_PORT");
        port = env ? std::atoi(env) : 8200;
    }
    PullServer server(cfg);
    int bound = server.bind("0.0.0.0", port);
    if (bound < 0) {
        std::cerr << "cannot bind port " << port << "\n";
        return 1;
    }
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "listening on port " << bound << "\n";
    server.listen();
    g_server = nullptr;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Headless indoor interaction environment"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "Emit canonical scene files");
    int genScene = 1;
    bool genAll = false;
    std::string genOut;
    gen->add_option("--scene", genScene, "Scene number")->check(CLI::Range(1, kSceneCount));
    gen->add_flag("--all", genAll, "Emit all scenes into --out DIR");
    gen->add_option("--out", genOut, "Output file or directory");

    auto* serve = app.add_subcommand("serve", "Run the pull-mode HTTP server");
    int port = -1;
    ServerConfig serverCfg;
    serve->add_option("--port", port, "Port (falls back to HEARTH_PORT)");
    serve->add_option("--max-sessions", serverCfg.maxSessions, "Concurrent session limit")->check(CLI::PositiveNumber);
    serve->add_option("--render-threads", serverCfg.renderThreads, "Render threads per step (0 = all)");

    auto* push = app.add_subcommand("push", "Run the push loop against a client endpoint");
    std::string url;
    int pushScene = 1;
    SessionConfig pushCfg;
    int timeoutMs = 30000;
    push->add_option("--url", url, "Client endpoint URL")->required();
    push->add_option("--scene", pushScene, "Scene number")->check(CLI::Range(1, kSceneCount));
    push->add_option("--grid-size", pushCfg.gridSize);
    push->add_option("--visibility-distance", pushCfg.visibilityDistance);
    push->add_option("--width", pushCfg.width);
    push->add_option("--height", pushCfg.height);
    push->add_flag("--render-depth", pushCfg.renderDepth);
    push->add_flag("--render-instance-ids", pushCfg.renderInstanceIds);
    push->add_option("--timeout-ms", timeoutMs, "Response timeout");

    auto* bench = app.add_subcommand("bench", "Throughput benchmark");
    BenchConfig benchCfg;
    std::string mode = "render";
    std::string benchOut;
    std::string mixFile;
    bench->add_option("--workers", benchCfg.workers)->check(CLI::PositiveNumber);
    bench->add_option("--steps", benchCfg.steps)->check(CLI::Range(100, 100000000));
    bench->add_option("--width", benchCfg.width);
    bench->add_option("--height", benchCfg.height);
    bench->add_option("--mode", mode)->check(CLI::IsMember({"render", "meta"}));
    bench->add_flag("--procs", benchCfg.procs, "Workers as separate processes");
    bench->add_option("--scene", benchCfg.scene)->check(CLI::Range(1, kSceneCount));
    bench->add_option("--mix", mixFile, "Action mix file (default: built-in v1)");
    bench->add_option("--out", benchOut, "CSV report path");

    auto* catalog = app.add_subcommand("catalog", "Print the object class catalog as JSON lines");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_gen(genScene, genAll, genOut);
        if (*serve) return cmd_serve(port, serverCfg);
        if (*push) {
            PushOptions opts;
            opts.timeout = std::chrono::milliseconds(timeoutMs);
            PushResult r = run_push_loop(url, pushScene, pushCfg, opts);
            std::cout << to_string(r.status) << " executed=" << r.executed << "\n";
            if (!r.message.empty()) std::cerr << r.message << "\n";
            return r.status == PushResult::Status::Stopped ? 0 : 1;
        }
        if (*bench) {
            benchCfg.mode = mode == "meta" ? BenchMode::Meta : BenchMode::Render;
            if (!mixFile.empty()) {
                std::ifstream in(mixFile);
                if (!in) {
                    std::cerr << "cannot read " << mixFile << "\n";
                    return 1;
                }
                benchCfg.mix = parse_action_mix(std::string(std::istreambuf_iterator<char>(in), {}));
            }
            BenchReport r = run_benchmark(benchCfg);
            std::cout << report_to_json(r).dump(2) << "\n";
            if (!benchOut.empty()) {
                bool exists = std::filesystem::exists(benchOut) && std::filesystem::file_size(benchOut) > 0;
                std::ofstream out(benchOut, std::ios::app);
                if (!exists) out << csv_header() << "\n";
                out << to_csv_row(r) << "\n";
            }
            return 0;
        }
        if (*catalog) {
            std::cout << default_catalog().to_jsonl();
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
