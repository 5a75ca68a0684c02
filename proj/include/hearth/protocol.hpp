#pragma once

#include "hearth/actions.hpp"
#include "hearth/event.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <map>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace hearth {

// --- Pull mode -------------------------------------------------------------

struct ServerConfig {
    int maxSessions = 64;
    /// Render threads per frame; <= 0 uses the OpenMP default.
    int renderThreads = 0;
};

/// Parses a POST /sessions body into a scene number and session config.
/// Throws SchemaError for wrong types and OutOfRangeError for bad values.
std::pair<int, SessionConfig> parse_session_request(const Json& body, std::optional<std::uint64_t>* seed = nullptr);

/// HTTP front end: POST /sessions, POST /sessions/{id}/step,
/// GET /sessions/{id}/metadata, DELETE /sessions/{id}.
class PullServer {
public:
    explicit PullServer(ServerConfig config = {});
    ~PullServer();
    PullServer(const PullServer&) = delete;
    PullServer& operator=(const PullServer&) = delete;

    /// Binds the port (0 picks a free one) and returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Serves on the calling thread until stop().
    void listen();
    /// Binds and serves on a background thread; returns the port or -1.
    int start(const std::string& host = "127.0.0.1", int port = 0);
    void stop();

    std::size_t session_count() const;

private:
    struct Session {
        std::mutex busy;
        std::unique_ptr<Simulation> sim;
    };

    void routes();
    std::shared_ptr<Session> find(const std::string& id) const;

    ServerConfig config_;
    std::unique_ptr<httplib::Server> http_;
    std::thread thread_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t nextId_ = 1;
};

// --- Push mode -------------------------------------------------------------

struct PushOptions {
    std::chrono::milliseconds timeout{30000};
    int renderThreads = 0;
    /// Incremented by all simulation work; see Simulation::attach_work_counter.
    std::atomic<std::uint64_t>* workCounter = nullptr;
};

struct PushResult {
    enum class Status { Stopped, Timeout, DecodeError, TransportError };
    Status status = Status::Stopped;
    int executed = 0;
    /// Index of the response that ended the loop (0 = reply to the first event).
    int stepIndex = 0;
    std::string message;
};

std::string_view to_string(PushResult::Status s);

/// Posts each event to `pushUrl` and blocks on the response, which must be
/// an action request. Ends on Stop, a timeout, or a malformed response.
PushResult run_push_loop(const std::string& pushUrl, int sceneNumber, SessionConfig config = {},
                         PushOptions options = {});

/// Minimal push-mode client: answers each posted event with the next
/// scripted body, then with Stop.
class ScriptedResponder {
public:
    explicit ScriptedResponder(std::vector<std::string> responses, std::chrono::milliseconds delay = {});
    ~ScriptedResponder();
    ScriptedResponder(const ScriptedResponder&) = delete;
    ScriptedResponder& operator=(const ScriptedResponder&) = delete;

    /// Counter sampled when each event arrives and again just before the
    /// reply; any change means the engine worked while it should block.
    void watch(std::atomic<std::uint64_t>* counter) { probe_ = counter; }

    /// Binds 127.0.0.1 on a free port and serves in the background.
    std::string start();
    void stop();

    int received() const { return received_.load(); }
    int blocking_violations() const { return violations_.load(); }
    /// Metadata of every event received, in order.
    std::vector<Json> events() const;

private:
    std::vector<std::string> responses_;
    std::chrono::milliseconds delay_;
    std::atomic<std::uint64_t>* probe_ = nullptr;
    std::unique_ptr<httplib::Server> http_;
    std::thread thread_;
    std::atomic<int> received_{0};
    std::atomic<int> violations_{0};
    mutable std::mutex mutex_;
    std::vector<Json> events_;
    std::mutex stopMutex_;
    std::condition_variable stopCv_;
    bool stopping_ = false;
};

} // namespace hearth
