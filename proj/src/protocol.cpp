#include "hearth/protocol.hpp"

#include "hearth/scene_gen.hpp"

#include <httplib.h>

#include <iostream>

namespace hearth {

namespace {

void reply_json(httplib::Response& res, int status, const Json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message)
{
    reply_json(res, status, Json{{"error", message}});
}

Json parse_body(const std::string& text)
{
    if (text.empty()) return Json::object();
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SchemaError("body is not valid JSON");
    return j;
}

} // namespace

std::pair<int, SessionConfig> parse_session_request(const Json& body, std::optional<std::uint64_t>* seed)
{
    if (!body.is_object()) throw SchemaError("session request must be an object");
    // Reuse the action parser for the shared Initialize fields.
    Json as_action = body;
    as_action["action"] = "Initialize";
    ActionRequest r = parse_action_request(as_action);
    SessionConfig cfg;
    if (r.gridSize) cfg.gridSize = *r.gridSize;
    if (r.visibilityDistance) cfg.visibilityDistance = *r.visibilityDistance;
    if (r.width) cfg.width = *r.width;
    if (r.height) cfg.height = *r.height;
    if (r.renderDepth) cfg.renderDepth = *r.renderDepth;
    if (r.renderInstanceIds) cfg.renderInstanceIds = *r.renderInstanceIds;
    if (r.maxSettleSteps) cfg.physics.maxSettleSteps = *r.maxSettleSteps;
    int scene = r.scene.value_or(1);
    if (scene < 1 || scene > kSceneCount) {
        throw OutOfRangeError("OutOfRange: scene " + std::to_string(scene) + " not in [1, 120]");
    }
    if (auto err = check_config(cfg)) throw OutOfRangeError("OutOfRange: " + *err);
    if (seed) *seed = r.seed;
    return {scene, cfg};
}

// --- PullServer --------------------------------------------------------------

PullServer::PullServer(ServerConfig config) : config_(config), http_(std::make_unique<httplib::Server>())
{
    routes();
}

PullServer::~PullServer() { stop(); }

int PullServer::bind(const std::string& host, int port)
{
    if (port == 0) return http_->bind_to_any_port(host);
    return http_->bind_to_port(host, port) ? port : -1;
}

void PullServer::listen() { http_->listen_after_bind(); }

int PullServer::start(const std::string& host, int port)
{
    int bound = bind(host, port);
    if (bound < 0) return -1;
    thread_ = std::thread([this] { listen(); });
    http_->wait_until_ready();
    return bound;
}

void PullServer::stop()
{
    http_->stop();
    if (thread_.joinable()) thread_.join();
}

std::size_t PullServer::session_count() const
{
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<PullServer::Session> PullServer::find(const std::string& id) const
{
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

void PullServer::routes()
{
    http_->Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
        int scene = 1;
        SessionConfig cfg;
        std::optional<std::uint64_t> seed;
        try {
            std::tie(scene, cfg) = parse_session_request(parse_body(req.body), &seed);
        } catch (const std::exception& e) {
            return reply_error(res, 400, e.what());
        }
        Scene world = generate_scene(scene);
        if (seed) world = randomize_objects(world, *seed).scene;
        auto session = std::make_shared<Session>();
        session->sim = std::make_unique<Simulation>(std::move(world), cfg);
        std::string id;
        {
            std::lock_guard lock(mutex_);
            if (static_cast<int>(sessions_.size()) >= config_.maxSessions) {
                return reply_error(res, 503, "session limit reached");
            }
            id = "s" + std::to_string(nextId_++);
            sessions_[id] = session;
        }
        std::lock_guard busy(session->busy);
        Event e = build_event(*session->sim, session->sim->render(config_.renderThreads));
        reply_json(res, 201, Json{{"session_id", id}, {"event", event_to_json(e)}});
    });

    http_->Post("/sessions/:id/step", [this](const httplib::Request& req, httplib::Response& res) {
        auto session = find(req.path_params.at("id"));
        if (!session) return reply_error(res, 404, "unknown session");
        ActionRequest action;
        try {
            action = parse_action_request(parse_body(req.body));
        } catch (const std::exception& e) {
            return reply_error(res, 400, e.what());
        }
        std::unique_lock busy(session->busy, std::try_to_lock);
        if (!busy) return reply_error(res, 409, "a step is already running on this session");
        session->sim->step(action);
        Event e = build_event(*session->sim, session->sim->render(config_.renderThreads));
        res.status = 200;
        res.set_content(encode_event(e), "application/json");
    });

    http_->Get("/sessions/:id/metadata", [this](const httplib::Request& req, httplib::Response& res) {
        auto session = find(req.path_params.at("id"));
        if (!session) return reply_error(res, 404, "unknown session");
        std::unique_lock busy(session->busy, std::try_to_lock);
        if (!busy) return reply_error(res, 409, "a step is already running on this session");
        reply_json(res, 200, build_metadata(*session->sim));
    });

    http_->Delete("/sessions/:id", [this](const httplib::Request& req, httplib::Response& res) {
        std::lock_guard lock(mutex_);
        if (sessions_.erase(req.path_params.at("id")) == 0) return reply_error(res, 404, "unknown session");
        res.status = 204;
    });
}

// --- Push mode ------------------------------------------------------------------

std::string_view to_string(PushResult::Status s)
{
    switch (s) {
    case PushResult::Status::Stopped: return "Stopped";
    case PushResult::Status::Timeout: return "Timeout";
    case PushResult::Status::DecodeError: return "DecodeError";
    case PushResult::Status::TransportError: return "TransportError";
    }
    return "TransportError";
}

PushResult run_push_loop(const std::string& pushUrl, int sceneNumber, SessionConfig config, PushOptions options)
{
    PushResult result;
    auto scheme = pushUrl.find("://");
    auto path_start = pushUrl.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    std::string base = pushUrl.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : pushUrl.substr(path_start);

    httplib::Client client(base);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    client.set_connection_timeout(5, 0);

    Simulation sim(sceneNumber, config);
    sim.attach_work_counter(options.workCounter);
    Event event = build_event(sim, sim.render(options.renderThreads));

    for (int index = 0;; ++index) {
        result.stepIndex = index;
        auto sent = std::chrono::steady_clock::now();
        auto res = client.Post(path, encode_event(event), "application/json");
        if (!res) {
            bool timed_out = std::chrono::steady_clock::now() - sent >= options.timeout - std::chrono::milliseconds(50);
            result.status = timed_out ? PushResult::Status::Timeout : PushResult::Status::TransportError;
            result.message = timed_out ? "no response within the timeout" : httplib::to_string(res.error());
            break;
        }
        if (res->status != 200) {
            result.status = PushResult::Status::TransportError;
            result.message = "client answered HTTP " + std::to_string(res->status);
            break;
        }
        ActionRequest req;
        try {
            req = parse_action_request(std::string_view(res->body));
        } catch (const SchemaError& e) {
            result.status = PushResult::Status::DecodeError;
            result.message = e.what();
            std::cerr << "push: step " << index << ": DecodeError: " << e.what() << "\n";
            break;
        }
        if (req.action == "Stop") break;
        sim.step(req);
        ++result.executed;
        event = build_event(sim, sim.render(options.renderThreads));
    }
    return result;
}

// --- ScriptedResponder ------------------------------------------------------------

ScriptedResponder::ScriptedResponder(std::vector<std::string> responses, std::chrono::milliseconds delay)
    : responses_(std::move(responses)), delay_(delay), http_(std::make_unique<httplib::Server>())
{
    http_->Post("/events", [this](const httplib::Request& req, httplib::Response& res) {
        std::uint64_t before = probe_ ? probe_->load() : 0;
        int index = received_.fetch_add(1);
        try {
            Event e = decode_event(req.body);
            std::lock_guard lock(mutex_);
            events_.push_back(std::move(e.metadata));
        } catch (const DecodeError&) {
            std::lock_guard lock(mutex_);
            events_.push_back(Json());
        }
        if (delay_.count() > 0) {
            std::unique_lock lock(stopMutex_);
            stopCv_.wait_for(lock, delay_, [&] { return stopping_; });
        }
        std::string body = index < static_cast<int>(responses_.size()) ? responses_[static_cast<std::size_t>(index)]
                                                                        : std::string(R"({"action":"Stop"})");
        if (probe_ && probe_->load() != before) violations_.fetch_add(1);
        res.set_content(body, "application/json");
    });
}

ScriptedResponder::~ScriptedResponder() { stop(); }

std::string ScriptedResponder::start()
{
    int port = http_->bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return "http://127.0.0.1:" + std::to_string(port) + "/events";
}

void ScriptedResponder::stop()
{
    {
        std::lock_guard lock(stopMutex_);
        stopping_ = true;
        stopCv_.notify_all();
    }
    http_->stop();
    if (thread_.joinable()) thread_.join();
}

std::vector<Json> ScriptedResponder::events() const
{
    std::lock_guard lock(mutex_);
    return events_;
}

} // namespace hearth
