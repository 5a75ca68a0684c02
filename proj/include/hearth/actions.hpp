#pragma once

#include "hearth/json_io.hpp"
#include "hearth/physics.hpp"
#include "hearth/renderer.hpp"
#include "hearth/scene.hpp"
#include "hearth/spatial.hpp"
#include "hearth/visibility.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hearth {

enum class ErrorCode {
    None,
    InvalidAction,
    InvalidObjectId,
    NotVisible,
    NotInteractable,
    NotOpenable,
    AlreadyOpen,
    AlreadyClosed,
    NotPickupable,
    HandFull,
    HandEmpty,
    NoSpace,
    ClosedReceptacle,
    NotToggleable,
    AlreadyToggled,
    NotSliceable,
    AlreadySliced,
    NotMovable,
    Blocked,
    OutOfRange,
};

std::string_view to_string(ErrorCode c);

/// Every verb the engine knows. Requests naming anything else are still
/// schema-valid and fail in-band with InvalidAction.
inline constexpr std::string_view kActionNames[] = {
    "Initialize", "Reset", "MoveAhead", "MoveBack", "MoveLeft", "MoveRight", "RotateRight", "RotateLeft",
    "LookUp", "LookDown", "OpenObject", "CloseObject", "PickupObject", "PutObject", "ToggleObjectOn",
    "ToggleObjectOff", "SliceObject", "ApplyForce", "ThrowObject", "Teleport", "RandomizeObjects", "Stop",
};

bool is_known_action(std::string_view name);

struct ActionRequest {
    std::string action;
    std::optional<std::string> objectId;
    std::optional<std::string> receptacleId;
    std::optional<double> magnitude;
    std::optional<Vec3> direction;
    std::optional<Vec3> position;
    std::optional<int> rotation;
    std::optional<int> horizon;
    std::optional<std::uint64_t> seed;
    int agentId = 0;
    // Initialize / Reset parameters.
    std::optional<int> scene;
    std::optional<double> gridSize;
    std::optional<double> visibilityDistance;
    std::optional<int> width;
    std::optional<int> height;
    std::optional<bool> renderDepth;
    std::optional<bool> renderInstanceIds;
    std::optional<int> maxSettleSteps;

    bool operator==(const ActionRequest&) const = default;
};

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a wire action; throws SchemaError on wrong types or on missing
/// parameters that a known verb requires.
ActionRequest parse_action_request(const Json& j);
ActionRequest parse_action_request(std::string_view text);
Json action_to_json(const ActionRequest& req);

/// Empty when the request satisfies its verb's parameter schema.
std::optional<std::string> check_schema(const ActionRequest& req);

struct ActionOutcome {
    bool success = true;
    ErrorCode errorCode = ErrorCode::None;
    std::string errorMessage;
    bool operator==(const ActionOutcome&) const = default;
};

struct SessionConfig {
    double gridSize = 0.25;
    double visibilityDistance = kDefaultVisibilityDistance;
    int width = 300;
    int height = 300;
    bool renderDepth = false;
    bool renderInstanceIds = false;
    PhysicsConfig physics;
    bool operator==(const SessionConfig& o) const
    {
        return gridSize == o.gridSize && visibilityDistance == o.visibilityDistance && width == o.width &&
               height == o.height && renderDepth == o.renderDepth && renderInstanceIds == o.renderInstanceIds &&
               physics.maxSettleSteps == o.physics.maxSettleSteps;
    }
};

/// Checks Initialize-style parameters; returns a message when out of range.
std::optional<std::string> check_config(const SessionConfig& cfg);

inline constexpr double kHandForward = 0.3;
inline constexpr double kHandDrop = 0.2;
inline constexpr int kMinHorizon = -30;
inline constexpr int kMaxHorizon = 60;

/// One agent's world and its discrete action state machine. Not
/// thread-safe; callers serialize steps.
class Simulation {
public:
    explicit Simulation(int sceneNumber, SessionConfig config = {},
                        const ObjectClassCatalog& catalog = default_catalog());
    Simulation(Scene scene, SessionConfig config, const ObjectClassCatalog& catalog = default_catalog());

    /// Runs one request; on failure the scene is left untouched.
    ActionOutcome step(const ActionRequest& req);

    const Scene& scene() const { return scene_; }
    const SessionConfig& config() const { return config_; }
    const VisibilityReport& visibility() const { return report_; }
    const Bvh& bvh() const { return bvh_; }
    const ObjectClassCatalog& catalog() const { return *catalog_; }
    const std::string& last_action() const { return lastAction_; }
    const ActionOutcome& last_outcome() const { return lastOutcome_; }

    Camera camera() const;
    /// `threads` <= 0 uses the OpenMP default, 1 renders serially.
    FrameSet render(int threads = 0) const;

    /// Incremented by every step and render; lets tests observe whether the
    /// engine did any simulation work in a time window.
    void attach_work_counter(std::atomic<std::uint64_t>* counter) { work_ = counter; }

private:
    ActionOutcome dispatch(const ActionRequest& req, Scene& s, SessionConfig& cfg);
    ActionOutcome move(const ActionRequest& req, Scene& s, const Vec3& dir);
    ActionOutcome teleport(const ActionRequest& req, Scene& s);
    ActionOutcome open_close(const ActionRequest& req, Scene& s, bool open);
    ActionOutcome pickup(const ActionRequest& req, Scene& s);
    ActionOutcome put(const ActionRequest& req, Scene& s);
    ActionOutcome toggle(const ActionRequest& req, Scene& s, bool on);
    ActionOutcome slice(const ActionRequest& req, Scene& s);
    ActionOutcome apply_force(const ActionRequest& req, Scene& s);
    ActionOutcome throw_object(const ActionRequest& req, Scene& s);

    /// Existence, reach and line-of-sight checks on the committed state.
    ActionOutcome check_target(const std::string& id) const;
    void refresh();

    const ObjectClassCatalog* catalog_;
    Scene scene_;
    SessionConfig config_;
    Bvh bvh_;
    VisibilityReport report_;
    std::string lastAction_ = "Initialize";
    ActionOutcome lastOutcome_;
    std::atomic<std::uint64_t>* work_ = nullptr;
};

/// Moves a held object to the carry pose in front of the agent's camera.
void update_held_pose(Scene& scene, const ObjectClassCatalog& catalog = default_catalog());

} // namespace hearth
