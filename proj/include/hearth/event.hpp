#pragma once

#include "hearth/actions.hpp"
#include "hearth/json_io.hpp"
#include "hearth/renderer.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hearth {

struct Event {
    FrameSet frame;
    Json metadata;
    bool operator==(const Event&) const = default;
};

class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string scene_name(int sceneNumber);

/// Metadata snapshot of the simulation's committed state and last outcome.
/// Objects are sorted by id; props never appear.
Json build_metadata(const Simulation& sim);

Event build_event(const Simulation& sim, FrameSet frame);

/// Problems with a metadata object (empty when it matches the schema).
std::vector<std::string> validate_metadata(const Json& metadata);

Json event_to_json(const Event& e);
/// Throws DecodeError when required keys are missing or buffers mismatch.
Event event_from_json(const Json& body);

std::string encode_event(const Event& e);
/// Throws DecodeError on malformed bodies.
Event decode_event(std::string_view body);

std::string base64_encode(const void* data, std::size_t size);
/// Throws DecodeError on invalid input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

} // namespace hearth
