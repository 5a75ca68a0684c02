#pragma once

// nlohmann::json adapters shared by the scene, catalog and wire formats.

#include "hearth/geometry.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace hearth {

using Json = nlohmann::json;

inline Json to_json_array(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

inline Json to_json(const Aabb& box)
{
    return Json{{"max", to_json_array(box.max)}, {"min", to_json_array(box.min)}};
}

/// Thrown by the readers below; callers wrap it into their own error type
/// with the field path attached.
class JsonFieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const Json& require(const Json& obj, const char* key)
{
    if (!obj.is_object()) throw JsonFieldError("expected object");
    auto it = obj.find(key);
    if (it == obj.end()) throw JsonFieldError(std::string("missing key '") + key + "'");
    return *it;
}

inline double read_number(const Json& j, const std::string& what)
{
    if (!j.is_number()) throw JsonFieldError(what + ": expected number");
    return j.get<double>();
}

inline int read_int(const Json& j, const std::string& what)
{
    if (!j.is_number_integer()) throw JsonFieldError(what + ": expected integer");
    return j.get<int>();
}

inline bool read_bool(const Json& j, const std::string& what)
{
    if (!j.is_boolean()) throw JsonFieldError(what + ": expected boolean");
    return j.get<bool>();
}

inline std::string read_string(const Json& j, const std::string& what)
{
    if (!j.is_string()) throw JsonFieldError(what + ": expected string");
    return j.get<std::string>();
}

inline std::optional<std::string> read_optional_string(const Json& j, const std::string& what)
{
    if (j.is_null()) return std::nullopt;
    return read_string(j, what);
}

inline Vec3 read_vec3(const Json& j, const std::string& what)
{
    if (!j.is_array() || j.size() != 3) throw JsonFieldError(what + ": expected [x, y, z]");
    return {read_number(j[0], what), read_number(j[1], what), read_number(j[2], what)};
}

inline Aabb read_aabb(const Json& j, const std::string& what)
{
    return {read_vec3(require(j, "min"), what + ".min"), read_vec3(require(j, "max"), what + ".max")};
}

} // namespace hearth
