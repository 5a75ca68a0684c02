#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace hearth {

/// World frame is y-up, meters. Yaw is measured clockwise seen from above,
/// with yaw 0 facing +z and yaw 90 facing +x.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
    constexpr double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr bool operator==(const Vec3&) const = default;

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalize(const Vec3& v)
{
    double len = length(v);
    return len > 0.0 ? v / len : Vec3{};
}
constexpr Vec3 cwise_min(const Vec3& a, const Vec3& b)
{
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
constexpr Vec3 cwise_max(const Vec3& a, const Vec3& b)
{
    return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}

struct Aabb {
    Vec3 min;
    Vec3 max;

    constexpr bool operator==(const Aabb&) const = default;

    constexpr Vec3 size() const { return max - min; }
    constexpr Vec3 center() const { return (min + max) * 0.5; }
    constexpr bool valid() const { return min.x <= max.x && min.y <= max.y && min.z <= max.z; }
    bool finite() const { return min.finite() && max.finite(); }

    constexpr Aabb translated(const Vec3& t) const { return {min + t, max + t}; }
    constexpr Aabb expanded(double r) const { return {min - Vec3{r, r, r}, max + Vec3{r, r, r}}; }

    constexpr Aabb merged(const Aabb& o) const { return {cwise_min(min, o.min), cwise_max(max, o.max)}; }

    /// True when `inner` lies inside this box, allowing `tol` of protrusion per face.
    constexpr bool contains(const Aabb& inner, double tol = 0.0) const
    {
        for (int a = 0; a < 3; ++a) {
            if (inner.min[a] < min[a] - tol || inner.max[a] > max[a] + tol) return false;
        }
        return true;
    }

    constexpr bool contains_point(const Vec3& p) const
    {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
               p.z <= max.z;
    }

    Vec3 closest_point(const Vec3& p) const
    {
        return {std::clamp(p.x, min.x, max.x), std::clamp(p.y, min.y, max.y),
                std::clamp(p.z, min.z, max.z)};
    }

    double distance_to(const Vec3& p) const { return length(closest_point(p) - p); }
};

/// Penetration depth of two boxes: the smallest per-axis overlap, or a
/// non-positive value when they are separated (or merely touching).
inline double penetration_depth(const Aabb& a, const Aabb& b)
{
    double depth = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        double overlap = std::min(a.max[axis], b.max[axis]) - std::max(a.min[axis], b.min[axis]);
        depth = std::min(depth, overlap);
    }
    return depth;
}

// Quarter-turn rotation about +y. Exact for the quantized yaws the world uses.
inline int quarter_turns(int yaw_degrees) { return ((yaw_degrees / 90) % 4 + 4) % 4; }

inline Vec3 rotate_yaw(const Vec3& v, int yaw_degrees)
{
    switch (quarter_turns(yaw_degrees)) {
    case 1: return {v.z, v.y, -v.x};
    case 2: return {-v.x, v.y, -v.z};
    case 3: return {-v.z, v.y, v.x};
    default: return v;
    }
}

inline Aabb rotate_yaw(const Aabb& box, int yaw_degrees)
{
    Vec3 a = rotate_yaw(box.min, yaw_degrees);
    Vec3 b = rotate_yaw(box.max, yaw_degrees);
    return {cwise_min(a, b), cwise_max(a, b)};
}

/// Horizontal facing direction for a quantized yaw.
inline Vec3 yaw_forward(int yaw_degrees) { return rotate_yaw(Vec3{0, 0, 1}, yaw_degrees); }
inline Vec3 yaw_right(int yaw_degrees) { return rotate_yaw(Vec3{1, 0, 0}, yaw_degrees); }

inline bool is_quantized_yaw(int yaw) { return yaw == 0 || yaw == 90 || yaw == 180 || yaw == 270; }

} // namespace hearth
