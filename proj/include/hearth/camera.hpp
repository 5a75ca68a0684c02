#pragma once

#include "hearth/geometry.hpp"
#include "hearth/scene.hpp"

#include <array>

namespace hearth {

inline constexpr double kEyeHeight = 1.575;
inline constexpr double kNearPlane = 0.01;
/// The visibility ray (and the frustum's far plane) reach this far past the
/// visibility distance to cover the camera-to-agent-center offset.
inline constexpr double kVisibilityRayExtra = 0.2;
inline constexpr double kThickRayRadius = 0.02;

struct Camera {
    Vec3 position;
    int yaw = 0;
    int pitch = 0; ///< degrees, positive looks down
    double hfovDegrees = 90.0;
    int width = 300;
    int height = 300;
    double nearPlane = kNearPlane;
    double farPlane = 1.5 + kVisibilityRayExtra;

    static Camera from_agent(const AgentState& agent, int width, int height, double visibilityDistance = 1.5)
    {
        Camera c;
        c.position = agent.position + Vec3{0, kEyeHeight, 0};
        c.yaw = agent.rotationYaw;
        c.pitch = agent.cameraHorizon;
        c.width = width;
        c.height = height;
        c.farPlane = visibilityDistance + kVisibilityRayExtra;
        return c;
    }

    double aspect() const { return static_cast<double>(width) / static_cast<double>(height); }
    double tan_half_h() const;
    double tan_half_v() const { return tan_half_h() / aspect(); }

    Vec3 forward() const;
    Vec3 right() const { return yaw_right(yaw); }
    Vec3 up() const { return cross(forward(), right()); }

    /// Unit direction through the center of pixel (col, row); row 0 is the top.
    Vec3 pixel_direction(int col, int row) const
    {
        double sx = (2.0 * (col + 0.5) / width - 1.0) * tan_half_h();
        double sy = (1.0 - 2.0 * (row + 0.5) / height) * tan_half_v();
        return normalize(forward() + right() * sx + up() * sy);
    }

    /// The eight frustum corners, near plane first (bl, br, tr, tl).
    std::array<Vec3, 8> frustum_corners() const;

    /// Inward-facing planes as (normal, offset) with normal . p <= offset
    /// meaning "inside": near, far, left, right, bottom, top.
    std::array<std::pair<Vec3, double>, 6> frustum_halfspaces() const;
};

/// sin/cos for camera pitch. Exact table for multiples of 30 degrees so the
/// camera basis is identical on every host.
std::pair<double, double> pitch_sin_cos(int degrees);

} // namespace hearth
