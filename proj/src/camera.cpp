#include "hearth/camera.hpp"

#include <numbers>

namespace hearth {

std::pair<double, double> pitch_sin_cos(int degrees)
{
    static const double half_sqrt3 = std::sqrt(3.0) / 2.0;
    switch (degrees) {
    case 0: return {0.0, 1.0};
    case 30: return {0.5, half_sqrt3};
    case -30: return {-0.5, half_sqrt3};
    case 60: return {half_sqrt3, 0.5};
    case -60: return {-half_sqrt3, 0.5};
    case 90: return {1.0, 0.0};
    case -90: return {-1.0, 0.0};
    default: {
        double rad = degrees * std::numbers::pi / 180.0;
        return {std::sin(rad), std::cos(rad)};
    }
    }
}

double Camera::tan_half_h() const
{
    if (hfovDegrees == 90.0) return 1.0;
    return std::tan(hfovDegrees * std::numbers::pi / 360.0);
}

Vec3 Camera::forward() const
{
    auto [s, c] = pitch_sin_cos(pitch);
    Vec3 flat = yaw_forward(yaw);
    return {flat.x * c, -s, flat.z * c};
}

std::array<Vec3, 8> Camera::frustum_corners() const
{
    Vec3 f = forward(), r = right(), u = up();
    double th = tan_half_h(), tv = tan_half_v();
    std::array<Vec3, 8> out;
    int k = 0;
    for (double d : {nearPlane, farPlane}) {
        Vec3 c = position + f * d;
        out[k++] = c - r * (d * th) - u * (d * tv);
        out[k++] = c + r * (d * th) - u * (d * tv);
        out[k++] = c + r * (d * th) + u * (d * tv);
        out[k++] = c - r * (d * th) + u * (d * tv);
    }
    return out;
}

std::array<std::pair<Vec3, double>, 6> Camera::frustum_halfspaces() const
{
    Vec3 f = forward(), r = right(), u = up();
    double th = tan_half_h(), tv = tan_half_v();
    // A side plane passes through the apex; its outward normal is
    // perpendicular to both the edge directions on that side.
    auto side = [&](const Vec3& outward) {
        Vec3 n = normalize(outward);
        return std::pair<Vec3, double>{n, dot(n, position)};
    };
    return {{
        {-f, -dot(f, position + f * nearPlane)},
        {f, dot(f, position + f * farPlane)},
        side(-r - f * th),
        side(r - f * th),
        side(-u - f * tv),
        side(u - f * tv),
    }};
}

} // namespace hearth
