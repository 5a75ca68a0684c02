#pragma once

#include "hearth/camera.hpp"
#include "hearth/spatial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hearth {

struct RenderOptions {
    bool depth = false;
    bool instanceIds = false;
};

/// Rendered buffers, row-major with the top row first.
struct FrameSet {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;
    /// Euclidean hit distance in meters, 0 where the ray escapes. Empty
    /// unless requested.
    std::vector<float> depth;
    /// 0 for no instance, otherwise 1 + index into idTable.
    std::vector<std::uint32_t> ids;
    std::vector<std::string> idTable;

    bool operator==(const FrameSet&) const = default;

    /// Id at pixel (col, row), empty when none.
    std::string id_at(int col, int row) const;
    std::uint64_t hash() const;
};

inline constexpr Rgb kSkyColor{16, 16, 16};
inline constexpr Rgb kWallColor{214, 208, 196};
inline constexpr Rgb kFloorColor{128, 104, 82};

/// Row-parallel render; `threads` <= 0 uses the OpenMP default.
FrameSet render_frame(const Scene& scene, const Camera& camera, const Bvh& bvh, RenderOptions options = {},
                      int threads = 0, const ObjectClassCatalog& catalog = default_catalog());

/// Single-threaded reference producing identical buffers.
FrameSet render_frame_serial(const Scene& scene, const Camera& camera, const Bvh& bvh, RenderOptions options = {},
                             const ObjectClassCatalog& catalog = default_catalog());

} // namespace hearth
