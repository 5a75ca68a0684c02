#include "hearth/renderer.hpp"

#include "hearth/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <omp.h>

namespace hearth {

std::string FrameSet::id_at(int col, int row) const
{
    if (ids.empty()) return {};
    std::uint32_t v = ids[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)];
    return v == 0 ? std::string() : idTable[v - 1];
}

std::uint64_t FrameSet::hash() const
{
    std::uint64_t h = fnv1a(rgb.data(), rgb.size());
    h = fnv1a(depth.data(), depth.size() * sizeof(float), h);
    h = fnv1a(ids.data(), ids.size() * sizeof(std::uint32_t), h);
    for (const auto& id : idTable) h = fnv1a(id.data(), id.size() + 1, h);
    return h;
}

namespace {

constexpr double kFarRay = 1000.0;

// Everything the per-pixel kernel reads, resolved once per frame.
struct FrameContext {
    const Bvh* bvh = nullptr;
    Camera camera;
    Aabb floor;
    std::vector<Rgb> colors;            // per collider, toggle boost applied
    std::vector<std::uint32_t> labels;  // per collider, 0 for walls
    bool anyTransparent = false;
    RenderOptions options;
    Vec3 light;
};

FrameContext make_context(const Scene& scene, const Camera& camera, const Bvh& bvh, RenderOptions options,
                          const ObjectClassCatalog& catalog, std::vector<std::string>& idTable)
{
    FrameContext ctx;
    ctx.bvh = &bvh;
    ctx.camera = camera;
    ctx.floor = scene.floorBounds;
    ctx.options = options;
    ctx.light = normalize(Vec3{1, 2, 1});

    idTable.clear();
    for (const auto& o : scene.objects) idTable.push_back(o.objectId);
    for (const auto& o : scene.props) idTable.push_back(o.objectId);
    std::sort(idTable.begin(), idTable.end());
    std::unordered_map<std::string, std::uint32_t> label_of;
    for (std::size_t i = 0; i < idTable.size(); ++i) label_of[idTable[i]] = static_cast<std::uint32_t>(i + 1);

    for (const Collider& c : bvh.colliders()) {
        Rgb color = kWallColor;
        std::uint32_t label = 0;
        if (c.kind != ColliderKind::Wall) {
            const auto& list = c.kind == ColliderKind::Object ? scene.objects : scene.props;
            const ObjectInstance& o = list[static_cast<std::size_t>(c.instance)];
            const ObjectClass& cls = catalog.at(o.category);
            color = cls.variants[static_cast<std::size_t>(o.variantIndex)].color;
            if (o.isToggled) {
                auto boost = [](std::uint8_t v) { return static_cast<std::uint8_t>(std::min(255.0, v * 1.5)); };
                color = {boost(color.r), boost(color.g), boost(color.b)};
            }
            label = label_of[o.objectId];
        }
        ctx.anyTransparent = ctx.anyTransparent || c.transparent;
        ctx.colors.push_back(color);
        ctx.labels.push_back(label);
    }
    return ctx;
}

std::uint8_t to_byte(double v)
{
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

// Face normal of the box face containing the hit point.
Vec3 face_normal(const Aabb& box, const Vec3& p, const Vec3& dir)
{
    double best = std::numeric_limits<double>::infinity();
    Vec3 n = -dir;
    for (int k = 0; k < 3; ++k) {
        double dmin = std::abs(p[k] - box.min[k]);
        double dmax = std::abs(p[k] - box.max[k]);
        if (dmin < best) {
            best = dmin;
            n = {};
            n[k] = -1.0;
        }
        if (dmax < best) {
            best = dmax;
            n = {};
            n[k] = 1.0;
        }
    }
    return n;
}

struct Shade {
    double r = kSkyColor.r, g = kSkyColor.g, b = kSkyColor.b;
};

Shade lit(Rgb c, const Vec3& n, const Vec3& light)
{
    double k = 0.3 + 0.7 * std::max(0.0, dot(n, light));
    return {c.r * k, c.g * k, c.b * k};
}

void shade_pixel(const FrameContext& ctx, int col, int row, std::uint8_t* rgb, float* depth, std::uint32_t* id)
{
    Ray ray;
    ray.origin = ctx.camera.position;
    ray.direction = ctx.camera.pixel_direction(col, row);
    ray.maxLength = kFarRay;

    // The floor is not a collider; when it is hit, nothing past it matters.
    double tf = std::numeric_limits<double>::infinity();
    if (ray.direction.y < 0.0) {
        double t = -ray.origin.y / ray.direction.y;
        Vec3 p = ray.origin + ray.direction * t;
        if (p.x >= ctx.floor.min.x && p.x <= ctx.floor.max.x && p.z >= ctx.floor.min.z && p.z <= ctx.floor.max.z) {
            tf = t;
            ray.maxLength = std::min(ray.maxLength, t);
        }
    }

    CastFilter opaque;
    opaque.passTransparent = true;
    auto hit = ctx.bvh->cast_raw(ray, opaque);
    double t = hit ? hit->t : std::numeric_limits<double>::infinity();

    Shade s;
    std::uint32_t label = 0;
    bool floor = tf < t;
    if (floor) t = tf;
    if (floor) {
        s = lit(kFloorColor, {0, 1, 0}, ctx.light);
    } else if (hit) {
        const Collider& c = ctx.bvh->colliders()[static_cast<std::size_t>(hit->collider)];
        Vec3 p = ray.origin + ray.direction * t;
        s = lit(ctx.colors[static_cast<std::size_t>(hit->collider)], face_normal(c.box, p, ray.direction), ctx.light);
        label = ctx.labels[static_cast<std::size_t>(hit->collider)];
    }

    // Glass in front of the opaque hit tints it.
    if (ctx.anyTransparent) {
        Ray glass_ray = ray;
        glass_ray.maxLength = std::isfinite(t) ? t : kFarRay;
        if (auto g = ctx.bvh->cast_raw(glass_ray)) {
            const Collider& c = ctx.bvh->colliders()[static_cast<std::size_t>(g->collider)];
            if (c.transparent && g->t < t) {
                Rgb gc = ctx.colors[static_cast<std::size_t>(g->collider)];
                s = {0.7 * s.r + 0.3 * gc.r, 0.7 * s.g + 0.3 * gc.g, 0.7 * s.b + 0.3 * gc.b};
            }
        }
    }

    rgb[0] = to_byte(s.r);
    rgb[1] = to_byte(s.g);
    rgb[2] = to_byte(s.b);
    if (depth) *depth = std::isfinite(t) ? static_cast<float>(t) : 0.0f;
    if (id) *id = label;
}

void render_row(const FrameContext& ctx, FrameSet& f, int row)
{
    for (int col = 0; col < f.width; ++col) {
        std::size_t i = static_cast<std::size_t>(row) * static_cast<std::size_t>(f.width) + static_cast<std::size_t>(col);
        shade_pixel(ctx, col, row, &f.rgb[3 * i], f.depth.empty() ? nullptr : &f.depth[i],
                    f.ids.empty() ? nullptr : &f.ids[i]);
    }
}

FrameSet allocate(const Camera& camera, RenderOptions options)
{
    FrameSet f;
    f.width = camera.width;
    f.height = camera.height;
    std::size_t n = static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height);
    f.rgb.assign(3 * n, 0);
    if (options.depth) f.depth.assign(n, 0.0f);
    if (options.instanceIds) f.ids.assign(n, 0);
    return f;
}

} // namespace

FrameSet render_frame(const Scene& scene, const Camera& camera, const Bvh& bvh, RenderOptions options, int threads,
                      const ObjectClassCatalog& catalog)
{
    FrameSet f = allocate(camera, options);
    FrameContext ctx = make_context(scene, camera, bvh, options, catalog, f.idTable);
    if (!options.instanceIds) f.idTable.clear();
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
    for (int row = 0; row < f.height; ++row) render_row(ctx, f, row);
    return f;
}

FrameSet render_frame_serial(const Scene& scene, const Camera& camera, const Bvh& bvh, RenderOptions options,
                             const ObjectClassCatalog& catalog)
{
    FrameSet f = allocate(camera, options);
    FrameContext ctx = make_context(scene, camera, bvh, options, catalog, f.idTable);
    if (!options.instanceIds) f.idTable.clear();
    for (int row = 0; row < f.height; ++row) render_row(ctx, f, row);
    return f;
}

} // namespace hearth
