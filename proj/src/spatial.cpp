#include "hearth/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hearth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Capsule contact is reached this far inside the skin boundary; sweeps then
// back off so the returned pose is strictly clear of it.
constexpr double kContactEps = 1e-9;
constexpr double kSweepBackoff = 1e-6;

struct Interval {
    double t0 = -kInf;
    double t1 = kInf;
};

bool axis_interval(double o, double d, double lo, double hi, Interval& iv)
{
    if (d == 0.0) return o >= lo && o <= hi;
    double inv = 1.0 / d;
    double ta = (lo - o) * inv;
    double tb = (hi - o) * inv;
    if (ta > tb) std::swap(ta, tb);
    iv.t0 = std::max(iv.t0, ta);
    iv.t1 = std::min(iv.t1, tb);
    return iv.t0 <= iv.t1;
}

// Roots of a*t^2 + b*t + c <= 0 for a >= 0.
bool quadratic_interval(double a, double b, double c, Interval& iv)
{
    if (a <= 0.0) {
        if (c > 0.0) return false;
        return true;
    }
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return false;
    double sq = std::sqrt(disc);
    iv.t0 = std::max(iv.t0, (-b - sq) / (2.0 * a));
    iv.t1 = std::min(iv.t1, (-b + sq) / (2.0 * a));
    return iv.t0 <= iv.t1;
}

// Clips an interval to [0, limit] and returns its entry parameter.
std::optional<double> entry_of(const Interval& iv, double limit)
{
    if (iv.t1 < 0.0 || iv.t0 > limit) return std::nullopt;
    return std::max(iv.t0, 0.0);
}

std::array<Vec3, 8> corners(const Aabb& b)
{
    return {{{b.min.x, b.min.y, b.min.z},
             {b.max.x, b.min.y, b.min.z},
             {b.min.x, b.max.y, b.min.z},
             {b.max.x, b.max.y, b.min.z},
             {b.min.x, b.min.y, b.max.z},
             {b.max.x, b.min.y, b.max.z},
             {b.min.x, b.max.y, b.max.z},
             {b.max.x, b.max.y, b.max.z}}};
}

// Picks the nearest hit; hits within kTieEpsilon of the nearest resolve to
// the smallest owner id, then smallest t, then collider index. The result
// does not depend on the order candidates were found in.
std::optional<RawHit> select_hit(std::span<const RawHit> hits, std::span<const Collider> colliders)
{
    if (hits.empty()) return std::nullopt;
    double tmin = kInf;
    for (const auto& h : hits) tmin = std::min(tmin, h.t);
    const RawHit* best = nullptr;
    for (const auto& h : hits) {
        if (h.t > tmin + kTieEpsilon) continue;
        if (!best) {
            best = &h;
            continue;
        }
        const std::string& a = colliders[static_cast<std::size_t>(h.collider)].ownerId;
        const std::string& b = colliders[static_cast<std::size_t>(best->collider)].ownerId;
        if (a < b || (a == b && (h.t < best->t || (h.t == best->t && h.collider < best->collider)))) best = &h;
    }
    return *best;
}

CastHit to_cast_hit(const RawHit& raw, std::span<const Collider> colliders, const Ray& ray)
{
    return {colliders[static_cast<std::size_t>(raw.collider)].ownerId, raw.t, ray.origin + ray.direction * raw.t};
}

struct SweepQuery {
    AgentState agent;
    Vec3 dir;
    double limit = 0.0;
    Aabb region;
};

SweepQuery make_sweep(const AgentState& agent, const Vec3& displacement)
{
    SweepQuery q;
    q.agent = agent;
    q.limit = length(displacement);
    q.dir = q.limit > 0.0 ? displacement / q.limit : Vec3{};
    double r = agent.capsuleRadius + kSkin + 1e-6;
    Aabb start{agent.position - Vec3{r, 0, r}, agent.position + Vec3{r, agent.capsuleHeight, r}};
    q.region = start.merged(start.translated(displacement));
    return q;
}

bool boxes_touch(const Aabb& a, const Aabb& b)
{
    for (int k = 0; k < 3; ++k) {
        if (a.max[k] < b.min[k] || b.max[k] < a.min[k]) return false;
    }
    return true;
}

} // namespace

std::vector<Collider> gather_colliders(const Scene& scene, const ObjectClassCatalog& catalog)
{
    std::vector<Collider> out;
    for (std::size_t i = 0; i < scene.walls.size(); ++i) {
        out.push_back({scene.walls[i], "Wall_" + std::to_string(i), ColliderKind::Wall, false, -1});
    }
    auto add_list = [&](const std::vector<ObjectInstance>& list, ColliderKind kind) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            const ObjectInstance& o = list[i];
            const ObjectClass* cls = catalog.find(o.category);
            if (!cls) continue;
            for (const Aabb& b : collider_boxes(o, *cls)) {
                out.push_back({b, o.objectId, kind, cls->transparent, static_cast<int>(i)});
            }
        }
    };
    add_list(scene.objects, ColliderKind::Object);
    add_list(scene.props, ColliderKind::Prop);
    return out;
}

namespace {

// Ray with per-axis reciprocals precomputed; same arithmetic as slab_interval.
struct SlabRay {
    double o[3];
    double d[3];
    double inv[3];

    explicit SlabRay(const Ray& ray)
    {
        for (int a = 0; a < 3; ++a) {
            o[a] = ray.origin[a];
            d[a] = ray.direction[a];
            inv[a] = d[a] != 0.0 ? 1.0 / d[a] : 0.0;
        }
    }

    bool interval(const Aabb& box, double pad, double& t0, double& t1) const
    {
        double lo = -kInf, hi = kInf;
        for (int a = 0; a < 3; ++a) {
            double bmin = box.min[a] - pad;
            double bmax = box.max[a] + pad;
            if (d[a] == 0.0) {
                if (o[a] < bmin || o[a] > bmax) return false;
                continue;
            }
            double ta = (bmin - o[a]) * inv[a];
            double tb = (bmax - o[a]) * inv[a];
            if (ta > tb) std::swap(ta, tb);
            lo = std::max(lo, ta);
            hi = std::min(hi, tb);
            if (lo > hi) return false;
        }
        t0 = lo;
        t1 = hi;
        return true;
    }
};

std::optional<double> ray_box_entry_fast(const Ray& ray, const SlabRay& sr, const Aabb& box);

} // namespace

bool slab_interval(const Vec3& origin, const Vec3& dir, const Aabb& box, double& t0, double& t1)
{
    Interval iv;
    for (int a = 0; a < 3; ++a) {
        if (!axis_interval(origin[a], dir[a], box.min[a], box.max[a], iv)) return false;
    }
    t0 = iv.t0;
    t1 = iv.t1;
    return true;
}

std::optional<double> ray_box_entry(const Ray& ray, const Aabb& box) { return ray_box_entry_fast(ray, SlabRay(ray), box); }

namespace {

std::optional<double> ray_box_entry_fast(const Ray& ray, const SlabRay& sr, const Aabb& box)
{
    const Vec3& o = ray.origin;
    const Vec3& d = ray.direction;
    const double r = ray.radius;
    Interval outer;
    if (!sr.interval(box, r > 0.0 ? r : 0.0, outer.t0, outer.t1)) return std::nullopt;
    if (!entry_of(outer, ray.maxLength)) return std::nullopt;
    if (r <= 0.0) return entry_of(outer, ray.maxLength);

    double best = kInf;
    auto consider = [&](const Interval& iv) {
        if (auto e = entry_of(iv, ray.maxLength)) best = std::min(best, *e);
    };

    // Box grown along one axis at a time.
    for (int a = 0; a < 3; ++a) {
        Aabb slab = box;
        slab.min[a] -= r;
        slab.max[a] += r;
        Interval iv;
        if (slab_interval(o, d, slab, iv.t0, iv.t1)) consider(iv);
    }
    // Edge cylinders: axis k, offset corners on the other two axes.
    for (int k = 0; k < 3; ++k) {
        int i = (k + 1) % 3;
        int j = (k + 2) % 3;
        for (double ci : {box.min[i], box.max[i]}) {
            for (double cj : {box.min[j], box.max[j]}) {
                Interval iv;
                double pi = o[i] - ci, pj = o[j] - cj;
                double a = d[i] * d[i] + d[j] * d[j];
                double b = 2.0 * (pi * d[i] + pj * d[j]);
                double c = pi * pi + pj * pj - r * r;
                if (!quadratic_interval(a, b, c, iv)) continue;
                if (!axis_interval(o[k], d[k], box.min[k], box.max[k], iv)) continue;
                consider(iv);
            }
        }
    }
    for (const Vec3& corner : corners(box)) {
        Vec3 p = o - corner;
        Interval iv;
        if (quadratic_interval(dot(d, d), 2.0 * dot(p, d), dot(p, p) - r * r, iv)) consider(iv);
    }
    if (best == kInf) return std::nullopt;
    return best;
}

} // namespace

bool capsule_overlaps(const AgentState& agent, const Aabb& box)
{
    return capsule_axis_distance(agent, box) < agent.capsuleRadius + kSkin - kContactEps;
}

double capsule_free_distance(const AgentState& agent, const Vec3& dir, double limit, const Aabb& box)
{
    const double reach = agent.capsuleRadius + kSkin - kContactEps;
    if (capsule_axis_distance(agent, box) < reach) return 0.0;

    double s = kInf;
    if (dir.y == 0.0) {
        double y0 = agent.position.y + agent.capsuleRadius;
        double y1 = agent.position.y + agent.capsuleHeight - agent.capsuleRadius;
        double dy = std::max({0.0, box.min.y - y1, y0 - box.max.y});
        if (dy >= reach) return limit;
        // Horizontal motion: a point against the footprint rounded by r2.
        double r2 = std::sqrt(reach * reach - dy * dy);
        const double ox = agent.position.x, oz = agent.position.z;
        auto rect = [&](double gx, double gz) {
            Interval iv;
            if (!axis_interval(ox, dir.x, box.min.x - gx, box.max.x + gx, iv)) return;
            if (!axis_interval(oz, dir.z, box.min.z - gz, box.max.z + gz, iv)) return;
            if (auto e = entry_of(iv, limit)) s = std::min(s, *e);
        };
        rect(r2, 0.0);
        rect(0.0, r2);
        for (double cx : {box.min.x, box.max.x}) {
            for (double cz : {box.min.z, box.max.z}) {
                double px = ox - cx, pz = oz - cz;
                Interval iv;
                double a = dir.x * dir.x + dir.z * dir.z;
                if (!quadratic_interval(a, 2.0 * (px * dir.x + pz * dir.z), px * px + pz * pz - r2 * r2, iv)) {
                    continue;
                }
                if (auto e = entry_of(iv, limit)) s = std::min(s, *e);
            }
        }
    } else {
        // Conservative advancement on the distance field; it is 1-Lipschitz
        // in the travelled distance so each step stays clear.
        double travelled = 0.0;
        for (int iter = 0; iter < 512; ++iter) {
            AgentState probe = agent;
            probe.position += dir * travelled;
            double gap = capsule_axis_distance(probe, box) - reach;
            if (gap <= 1e-10) {
                s = travelled;
                break;
            }
            travelled += gap;
            if (travelled >= limit) break;
        }
    }
    if (s == kInf || s >= limit) return limit;
    return std::max(0.0, s - kSweepBackoff);
}

// --- Bvh -------------------------------------------------------------------

Bvh::Bvh(std::vector<Collider> colliders) : colliders_(std::move(colliders))
{
    order_.resize(colliders_.size());
    std::iota(order_.begin(), order_.end(), 0);
    if (!colliders_.empty()) {
        nodes_.reserve(2 * colliders_.size());
        build(0, static_cast<int>(colliders_.size()));
    }
}

int Bvh::build(int first, int count)
{
    int index = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    Aabb bounds = colliders_[static_cast<std::size_t>(order_[static_cast<std::size_t>(first)])].box;
    Aabb centroids{bounds.center(), bounds.center()};
    for (int k = first; k < first + count; ++k) {
        const Aabb& b = colliders_[static_cast<std::size_t>(order_[static_cast<std::size_t>(k)])].box;
        bounds = bounds.merged(b);
        centroids = centroids.merged({b.center(), b.center()});
    }
    nodes_[static_cast<std::size_t>(index)].bounds = bounds;
    constexpr int kLeafSize = 4;
    if (count <= kLeafSize) {
        nodes_[static_cast<std::size_t>(index)].first = first;
        nodes_[static_cast<std::size_t>(index)].count = count;
        return index;
    }
    Vec3 extent = centroids.size();
    int axis = extent.x >= extent.y && extent.x >= extent.z ? 0 : (extent.y >= extent.z ? 1 : 2);
    auto begin = order_.begin() + first;
    std::sort(begin, begin + count, [&](int a, int b) {
        double ca = colliders_[static_cast<std::size_t>(a)].box.center()[axis];
        double cb = colliders_[static_cast<std::size_t>(b)].box.center()[axis];
        return ca < cb || (ca == cb && a < b);
    });
    int half = count / 2;
    int left = build(first, half);
    int right = build(first + half, count - half);
    nodes_[static_cast<std::size_t>(index)].left = left;
    nodes_[static_cast<std::size_t>(index)].right = right;
    return index;
}

std::optional<RawHit> Bvh::cast_raw(const Ray& ray, const CastFilter& filter) const
{
    if (nodes_.empty()) return std::nullopt;
    thread_local std::vector<RawHit> hits;
    hits.clear();
    double best = kInf;
    struct Pending {
        int node;
        double t;
    };
    Pending stack[64];
    int top = 0;
    const double pad = ray.radius + 1e-9;
    const SlabRay sr(ray);
    auto enter = [&](int index, double& t) {
        double t0, t1;
        const Node& node = nodes_[static_cast<std::size_t>(index)];
        if (!sr.interval(node.bounds, pad, t0, t1)) return false;
        if (t1 < 0.0 || t0 > ray.maxLength) return false;
        t = std::max(t0, 0.0);
        return true;
    };
    // A node whose entry is past the best hit plus the tie window cannot contribute.
    auto cutoff = [&] { return best + kTieEpsilon + 1e-7; };
    double rootT;
    if (!enter(0, rootT)) return std::nullopt;
    stack[top++] = {0, rootT};
    while (top > 0) {
        const Pending p = stack[--top];
        if (p.t > cutoff()) continue;
        const Node& node = nodes_[static_cast<std::size_t>(p.node)];
        if (node.left < 0) {
            for (int k = node.first; k < node.first + node.count; ++k) {
                int ci = order_[static_cast<std::size_t>(k)];
                const Collider& c = colliders_[static_cast<std::size_t>(ci)];
                if (filter.skips(c)) continue;
                if (auto t = ray_box_entry_fast(ray, sr, c.box)) {
                    hits.push_back({ci, *t});
                    best = std::min(best, *t);
                }
            }
            continue;
        }
        // Nearer child is pushed last so it is visited first.
        double tl = 0.0, tr = 0.0;
        bool hl = enter(node.left, tl) && tl <= cutoff();
        bool hr = enter(node.right, tr) && tr <= cutoff();
        if (hl && hr) {
            if (tl <= tr) {
                stack[top++] = {node.right, tr};
                stack[top++] = {node.left, tl};
            } else {
                stack[top++] = {node.left, tl};
                stack[top++] = {node.right, tr};
            }
        } else if (hl) {
            stack[top++] = {node.left, tl};
        } else if (hr) {
            stack[top++] = {node.right, tr};
        }
    }
    return select_hit(hits, colliders_);
}

std::optional<CastHit> Bvh::cast(const Ray& ray, const CastFilter& filter) const
{
    auto raw = cast_raw(ray, filter);
    if (!raw) return std::nullopt;
    return to_cast_hit(*raw, colliders_, ray);
}

double Bvh::sweep_capsule(const AgentState& agent, const Vec3& displacement) const
{
    SweepQuery q = make_sweep(agent, displacement);
    double free = q.limit;
    if (nodes_.empty() || q.limit <= 0.0) return free;
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
        if (!boxes_touch(node.bounds, q.region)) continue;
        if (node.left < 0) {
            for (int k = node.first; k < node.first + node.count; ++k) {
                const Collider& c = colliders_[static_cast<std::size_t>(order_[static_cast<std::size_t>(k)])];
                free = std::min(free, capsule_free_distance(agent, q.dir, q.limit, c.box));
            }
            continue;
        }
        stack[top++] = node.right;
        stack[top++] = node.left;
    }
    return free;
}

std::vector<int> Bvh::frustum_query(const Camera& camera) const
{
    std::vector<int> out;
    if (nodes_.empty()) return out;
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[static_cast<std::size_t>(stack[--top])];
        if (!frustum_contains(camera, node.bounds)) continue;
        if (node.left < 0) {
            for (int k = node.first; k < node.first + node.count; ++k) {
                int ci = order_[static_cast<std::size_t>(k)];
                if (frustum_contains(camera, colliders_[static_cast<std::size_t>(ci)].box)) out.push_back(ci);
            }
            continue;
        }
        stack[top++] = node.right;
        stack[top++] = node.left;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Bvh build_bvh(const Scene& scene, const ObjectClassCatalog& catalog)
{
    return Bvh(gather_colliders(scene, catalog));
}

namespace brute {

std::optional<RawHit> cast_raw(std::span<const Collider> colliders, const Ray& ray, const CastFilter& filter)
{
    std::vector<RawHit> hits;
    for (std::size_t i = 0; i < colliders.size(); ++i) {
        if (filter.skips(colliders[i])) continue;
        if (auto t = ray_box_entry(ray, colliders[i].box)) hits.push_back({static_cast<int>(i), *t});
    }
    return select_hit(hits, colliders);
}

std::optional<CastHit> cast(std::span<const Collider> colliders, const Ray& ray, const CastFilter& filter)
{
    auto raw = cast_raw(colliders, ray, filter);
    if (!raw) return std::nullopt;
    return to_cast_hit(*raw, colliders, ray);
}

double sweep_capsule(std::span<const Collider> colliders, const AgentState& agent, const Vec3& displacement)
{
    SweepQuery q = make_sweep(agent, displacement);
    double free = q.limit;
    if (q.limit <= 0.0) return free;
    for (const auto& c : colliders) free = std::min(free, capsule_free_distance(agent, q.dir, q.limit, c.box));
    return free;
}

std::vector<int> frustum_query(std::span<const Collider> colliders, const Camera& camera)
{
    std::vector<int> out;
    for (std::size_t i = 0; i < colliders.size(); ++i) {
        if (frustum_contains(camera, colliders[i].box)) out.push_back(static_cast<int>(i));
    }
    return out;
}

} // namespace brute

// --- Scene-level ----------------------------------------------------------

std::optional<CastHit> cast(const Ray& ray, const Scene& scene, const std::set<std::string>& ignore,
                            bool passTransparent)
{
    CastFilter filter;
    filter.ignore = &ignore;
    filter.passTransparent = passTransparent;
    return build_bvh(scene).cast(ray, filter);
}

double sweep_capsule(const AgentState& agent, const Vec3& displacement, const Scene& scene)
{
    return build_bvh(scene).sweep_capsule(agent, displacement);
}

bool frustum_contains(const Camera& camera, const Aabb& box)
{
    const auto fc = camera.frustum_corners();
    const auto bc = corners(box);
    const Vec3 f = camera.forward(), r = camera.right(), u = camera.up();

    std::array<Vec3, 6> edges = {r, u, fc[4] - fc[0], fc[5] - fc[1], fc[6] - fc[2], fc[7] - fc[3]};
    std::vector<Vec3> axes = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const auto& [n, off] : camera.frustum_halfspaces()) axes.push_back(n);
    axes.push_back(f);
    for (int k = 0; k < 3; ++k) {
        Vec3 e{};
        e[k] = 1.0;
        for (const Vec3& fe : edges) {
            Vec3 a = cross(e, fe);
            if (dot(a, a) > 1e-18) axes.push_back(a);
        }
    }
    for (const Vec3& axis : axes) {
        double amin = kInf, amax = -kInf, bmin = kInf, bmax = -kInf;
        for (const Vec3& p : fc) {
            double s = dot(axis, p);
            amin = std::min(amin, s);
            amax = std::max(amax, s);
        }
        for (const Vec3& p : bc) {
            double s = dot(axis, p);
            bmin = std::min(bmin, s);
            bmax = std::max(bmax, s);
        }
        if (amax < bmin || bmax < amin) return false;
    }
    return true;
}

std::optional<Vec3> nearest_point_in_frustum(const Camera& camera, const Aabb& box)
{
    std::array<std::pair<Vec3, double>, 12> hs;
    auto planes = camera.frustum_halfspaces();
    for (int i = 0; i < 6; ++i) hs[static_cast<std::size_t>(i)] = planes[static_cast<std::size_t>(i)];
    for (int a = 0; a < 3; ++a) {
        Vec3 n{};
        n[a] = 1.0;
        hs[static_cast<std::size_t>(6 + 2 * a)] = {n, box.max[a]};
        hs[static_cast<std::size_t>(7 + 2 * a)] = {-n, -box.min[a]};
    }
    const Vec3 p = camera.position;
    auto feasible = [&](const Vec3& x) {
        for (const auto& [n, c] : hs) {
            if (dot(n, x) > c + 1e-9) return false;
        }
        return true;
    };

    std::optional<Vec3> best;
    double best_d2 = kInf;
    auto offer = [&](const Vec3& x) {
        if (!x.finite() || !feasible(x)) return;
        double d2 = dot(x - p, x - p);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = x;
        }
    };

    // Projection onto the affine hull of every active set of size <= 3.
    offer(p);
    const int n = static_cast<int>(hs.size());
    for (int i = 0; i < n; ++i) {
        const auto& [ni, ci] = hs[static_cast<std::size_t>(i)];
        offer(p - ni * ((dot(ni, p) - ci) / dot(ni, ni)));
        for (int j = i + 1; j < n; ++j) {
            const auto& [nj, cj] = hs[static_cast<std::size_t>(j)];
            double g11 = dot(ni, ni), g12 = dot(ni, nj), g22 = dot(nj, nj);
            double det2 = g11 * g22 - g12 * g12;
            if (std::abs(det2) > 1e-12) {
                double r1 = dot(ni, p) - ci, r2 = dot(nj, p) - cj;
                double l1 = (r1 * g22 - r2 * g12) / det2;
                double l2 = (g11 * r2 - g12 * r1) / det2;
                offer(p - ni * l1 - nj * l2);
            }
            for (int k = j + 1; k < n; ++k) {
                const auto& [nk, ck] = hs[static_cast<std::size_t>(k)];
                // Three planes meet in a point: solve N x = c directly.
                double det3 = dot(ni, cross(nj, nk));
                if (std::abs(det3) < 1e-12) continue;
                Vec3 x = (cross(nj, nk) * ci + cross(nk, ni) * cj + cross(ni, nj) * ck) / det3;
                offer(x);
            }
        }
    }
    return best;
}

std::optional<Vec3> fit_in_receptacle(const Aabb& objBox, const ObjectInstance& receptacle, const Scene& scene,
                                      std::string_view ignoreId, const ObjectClassCatalog& catalog)
{
    const ObjectClass* cls = catalog.find(receptacle.category);
    if (!cls) return std::nullopt;
    auto interior = interior_world(receptacle, *cls);
    if (!interior) return std::nullopt;
    const Aabb& w = *interior;
    const Vec3 size = objBox.size();
    const Vec3 room = w.size();
    constexpr double eps = 1e-9;
    if (size.x > room.x + eps || size.y > room.y + eps || size.z > room.z + eps) return std::nullopt;

    std::vector<Aabb> obstacles;
    for (const auto& c : gather_colliders(scene, catalog)) {
        if (c.ownerId == receptacle.objectId || (!ignoreId.empty() && c.ownerId == ignoreId)) continue;
        if (boxes_touch(c.box, w)) obstacles.push_back(c.box);
    }

    // Receptacle-local +x (left to right) and +z (back to front) in world.
    Vec3 ex = yaw_right(receptacle.rotationYaw);
    Vec3 ez = yaw_forward(receptacle.rotationYaw);
    int ax = ex.x != 0.0 ? 0 : 2;
    int az = ez.x != 0.0 ? 0 : 2;
    double sx = ex[ax], sz = ez[az];

    int nx = static_cast<int>(std::floor((room[ax] - size[ax]) / kPlacementPitch + eps));
    int nz = static_cast<int>(std::floor((room[az] - size[az]) / kPlacementPitch + eps));
    for (int k = 0; k <= nz; ++k) {
        for (int i = 0; i <= nx; ++i) {
            Vec3 lo;
            lo.y = w.min.y;
            lo[ax] = sx > 0 ? w.min[ax] + i * kPlacementPitch : w.max[ax] - i * kPlacementPitch - size[ax];
            lo[az] = sz > 0 ? w.min[az] + k * kPlacementPitch : w.max[az] - k * kPlacementPitch - size[az];
            Aabb cand{lo, lo + size};
            if (!w.contains(cand, eps)) continue;
            // Margin so the pose re-derived from the stored position stays within the skin.
            bool clear = std::none_of(obstacles.begin(), obstacles.end(),
                                      [&](const Aabb& o) { return penetration_depth(cand, o) > kSkin - 1e-7; });
            if (clear) return lo - objBox.min;
        }
    }
    return std::nullopt;
}

} // namespace hearth
