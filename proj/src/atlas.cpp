#include "luganopet/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace luganopet {

namespace {

constexpr float kInf = std::numeric_limits<float>::infinity();
// Finite sentinel for "no foreground"; far larger than any real squared
// distance (mm^2) in images this code sees, small enough to stay exact in the
// envelope arithmetic.
constexpr float kFar = 1e12f;

// Felzenszwalb-Huttenlocher 1D squared distance transform, sample positions i*h.
void dt_1d(const float* f, float* d, int n, double h, std::vector<int>& v,
           std::vector<double>& z) {
    v.resize(n);
    z.resize(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        const double qh = q * h;
        double s;
        while (true) {
            const double vh = v[k] * h;
            s = ((f[q] + qh * qh) - (f[v[k]] + vh * vh)) / (2.0 * qh - 2.0 * vh);
            if (s <= z[k]) { --k; continue; }
            break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    for (int q = 0, j = 0; q < n; ++q) {
        const double qh = q * h;
        while (z[j + 1] < qh) ++j;
        const double diff = qh - v[j] * h;
        d[q] = static_cast<float>(std::min<double>(f[v[j]] + diff * diff, kFar));
    }
}

using Mask = std::vector<std::uint8_t>;

struct BBox {
    std::array<double, 3> lo{kInf, kInf, kInf};       // world mm
    std::array<double, 3> hi{-kInf, -kInf, -kInf};
    std::array<double, 3> centroid{0, 0, 0};
    std::int64_t count = 0;
    bool empty() const { return count == 0; }
};

struct EvalContext {
    const LabelVolume& landmarks;
    const Grid3& grid;
    std::vector<std::string>* warnings;
    std::unordered_map<std::string, Mask> mask_cache;
    std::unordered_map<std::string, BBox> bbox_cache;

    void warn(const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    }

    const Mask& landmark_mask(const std::string& name) {
        auto it = mask_cache.find(name);
        if (it != mask_cache.end()) return it->second;
        Mask m(grid.voxel_count(), 0);
        const std::int32_t label = landmarks.label_of(name);
        if (label == 0) {
            warn("landmark '" + name + "' is absent from the label map; treating as empty");
        } else {
            bool any = false;
            for (std::size_t v = 0; v < landmarks.labels.size(); ++v)
                if (landmarks.labels[v] == label) { m[v] = 1; any = true; }
            if (!any)
                warn("landmark '" + name + "' has no voxels; treating as empty");
        }
        return mask_cache.emplace(name, std::move(m)).first->second;
    }

    const BBox& landmark_bbox(const std::string& name) {
        auto it = bbox_cache.find(name);
        if (it != bbox_cache.end()) return it->second;
        const Mask& m = landmark_mask(name);
        BBox b;
        std::array<double, 3> sum{0, 0, 0};
        for (std::int64_t v = 0; v < static_cast<std::int64_t>(m.size()); ++v) {
            if (!m[v]) continue;
            int i, j, k;
            grid.unravel(v, i, j, k);
            const auto w = grid.world(i, j, k);
            for (int a = 0; a < 3; ++a) {
                b.lo[a] = std::min(b.lo[a], w[a]);
                b.hi[a] = std::max(b.hi[a], w[a]);
                sum[a] += w[a];
            }
            ++b.count;
        }
        if (b.count > 0)
            for (int a = 0; a < 3; ++a) b.centroid[a] = sum[a] / static_cast<double>(b.count);
        return bbox_cache.emplace(name, std::move(b)).first->second;
    }
};

Mask dilate_mask(const Mask& src, const Grid3& grid, double radius_mm) {
    if (radius_mm <= 0.0) return src;
    const std::vector<float> d2 = squared_distance_mm2(src, grid);
    Mask out(src.size(), 0);
    const double r2 = radius_mm * radius_mm;
    for (std::size_t v = 0; v < src.size(); ++v)
        out[v] = d2[v] <= r2 ? 1 : 0;
    return out;
}

// World coordinate predicate masks share one generator: keep voxels whose
// `axis` world coordinate compares to `ref` with the given sign.
Mask coord_halfspace(const Grid3& grid, int axis, bool greater, double ref) {
    Mask out(grid.voxel_count(), 0);
    std::int64_t v = 0;
    for (int k = 0; k < grid.dims[2]; ++k)
        for (int j = 0; j < grid.dims[1]; ++j)
            for (int i = 0; i < grid.dims[0]; ++i, ++v) {
                const double c = grid.world(i, j, k)[axis];
                out[v] = (greater ? c > ref : c < ref) ? 1 : 0;
            }
    return out;
}

Mask coord_slab(const Grid3& grid, int axis, double lo, double hi) {
    Mask out(grid.voxel_count(), 0);
    if (lo > hi) return out;
    std::int64_t v = 0;
    for (int k = 0; k < grid.dims[2]; ++k)
        for (int j = 0; j < grid.dims[1]; ++j)
            for (int i = 0; i < grid.dims[0]; ++i, ++v) {
                const double c = grid.world(i, j, k)[axis];
                out[v] = (c >= lo && c <= hi) ? 1 : 0;
            }
    return out;
}

struct HalfSpaceSpec {
    int axis;
    bool greater;
};

HalfSpaceSpec half_space_spec(HalfSpaceDir dir) {
    switch (dir) {
        case HalfSpaceDir::RightOf: return {0, true};    // +x is patient right
        case HalfSpaceDir::LeftOf: return {0, false};
        case HalfSpaceDir::AnteriorOf: return {1, true};  // +y is anterior
        case HalfSpaceDir::PosteriorOf: return {1, false};
        case HalfSpaceDir::SuperiorOf: return {2, true};  // +z is superior
        case HalfSpaceDir::InferiorOf: return {2, false};
    }
    return {2, true};
}

Mask eval(const RuleExpr& e, EvalContext& ctx) {
    const Grid3& g = ctx.grid;
    switch (e.kind) {
        case RuleExpr::Kind::Landmark:
            return ctx.landmark_mask(e.name);
        case RuleExpr::Kind::Union: {
            Mask a = eval(*e.lhs, ctx);
            const Mask b = eval(*e.rhs, ctx);
            for (std::size_t v = 0; v < a.size(); ++v) a[v] |= b[v];
            return a;
        }
        case RuleExpr::Kind::Intersect: {
            Mask a = eval(*e.lhs, ctx);
            const Mask b = eval(*e.rhs, ctx);
            for (std::size_t v = 0; v < a.size(); ++v) a[v] &= b[v];
            return a;
        }
        case RuleExpr::Kind::Subtract: {
            Mask a = eval(*e.lhs, ctx);
            const Mask b = eval(*e.rhs, ctx);
            for (std::size_t v = 0; v < a.size(); ++v) a[v] &= static_cast<std::uint8_t>(!b[v]);
            return a;
        }
        case RuleExpr::Kind::Dilate:
            return dilate_mask(eval(*e.lhs, ctx), g, e.radius_mm);
        case RuleExpr::Kind::HalfSpace: {
            const BBox& b = ctx.landmark_bbox(e.name);
            if (b.empty()) return Mask(g.voxel_count(), 0);
            const HalfSpaceSpec hs = half_space_spec(e.dir);
            const double ref = e.ref == HalfSpaceRef::Centroid
                                   ? b.centroid[hs.axis]
                                   : (hs.greater ? b.hi[hs.axis] : b.lo[hs.axis]);
            return coord_halfspace(g, hs.axis, hs.greater, ref);
        }
        case RuleExpr::Kind::SlabBetween: {
            const BBox& a = ctx.landmark_bbox(e.name);
            const BBox& b = ctx.landmark_bbox(e.name2);
            if (a.empty() || b.empty()) return Mask(g.voxel_count(), 0);
            // Axial gap between the two bboxes: from the top of the lower
            // landmark to the bottom of the upper one (inclusive).
            const BBox& lower = a.centroid[2] <= b.centroid[2] ? a : b;
            const BBox& upper = a.centroid[2] <= b.centroid[2] ? b : a;
            return coord_slab(g, 2, lower.hi[2], upper.lo[2]);
        }
        case RuleExpr::Kind::MidlineSplit: {
            const BBox& b = ctx.landmark_bbox(e.name);
            if (b.empty()) return Mask(g.voxel_count(), 0);
            return coord_halfspace(g, 0, !e.left_side, b.centroid[0]);
        }
    }
    return Mask(g.voxel_count(), 0);
}

VoxelSet mask_to_set(const Mask& m, const Grid3& g) {
    VoxelSet s;
    s.grid = g;
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(m.size()); ++v)
        if (m[v]) s.idx.push_back(v);
    return s;
}

}  // namespace

std::vector<float> squared_distance_mm2(const std::vector<std::uint8_t>& mask, const Grid3& grid) {
    const int nx = grid.dims[0], ny = grid.dims[1], nz = grid.dims[2];
    std::vector<float> d(mask.size());
    for (std::size_t v = 0; v < mask.size(); ++v) d[v] = mask[v] ? 0.0f : kFar;

    std::vector<float> line, out;
    std::vector<int> vbuf;
    std::vector<double> zbuf;

    // x lines
    line.resize(nx); out.resize(nx);
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j) {
            const std::int64_t base = grid.linear_index(0, j, k);
            for (int i = 0; i < nx; ++i) line[i] = d[base + i];
            dt_1d(line.data(), out.data(), nx, grid.spacing[0], vbuf, zbuf);
            for (int i = 0; i < nx; ++i) d[base + i] = out[i];
        }
    // y lines
    line.resize(ny); out.resize(ny);
    for (int k = 0; k < nz; ++k)
        for (int i = 0; i < nx; ++i) {
            const std::int64_t stride = nx;
            const std::int64_t base = grid.linear_index(i, 0, k);
            for (int j = 0; j < ny; ++j) line[j] = d[base + j * stride];
            dt_1d(line.data(), out.data(), ny, grid.spacing[1], vbuf, zbuf);
            for (int j = 0; j < ny; ++j) d[base + j * stride] = out[j];
        }
    // z lines
    line.resize(nz); out.resize(nz);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::int64_t stride = static_cast<std::int64_t>(nx) * ny;
            const std::int64_t base = grid.linear_index(i, j, 0);
            for (int k = 0; k < nz; ++k) line[k] = d[base + k * stride];
            dt_1d(line.data(), out.data(), nz, grid.spacing[2], vbuf, zbuf);
            for (int k = 0; k < nz; ++k) d[base + k * stride] = out[k];
        }
    for (auto& v : d)
        if (v >= kFar * 0.5f) v = kInf;  // no foreground reachable
    return d;
}

VoxelSet evaluate_rule(const RuleExpr& ast, const LabelVolume& landmarks, const Grid3& grid,
                       std::vector<std::string>* warnings) {
    if (landmarks.grid != grid)
        throw std::invalid_argument("evaluate_rule: landmarks must be resampled to the target grid");
    EvalContext ctx{landmarks, grid, warnings, {}, {}};
    return mask_to_set(eval(ast, ctx), grid);
}

RegionAtlas build_atlas(const RuleSet& rules, const LabelVolume& landmarks, const Grid3& grid) {
    if (landmarks.grid != grid)
        throw std::invalid_argument("build_atlas: landmarks must be resampled to the target grid");

    RegionAtlas atlas;
    atlas.grid = grid;
    atlas.rules_hash = rules.source_hash;

    EvalContext ctx{landmarks, grid, &atlas.warnings, {}, {}};
    std::array<Mask, kNumRegions> raw;
    for (const auto& [region, rule] : rules.rules)
        raw[static_cast<int>(region)] = eval(*rule.expr, ctx);

    // Exclusivity pass: claim voxels in (priority, enum order).
    std::array<int, kNumRegions> order;
    for (int i = 0; i < kNumRegions; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int pa = rules.rules.at(static_cast<RegionId>(a)).priority;
        const int pb = rules.rules.at(static_cast<RegionId>(b)).priority;
        if (pa != pb) return pa < pb;
        return a < b;
    });

    Mask claimed(grid.voxel_count(), 0);
    for (int r : order) {
        Mask& m = raw[r];
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (!m[v]) continue;
            if (claimed[v]) {
                m[v] = 0;
                ++atlas.overlap_voxels_resolved;
            } else {
                claimed[v] = 1;
            }
        }
        atlas.regions[r] = mask_to_set(m, grid);
        if (atlas.regions[r].empty())
            atlas.warnings.push_back("region " +
                                     std::string(region_name(static_cast<RegionId>(r))) +
                                     " evaluated empty");
    }
    return atlas;
}

}  // namespace luganopet
