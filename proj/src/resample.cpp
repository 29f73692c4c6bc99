#include "luganopet/resample.hpp"

#include <cmath>

namespace luganopet {

namespace {

void check_orientation(const Grid3& src, const Grid3& target) {
    if (src.axes != target.axes)
        throw std::invalid_argument("resample: orientation mismatch (" +
                                    src.orientation_string() + " vs " +
                                    target.orientation_string() + ")");
}

inline int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

template <typename T, typename Sampler>
std::vector<T> run(const Grid3& src, const Grid3& target, Sampler sample) {
    std::vector<T> out(target.voxel_count());
    std::int64_t o = 0;
    for (int k = 0; k < target.dims[2]; ++k)
        for (int j = 0; j < target.dims[1]; ++j)
            for (int i = 0; i < target.dims[0]; ++i)
                out[o++] = sample(src.continuous_index(target.world(i, j, k)));
    return out;
}

}  // namespace

ScalarVolume resample(const ScalarVolume& src, const Grid3& target, Interp mode) {
    check_orientation(src.grid, target);
    if (src.grid == target) return src;  // identity, bit for bit

    ScalarVolume out;
    out.grid = target;
    out.kind = src.kind;

    const Grid3& g = src.grid;
    const auto& v = src.values;

    if (mode == Interp::Nearest) {
        out.values = run<float>(g, target, [&](const std::array<double, 3>& c) -> float {
            const int i = round_half_up(c[0]), j = round_half_up(c[1]), k = round_half_up(c[2]);
            return g.in_bounds(i, j, k) ? v[g.linear_index(i, j, k)] : 0.0f;
        });
    } else {
        out.values = run<float>(g, target, [&](const std::array<double, 3>& c) -> float {
            const int i0 = static_cast<int>(std::floor(c[0]));
            const int j0 = static_cast<int>(std::floor(c[1]));
            const int k0 = static_cast<int>(std::floor(c[2]));
            const double tx = c[0] - i0, ty = c[1] - j0, tz = c[2] - k0;
            double acc = 0.0;
            for (int dk = 0; dk < 2; ++dk)
                for (int dj = 0; dj < 2; ++dj)
                    for (int di = 0; di < 2; ++di) {
                        const int i = i0 + di, j = j0 + dj, k = k0 + dk;
                        const double w = (di ? tx : 1.0 - tx) * (dj ? ty : 1.0 - ty) *
                                         (dk ? tz : 1.0 - tz);
                        if (w == 0.0) continue;
                        const double s =
                            g.in_bounds(i, j, k) ? v[g.linear_index(i, j, k)] : 0.0;
                        acc += w * s;
                    }
            return static_cast<float>(acc);
        });
    }
    return out;
}

LabelVolume resample(const LabelVolume& src, const Grid3& target, Interp mode) {
    if (mode == Interp::Trilinear)
        throw std::invalid_argument("resample: trilinear interpolation is forbidden for label volumes");
    check_orientation(src.grid, target);
    if (src.grid == target) return src;

    LabelVolume out;
    out.grid = target;
    out.names = src.names;
    const Grid3& g = src.grid;
    const auto& v = src.labels;
    out.labels = run<std::int32_t>(g, target, [&](const std::array<double, 3>& c) -> std::int32_t {
        const int i = round_half_up(c[0]), j = round_half_up(c[1]), k = round_half_up(c[2]);
        return g.in_bounds(i, j, k) ? v[g.linear_index(i, j, k)] : 0;
    });
    return out;
}

}  // namespace luganopet
