#include "luganopet/normalize.hpp"

#include <cmath>

namespace luganopet {

const char* norm_mode_name(NormMode m) {
    return m == NormMode::ZScore ? "zscore" : "ratio";
}

LiverStats compute_liver_stats(const ScalarVolume& pet, const LabelVolume& liver_mask,
                               std::int64_t min_voxels) {
    if (pet.grid != liver_mask.grid)
        throw std::invalid_argument("compute_liver_stats: PET and liver mask grids differ");
    if (!liver_mask.is_binary())
        throw std::invalid_argument("compute_liver_stats: liver mask must be binary");

    double sum = 0.0, sumsq = 0.0;
    std::int64_t n = 0;
    for (std::size_t v = 0; v < liver_mask.labels.size(); ++v) {
        if (liver_mask.labels[v] == 0) continue;
        const double x = pet.values[v];
        sum += x;
        sumsq += x * x;
        ++n;
    }
    if (n < min_voxels)
        throw std::runtime_error("liver mask has " + std::to_string(n) +
                                 " voxels, below the trusted minimum of " +
                                 std::to_string(min_voxels) +
                                 " (upstream liver segmentation likely failed)");
    LiverStats s;
    s.voxel_count = n;
    s.mean_suv = sum / static_cast<double>(n);
    const double var = std::max(0.0, sumsq / static_cast<double>(n) - s.mean_suv * s.mean_suv);
    s.std_suv = std::sqrt(var);
    return s;
}

ScalarVolume liver_normalize(const ScalarVolume& pet, const LiverStats& stats,
                             NormMode mode, double eps) {
    ScalarVolume out;
    out.grid = pet.grid;
    out.kind = ScalarKind::SUVnorm;
    out.values.resize(pet.values.size());
    if (mode == NormMode::ZScore) {
        if (!(stats.std_suv > eps))
            throw std::runtime_error("liver SUV standard deviation is degenerate (<= eps); "
                                     "cannot z-normalize");
        const double inv = 1.0 / stats.std_suv;
        for (std::size_t v = 0; v < pet.values.size(); ++v)
            out.values[v] = static_cast<float>((pet.values[v] - stats.mean_suv) * inv);
    } else {
        if (!(stats.mean_suv > eps))
            throw std::runtime_error("liver SUV mean is degenerate (<= eps); cannot ratio-normalize");
        const double inv = 1.0 / stats.mean_suv;
        for (std::size_t v = 0; v < pet.values.size(); ++v)
            out.values[v] = static_cast<float>(pet.values[v] * inv);
    }
    return out;
}

}  // namespace luganopet
