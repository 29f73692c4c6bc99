#pragma once

#include <cstdint>

#include "luganopet/volume.hpp"

namespace luganopet {

/// SUV statistics over the liver reference region (population std).
struct LiverStats {
    double mean_suv = 0.0;
    double std_suv = 0.0;
    std::int64_t voxel_count = 0;
};

enum class NormMode { ZScore, Ratio };

const char* norm_mode_name(NormMode m);

/// Mean and population standard deviation of PET over the liver mask.
/// Throws std::runtime_error when the mask has fewer than min_voxels voxels
/// (signals an upstream organ-segmentation failure).
LiverStats compute_liver_stats(const ScalarVolume& pet, const LabelVolume& liver_mask,
                               std::int64_t min_voxels = 100);

/// Liver-referenced standardization of the whole PET volume.
/// ZScore: (v - mean)/std, requires std > eps. Ratio: v/mean, requires mean > eps.
ScalarVolume liver_normalize(const ScalarVolume& pet, const LiverStats& stats,
                             NormMode mode = NormMode::ZScore, double eps = 1e-6);

}  // namespace luganopet
