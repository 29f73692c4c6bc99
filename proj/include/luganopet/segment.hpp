#pragma once

#include <string>
#include <vector>

#include "luganopet/connected.hpp"
#include "luganopet/volume.hpp"

namespace luganopet {

enum class SegMode { Threshold, External };
enum class ThresholdCombine { And, Or };

struct SegmentationConfig {
    SegMode mode = SegMode::Threshold;
    double suv_threshold = 2.5;     // absolute SUV floor
    double znorm_threshold = 2.0;   // SUVnorm floor
    ThresholdCombine combine = ThresholdCombine::And;
    std::int64_t min_lesion_voxels = 3;
    Connectivity connectivity = Connectivity::TwentySix;
};

/// Threshold-baseline segmenter: voxel is foreground iff
/// (SUV > suv_threshold) combined per cfg.combine with (SUVnorm > znorm_threshold),
/// then components smaller than min_lesion_voxels are removed.
LabelVolume threshold_segment(const ScalarVolume& pet, const ScalarVolume& petnorm,
                              const SegmentationConfig& cfg);

struct ImportedMask {
    LabelVolume mask;
    std::int64_t foreground_voxels = 0;
    std::vector<std::string> warnings;
};

/// Loads an externally produced lesion mask, binarizes any nonzero label and
/// resamples (nearest) onto the target grid. An empty foreground is a warning,
/// not an error.
ImportedMask import_lesion_mask(const std::string& path, const Grid3& target);

}  // namespace luganopet
