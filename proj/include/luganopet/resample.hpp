#pragma once

#include "luganopet/volume.hpp"

namespace luganopet {

enum class Interp { Nearest, Trilinear };

/// Resamples src onto the target grid by sampling at target voxel centers.
/// Out-of-field samples take the background value 0. Requires matching axis
/// orientation codes. Nearest rounding is half-up per axis so results are
/// reproducible bit for bit.
ScalarVolume resample(const ScalarVolume& src, const Grid3& target, Interp mode);

/// Label maps resample with nearest only; Interp::Trilinear throws.
LabelVolume resample(const LabelVolume& src, const Grid3& target,
                     Interp mode = Interp::Nearest);

}  // namespace luganopet
