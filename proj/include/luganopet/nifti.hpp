#pragma once

#include <string>

#include "luganopet/volume.hpp"

namespace luganopet {

/// NIfTI-1 I/O (.nii and .nii.gz). The affine (sform preferred, then qform,
/// then pixdim) must be orthogonal and axis-aligned up to per-axis sign;
/// anything else is rejected with a clear error. Values are scaled by
/// scl_slope/scl_inter on read.
ScalarVolume read_scalar_nifti(const std::string& path, ScalarKind kind);

/// Reads an integer label map; floating-point voxel data is accepted only if
/// every value is integral.
LabelVolume read_label_nifti(const std::string& path);

/// Writes float32 voxels. Compression follows the file extension (.gz).
void write_nifti(const ScalarVolume& vol, const std::string& path);

/// Writes int32 voxels.
void write_nifti(const LabelVolume& vol, const std::string& path);

/// Optional sidecar with the label dictionary, e.g. {"1": "liver", ...}.
void write_label_dictionary(const LabelVolume& vol, const std::string& json_path);
void read_label_dictionary(LabelVolume& vol, const std::string& json_path);

}  // namespace luganopet
