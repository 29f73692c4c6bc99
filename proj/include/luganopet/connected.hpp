#pragma once

#include <vector>

#include "luganopet/volume.hpp"

namespace luganopet {

enum class Connectivity : int { Six = 6, Eighteen = 18, TwentySix = 26 };

Connectivity connectivity_from_int(int c);

/// Connected components of a binary mask (labels must be {0,1}).
/// Components are returned sorted by descending voxel count, ties broken by
/// smallest minimum linear index. Together they partition the foreground.
std::vector<VoxelSet> connected_components(const LabelVolume& mask, Connectivity conn);

}  // namespace luganopet
