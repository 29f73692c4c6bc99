#pragma once

#include <array>
#include <vector>

#include "luganopet/rules.hpp"
#include "luganopet/volume.hpp"

namespace luganopet {

/// The 21 mutually exclusive region masks on the working (PET) grid.
struct RegionAtlas {
    Grid3 grid;
    std::array<VoxelSet, kNumRegions> regions;
    std::string rules_hash;
    std::int64_t overlap_voxels_resolved = 0;  // voxels claimed by >1 rule
    std::vector<std::string> warnings;

    const VoxelSet& region(RegionId r) const { return regions[static_cast<int>(r)]; }
};

/// Evaluates one rule on a landmark map already living on `grid`.
/// Landmarks that are absent or empty make the affected operand empty and add
/// a warning; the evaluation never aborts.
VoxelSet evaluate_rule(const RuleExpr& ast, const LabelVolume& landmarks, const Grid3& grid,
                       std::vector<std::string>* warnings = nullptr);

/// Evaluates all 21 rules, then enforces mutual exclusivity: a voxel claimed
/// by several regions goes to the lowest priority value, ties broken by
/// RegionId enumeration order.
RegionAtlas build_atlas(const RuleSet& rules, const LabelVolume& landmarks, const Grid3& grid);

/// Squared Euclidean distance (mm^2) from every voxel center to the nearest
/// foreground voxel center, computed separably; infinity where the mask is
/// empty. Exposed for the dilation oracle tests.
std::vector<float> squared_distance_mm2(const std::vector<std::uint8_t>& mask, const Grid3& grid);

}  // namespace luganopet
