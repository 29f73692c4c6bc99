#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "luganopet/atlas.hpp"
#include "luganopet/staging.hpp"
#include "luganopet/volume.hpp"

namespace luganopet {

struct ExtranodalConfig {
    /// Landmark names eligible as extranodal organs. The spleen is a nodal-side
    /// region and must not appear here.
    std::vector<std::string> organ_labels;
    std::int64_t min_voxels = 3;
    double min_fraction = 0.5;

    static ExtranodalConfig defaults();
};

struct RegionAssignment {
    std::optional<RegionId> primary;
    std::vector<RegionId> secondaries;
    std::map<RegionId, std::int64_t> overlap;  // nonzero overlaps only
    std::int64_t nodal_overlap_total = 0;
};

/// Primary region by maximal volumetric overlap (ties to the lower RegionId),
/// secondaries are regions whose overlap strictly exceeds 25% of the primary
/// overlap. All-zero overlap leaves primary unset.
RegionAssignment assign_regions(const VoxelSet& lesion_voxels, const RegionAtlas& atlas);

/// Organs whose overlap with the lesion exceeds both the configured floor
/// (max of min_voxels and min_fraction * |lesion|) and the lesion's total
/// nodal overlap; i.e. the lesion lives predominantly in the organ.
std::vector<std::string> detect_extranodal(const VoxelSet& lesion_voxels,
                                           const LabelVolume& organs,
                                           std::int64_t nodal_overlap_total,
                                           const ExtranodalConfig& cfg,
                                           std::map<std::string, std::int64_t>* out_overlap = nullptr);

struct Lesion {
    int id = 0;
    VoxelSet voxels;
    double volume_ml = 0.0;
    std::optional<RegionId> primary_region;
    std::vector<RegionId> secondary_regions;
    std::vector<std::string> extranodal_organs;
    std::map<RegionId, std::int64_t> region_overlap;
    std::map<std::string, std::int64_t> organ_overlap;
    bool unlocalized = false;  // no region and no organ overlap (e.g. contamination)
};

/// Runs assignment + extranodal detection for every component of the lesion mask.
std::vector<Lesion> localize_lesions(const std::vector<VoxelSet>& components,
                                     const RegionAtlas& atlas, const LabelVolume& organs,
                                     const ExtranodalConfig& cfg);

/// Union of all lesion assignments; unlocalized lesions contribute nothing.
InvolvementProfile build_involvement(const std::vector<Lesion>& lesions);

}  // namespace luganopet
