#include "luganopet/localize.hpp"

#include <algorithm>

namespace luganopet {

ExtranodalConfig ExtranodalConfig::defaults() {
    ExtranodalConfig c;
    c.organ_labels = {
        "liver", "lung_left", "lung_right",
        // skeletal system
        "skull", "spine", "sternum", "clavicula_left", "clavicula_right",
        "humerus_left", "humerus_right", "femur_left", "femur_right",
        "tibia_left", "tibia_right", "hip_left", "hip_right", "sacrum",
    };
    return c;
}

RegionAssignment assign_regions(const VoxelSet& lesion_voxels, const RegionAtlas& atlas) {
    if (lesion_voxels.grid != atlas.grid)
        throw std::invalid_argument("assign_regions: lesion and atlas grids differ");

    RegionAssignment out;
    std::array<std::int64_t, kNumRegions> ov{};
    for (RegionId r : all_regions()) {
        const std::int64_t n = overlap_count(lesion_voxels, atlas.region(r));
        ov[static_cast<int>(r)] = n;
        out.nodal_overlap_total += n;
        if (n > 0) out.overlap[r] = n;
    }

    int best = -1;
    for (int r = 0; r < kNumRegions; ++r)
        if (ov[r] > 0 && (best < 0 || ov[r] > ov[best])) best = r;  // ties keep lower id
    if (best < 0) return out;

    out.primary = static_cast<RegionId>(best);
    const double cut = 0.25 * static_cast<double>(ov[best]);
    for (int r = 0; r < kNumRegions; ++r)
        if (r != best && ov[r] > 0 && static_cast<double>(ov[r]) > cut)
            out.secondaries.push_back(static_cast<RegionId>(r));
    return out;
}

std::vector<std::string> detect_extranodal(const VoxelSet& lesion_voxels,
                                           const LabelVolume& organs,
                                           std::int64_t nodal_overlap_total,
                                           const ExtranodalConfig& cfg,
                                           std::map<std::string, std::int64_t>* out_overlap) {
    if (lesion_voxels.grid != organs.grid)
        throw std::invalid_argument("detect_extranodal: lesion and organ map grids differ");

    std::vector<std::string> hits;
    const double frac_floor = cfg.min_fraction * static_cast<double>(lesion_voxels.size());
    const double floor = std::max(static_cast<double>(cfg.min_voxels), frac_floor);

    for (const auto& organ : cfg.organ_labels) {
        const std::int32_t label = organs.label_of(organ);
        if (label == 0) continue;
        std::int64_t n = 0;
        for (auto v : lesion_voxels.idx)
            if (organs.labels[v] == label) ++n;
        if (n == 0) continue;
        if (out_overlap) (*out_overlap)[organ] = n;
        if (static_cast<double>(n) > floor && n > nodal_overlap_total)
            hits.push_back(organ);
    }
    return hits;
}

std::vector<Lesion> localize_lesions(const std::vector<VoxelSet>& components,
                                     const RegionAtlas& atlas, const LabelVolume& organs,
                                     const ExtranodalConfig& cfg) {
    std::vector<Lesion> lesions;
    lesions.reserve(components.size());
    int next_id = 1;
    for (const auto& comp : components) {
        Lesion l;
        l.id = next_id++;
        l.voxels = comp;
        l.volume_ml = volume_ml(comp);
        RegionAssignment a = assign_regions(comp, atlas);
        l.primary_region = a.primary;
        l.secondary_regions = a.secondaries;
        l.region_overlap = a.overlap;
        l.extranodal_organs =
            detect_extranodal(comp, organs, a.nodal_overlap_total, cfg, &l.organ_overlap);
        l.unlocalized = !l.primary_region && l.extranodal_organs.empty();
        lesions.push_back(std::move(l));
    }
    return lesions;
}

InvolvementProfile build_involvement(const std::vector<Lesion>& lesions) {
    InvolvementProfile p;
    for (const auto& l : lesions) {
        if (l.unlocalized) continue;
        if (l.primary_region) {
            p.involved.insert(*l.primary_region);
            p.supporting[*l.primary_region].push_back(l.id);
        }
        for (RegionId r : l.secondary_regions) {
            p.involved.insert(r);
            p.supporting[r].push_back(l.id);
        }
        if (!l.extranodal_organs.empty()) p.extranodal = true;
    }
    return p;
}

}  // namespace luganopet
