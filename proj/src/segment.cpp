#include "luganopet/segment.hpp"

#include "luganopet/nifti.hpp"
#include "luganopet/resample.hpp"

namespace luganopet {

LabelVolume threshold_segment(const ScalarVolume& pet, const ScalarVolume& petnorm,
                              const SegmentationConfig& cfg) {
    if (pet.grid != petnorm.grid)
        throw std::invalid_argument("threshold_segment: PET and SUVnorm grids differ");

    LabelVolume mask;
    mask.grid = pet.grid;
    mask.labels.assign(pet.grid.voxel_count(), 0);
    mask.names[1] = "lesion";

    for (std::size_t v = 0; v < pet.values.size(); ++v) {
        const bool a = pet.values[v] > cfg.suv_threshold;
        const bool b = petnorm.values[v] > cfg.znorm_threshold;
        const bool fg = cfg.combine == ThresholdCombine::And ? (a && b) : (a || b);
        if (fg) mask.labels[v] = 1;
    }

    if (cfg.min_lesion_voxels > 1) {
        for (const auto& comp : connected_components(mask, cfg.connectivity))
            if (comp.size() < cfg.min_lesion_voxels)
                for (auto idx : comp.idx) mask.labels[idx] = 0;
    }
    return mask;
}

ImportedMask import_lesion_mask(const std::string& path, const Grid3& target) {
    LabelVolume raw = read_label_nifti(path);
    for (auto& v : raw.labels) v = v != 0 ? 1 : 0;
    raw.names.clear();
    raw.names[1] = "lesion";

    ImportedMask out;
    out.mask = resample(raw, target, Interp::Nearest);
    for (auto v : out.mask.labels) out.foreground_voxels += v;
    if (out.foreground_voxels == 0)
        out.warnings.push_back("imported lesion mask has empty foreground (clean scan?)");
    return out;
}

}  // namespace luganopet
