#include "luganopet/volume.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace luganopet {

const char* scalar_kind_name(ScalarKind k) {
    switch (k) {
        case ScalarKind::SUV: return "SUV";
        case ScalarKind::HU: return "HU";
        case ScalarKind::SUVnorm: return "SUVnorm";
    }
    return "?";
}

void ScalarVolume::validate() const {
    grid.validate();
    if (static_cast<std::int64_t>(values.size()) != grid.voxel_count())
        throw std::invalid_argument("ScalarVolume: value array size does not match grid");
    if (kind == ScalarKind::SUV) {
        for (float v : values)
            if (!std::isfinite(v) || v < 0.0f)
                throw std::invalid_argument("ScalarVolume: SUV values must be finite and >= 0");
    }
}

bool LabelVolume::is_binary() const {
    for (auto v : labels)
        if (v != 0 && v != 1) return false;
    return true;
}

std::int32_t LabelVolume::label_of(const std::string& name) const {
    for (const auto& [id, n] : names)
        if (n == name) return id;
    return 0;
}

void LabelVolume::validate() const {
    grid.validate();
    if (static_cast<std::int64_t>(labels.size()) != grid.voxel_count())
        throw std::invalid_argument("LabelVolume: label array size does not match grid");
    std::set<std::int32_t> present;
    for (auto v : labels) {
        if (v < 0) throw std::invalid_argument("LabelVolume: labels must be non-negative");
        if (v != 0) present.insert(v);
    }
    for (auto v : present)
        if (!names.count(v))
            throw std::invalid_argument("LabelVolume: label " + std::to_string(v) +
                                        " missing from dictionary");
}

void VoxelSet::normalize() {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const std::int64_t n = grid.voxel_count();
    for (auto v : idx)
        if (v < 0 || v >= n)
            throw std::out_of_range("VoxelSet: index out of grid bounds");
}

VoxelSet VoxelSet::from_mask(const LabelVolume& mask) {
    VoxelSet s;
    s.grid = mask.grid;
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(mask.labels.size()); ++v)
        if (mask.labels[v] != 0) s.idx.push_back(v);
    return s;
}

LabelVolume VoxelSet::to_mask(const std::string& name) const {
    LabelVolume out;
    out.grid = grid;
    out.labels.assign(grid.voxel_count(), 0);
    for (auto v : idx) out.labels[v] = 1;
    out.names[1] = name;
    return out;
}

std::int64_t overlap_count(const VoxelSet& a, const VoxelSet& b) {
    if (a.grid != b.grid)
        throw std::invalid_argument("overlap_count: voxel sets refer to different grids");
    std::int64_t n = 0;
    auto ia = a.idx.begin(), ib = b.idx.begin();
    while (ia != a.idx.end() && ib != b.idx.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++n; ++ia; ++ib; }
    }
    return n;
}

double volume_ml(const VoxelSet& s) {
    return static_cast<double>(s.idx.size()) * s.grid.voxel_volume_ml();
}

}  // namespace luganopet
