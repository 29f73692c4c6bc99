#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "luganopet/grid.hpp"

namespace luganopet {

enum class ScalarKind { SUV, HU, SUVnorm };

const char* scalar_kind_name(ScalarKind k);

/// Dense real-valued volume (PET SUV, CT HU, or liver-normalized PET).
struct ScalarVolume {
    Grid3 grid;
    ScalarKind kind = ScalarKind::SUV;
    std::vector<float> values;  // size == grid.voxel_count()

    float at(int i, int j, int k) const { return values[grid.linear_index(i, j, k)]; }
    float& at(int i, int j, int k) { return values[grid.linear_index(i, j, k)]; }

    /// Checks the size invariant, and for SUV volumes that all values are finite and >= 0.
    void validate() const;
};

/// Dense integer label map. Label 0 is background; nonzero labels may carry
/// names in the dictionary.
struct LabelVolume {
    Grid3 grid;
    std::vector<std::int32_t> labels;  // size == grid.voxel_count()
    std::map<std::int32_t, std::string> names;

    std::int32_t at(int i, int j, int k) const { return labels[grid.linear_index(i, j, k)]; }
    std::int32_t& at(int i, int j, int k) { return labels[grid.linear_index(i, j, k)]; }

    bool is_binary() const;

    /// Label id for a name, or 0 if absent.
    std::int32_t label_of(const std::string& name) const;

    /// Checks size invariant and that every nonzero label present in the array
    /// appears in the dictionary.
    void validate() const;
};

/// Sparse voxel set: strictly increasing linear indices into its grid.
struct VoxelSet {
    Grid3 grid;
    std::vector<std::int64_t> idx;

    std::int64_t size() const { return static_cast<std::int64_t>(idx.size()); }
    bool empty() const { return idx.empty(); }

    /// Sorts, deduplicates and bounds-checks the index list.
    void normalize();

    static VoxelSet from_mask(const LabelVolume& mask);
    LabelVolume to_mask(const std::string& name = "mask") const;
};

/// |a ∩ b| over a shared grid; throws std::invalid_argument on grid mismatch.
std::int64_t overlap_count(const VoxelSet& a, const VoxelSet& b);

/// Physical volume in ml: |s| * voxel volume.
double volume_ml(const VoxelSet& s);

}  // namespace luganopet
