#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace luganopet {

/// The 21 lymph-node regions, in canonical enumeration order (used for
/// deterministic tie-breaking and for the reference CSV column order).
enum class RegionId : int {
    WaldeyersRing = 0,
    NeckL,
    NeckR,
    InfraclavicularL,
    InfraclavicularR,
    AxillaL,
    AxillaR,
    TrochleaL,
    TrochleaR,
    Mediastinum,
    HilumL,
    HilumR,
    Spleen,
    UpperAbdomen,
    LowerAbdomen,
    ParaIliacL,
    ParaIliacR,
    GroinL,
    GroinR,
    PoplitealL,
    PoplitealR,
};

constexpr int kNumRegions = 21;

std::string_view region_name(RegionId r);
std::optional<RegionId> region_from_name(std::string_view name);

constexpr std::array<RegionId, kNumRegions> all_regions() {
    std::array<RegionId, kNumRegions> a{};
    for (int i = 0; i < kNumRegions; ++i) a[i] = static_cast<RegionId>(i);
    return a;
}

enum class DiaphragmSide { Supra, Infra };

/// Fixed side table: 12 supra-diaphragmatic regions (Waldeyer's ring through
/// the hila), 9 infra-diaphragmatic (spleen through the popliteal fossae).
DiaphragmSide diaphragm_side(RegionId r);

}  // namespace luganopet
