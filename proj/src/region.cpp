#include "luganopet/region.hpp"

namespace luganopet {

namespace {
constexpr std::string_view kNames[kNumRegions] = {
    "WaldeyersRing",
    "NeckL",
    "NeckR",
    "InfraclavicularL",
    "InfraclavicularR",
    "AxillaL",
    "AxillaR",
    "TrochleaL",
    "TrochleaR",
    "Mediastinum",
    "HilumL",
    "HilumR",
    "Spleen",
    "UpperAbdomen",
    "LowerAbdomen",
    "ParaIliacL",
    "ParaIliacR",
    "GroinL",
    "GroinR",
    "PoplitealL",
    "PoplitealR",
};
}  // namespace

std::string_view region_name(RegionId r) { return kNames[static_cast<int>(r)]; }

std::optional<RegionId> region_from_name(std::string_view name) {
    for (int i = 0; i < kNumRegions; ++i)
        if (kNames[i] == name) return static_cast<RegionId>(i);
    return std::nullopt;
}

DiaphragmSide diaphragm_side(RegionId r) {
    // Supra: WaldeyersRing..HilumR (12). Infra: Spleen..PoplitealR (9).
    return static_cast<int>(r) <= static_cast<int>(RegionId::HilumR) ? DiaphragmSide::Supra
                                                                     : DiaphragmSide::Infra;
}

}  // namespace luganopet
