#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "luganopet/region.hpp"

namespace luganopet {

/// Per-patient staging input: which regions are involved plus the extranodal flag.
struct InvolvementProfile {
    std::set<RegionId> involved;
    bool extranodal = false;
    /// Lesion ids supporting each involved region (optional bookkeeping).
    std::map<RegionId, std::vector<int>> supporting;
};

enum class Stage { NoInvolvement, I, II, III, IV };
enum class TherapeuticGroup { None, Limited, Advanced };

const char* stage_name(Stage s);
const char* group_name(TherapeuticGroup g);

struct StagingRationale {
    int supra_count = 0;
    int infra_count = 0;
    bool extranodal = false;
    std::string rule;  // which criterion fired
};

struct StagingResult {
    Stage stage = Stage::NoInvolvement;
    TherapeuticGroup group = TherapeuticGroup::None;
    StagingRationale rationale;
};

/// Lugano 2014 stage, evaluated in precedence order:
/// extranodal -> IV; both sides of the diaphragm -> III; >= 2 regions -> II;
/// exactly 1 -> I; none -> NoInvolvement.
StagingResult stage(const InvolvementProfile& profile);

/// Limited for I/II, Advanced for III/IV, None for NoInvolvement.
TherapeuticGroup therapeutic_group(Stage s);

}  // namespace luganopet
