#include "luganopet/staging.hpp"

namespace luganopet {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::NoInvolvement: return "NoInvolvement";
        case Stage::I: return "I";
        case Stage::II: return "II";
        case Stage::III: return "III";
        case Stage::IV: return "IV";
    }
    return "?";
}

const char* group_name(TherapeuticGroup g) {
    switch (g) {
        case TherapeuticGroup::None: return "None";
        case TherapeuticGroup::Limited: return "Limited";
        case TherapeuticGroup::Advanced: return "Advanced";
    }
    return "?";
}

TherapeuticGroup therapeutic_group(Stage s) {
    switch (s) {
        case Stage::I:
        case Stage::II: return TherapeuticGroup::Limited;
        case Stage::III:
        case Stage::IV: return TherapeuticGroup::Advanced;
        default: return TherapeuticGroup::None;
    }
}

StagingResult stage(const InvolvementProfile& profile) {
    StagingResult r;
    for (RegionId reg : profile.involved) {
        if (diaphragm_side(reg) == DiaphragmSide::Supra) ++r.rationale.supra_count;
        else ++r.rationale.infra_count;
    }
    r.rationale.extranodal = profile.extranodal;

    const int total = r.rationale.supra_count + r.rationale.infra_count;
    if (profile.extranodal) {
        r.stage = Stage::IV;
        r.rationale.rule = "extranodal organ involvement";
    } else if (r.rationale.supra_count > 0 && r.rationale.infra_count > 0) {
        r.stage = Stage::III;
        r.rationale.rule = "nodal regions on both sides of the diaphragm";
    } else if (total >= 2) {
        r.stage = Stage::II;
        r.rationale.rule = "two or more nodal regions on one side of the diaphragm";
    } else if (total == 1) {
        r.stage = Stage::I;
        r.rationale.rule = "a single nodal region";
    } else {
        r.stage = Stage::NoInvolvement;
        r.rationale.rule = "no involved regions and no extranodal disease";
    }
    r.group = therapeutic_group(r.stage);
    return r;
}

}  // namespace luganopet
