#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "luganopet/region.hpp"
#include "luganopet/staging.hpp"

namespace luganopet {

struct ConfusionCounts {
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    std::int64_t total() const { return tp + fp + fn + tn; }
};

struct CiPair {
    double low = 0.0, high = 1.0;
};

/// A proportion in [0,1] with its confidence interval; absent value means the
/// metric is undefined (zero denominator) and is reported as N/A, never 0.
struct MetricValue {
    std::optional<double> value;
    std::optional<CiPair> ci;
};

enum class CiMethod { ClopperPearson, NormalApprox };

const char* ci_method_name(CiMethod m);

/// Exact binomial (beta-quantile) interval; closed at 0/1 for extreme
/// proportions. Throws on invalid counts.
std::pair<double, double> clopper_pearson_ci(std::int64_t successes, std::int64_t n,
                                             double level = 0.95);

/// Wald interval, clamped to [0,1]; provided for comparison only.
std::pair<double, double> normal_approx_ci(std::int64_t successes, std::int64_t n,
                                           double level = 0.95);

struct MetricSet {
    MetricValue accuracy;     // (tp+tn)/total — what the result tables report
    MetricValue precision;    // tp/(tp+fp), the formula the paper prints as "Accuracy"
    MetricValue recall;       // tp/(tp+fn), sensitivity
    MetricValue specificity;  // tn/(tn+fp)
    MetricValue f1;           // 2tp/(2tp+fp+fn), positive-class F1
    MetricValue ppv;          // == precision
    MetricValue npv;          // tn/(tn+fn)
    MetricValue f1_macro;        // mean of both per-class F1 scores (no CI)
    MetricValue f1_acc_recall;   // harmonic mean of accuracy and recall — the
                                 // variant the published result tables print as
                                 // "F1-score" (no CI)
};

/// All binary metrics with CIs at the given level. Requires total >= 1.
MetricSet binary_metrics(const ConfusionCounts& c, CiMethod method = CiMethod::ClopperPearson,
                         double level = 0.95);

/// Quadratically weighted Cohen's kappa over a square confusion matrix
/// (rows = reference, cols = predicted). Undefined (nullopt) when all mass
/// sits in a single reference and a single predicted class.
std::optional<double> weighted_kappa(const std::vector<std::vector<std::int64_t>>& m);

// ---- cohort evaluation -----------------------------------------------------

struct PatientPrediction {
    std::string patient_id;
    InvolvementProfile profile;
    StagingResult staging;
};

struct ReferenceRow {
    std::array<std::uint8_t, kNumRegions> regions{};  // 0/1 involvement
    bool extranodal = false;
    int stage = 1;  // 1..4
};

struct ReferenceTable {
    std::vector<std::pair<std::string, ReferenceRow>> rows;

    const ReferenceRow* find(const std::string& patient_id) const;
};

/// CSV with header: patient_id, region_1..region_21, extranodal, stage.
ReferenceTable load_reference_csv(const std::string& path);

struct RegionEval {
    ConfusionCounts counts;
    MetricSet metrics;
    std::int64_t positive_cases = 0;
};

struct EvalReport {
    std::int64_t n_patients = 0;
    CiMethod ci_method = CiMethod::ClopperPearson;

    std::array<RegionEval, kNumRegions> per_region;
    RegionEval pooled;  // all patient x region cells

    std::vector<std::string> stage_labels;  // matrix class order
    std::vector<std::vector<std::int64_t>> staging_confusion;
    MetricValue staging_accuracy;
    std::optional<double> kappa;
    std::array<RegionEval, 4> per_stage;  // one-vs-rest for stages I..IV

    ConfusionCounts binary_counts;  // Limited vs Advanced, positive = Advanced
    MetricSet binary;
};

/// Scores predictions against the reference standard. Throws on duplicate
/// patient ids and on predictions without a reference row.
EvalReport evaluate_cohort(const std::vector<PatientPrediction>& predictions,
                           const ReferenceTable& reference,
                           CiMethod ci_method = CiMethod::ClopperPearson);

}  // namespace luganopet
