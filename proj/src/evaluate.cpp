#include "luganopet/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

namespace luganopet {

const char* ci_method_name(CiMethod m) {
    return m == CiMethod::ClopperPearson ? "clopper-pearson" : "normal-approximation";
}

std::pair<double, double> clopper_pearson_ci(std::int64_t successes, std::int64_t n,
                                             double level) {
    if (n < 1 || successes < 0 || successes > n)
        throw std::invalid_argument("clopper_pearson_ci: need 0 <= successes <= n, n >= 1");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("clopper_pearson_ci: level must be in (0,1)");
    const double alpha = 1.0 - level;
    const double s = static_cast<double>(successes);
    const double nn = static_cast<double>(n);
    double low = 0.0, high = 1.0;
    if (successes > 0) {
        boost::math::beta_distribution<double> lo_dist(s, nn - s + 1.0);
        low = boost::math::quantile(lo_dist, alpha / 2.0);
    }
    if (successes < n) {
        boost::math::beta_distribution<double> hi_dist(s + 1.0, nn - s);
        high = boost::math::quantile(hi_dist, 1.0 - alpha / 2.0);
    }
    return {low, high};
}

std::pair<double, double> normal_approx_ci(std::int64_t successes, std::int64_t n,
                                           double level) {
    if (n < 1 || successes < 0 || successes > n)
        throw std::invalid_argument("normal_approx_ci: need 0 <= successes <= n, n >= 1");
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    boost::math::normal_distribution<double> norm;
    const double z = boost::math::quantile(norm, 1.0 - (1.0 - level) / 2.0);
    const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

namespace {

MetricValue proportion(std::int64_t successes, std::int64_t denom, CiMethod method,
                       double level) {
    MetricValue m;
    if (denom <= 0) return m;  // undefined, reported as N/A
    m.value = static_cast<double>(successes) / static_cast<double>(denom);
    const auto [lo, hi] = method == CiMethod::ClopperPearson
                              ? clopper_pearson_ci(successes, denom, level)
                              : normal_approx_ci(successes, denom, level);
    m.ci = CiPair{lo, hi};
    return m;
}

}  // namespace

MetricSet binary_metrics(const ConfusionCounts& c, CiMethod method, double level) {
    if (c.tp < 0 || c.fp < 0 || c.fn < 0 || c.tn < 0)
        throw std::invalid_argument("binary_metrics: negative counts");
    if (c.total() < 1)
        throw std::invalid_argument("binary_metrics: empty confusion counts");

    MetricSet m;
    m.accuracy = proportion(c.tp + c.tn, c.total(), method, level);
    m.precision = proportion(c.tp, c.tp + c.fp, method, level);
    m.recall = proportion(c.tp, c.tp + c.fn, method, level);
    m.specificity = proportion(c.tn, c.tn + c.fp, method, level);
    m.ppv = m.precision;
    m.npv = proportion(c.tn, c.tn + c.fn, method, level);
    m.f1 = proportion(2 * c.tp, 2 * c.tp + c.fp + c.fn, method, level);

    const std::int64_t neg_denom = 2 * c.tn + c.fn + c.fp;
    if (m.f1.value && neg_denom > 0) {
        const double f1_neg = static_cast<double>(2 * c.tn) / static_cast<double>(neg_denom);
        m.f1_macro.value = (*m.f1.value + f1_neg) / 2.0;
    }
    if (m.accuracy.value && m.recall.value && (*m.accuracy.value + *m.recall.value) > 0.0) {
        m.f1_acc_recall.value =
            2.0 * *m.accuracy.value * *m.recall.value / (*m.accuracy.value + *m.recall.value);
    }
    return m;
}

std::optional<double> weighted_kappa(const std::vector<std::vector<std::int64_t>>& m) {
    const std::size_t k = m.size();
    if (k < 1) throw std::invalid_argument("weighted_kappa: empty matrix");
    for (const auto& row : m)
        if (row.size() != k) throw std::invalid_argument("weighted_kappa: matrix must be square");

    double total = 0.0;
    std::vector<double> row_sum(k, 0.0), col_sum(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (m[i][j] < 0) throw std::invalid_argument("weighted_kappa: negative entry");
            row_sum[i] += static_cast<double>(m[i][j]);
            col_sum[j] += static_cast<double>(m[i][j]);
            total += static_cast<double>(m[i][j]);
        }
    if (total < 1.0) throw std::invalid_argument("weighted_kappa: matrix total must be >= 1");

    const int nonzero_rows = static_cast<int>(std::count_if(
        row_sum.begin(), row_sum.end(), [](double v) { return v > 0.0; }));
    const int nonzero_cols = static_cast<int>(std::count_if(
        col_sum.begin(), col_sum.end(), [](double v) { return v > 0.0; }));
    if (nonzero_rows <= 1 && nonzero_cols <= 1) return std::nullopt;  // degenerate marginals

    const double denom_w = k > 1 ? static_cast<double>((k - 1) * (k - 1)) : 1.0;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const double w = static_cast<double>((static_cast<std::ptrdiff_t>(i) -
                                                  static_cast<std::ptrdiff_t>(j)) *
                                                 (static_cast<std::ptrdiff_t>(i) -
                                                  static_cast<std::ptrdiff_t>(j))) /
                             denom_w;
            num += w * static_cast<double>(m[i][j]) / total;
            den += w * (row_sum[i] / total) * (col_sum[j] / total);
        }
    if (den <= 0.0) return std::nullopt;
    return 1.0 - num / den;
}

// ---- reference CSV -----------------------------------------------------------

const ReferenceRow* ReferenceTable::find(const std::string& patient_id) const {
    for (const auto& [id, row] : rows)
        if (id == patient_id) return &row;
    return nullptr;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') { out.push_back(cur); cur.clear(); }
        else if (c != '\r') cur.push_back(c);
    }
    out.push_back(cur);
    for (auto& s : out) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    }
    return out;
}

int parse_flag(const std::string& s, const std::string& what, int max) {
    if (s.size() != 1 || s[0] < '0' || s[0] > '0' + max)
        throw std::runtime_error("reference CSV: bad " + what + " value '" + s + "'");
    return s[0] - '0';
}

}  // namespace

ReferenceTable load_reference_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open reference CSV: " + path);

    ReferenceTable table;
    std::string line;
    bool header_seen = false;
    std::set<std::string> ids;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (cells.empty() || cells[0] != "patient_id")
                throw std::runtime_error("reference CSV: first header column must be patient_id");
            continue;
        }
        if (cells.size() != 1 + kNumRegions + 2)
            throw std::runtime_error("reference CSV: expected " +
                                     std::to_string(1 + kNumRegions + 2) + " columns, got " +
                                     std::to_string(cells.size()));
        const std::string& id = cells[0];
        if (!ids.insert(id).second)
            throw std::runtime_error("reference CSV: duplicate patient id '" + id + "'");
        ReferenceRow row;
        for (int r = 0; r < kNumRegions; ++r)
            row.regions[r] = static_cast<std::uint8_t>(parse_flag(cells[1 + r], "region", 1));
        row.extranodal = parse_flag(cells[1 + kNumRegions], "extranodal", 1) != 0;
        row.stage = parse_flag(cells[2 + kNumRegions], "stage", 9);
        if (row.stage < 1 || row.stage > 4)
            throw std::runtime_error("reference CSV: stage must be 1-4 for patient '" + id + "'");
        table.rows.emplace_back(id, row);
    }
    if (!header_seen) throw std::runtime_error("reference CSV is empty: " + path);
    return table;
}

// ---- cohort evaluation --------------------------------------------------------

EvalReport evaluate_cohort(const std::vector<PatientPrediction>& predictions,
                           const ReferenceTable& reference, CiMethod ci_method) {
    EvalReport rep;
    rep.ci_method = ci_method;
    rep.n_patients = static_cast<std::int64_t>(predictions.size());

    std::set<std::string> seen;
    for (const auto& p : predictions)
        if (!seen.insert(p.patient_id).second)
            throw std::runtime_error("evaluate_cohort: duplicate patient id '" + p.patient_id + "'");

    bool any_no_involvement = false;
    for (const auto& p : predictions) {
        if (!reference.find(p.patient_id))
            throw std::runtime_error("evaluate_cohort: patient '" + p.patient_id +
                                     "' missing from the reference table");
        if (p.staging.stage == Stage::NoInvolvement) any_no_involvement = true;
    }

    // Per-region and pooled confusion counts.
    for (const auto& p : predictions) {
        const ReferenceRow& ref = *reference.find(p.patient_id);
        for (int r = 0; r < kNumRegions; ++r) {
            const bool truth = ref.regions[r] != 0;
            const bool pred = p.profile.involved.count(static_cast<RegionId>(r)) > 0;
            ConfusionCounts& c = rep.per_region[r].counts;
            if (truth && pred) ++c.tp;
            else if (!truth && pred) ++c.fp;
            else if (truth && !pred) ++c.fn;
            else ++c.tn;
            if (truth) ++rep.per_region[r].positive_cases;
        }
    }
    for (int r = 0; r < kNumRegions; ++r) {
        rep.pooled.counts.tp += rep.per_region[r].counts.tp;
        rep.pooled.counts.fp += rep.per_region[r].counts.fp;
        rep.pooled.counts.fn += rep.per_region[r].counts.fn;
        rep.pooled.counts.tn += rep.per_region[r].counts.tn;
        rep.pooled.positive_cases += rep.per_region[r].positive_cases;
        if (rep.per_region[r].counts.total() > 0)
            rep.per_region[r].metrics = binary_metrics(rep.per_region[r].counts, ci_method);
    }
    if (rep.pooled.counts.total() > 0)
        rep.pooled.metrics = binary_metrics(rep.pooled.counts, ci_method);

    // Staging confusion matrix. Class order is ordinal; NoInvolvement sits
    // below Stage I and is included only when some prediction produced it.
    std::vector<Stage> classes;
    if (any_no_involvement) classes.push_back(Stage::NoInvolvement);
    classes.insert(classes.end(), {Stage::I, Stage::II, Stage::III, Stage::IV});
    for (Stage s : classes) rep.stage_labels.emplace_back(stage_name(s));

    auto class_index = [&](Stage s) {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i] == s) return static_cast<int>(i);
        return -1;
    };

    rep.staging_confusion.assign(classes.size(),
                                 std::vector<std::int64_t>(classes.size(), 0));
    std::int64_t agree = 0;
    for (const auto& p : predictions) {
        const ReferenceRow& ref = *reference.find(p.patient_id);
        const Stage truth = static_cast<Stage>(ref.stage);  // Stage::I == 1
        const int ti = class_index(truth);
        const int pi = class_index(p.staging.stage);
        ++rep.staging_confusion[ti][pi];
        if (truth == p.staging.stage) ++agree;
    }
    if (!predictions.empty()) {
        rep.staging_accuracy = proportion(agree, rep.n_patients, ci_method, 0.95);
        rep.kappa = weighted_kappa(rep.staging_confusion);
    }

    // One-vs-rest metrics per stage I..IV.
    for (int s = 1; s <= 4; ++s) {
        ConfusionCounts c;
        for (const auto& p : predictions) {
            const ReferenceRow& ref = *reference.find(p.patient_id);
            const bool truth = ref.stage == s;
            const bool pred = p.staging.stage == static_cast<Stage>(s);
            if (truth && pred) ++c.tp;
            else if (!truth && pred) ++c.fp;
            else if (truth && !pred) ++c.fn;
            else ++c.tn;
            if (truth) ++rep.per_stage[s - 1].positive_cases;
        }
        rep.per_stage[s - 1].counts = c;
        if (c.total() > 0) rep.per_stage[s - 1].metrics = binary_metrics(c, ci_method);
    }

    // Binary therapeutic stratification; positive class is Advanced (III/IV).
    // A NoInvolvement prediction has group None and counts on the Limited side.
    for (const auto& p : predictions) {
        const ReferenceRow& ref = *reference.find(p.patient_id);
        const bool truth_adv = ref.stage >= 3;
        const bool pred_adv = p.staging.group == TherapeuticGroup::Advanced;
        ConfusionCounts& c = rep.binary_counts;
        if (truth_adv && pred_adv) ++c.tp;
        else if (!truth_adv && pred_adv) ++c.fp;
        else if (truth_adv && !pred_adv) ++c.fn;
        else ++c.tn;
    }
    if (rep.binary_counts.total() > 0)
        rep.binary = binary_metrics(rep.binary_counts, ci_method);

    return rep;
}

}  // namespace luganopet
