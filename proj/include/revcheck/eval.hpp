#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "revcheck/classifier.hpp"
#include "revcheck/errors.hpp"
#include "revcheck/ingest.hpp"

namespace revcheck {

// Rows follow the "actual/predicted" convention with Fake as the positive class:
// tp = +/+, fn = +/-, fp = -/+, tn = -/-.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fn = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const noexcept { return tp + fn + fp + tn; }
    std::uint64_t actual_fake() const noexcept { return tp + fn; }
    std::uint64_t actual_genuine() const noexcept { return fp + tn; }
    std::array<std::uint64_t, 4> cells() const noexcept { return {tp, fn, fp, tn}; }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

inline constexpr std::array<const char*, 4> kCellLabels = {"+/+", "+/-", "-/+", "-/-"};

inline ConfusionMatrix confusion_matrix(const std::vector<Verdict>& verdicts,
                                        const std::vector<ReviewRecord>& records) {
    if (verdicts.empty()) throw EvaluationError("nothing to evaluate");
    std::unordered_map<std::string_view, const ReviewRecord*> by_id;
    by_id.reserve(records.size());
    for (const auto& r : records) by_id.emplace(r.review_id, &r);

    ConfusionMatrix m;
    for (const auto& v : verdicts) {
        auto it = by_id.find(v.review_id);
        if (it == by_id.end()) {
            throw EvaluationError("verdict for unknown review '" + v.review_id + "'");
        }
        const auto& label = it->second->ground_label;
        if (!label) throw EvaluationError("review '" + v.review_id + "' has no ground label");
        const bool actual_fake = *label == GroundLabel::Fake;
        if (actual_fake) (v.is_fake ? m.tp : m.fn)++;
        else (v.is_fake ? m.fp : m.tn)++;
    }
    return m;
}

// Exact fraction; value() converts on demand.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    // Equal as fractions: 2/4 == 1/2.
    friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
        return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
    }
};

// nullopt marks a 0/0 metric.
struct MetricsReport {
    std::optional<Ratio> accuracy;
    std::optional<Ratio> precision_fake;
    std::optional<Ratio> recall_fake;
    std::optional<Ratio> f1_fake;
};

namespace detail {

inline std::optional<Ratio> ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return std::nullopt;
    return Ratio{num, den};
}

}  // namespace detail

inline MetricsReport metrics(const ConfusionMatrix& m) {
    MetricsReport r;
    r.accuracy = detail::ratio(m.tp + m.tn, m.total());
    r.precision_fake = detail::ratio(m.tp, m.tp + m.fp);
    r.recall_fake = detail::ratio(m.tp, m.tp + m.fn);
    // Harmonic mean of precision and recall, 2tp / (2tp + fp + fn); undefined if both are 0.
    if (r.precision_fake && r.recall_fake && m.tp > 0) {
        r.f1_fake = detail::ratio(2 * m.tp, 2 * m.tp + m.fp + m.fn);
    }
    return r;
}

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
// Power series for P when x < a + 1, Lentz continued fraction for Q otherwise.
inline double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0)) throw ContractViolation("incomplete gamma needs a > 0");
    if (x <= 0.0) return 1.0;

    constexpr double eps = 1e-16;
    constexpr int max_iter = 10000;
    const double log_prefix = a * std::log(x) - x - std::lgamma(a);

    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < max_iter; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * eps) break;
        }
        const double p = sum * std::exp(log_prefix);
        return std::max(0.0, 1.0 - p);
    }

    constexpr double tiny = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < eps) break;
    }
    return std::min(1.0, std::exp(log_prefix) * h);
}

// Upper tail of the chi-squared distribution.
inline double chi_square_pvalue(double statistic, unsigned df) {
    if (df == 0) throw ContractViolation("chi-squared needs df >= 1");
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * df, 0.5 * statistic);
}

struct ChiSquareResult {
    double statistic = 0.0;
    unsigned degrees_of_freedom = 1;
    double p_value = 1.0;
    bool significant_at_005 = false;
};

using ContingencyTable = std::vector<std::vector<double>>;

// Pearson's test of independence, no continuity correction.
inline ChiSquareResult chi_square_contingency(const ContingencyTable& table) {
    const std::size_t rows = table.size();
    if (rows < 2) throw ContractViolation("contingency table needs at least 2 rows");
    const std::size_t cols = table.front().size();
    if (cols < 2) throw ContractViolation("contingency table needs at least 2 columns");

    std::vector<double> row_sum(rows, 0.0);
    std::vector<double> col_sum(cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (table[i].size() != cols) throw ContractViolation("contingency table is ragged");
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = table[i][j];
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw ContractViolation("contingency table has a negative or non-finite count");
            }
            row_sum[i] += v;
            col_sum[j] += v;
            total += v;
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        if (row_sum[i] == 0.0) throw DegenerateTableError("row " + std::to_string(i) + " sums to zero");
    }
    for (std::size_t j = 0; j < cols; ++j) {
        if (col_sum[j] == 0.0) throw DegenerateTableError("column " + std::to_string(j) + " sums to zero");
    }

    double stat = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double expected = row_sum[i] * col_sum[j] / total;
            const double diff = table[i][j] - expected;
            stat += diff * diff / expected;
        }
    }

    ChiSquareResult r;
    r.statistic = stat;
    r.degrees_of_freedom = static_cast<unsigned>((rows - 1) * (cols - 1));
    r.p_value = chi_square_pvalue(stat, r.degrees_of_freedom);
    r.significant_at_005 = r.p_value < 0.05;
    return r;
}

// Baseline column in +/+, +/-, -/+, -/- order. The default pairs each actual
// class with itself in both predicted cells: (F, F, G, G).
using BaselineColumn = std::array<double, 4>;

inline BaselineColumn uniform_baseline(const ConfusionMatrix& m) {
    const auto f = static_cast<double>(m.actual_fake());
    const auto g = static_cast<double>(m.actual_genuine());
    return {f, f, g, g};
}

// Baseline vs observed as a 4x2 table. Cells that are zero in both columns
// are dropped; nullopt when fewer than two rows remain.
inline std::optional<ChiSquareResult> chi_square_vs_baseline(const ConfusionMatrix& m,
                                                             const BaselineColumn& baseline) {
    ContingencyTable table;
    const auto observed = m.cells();
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (baseline[i] == 0.0 && observed[i] == 0) continue;
        table.push_back({baseline[i], static_cast<double>(observed[i])});
    }
    if (table.size() < 2) return std::nullopt;
    try {
        return chi_square_contingency(table);
    } catch (const DegenerateTableError&) {
        return std::nullopt;
    }
}

}  // namespace revcheck
