#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "revcheck/classifier.hpp"
#include "revcheck/eval.hpp"
#include "revcheck/rules.hpp"

namespace revcheck {

// Fixed six-decimal rendering; keeps output byte-stable across runs.
inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string join_rules(const std::vector<RuleId>& ids) {
    std::string out;
    for (auto id : ids) {
        if (!out.empty()) out.push_back(';');
        out.append(to_string(id));
    }
    return out;
}

inline nlohmann::json rules_json(const std::vector<RuleId>& ids) {
    auto arr = nlohmann::json::array();
    for (auto id : ids) arr.push_back(std::string(to_string(id)));
    return arr;
}

// ---- verdicts -------------------------------------------------------------

inline constexpr const char* kVerdictTsvHeader = "review_id\tis_fake\tscore\tfake_rules\tgenuine_rules";

inline std::string verdict_tsv_line(const Verdict& v) {
    return v.review_id + '\t' + (v.is_fake ? "true" : "false") + '\t' + fixed6(v.score()) + '\t' +
           join_rules(v.fake_rules) + '\t' + join_rules(v.genuine_rules);
}

inline void write_verdicts_tsv(std::ostream& out, const std::vector<Verdict>& verdicts) {
    out << kVerdictTsvHeader << '\n';
    for (const auto& v : verdicts) out << verdict_tsv_line(v) << '\n';
}

inline nlohmann::json to_json(const Verdict& v) {
    return {{"review_id", v.review_id},
            {"is_fake", v.is_fake},
            {"score", v.score()},
            {"fake_rules", rules_json(v.fake_rules)},
            {"genuine_rules", rules_json(v.genuine_rules)}};
}

inline void write_verdicts_json(std::ostream& out, const std::vector<Verdict>& verdicts) {
    auto arr = nlohmann::json::array();
    for (const auto& v : verdicts) arr.push_back(to_json(v));
    out << arr.dump(2) << '\n';
}

// ---- sentiment ------------------------------------------------------------

inline constexpr const char* kSentimentTsvHeader =
    "review_id\tpositive_count\tnegative_count\tcategory\tpredicted_rating\tstar_rating\tdifference";

inline std::string sentiment_tsv_line(const ReviewRecord& r, const SentimentSummary& s) {
    const auto diff = rating_difference(s, r.star_rating);
    return r.review_id + '\t' + std::to_string(s.positive_count) + '\t' +
           std::to_string(s.negative_count) + '\t' + std::string(to_string(s.category)) + '\t' +
           std::to_string(s.predicted_rating) + '\t' + std::to_string(r.star_rating) + '\t' +
           (diff ? std::to_string(*diff) : std::string("NA"));
}

inline nlohmann::json sentiment_json(const ReviewRecord& r, const SentimentSummary& s) {
    const auto diff = rating_difference(s, r.star_rating);
    return {{"review_id", r.review_id},
            {"positive_count", s.positive_count},
            {"negative_count", s.negative_count},
            {"category", std::string(to_string(s.category))},
            {"predicted_rating", s.predicted_rating},
            {"star_rating", r.star_rating},
            {"difference", diff ? nlohmann::json(*diff) : nlohmann::json(nullptr)}};
}

// ---- reviewers ------------------------------------------------------------

inline constexpr const char* kReviewerTsvHeader =
    "customer_id\treview_count\ttotal_helpful\thelpful_ratio";

inline std::string reviewer_tsv_line(const ReviewerStats& s) {
    return s.customer_id + '\t' + std::to_string(s.review_count) + '\t' +
           std::to_string(s.total_helpful) + '\t' + fixed6(s.helpful_ratio());
}

inline nlohmann::json to_json(const ReviewerStats& s) {
    return {{"customer_id", s.customer_id},
            {"review_count", s.review_count},
            {"total_helpful", s.total_helpful},
            {"helpful_ratio", s.helpful_ratio()}};
}

// ---- evaluation -----------------------------------------------------------

inline nlohmann::json to_json(const std::optional<Ratio>& r) {
    if (!r) return nullptr;
    return {{"numerator", r->num}, {"denominator", r->den}, {"value", r->value()}};
}

inline nlohmann::json to_json(const MetricsReport& m) {
    return {{"accuracy", to_json(m.accuracy)},
            {"precision_fake", to_json(m.precision_fake)},
            {"recall_fake", to_json(m.recall_fake)},
            {"f1_fake", to_json(m.f1_fake)}};
}

inline nlohmann::json to_json(const ChiSquareResult& c) {
    return {{"statistic", c.statistic},
            {"degrees_of_freedom", c.degrees_of_freedom},
            {"p_value", c.p_value},
            {"significant_at_005", c.significant_at_005}};
}

inline nlohmann::json to_json(const ConfusionMatrix& m) {
    return {{"tp", m.tp}, {"fn", m.fn}, {"fp", m.fp}, {"tn", m.tn}, {"n", m.total()}};
}

struct EvaluationReport {
    ConfusionMatrix matrix;
    BaselineColumn baseline{};
    MetricsReport metrics;
    std::optional<ChiSquareResult> chi_square;
};

inline EvaluationReport evaluate(const ConfusionMatrix& m, const std::optional<BaselineColumn>& baseline) {
    EvaluationReport r;
    r.matrix = m;
    r.baseline = baseline.value_or(uniform_baseline(m));
    r.metrics = metrics(m);
    r.chi_square = chi_square_vs_baseline(m, r.baseline);
    return r;
}

inline nlohmann::json to_json(const EvaluationReport& r) {
    auto baseline = nlohmann::json::array();
    for (double b : r.baseline) baseline.push_back(b);
    return {{"confusion_matrix", to_json(r.matrix)},
            {"baseline", baseline},
            {"metrics", to_json(r.metrics)},
            {"chi_square", r.chi_square ? to_json(*r.chi_square) : nlohmann::json(nullptr)}};
}

// Cell / baseline / observed, one row per confusion cell.
inline void write_matrix_tsv(std::ostream& out, const EvaluationReport& r) {
    out << "cell\tbaseline\tobserved\n";
    const auto cells = r.matrix.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", r.baseline[i]);
        out << kCellLabels[i] << '\t' << buf << '\t' << cells[i] << '\n';
    }
}

inline void write_text_report(std::ostream& out, const EvaluationReport& r) {
    auto line = [&out](const char* label, const std::string& value) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-20s %s\n", label, value.c_str());
        out << buf;
    };
    auto metric = [](const std::optional<Ratio>& v) {
        return v ? fixed6(v->value()) + " (" + std::to_string(v->num) + "/" + std::to_string(v->den) + ")"
                 : std::string("undefined");
    };
    line("n", std::to_string(r.matrix.total()));
    line("accuracy", metric(r.metrics.accuracy));
    line("precision_fake", metric(r.metrics.precision_fake));
    line("recall_fake", metric(r.metrics.recall_fake));
    line("f1_fake", metric(r.metrics.f1_fake));
    if (r.chi_square) {
        char p[32];
        std::snprintf(p, sizeof p, "%.6g", r.chi_square->p_value);
        line("chi_square", fixed6(r.chi_square->statistic));
        line("degrees_of_freedom", std::to_string(r.chi_square->degrees_of_freedom));
        line("p_value", p);
        line("significant_at_005", r.chi_square->significant_at_005 ? "yes" : "no");
    } else {
        line("chi_square", "unavailable (degenerate table)");
    }
}

}  // namespace revcheck
