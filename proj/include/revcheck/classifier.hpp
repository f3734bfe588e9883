#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "revcheck/errors.hpp"
#include "revcheck/ingest.hpp"
#include "revcheck/rules.hpp"
#include "revcheck/textkit.hpp"

namespace revcheck {

// Normalized body tokens joined by single spaces.
inline std::string fingerprint(std::string_view body) {
    std::string fp;
    for (const auto& t : tokenize(body)) {
        if (!fp.empty()) fp.push_back(' ');
        fp += t;
    }
    return fp;
}

class DuplicateIndex {
public:
    DuplicateIndex() = default;

    explicit DuplicateIndex(const std::vector<ReviewRecord>& records) {
        for (const auto& r : records) add(r);
    }

    // Group members in insertion order.
    const std::vector<std::string>& group(const std::string& fp) const {
        static const std::vector<std::string> none;
        auto it = groups_.find(fp);
        return it == groups_.end() ? none : it->second;
    }

    const std::string& fingerprint_of(const std::string& review_id) const {
        auto it = by_id_.find(review_id);
        if (it == by_id_.end()) {
            throw ContractViolation("review '" + review_id + "' is not in the duplicate index");
        }
        return it->second;
    }

    const std::unordered_map<std::string, std::vector<std::string>>& groups() const noexcept {
        return groups_;
    }

private:
    void add(const ReviewRecord& r) {
        auto fp = fingerprint(r.review_body);
        if (!by_id_.emplace(r.review_id, fp).second) {
            throw ContractViolation("review id '" + r.review_id + "' indexed twice");
        }
        groups_[fp].push_back(r.review_id);
    }

    std::unordered_map<std::string, std::vector<std::string>> groups_;
    std::unordered_map<std::string, std::string> by_id_;
};

inline DuplicateIndex build_duplicate_index(const std::vector<ReviewRecord>& records) {
    return DuplicateIndex(records);
}

// Every member of a group of identical (normalized) bodies is fake.
// Empty bodies are never flagged; the length rule already catches them.
inline RuleVerdict rule_duplicate(const ReviewRecord& r, const DuplicateIndex& index) {
    const auto& fp = index.fingerprint_of(r.review_id);
    const auto copies = index.group(fp).size();
    if (!fp.empty() && copies >= 2) {
        return {RuleId::Duplicate, Signal::Fake,
                "body shared by " + std::to_string(copies) + " reviews"};
    }
    return {RuleId::Duplicate, Signal::Genuine, "body is unique"};
}

enum class CombinerMode { Vote, PaperAnd };

struct Verdict {
    std::string review_id;
    bool is_fake = false;
    std::vector<RuleId> fake_rules;
    std::vector<RuleId> genuine_rules;

    std::size_t score_numerator() const noexcept { return fake_rules.size(); }
    std::size_t score_denominator() const noexcept { return fake_rules.size() + genuine_rules.size(); }
    // Fraction of deciding rules that said fake; 0 when every rule abstained.
    double score() const noexcept {
        const auto den = score_denominator();
        return den == 0 ? 0.0 : static_cast<double>(score_numerator()) / static_cast<double>(den);
    }

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

// vote: strict majority of deciding rules; ties and all-abstain are genuine.
// paper_and: duplicate AND exaggeration AND helpful-votes-not-genuine AND length-fake.
inline Verdict combine(const std::vector<RuleVerdict>& verdicts, CombinerMode mode,
                       std::string review_id = {}) {
    std::array<std::optional<Signal>, kAllRules.size()> by_rule{};
    for (const auto& v : verdicts) {
        auto& slot = by_rule[static_cast<std::size_t>(v.rule_id)];
        if (slot) {
            throw ContractViolation("rule '" + std::string(to_string(v.rule_id)) +
                                    "' reported twice");
        }
        slot = v.signal;
    }

    Verdict out;
    out.review_id = std::move(review_id);
    for (auto id : kAllRules) {
        const auto& s = by_rule[static_cast<std::size_t>(id)];
        if (s == Signal::Fake) out.fake_rules.push_back(id);
        else if (s == Signal::Genuine) out.genuine_rules.push_back(id);
    }

    auto signal_of = [&by_rule](RuleId id) {
        return by_rule[static_cast<std::size_t>(id)].value_or(Signal::Abstain);
    };

    switch (mode) {
        case CombinerMode::Vote:
            out.is_fake = out.fake_rules.size() > out.genuine_rules.size();
            break;
        case CombinerMode::PaperAnd:
            out.is_fake = signal_of(RuleId::Duplicate) == Signal::Fake &&
                          signal_of(RuleId::Exaggeration) == Signal::Fake &&
                          signal_of(RuleId::HelpfulVotes) != Signal::Genuine &&
                          signal_of(RuleId::Length) == Signal::Fake;
            break;
    }
    return out;
}

// All eight rule verdicts for one record, in canonical order.
inline std::vector<RuleVerdict> evaluate_rules(const ReviewRecord& r, const DuplicateIndex& index,
                                               const LexiconSet& lex, const RuleConfig& cfg) {
    const auto summary = sentiment(r, lex.sentiment_positive, lex.sentiment_negative);
    return {
        rule_exaggeration(r, lex.exaggeration_positive, lex.exaggeration_negative),
        rule_profession(r, lex.degrees, lex.honorifics),
        rule_length(r, cfg),
        rule_helpful_votes(r, cfg),
        rule_product_mention(r, cfg, lex.stopwords),
        rule_photo(r),
        rule_duplicate(r, index),
        rule_sentiment_divergence(r, summary, cfg),
    };
}

// Builds the duplicate index once, then classifies each record independently.
// Output order follows input order.
inline std::vector<Verdict> classify_corpus(const std::vector<ReviewRecord>& records,
                                            const LexiconSet& lex, const RuleConfig& cfg,
                                            CombinerMode mode = CombinerMode::Vote) {
    const auto index = build_duplicate_index(records);
    std::vector<Verdict> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(combine(evaluate_rules(r, index, lex, cfg), mode, r.review_id));
    }
    return out;
}

struct ReviewerStats {
    std::string customer_id;
    std::uint64_t review_count = 0;
    std::uint64_t total_helpful = 0;

    double helpful_ratio() const noexcept {
        return static_cast<double>(total_helpful) / static_cast<double>(review_count);
    }

    friend bool operator==(const ReviewerStats&, const ReviewerStats&) = default;
};

// Aggregates helpful votes per customer. Records without a customer id or
// vote count are left out. Result is sorted by customer_id.
inline std::vector<ReviewerStats> reviewer_stats(const std::vector<ReviewRecord>& records) {
    std::map<std::string, ReviewerStats> acc;
    for (const auto& r : records) {
        if (!r.customer_id || !r.helpful_votes) continue;
        auto& s = acc[*r.customer_id];
        s.customer_id = *r.customer_id;
        ++s.review_count;
        s.total_helpful += *r.helpful_votes;
    }
    std::vector<ReviewerStats> out;
    out.reserve(acc.size());
    for (auto& [id, s] : acc) out.push_back(std::move(s));
    return out;
}

// Lowest helpful ratio first (compared exactly), then customer_id.
inline void sort_by_trust(std::vector<ReviewerStats>& stats) {
    std::sort(stats.begin(), stats.end(), [](const ReviewerStats& a, const ReviewerStats& b) {
        const auto lhs = static_cast<unsigned __int128>(a.total_helpful) * b.review_count;
        const auto rhs = static_cast<unsigned __int128>(b.total_helpful) * a.review_count;
        if (lhs != rhs) return lhs < rhs;
        return a.customer_id < b.customer_id;
    });
}

}  // namespace revcheck
