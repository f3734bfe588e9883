#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "revcheck/errors.hpp"
#include "revcheck/ingest.hpp"
#include "revcheck/textkit.hpp"

namespace revcheck {

// Canonical order; verdict lists are always reported in this order.
enum class RuleId {
    Exaggeration,
    Profession,
    Length,
    HelpfulVotes,
    ProductMention,
    Photo,
    Duplicate,
    SentimentDivergence,
};

inline constexpr std::array<RuleId, 8> kAllRules = {
    RuleId::Exaggeration, RuleId::Profession, RuleId::Length,    RuleId::HelpfulVotes,
    RuleId::ProductMention, RuleId::Photo,    RuleId::Duplicate, RuleId::SentimentDivergence,
};

inline constexpr std::string_view to_string(RuleId id) noexcept {
    switch (id) {
        case RuleId::Exaggeration: return "exaggeration";
        case RuleId::Profession: return "profession";
        case RuleId::Length: return "length";
        case RuleId::HelpfulVotes: return "helpful_votes";
        case RuleId::ProductMention: return "product_mention";
        case RuleId::Photo: return "photo";
        case RuleId::Duplicate: return "duplicate";
        case RuleId::SentimentDivergence: return "sentiment_divergence";
    }
    return "unknown";
}

enum class Signal { Fake, Genuine, Abstain };

inline constexpr std::string_view to_string(Signal s) noexcept {
    switch (s) {
        case Signal::Fake: return "fake";
        case Signal::Genuine: return "genuine";
        case Signal::Abstain: return "abstain";
    }
    return "unknown";
}

// One heuristic's output. detail is non-empty unless the rule abstained.
struct RuleVerdict {
    RuleId rule_id;
    Signal signal;
    std::string detail;

    friend bool operator==(const RuleVerdict&, const RuleVerdict&) = default;
};

struct RuleConfig {
    int min_words = 10;
    int min_chars = 50;
    int helpful_votes_threshold = 10;
    int divergence_threshold = 2;
    int mention_min_token_len = 3;

    friend bool operator==(const RuleConfig&, const RuleConfig&) = default;
};

// Flat key=value file. '#' starts a comment line; unknown keys and
// non-positive values are rejected.
inline RuleConfig load_rule_config(std::istream& in) {
    RuleConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        const auto key = detail::trim(body.substr(0, eq));
        const auto raw = detail::trim(body.substr(eq + 1));
        const auto value = detail::parse_int<int>(raw);
        if (!value || *value <= 0) {
            throw ConfigError("config line " + std::to_string(line_no) + ": '" + std::string(key) +
                              "' needs a positive integer");
        }
        if (key == "min_words") cfg.min_words = *value;
        else if (key == "min_chars") cfg.min_chars = *value;
        else if (key == "helpful_votes_threshold") cfg.helpful_votes_threshold = *value;
        else if (key == "divergence_threshold") cfg.divergence_threshold = *value;
        else if (key == "mention_min_token_len") cfg.mention_min_token_len = *value;
        else throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                               std::string(key) + "'");
    }
    return cfg;
}

// Every word list the rules consult.
struct LexiconSet {
    Lexicon exaggeration_positive{"exaggeration-positive"};
    Lexicon exaggeration_negative{"exaggeration-negative"};
    Lexicon degrees{"degrees"};
    Lexicon honorifics{"honorifics"};
    Lexicon sentiment_positive{"sentiment-positive"};
    Lexicon sentiment_negative{"sentiment-negative"};
    Lexicon stopwords{"stopwords"};
};

// Loads <dir>/<name>.txt for each lexicon in the set.
inline LexiconSet load_lexicon_set(const std::filesystem::path& dir) {
    auto load = [&dir](const char* name) { return load_lexicon_file(dir / (std::string(name) + ".txt"), name); };
    LexiconSet set;
    set.exaggeration_positive = load("exaggeration-positive");
    set.exaggeration_negative = load("exaggeration-negative");
    set.degrees = load("degrees");
    set.honorifics = load("honorifics");
    set.sentiment_positive = load("sentiment-positive");
    set.sentiment_negative = load("sentiment-negative");
    set.stopwords = load("stopwords");
    return set;
}

namespace detail {

inline std::vector<std::string> body_and_headline_tokens(const ReviewRecord& r) {
    return tokenize(r.review_body + " " + r.review_headline);
}

inline std::optional<std::string> first_hit(const std::vector<std::string>& tokens,
                                            const Lexicon& a, const Lexicon& b) {
    for (const auto& t : tokens) {
        if (a.contains_normalized(t) || b.contains_normalized(t)) return t;
    }
    return std::nullopt;
}

}  // namespace detail

// Any exaggerated word from either bin in body or headline marks the review fake.
inline RuleVerdict rule_exaggeration(const ReviewRecord& r, const Lexicon& pos_bin,
                                     const Lexicon& neg_bin) {
    const auto tokens = detail::body_and_headline_tokens(r);
    if (auto hit = detail::first_hit(tokens, pos_bin, neg_bin)) {
        return {RuleId::Exaggeration, Signal::Fake, "exaggerated word '" + *hit + "'"};
    }
    return {RuleId::Exaggeration, Signal::Genuine, "no exaggerated word"};
}

// Self-declared degrees or honorifics mark the review fake.
inline RuleVerdict rule_profession(const ReviewRecord& r, const Lexicon& degrees,
                                   const Lexicon& honorifics) {
    const auto tokens = detail::body_and_headline_tokens(r);
    if (auto hit = detail::first_hit(tokens, degrees, honorifics)) {
        return {RuleId::Profession, Signal::Fake, "professional title '" + *hit + "'"};
    }
    return {RuleId::Profession, Signal::Genuine, "no professional title"};
}

// Body only. Both limits are strict: exactly min_words words is still too short.
inline RuleVerdict rule_length(const ReviewRecord& r, const RuleConfig& cfg) {
    const auto s = text_stats(r.review_body);
    const std::string measured =
        std::to_string(s.word_count) + " words, " + std::to_string(s.char_count) + " chars";
    if (s.word_count > static_cast<std::size_t>(cfg.min_words) &&
        s.char_count > static_cast<std::size_t>(cfg.min_chars)) {
        return {RuleId::Length, Signal::Genuine, measured};
    }
    return {RuleId::Length, Signal::Fake, measured + " (too short)"};
}

// Only the positive direction counts: few votes is not evidence of fakeness.
inline RuleVerdict rule_helpful_votes(const ReviewRecord& r, const RuleConfig& cfg) {
    if (r.helpful_votes &&
        *r.helpful_votes >= static_cast<std::uint64_t>(cfg.helpful_votes_threshold)) {
        return {RuleId::HelpfulVotes, Signal::Genuine,
                std::to_string(*r.helpful_votes) + " helpful votes"};
    }
    return {RuleId::HelpfulVotes, Signal::Abstain, {}};
}

// Content words of the product title and category, minus stopwords and short tokens.
inline std::unordered_set<std::string> product_terms(const ReviewRecord& r, const RuleConfig& cfg,
                                                     const Lexicon& stopwords) {
    std::unordered_set<std::string> terms;
    for (auto& t : tokenize(r.product_title + " " + r.product_category)) {
        if (t.size() < static_cast<std::size_t>(cfg.mention_min_token_len)) continue;
        if (stopwords.contains_normalized(t)) continue;
        terms.insert(std::move(t));
    }
    return terms;
}

inline RuleVerdict rule_product_mention(const ReviewRecord& r, const RuleConfig& cfg,
                                        const Lexicon& stopwords) {
    const auto terms = product_terms(r, cfg, stopwords);
    if (terms.empty()) return {RuleId::ProductMention, Signal::Abstain, {}};
    for (const auto& t : tokenize(r.review_body)) {
        if (terms.contains(t)) {
            return {RuleId::ProductMention, Signal::Genuine, "mentions '" + t + "'"};
        }
    }
    return {RuleId::ProductMention, Signal::Fake, "product never mentioned"};
}

inline RuleVerdict rule_photo(const ReviewRecord& r) {
    if (r.has_images.value_or(false)) {
        return {RuleId::Photo, Signal::Genuine, "review has product photos"};
    }
    return {RuleId::Photo, Signal::Abstain, {}};
}

enum class SentimentCategory {
    ExtremelyNegative,
    Negative,
    Neutral,
    Positive,
    ExtremelyPositive,
    Indeterminate,
};

inline constexpr std::string_view to_string(SentimentCategory c) noexcept {
    switch (c) {
        case SentimentCategory::ExtremelyNegative: return "extremely negative";
        case SentimentCategory::Negative: return "negative";
        case SentimentCategory::Neutral: return "neutral";
        case SentimentCategory::Positive: return "positive";
        case SentimentCategory::ExtremelyPositive: return "extremely positive";
        case SentimentCategory::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

// Ratio buckets of positive/negative hits, evaluated in the original branch
// order. A ratio of exactly 0.8 or 1.25 matches no branch and is Indeterminate.
// Comparisons are done on exact integer cross-products instead of a double ratio.
inline constexpr SentimentCategory sentiment_category(std::uint64_t positive,
                                                      std::uint64_t negative) noexcept {
    if (positive == 0 && negative == 0) return SentimentCategory::Neutral;
    if (positive == 0) return SentimentCategory::ExtremelyNegative;
    if (negative == 0) return SentimentCategory::ExtremelyPositive;
    // ratio = p/n;  ratio > a/b  <=>  b*p > a*n
    const auto p = positive;
    const auto n = negative;
    const bool above_0_8 = 5 * p > 4 * n;
    const bool below_0_8 = 5 * p < 4 * n;
    const bool above_1_25 = 4 * p > 5 * n;
    const bool below_1_25 = 4 * p < 5 * n;
    if (above_0_8 && below_1_25) return SentimentCategory::Neutral;
    if (p > 2 * n) return SentimentCategory::ExtremelyPositive;
    if (2 * p < n) return SentimentCategory::ExtremelyNegative;
    if (above_1_25) return SentimentCategory::Positive;
    if (below_0_8) return SentimentCategory::Negative;
    return SentimentCategory::Indeterminate;
}

inline constexpr int predicted_rating(SentimentCategory c) noexcept {
    switch (c) {
        case SentimentCategory::ExtremelyPositive: return 5;
        case SentimentCategory::Positive: return 4;
        case SentimentCategory::Neutral: return 3;
        case SentimentCategory::Negative: return 2;
        case SentimentCategory::ExtremelyNegative: return 1;
        case SentimentCategory::Indeterminate: return 0;
    }
    return 0;
}

struct SentimentSummary {
    std::uint64_t positive_count = 0;
    std::uint64_t negative_count = 0;
    SentimentCategory category = SentimentCategory::Neutral;
    int predicted_rating = 3;

    friend bool operator==(const SentimentSummary&, const SentimentSummary&) = default;
};

// Counts body tokens with multiplicity. No negation handling: "not good" is one positive hit.
inline SentimentSummary sentiment(const ReviewRecord& r, const Lexicon& pos_words,
                                  const Lexicon& neg_words) {
    SentimentSummary s;
    for (const auto& t : tokenize(r.review_body)) {
        if (pos_words.contains_normalized(t)) ++s.positive_count;
        if (neg_words.contains_normalized(t)) ++s.negative_count;
    }
    s.category = sentiment_category(s.positive_count, s.negative_count);
    s.predicted_rating = predicted_rating(s.category);
    return s;
}

// Gap between the sentiment-predicted rating and the stars given.
// Nullopt when the category is Indeterminate.
inline std::optional<int> rating_difference(const SentimentSummary& s, int star_rating) noexcept {
    if (s.category == SentimentCategory::Indeterminate) return std::nullopt;
    return std::abs(s.predicted_rating - star_rating);
}

inline RuleVerdict rule_sentiment_divergence(const ReviewRecord& r, const SentimentSummary& s,
                                             const RuleConfig& cfg) {
    const auto diff = rating_difference(s, r.star_rating);
    if (!diff) return {RuleId::SentimentDivergence, Signal::Abstain, {}};
    const std::string detail = "text reads " + std::to_string(s.predicted_rating) +
                               " stars, rated " + std::to_string(r.star_rating);
    if (*diff >= cfg.divergence_threshold) {
        return {RuleId::SentimentDivergence, Signal::Fake, detail};
    }
    return {RuleId::SentimentDivergence, Signal::Genuine, detail};
}

}  // namespace revcheck
