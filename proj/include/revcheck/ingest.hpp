#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "revcheck/errors.hpp"

namespace revcheck {

enum class GroundLabel { Fake, Genuine };

enum class ParseMode { Strict, Lenient };

// One review. Fields a dataset format does not carry stay empty optionals.
struct ReviewRecord {
    std::string review_id;
    std::optional<std::string> customer_id;
    std::string product_id;
    std::string product_title;
    std::string product_category;
    int star_rating = 0;
    std::optional<std::uint64_t> helpful_votes;
    std::optional<std::uint64_t> total_votes;
    bool verified_purchase = false;
    std::optional<bool> vine;
    std::string review_headline;
    std::string review_body;
    std::optional<std::string> review_date;
    std::optional<bool> has_images;
    std::optional<GroundLabel> ground_label;

    friend bool operator==(const ReviewRecord&, const ReviewRecord&) = default;
};

struct ParseFailure {
    std::size_t line = 0;
    std::string reason;

    friend bool operator==(const ParseFailure&, const ParseFailure&) = default;
};

struct ParseReport {
    std::size_t records_ok = 0;
    std::size_t records_failed = 0;
    std::vector<ParseFailure> failures;
};

struct ParseResult {
    std::vector<ReviewRecord> records;
    ParseReport report;
};

inline constexpr std::size_t kAmazonColumns = 15;
inline constexpr std::size_t kLabeledColumns = 9;

inline constexpr std::string_view kAmazonHeader =
    "marketplace\tcustomer_id\treview_id\tproduct_id\tproduct_parent\tproduct_title\t"
    "product_category\tstar_rating\thelpful_votes\ttotal_votes\tvine\tverified_purchase\t"
    "review_headline\treview_body\treview_date";

inline constexpr std::string_view kLabeledHeader =
    "DOC_ID\tLABEL\tRATING\tVERIFIED_PURCHASE\tPRODUCT_CATEGORY\tPRODUCT_ID\tPRODUCT_TITLE\t"
    "REVIEW_TITLE\tREVIEW_TEXT";

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
    Int value{};
    if (s.empty()) return std::nullopt;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

// Thrown inside a line parser; the driver attaches the line number.
struct LineRejected {
    std::string reason;
};

inline int parse_rating(std::string_view field) {
    const auto rating = parse_int<int>(field);
    if (!rating) throw LineRejected{"non-integer star rating '" + std::string(field) + "'"};
    if (*rating < 1 || *rating > 5) throw LineRejected{"star rating out of range 1..5"};
    return *rating;
}

inline std::uint64_t parse_count(std::string_view field, std::string_view what) {
    const auto n = parse_int<std::uint64_t>(field);
    if (!n) throw LineRejected{"non-integer " + std::string(what) + " '" + std::string(field) + "'"};
    return *n;
}

inline void check_columns(const std::vector<std::string_view>& fields, std::size_t expected) {
    if (fields.size() != expected) {
        throw LineRejected{"expected " + std::to_string(expected) + " columns, got " +
                           std::to_string(fields.size())};
    }
}

inline std::optional<std::string> non_empty(std::string_view s) {
    if (s.empty()) return std::nullopt;
    return std::string(s);
}

inline ReviewRecord parse_amazon_line(const std::vector<std::string_view>& f) {
    check_columns(f, kAmazonColumns);
    ReviewRecord r;
    r.customer_id = non_empty(f[1]);
    r.review_id = std::string(f[2]);
    r.product_id = std::string(f[3]);
    r.product_title = std::string(f[5]);
    r.product_category = std::string(f[6]);
    r.star_rating = parse_rating(f[7]);
    r.helpful_votes = parse_count(f[8], "helpful_votes");
    r.total_votes = parse_count(f[9], "total_votes");
    if (*r.helpful_votes > *r.total_votes) throw LineRejected{"helpful_votes exceeds total_votes"};
    r.vine = f[10] == "Y";
    r.verified_purchase = f[11] == "Y";
    r.review_headline = std::string(f[12]);
    r.review_body = std::string(f[13]);
    r.review_date = non_empty(f[14]);
    return r;
}

inline ReviewRecord parse_labeled_line(const std::vector<std::string_view>& f) {
    check_columns(f, kLabeledColumns);
    ReviewRecord r;
    r.review_id = std::string(f[0]);
    if (f[1] == "__label1__") {
        r.ground_label = GroundLabel::Fake;
    } else if (f[1] == "__label2__") {
        r.ground_label = GroundLabel::Genuine;
    } else {
        throw LineRejected{"unknown label"};
    }
    r.star_rating = parse_rating(f[2]);
    r.verified_purchase = f[3] == "Y";
    r.product_category = std::string(f[4]);
    r.product_id = std::string(f[5]);
    r.product_title = std::string(f[6]);
    r.review_headline = std::string(f[7]);
    r.review_body = std::string(f[8]);
    return r;
}

// Shared driver: CR stripping, blank-line skipping, id uniqueness, strict/lenient policy.
template <typename LineParser, typename HeaderTest>
ParseResult parse_tsv(std::istream& in, ParseMode mode, LineParser parse_line, HeaderTest is_header) {
    ParseResult result;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            first = false;
            if (is_header(line)) continue;
        }
        if (line.empty()) continue;
        try {
            auto record = parse_line(split_tabs(line));
            if (record.review_id.empty()) throw LineRejected{"empty review id"};
            if (!seen_ids.insert(record.review_id).second) {
                throw LineRejected{"duplicate review id '" + record.review_id + "'"};
            }
            result.records.push_back(std::move(record));
            ++result.report.records_ok;
        } catch (const LineRejected& rejected) {
            if (mode == ParseMode::Strict) throw ParseError(line_no, rejected.reason);
            ++result.report.records_failed;
            result.report.failures.push_back({line_no, rejected.reason});
        }
    }
    return result;
}

}  // namespace detail

// 15-column public Amazon review dump. The first line is always treated as the header.
inline ParseResult parse_amazon_tsv(std::istream& in, ParseMode mode) {
    return detail::parse_tsv(in, mode, detail::parse_amazon_line,
                             [](const std::string&) { return true; });
}

// 9-column labeled deception corpus. A leading "DOC_ID" header is optional.
inline ParseResult parse_labeled_tsv(std::istream& in, ParseMode mode) {
    return detail::parse_tsv(in, mode, detail::parse_labeled_line, [](const std::string& line) {
        return line.substr(0, line.find('\t')) == "DOC_ID";
    });
}

namespace detail {

inline std::string count_or_empty(const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string();
}

}  // namespace detail

// Serializers emit one line without a trailing newline. Fields the format
// does not carry (marketplace, product_parent) are written as placeholders.
inline std::string to_amazon_tsv(const ReviewRecord& r) {
    std::string out;
    auto add = [&out](std::string_view field, bool last = false) {
        out.append(field);
        if (!last) out.push_back('\t');
    };
    add("US");
    add(r.customer_id.value_or(""));
    add(r.review_id);
    add(r.product_id);
    add("0");
    add(r.product_title);
    add(r.product_category);
    add(std::to_string(r.star_rating));
    add(detail::count_or_empty(r.helpful_votes));
    add(detail::count_or_empty(r.total_votes));
    add(r.vine.value_or(false) ? "Y" : "N");
    add(r.verified_purchase ? "Y" : "N");
    add(r.review_headline);
    add(r.review_body);
    add(r.review_date.value_or(""), true);
    return out;
}

inline std::string to_labeled_tsv(const ReviewRecord& r) {
    if (!r.ground_label) throw ContractViolation("labeled serialization needs a ground label");
    const std::string rating = std::to_string(r.star_rating);
    std::string out;
    for (std::string_view field :
         {std::string_view(r.review_id),
          std::string_view(*r.ground_label == GroundLabel::Fake ? "__label1__" : "__label2__"),
          std::string_view(rating),
          std::string_view(r.verified_purchase ? "Y" : "N"), std::string_view(r.product_category),
          std::string_view(r.product_id), std::string_view(r.product_title),
          std::string_view(r.review_headline)}) {
        out.append(field);
        out.push_back('\t');
    }
    out.append(r.review_body);
    return out;
}

}  // namespace revcheck
