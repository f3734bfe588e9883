#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revcheck/errors.hpp"

namespace revcheck {

namespace detail {

constexpr bool is_word_char(char c) noexcept {
    return (c >= 'a' && c <= 'z') || c == '\'' || c == '-';
}

constexpr char ascii_lower(char c) noexcept {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

constexpr bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace detail

// Lowercases ASCII letters, then keeps only a-z, apostrophe and hyphen.
// Anything else (digits, punctuation, non-ASCII bytes) is dropped.
inline std::string normalize_word(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (char c : word) {
        const char lc = detail::ascii_lower(c);
        if (detail::is_word_char(lc)) out.push_back(lc);
    }
    return out;
}

// Splits on whitespace runs, normalizes each piece and drops empties.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && detail::is_space(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !detail::is_space(text[i])) ++i;
        if (i > start) {
            auto word = normalize_word(text.substr(start, i - start));
            if (!word.empty()) tokens.push_back(std::move(word));
        }
    }
    return tokens;
}

// Number of UTF-8 code points (continuation bytes are not counted).
inline std::size_t utf8_length(std::string_view text) noexcept {
    return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0u) != 0x80u;
    }));
}

struct TextStats {
    std::size_t word_count = 0;
    std::size_t char_count = 0;

    friend bool operator==(const TextStats&, const TextStats&) = default;
};

// char_count measures the raw text, word_count the normalized tokens.
inline TextStats text_stats(std::string_view text) {
    return TextStats{tokenize(text).size(), utf8_length(text)};
}

using WordCounts = std::map<std::string, std::size_t, std::less<>>;

inline WordCounts word_frequencies(const std::vector<std::string>& tokens) {
    WordCounts counts;
    for (const auto& t : tokens) ++counts[t];
    return counts;
}

// The k most frequent words, highest count first, ties broken lexicographically.
inline std::vector<std::pair<std::string, std::size_t>> most_frequent(const WordCounts& counts,
                                                                      std::size_t k) {
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

// A named set of normalized words.
class Lexicon {
public:
    Lexicon() = default;
    explicit Lexicon(std::string name) : name_(std::move(name)) {}

    template <typename Range>
    Lexicon(std::string name, const Range& words) : name_(std::move(name)) {
        for (const auto& w : words) insert(w);
    }

    const std::string& name() const noexcept { return name_; }
    const std::set<std::string, std::less<>>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }

    // Normalizes before inserting; returns false if nothing survives normalization.
    bool insert(std::string_view word) {
        auto w = normalize_word(word);
        if (w.empty()) return false;
        words_.insert(std::move(w));
        return true;
    }

    // Query is normalized, so "Phenomenal!" and "phenomenal" agree.
    bool contains(std::string_view word) const {
        return contains_normalized(normalize_word(word));
    }

    // Fast path for tokens that already came out of tokenize().
    bool contains_normalized(std::string_view token) const {
        return words_.find(token) != words_.end();
    }

private:
    std::string name_;
    std::set<std::string, std::less<>> words_;
};

// One word per line. Lines starting with ';' and blank lines are skipped.
// `skipped` receives the number of word lines that normalized to nothing.
inline Lexicon load_lexicon(std::istream& in, std::string name, std::size_t& skipped) {
    if (!in) throw LexiconError("cannot read lexicon '" + name + "'");
    Lexicon lex(name);
    skipped = 0;
    std::string line;
    while (std::getline(in, line)) {
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == ';') continue;
        if (!lex.insert(body)) ++skipped;
    }
    if (in.bad()) throw LexiconError("read failure in lexicon '" + name + "'");
    return lex;
}

inline Lexicon load_lexicon(std::istream& in, std::string name) {
    std::size_t skipped = 0;
    return load_lexicon(in, std::move(name), skipped);
}

inline Lexicon load_lexicon_file(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path);
    if (!in) throw LexiconError("cannot open lexicon '" + name + "' at " + path.string());
    return load_lexicon(in, std::move(name));
}

}  // namespace revcheck
