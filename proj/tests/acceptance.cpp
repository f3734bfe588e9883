// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "revcheck/cli.hpp"
#include "revcheck/revcheck.hpp"

using namespace revcheck;

namespace {

const std::string kFixtures = REVCHECK_FIXTURE_DIR;

struct Check {
    bool ok = true;
    std::string why;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

const LexiconSet& lexicons() {
    static const LexiconSet set = load_lexicon_set(REVCHECK_DEFAULT_LEXICON_DIR);
    return set;
}

ParseResult parse_fixture(const std::string& name, bool amazon) {
    std::ifstream in(kFixtures + "/" + name);
    return amazon ? parse_amazon_tsv(in, ParseMode::Strict) : parse_labeled_tsv(in, ParseMode::Strict);
}

// Branch chain transcribed literally, ratio in doubles.
SentimentCategory oracle_category(long p, long n) {
    if (p == 0 && n == 0) return SentimentCategory::Neutral;
    if (p == 0) return SentimentCategory::ExtremelyNegative;
    if (n == 0) return SentimentCategory::ExtremelyPositive;
    const double percent = static_cast<double>(p) / static_cast<double>(n);
    if (0.8 < percent && percent < 1.25) return SentimentCategory::Neutral;
    if (percent > 2) return SentimentCategory::ExtremelyPositive;
    if (percent < 0.5) return SentimentCategory::ExtremelyNegative;
    if (percent > 1.25) return SentimentCategory::Positive;
    if (percent < 0.8) return SentimentCategory::Negative;
    return SentimentCategory::Indeterminate;
}

// Closed-form chi-squared survival function for integer df.
double chi2_sf_oracle(double x, unsigned k) {
    if (x <= 0) return 1.0;
    const double h = x / 2.0;
    if (k % 2 == 0) {
        double term = 1.0, sum = 1.0;
        for (unsigned i = 1; i < k / 2; ++i) {
            term *= h / i;
            sum += term;
        }
        return std::exp(-h) * sum;
    }
    double sum = 0.0, term = std::sqrt(h) / std::tgamma(1.5);
    for (unsigned i = 1; i <= (k - 1) / 2; ++i) {
        sum += term;
        term *= h / (i + 0.5);
    }
    return std::erfc(std::sqrt(h)) + std::exp(-h) * sum;
}

Check chi_square_replication() {
    Check c;
    const ContingencyTable table = {{999, 447}, {999, 552}, {1000, 249}, {1000, 751}};
    const auto start = std::chrono::steady_clock::now();
    const auto r = chi_square_contingency(table);
    const double ms = elapsed_ms(start);
    char buf[128];
    std::snprintf(buf, sizeof buf, "statistic %.6f df %u p %.3g in %.4f ms", r.statistic,
                  r.degrees_of_freedom, r.p_value, ms);
    c.expect(std::fabs(r.statistic - 180.2087) <= 1e-3, buf);
    c.expect(r.degrees_of_freedom == 3, buf);
    c.expect(r.p_value < 1e-5, buf);
    c.expect(ms < 1.0, buf);
    if (c.ok) c.why = buf;
    return c;
}

Check derived_metrics() {
    Check c;
    const auto m = metrics(ConfusionMatrix{447, 552, 249, 751});
    c.expect(m.accuracy && *m.accuracy == (Ratio{1198, 1999}), "accuracy is not 1198/1999");
    c.expect(m.precision_fake && *m.precision_fake == (Ratio{447, 696}), "precision is not 447/696");
    if (!c.ok) return c;
    const double acc = m.accuracy->value();
    const double prec = m.precision_fake->value();
    c.expect(std::fabs(acc - 1198.0 / 1999.0) <= 1e-9, "accuracy value drifted");
    c.expect(std::fabs(prec - 447.0 / 696.0) <= 1e-9, "precision value drifted");
    c.expect(fixed6(acc) == "0.599300", "accuracy rounds to " + fixed6(acc));
    c.expect(fixed6(prec) == "0.642241", "precision rounds to " + fixed6(prec));
    if (c.ok) c.why = "accuracy " + fixed6(acc) + ", precision_fake " + fixed6(prec);
    return c;
}

Check sentiment_partition() {
    Check c;
    std::size_t indeterminate = 0;
    const auto start = std::chrono::steady_clock::now();
    for (long p = 0; p <= 100; ++p) {
        for (long n = 0; n <= 100; ++n) {
            const auto got = sentiment_category(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n));
            if (got != oracle_category(p, n)) {
                c.expect(false, "mismatch at (" + std::to_string(p) + "," + std::to_string(n) + ")");
            }
            if (got == SentimentCategory::Indeterminate) ++indeterminate;
        }
    }
    const double ms = elapsed_ms(start);
    c.expect(indeterminate > 0, "no indeterminate cases seen");
    c.expect(sentiment_category(4, 5) == SentimentCategory::Indeterminate, "(4,5) not indeterminate");
    c.expect(sentiment_category(5, 4) == SentimentCategory::Indeterminate, "(5,4) not indeterminate");
    c.expect(ms < 1000.0, "exhaustive run took " + std::to_string(ms) + " ms");
    if (c.ok) c.why = "10201 pairs, " + std::to_string(indeterminate) + " indeterminate, " + std::to_string(ms) + " ms";
    return c;
}

Check pvalue_oracle() {
    Check c;
    double worst = 0.0;
    for (unsigned k = 1; k <= 100; ++k) {
        for (double x : {0.05, 0.5, 1.0, 3.841, 5.0, 7.815, 12.0, 40.0, 100.0, 180.2087, 500.0, 2000.0}) {
            worst = std::max(worst, std::fabs(chi_square_pvalue(x, k) - chi2_sf_oracle(x, k)));
        }
    }
    c.expect(worst <= 1e-6, "max deviation " + std::to_string(worst));
    c.expect(std::fabs(chi_square_pvalue(3.841, 1) - 0.05) < 1e-3, "(3.841, 1) not ~0.05");
    c.expect(std::fabs(chi_square_pvalue(7.815, 3) - 0.05) < 1e-3, "(7.815, 3) not ~0.05");
    char buf[64];
    std::snprintf(buf, sizeof buf, "max |deviation| %.3g over 1200 grid points", worst);
    if (c.ok) c.why = buf;
    return c;
}

Check parser_fidelity() {
    Check c;
    const auto amazon = parse_fixture("amazon_example.tsv", true);
    c.expect(amazon.records.size() == 11, "amazon fixture gave " + std::to_string(amazon.records.size()) + " records");
    for (const auto& r : amazon.records) {
        if (r.review_id == "RDIJS7QYB6XNR") {
            c.expect(r.star_rating == 5 && r.helpful_votes == 0u && r.total_votes == 0u && r.verified_purchase,
                     "Monopoly Junior record fields");
        }
        if (r.review_id == "R1UE3RPRGCOLD") {
            c.expect(r.star_rating == 2 && r.helpful_votes == 1u && r.total_votes == 1u,
                     "Super Jumbo Playing Cards record fields");
        }
    }
    const auto labeled = parse_fixture("labeled_example.tsv", false);
    bool saw1 = false, saw10501 = false;
    for (const auto& r : labeled.records) {
        if (r.review_id == "1") {
            saw1 = true;
            c.expect(r.ground_label == GroundLabel::Fake, "row 1 not Fake");
        }
        if (r.review_id == "10501") {
            saw10501 = true;
            c.expect(r.ground_label == GroundLabel::Genuine, "row 10501 not Genuine");
        }
    }
    c.expect(saw1 && saw10501, "labeled rows missing");
    if (c.ok) c.why = "11 amazon records, labeled rows 1/10501 = fake/genuine";
    return c;
}

Check rule_properties() {
    Check c;
    const auto& lex = lexicons();
    const RuleConfig cfg;
    std::mt19937 rng(2019);

    // Duplicate symmetry.
    const std::vector<std::string> bodies = {"Ok", "ok!", "Love it", "love it", "", "meh", "unique"};
    std::uniform_int_distribution<std::size_t> pick(0, bodies.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ReviewRecord> rs(10);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            rs[i].review_id = std::to_string(i);
            rs[i].review_body = bodies[pick(rng)];
        }
        const auto index = build_duplicate_index(rs);
        for (const auto& a : rs) {
            for (const auto& b : rs) {
                if (fingerprint(a.review_body) == fingerprint(b.review_body)) {
                    c.expect(rule_duplicate(a, index).signal == rule_duplicate(b, index).signal,
                             "duplicate flag asymmetric");
                }
            }
        }
    }

    // Vote monotonicity over all 3^8 signal assignments.
    for (std::size_t code = 0; code < 6561; ++code) {
        std::vector<RuleVerdict> vs;
        std::size_t x = code;
        for (auto id : kAllRules) {
            const auto s = static_cast<Signal>(x % 3);
            x /= 3;
            vs.push_back({id, s, s == Signal::Abstain ? "" : "x"});
        }
        const bool before = combine(vs, CombinerMode::Vote).is_fake;
        for (auto& v : vs) {
            if (v.signal != Signal::Abstain) continue;
            v.signal = Signal::Fake;
            if (before) c.expect(combine(vs, CombinerMode::Vote).is_fake, "abstain->fake flipped to genuine");
            v.signal = Signal::Abstain;
        }
    }

    // Determinism across repeated classification.
    const auto corpus = parse_fixture("handcrafted_labeled.tsv", false).records;
    c.expect(classify_corpus(corpus, lex, cfg) == classify_corpus(corpus, lex, cfg), "non-deterministic verdicts");

    // Length boundary.
    ReviewRecord r;
    r.review_id = "len";
    r.review_body = "abcd abcd abcd abcd abcd abcd abcd abcd abcd abcde";  // 10 words, 50 chars
    c.expect(text_stats(r.review_body) == (TextStats{10, 50}), "boundary fixture miscounted");
    c.expect(rule_length(r, cfg).signal == Signal::Fake, "10 words / 50 chars not fake");
    r.review_body = "abc abc abc abc abc abc abc abc abc abc abcdefghijk";  // 11 words, 51 chars
    c.expect(text_stats(r.review_body) == (TextStats{11, 51}), "boundary fixture miscounted");
    c.expect(rule_length(r, cfg).signal == Signal::Genuine, "11 words / 51 chars not genuine");

    // Exaggeration on every bin word.
    for (const auto* bin : {&lex.exaggeration_positive, &lex.exaggeration_negative}) {
        for (const auto& w : bin->words()) {
            ReviewRecord e;
            e.review_body = "honestly " + w + "!";
            c.expect(rule_exaggeration(e, lex.exaggeration_positive, lex.exaggeration_negative).signal == Signal::Fake,
                     "exaggeration missed '" + w + "'");
        }
    }
    c.expect(lex.exaggeration_positive.size() == 5 && lex.exaggeration_negative.size() == 4,
             "exaggeration bins have unexpected size");
    if (c.ok) c.why = "symmetry, monotonicity (6561 cases), determinism, length boundary, 9 bin words";
    return c;
}

Check end_to_end() {
    Check c;
    const auto& lex = lexicons();
    const RuleConfig cfg;
    const auto corpus = parse_fixture("handcrafted_labeled.tsv", false).records;
    c.expect(corpus.size() == 40, "handcrafted corpus has " + std::to_string(corpus.size()) + " records");

    // Confirm the corpus is built as intended: every review trips >= 3 rules in its label's direction.
    const auto index = build_duplicate_index(corpus);
    std::size_t fakes = 0;
    for (const auto& r : corpus) {
        const auto v = combine(evaluate_rules(r, index, lex, cfg), CombinerMode::Vote, r.review_id);
        const bool fake = r.ground_label == GroundLabel::Fake;
        fakes += fake;
        const auto& supporting = fake ? v.fake_rules : v.genuine_rules;
        c.expect(supporting.size() >= 3, "review " + r.review_id + " trips only " +
                                              std::to_string(supporting.size()) + " supporting rules");
    }
    c.expect(fakes == 20, "expected 20 fake-labeled reviews");

    const auto verdicts = classify_corpus(corpus, lex, cfg, CombinerMode::Vote);
    const auto m = confusion_matrix(verdicts, corpus);
    const auto acc = metrics(m).accuracy;
    c.expect(acc && acc->num == acc->den, "vote accuracy " + (acc ? fixed6(acc->value()) : "undefined"));

    // Through the command line on every bundled labeled corpus.
    for (const char* name : {"handcrafted_labeled.tsv", "labeled_example.tsv"}) {
        const std::string path = kFixtures + "/" + name;
        const char* argv[] = {"revcheck", "eval", path.c_str(), "--output-format", "json"};
        std::ostringstream out, err;
        const int code = cli::run(5, argv, out, err);
        c.expect(code == 0, std::string("eval failed on ") + name + ": " + err.str());
        if (code != 0) continue;
        const auto j = nlohmann::json::parse(out.str());
        const auto& cm = j["confusion_matrix"];
        const auto sum = cm["tp"].get<std::uint64_t>() + cm["fn"].get<std::uint64_t>() +
                         cm["fp"].get<std::uint64_t>() + cm["tn"].get<std::uint64_t>();
        const auto size = parse_fixture(name, false).records.size();
        c.expect(sum == size, std::string("matrix cells do not sum to corpus size for ") + name);
        c.expect(!j["chi_square"].is_null() && j["chi_square"]["statistic"].get<double>() >= 0.0,
                 std::string("chi-squared missing or negative for ") + name);
    }
    if (c.ok) c.why = "40/40 correct; eval matrix sums and chi-squared >= 0 on bundled corpora";
    return c;
}

Check throughput() {
    Check c;
    std::mt19937 rng(10000);
    const std::vector<std::string> vocab = {
        "the", "pillow", "is", "good", "bad", "soft", "arrived", "quickly", "and", "i", "love",
        "it", "broke", "after", "a", "week", "great", "price", "would", "buy", "again", "amazing",
        "doctor", "kettle", "water", "handle", "cool", "cheap", "plastic", "worth", "money", "fine"};
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::uniform_int_distribution<int> len(40, 60);
    std::uniform_int_distribution<int> stars(1, 5);
    std::vector<ReviewRecord> corpus(10000);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto& r = corpus[i];
        r.review_id = "S" + std::to_string(i);
        r.customer_id = "C" + std::to_string(i % 997);
        r.product_title = "Shredded Foam Reading Pillow";
        r.product_category = "Home";
        r.star_rating = stars(rng);
        r.helpful_votes = i % 23;
        r.total_votes = i % 23 + 1;
        r.review_headline = vocab[pick(rng)] + " " + vocab[pick(rng)];
        const int words = len(rng);
        for (int w = 0; w < words; ++w) r.review_body += vocab[pick(rng)] + (w % 9 == 8 ? ". " : " ");
    }
    const auto start = std::chrono::steady_clock::now();
    const auto verdicts = classify_corpus(corpus, lexicons(), RuleConfig{});
    const double ms = elapsed_ms(start);
    c.expect(verdicts.size() == corpus.size(), "verdict count mismatch");
    c.expect(ms < 5000.0, "took " + std::to_string(ms) + " ms");
    if (c.ok) c.why = "10000 reviews in " + std::to_string(static_cast<long>(ms)) + " ms";
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
        {"AC1 chi-squared replication", chi_square_replication},
        {"AC2 derived metrics", derived_metrics},
        {"AC3 sentiment partition oracle", sentiment_partition},
        {"AC4 p-value oracle", pvalue_oracle},
        {"AC5 parser fidelity", parser_fidelity},
        {"AC6 rule-level properties", rule_properties},
        {"AC7 end-to-end sanity", end_to_end},
        {"AC8 throughput", throughput},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", c.ok ? "PASS" : "FAIL", name, c.why.c_str());
        failed += !c.ok;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
