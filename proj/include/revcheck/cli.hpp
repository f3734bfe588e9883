#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revcheck/classifier.hpp"
#include "revcheck/errors.hpp"
#include "revcheck/eval.hpp"
#include "revcheck/ingest.hpp"
#include "revcheck/report.hpp"
#include "revcheck/rules.hpp"

#ifndef REVCHECK_DEFAULT_LEXICON_DIR
#define REVCHECK_DEFAULT_LEXICON_DIR "data/lexicons"
#endif

namespace revcheck::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

enum class InputFormat { Amazon, Labeled };
enum class OutputFormat { Tsv, Json };

struct RunManifest {
    std::string command;
    std::string input_path;
    InputFormat format = InputFormat::Labeled;
    CombinerMode combiner_mode = CombinerMode::Vote;
    std::optional<std::string> config_path;
    OutputFormat output_format = OutputFormat::Tsv;
    std::optional<std::string> output_path;
    std::optional<BaselineColumn> baseline;
    std::string lexicon_dir = REVCHECK_DEFAULT_LEXICON_DIR;
    bool lenient = false;
};

// Reported to the user with exit status 2.
class UsageError : public Error {
public:
    using Error::Error;
};

inline BaselineColumn parse_baseline(const std::string& spec) {
    BaselineColumn col{};
    std::stringstream ss(spec);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == col.size()) throw UsageError("--baseline takes exactly four counts");
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("--baseline: '" + item + "' is not a number");
        }
        if (used != item.size() || !(v >= 0.0)) {
            throw UsageError("--baseline: '" + item + "' is not a non-negative count");
        }
        col[i++] = v;
    }
    if (i != col.size()) throw UsageError("--baseline takes exactly four counts");
    return col;
}

inline ParseResult load_records(const RunManifest& m, std::ostream& err) {
    std::ifstream in(m.input_path);
    if (!in) throw UsageError("cannot open input '" + m.input_path + "'");
    const auto mode = m.lenient ? ParseMode::Lenient : ParseMode::Strict;
    auto result = m.format == InputFormat::Amazon ? parse_amazon_tsv(in, mode)
                                                  : parse_labeled_tsv(in, mode);
    for (const auto& f : result.report.failures) {
        err << "warning: " << m.input_path << ":" << f.line << ": " << f.reason << '\n';
    }
    return result;
}

inline RuleConfig load_config(const RunManifest& m) {
    if (!m.config_path) return RuleConfig{};
    std::ifstream in(*m.config_path);
    if (!in) throw UsageError("cannot open config '" + *m.config_path + "'");
    return load_rule_config(in);
}

// Runs `body` against stdout or the --output file.
template <typename Body>
void with_output(const RunManifest& m, std::ostream& out, Body body) {
    if (!m.output_path) {
        body(out);
        return;
    }
    std::ofstream file(*m.output_path, std::ios::binary);
    if (!file) throw UsageError("cannot write output '" + *m.output_path + "'");
    body(file);
}

inline int cmd_detect(const RunManifest& m, std::ostream& out, std::ostream& err) {
    const auto cfg = load_config(m);
    const auto lex = load_lexicon_set(m.lexicon_dir);
    const auto parsed = load_records(m, err);
    const auto verdicts = classify_corpus(parsed.records, lex, cfg, m.combiner_mode);
    with_output(m, out, [&](std::ostream& os) {
        if (m.output_format == OutputFormat::Json) write_verdicts_json(os, verdicts);
        else write_verdicts_tsv(os, verdicts);
    });
    return kExitOk;
}

inline int cmd_eval(const RunManifest& m, std::ostream& out, std::ostream& err) {
    if (m.format != InputFormat::Labeled) throw UsageError("ground truth required (use --format labeled)");
    const auto cfg = load_config(m);
    const auto lex = load_lexicon_set(m.lexicon_dir);
    const auto parsed = load_records(m, err);
    const auto verdicts = classify_corpus(parsed.records, lex, cfg, m.combiner_mode);
    const auto report = evaluate(confusion_matrix(verdicts, parsed.records), m.baseline);
    with_output(m, out, [&](std::ostream& os) {
        if (m.output_format == OutputFormat::Json) {
            os << to_json(report).dump(2) << '\n';
        } else {
            write_matrix_tsv(os, report);
            os << '\n';
            write_text_report(os, report);
        }
    });
    return kExitOk;
}

inline int cmd_sentiment(const RunManifest& m, std::ostream& out, std::ostream& err) {
    const auto lex = load_lexicon_set(m.lexicon_dir);
    const auto parsed = load_records(m, err);
    with_output(m, out, [&](std::ostream& os) {
        if (m.output_format == OutputFormat::Json) {
            auto arr = nlohmann::json::array();
            for (const auto& r : parsed.records) {
                arr.push_back(sentiment_json(r, sentiment(r, lex.sentiment_positive, lex.sentiment_negative)));
            }
            os << arr.dump(2) << '\n';
            return;
        }
        os << kSentimentTsvHeader << '\n';
        for (const auto& r : parsed.records) {
            os << sentiment_tsv_line(r, sentiment(r, lex.sentiment_positive, lex.sentiment_negative)) << '\n';
        }
    });
    return kExitOk;
}

inline int cmd_reviewers(const RunManifest& m, std::ostream& out, std::ostream& err) {
    if (m.format != InputFormat::Amazon) throw UsageError("reviewer fields absent (use --format amazon)");
    const auto parsed = load_records(m, err);
    auto stats = reviewer_stats(parsed.records);
    sort_by_trust(stats);
    with_output(m, out, [&](std::ostream& os) {
        if (m.output_format == OutputFormat::Json) {
            auto arr = nlohmann::json::array();
            for (const auto& s : stats) arr.push_back(to_json(s));
            os << arr.dump(2) << '\n';
            return;
        }
        os << kReviewerTsvHeader << '\n';
        for (const auto& s : stats) os << reviewer_tsv_line(s) << '\n';
    });
    return kExitOk;
}

inline int dispatch(const RunManifest& m, std::ostream& out, std::ostream& err) {
    if (m.command == "detect") return cmd_detect(m, out, err);
    if (m.command == "eval") return cmd_eval(m, out, err);
    if (m.command == "sentiment") return cmd_sentiment(m, out, err);
    if (m.command == "reviewers") return cmd_reviewers(m, out, err);
    throw UsageError("unknown command '" + m.command + "'");
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rule-based fake review detection and evaluation", "revcheck"};
    app.require_subcommand(1);

    RunManifest m;
    std::string baseline_spec;
    std::string config_path;
    std::string output_path;

    const std::map<std::string, InputFormat> formats{{"amazon", InputFormat::Amazon},
                                                     {"labeled", InputFormat::Labeled}};
    const std::map<std::string, CombinerMode> combiners{{"vote", CombinerMode::Vote},
                                                        {"paper_and", CombinerMode::PaperAnd}};
    const std::map<std::string, OutputFormat> outputs{{"tsv", OutputFormat::Tsv},
                                                      {"json", OutputFormat::Json}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", m.input_path, "Review dataset (TSV)")->required();
        sub->add_option("--format", m.format, "Dataset format: amazon or labeled")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--config", config_path, "Rule thresholds (key=value file)");
        sub->add_option("--output", output_path, "Write data here instead of stdout");
        sub->add_option("--output-format", m.output_format, "tsv or json")
            ->transform(CLI::CheckedTransformer(outputs, CLI::ignore_case));
        sub->add_option("--lexicon-dir", m.lexicon_dir, "Directory holding the lexicon files");
        sub->add_flag("--lenient", m.lenient, "Skip malformed lines instead of aborting");
    };
    auto add_combiner = [&](CLI::App* sub) {
        sub->add_option("--combiner", m.combiner_mode, "vote or paper_and")
            ->transform(CLI::CheckedTransformer(combiners, CLI::ignore_case));
    };

    auto* detect = app.add_subcommand("detect", "Classify every review as fake or genuine");
    add_common(detect);
    add_combiner(detect);

    auto* eval = app.add_subcommand("eval", "Score predictions against ground-truth labels");
    add_common(eval);
    add_combiner(eval);
    eval->add_option("--baseline", baseline_spec,
                     "Baseline counts for +/+,+/-,-/+,-/- (default: uniform)");

    auto* senti = app.add_subcommand("sentiment", "Lexicon sentiment per review");
    add_common(senti);

    auto* reviewers = app.add_subcommand("reviewers", "Helpful-vote ratio per reviewer");
    add_common(reviewers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    m.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) m.config_path = config_path;
    if (!output_path.empty()) m.output_path = output_path;

    try {
        if (!baseline_spec.empty()) m.baseline = parse_baseline(baseline_spec);
        return dispatch(m, out, err);
    } catch (const ParseError& e) {
        err << "error: " << m.input_path << ": " << e.what() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

}  // namespace revcheck::cli
