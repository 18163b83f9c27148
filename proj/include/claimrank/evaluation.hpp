#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimrank/records.hpp"
#include "claimrank/retrieval.hpp"

namespace claimrank {

using Predictions = std::map<std::int64_t, std::vector<std::int64_t>>;

/// Gold matches per post, deduplicated from the pair list.
struct GoldStandard {
    std::map<std::int64_t, std::set<std::int64_t>> relevant;
};

/// Pairs whose post id is in `post_ids`, grouped and deduplicated per post.
GoldStandard gold_from_pairs(const std::vector<Pair>& pairs,
                             const std::vector<std::int64_t>& post_ids);

/// Fraction of gold posts with at least one gold fact check among their top
/// min(k, list length) predictions. A gold post missing from `predictions`
/// is an error, not a zero.
double success_at_k(const Predictions& predictions, const GoldStandard& gold, int k);

/// Unweighted mean over languages.
double aggregate(const std::map<std::string, double>& per_language);

struct EvalReport {
    std::map<std::string, double> per_language;
    double average = 0.0;
    int k = 0;
    std::map<std::string, std::size_t> n_posts;
};

/// Scores a prediction map against the gold pairs of the chosen split,
/// per language. Languages without any gold post in the split are skipped.
EvalReport evaluate_predictions(const Predictions& predictions, const Dataset& data, Split split,
                                int k);

/// Flat JSON shape: {language: score, ..., "avg": score, "k": k}, scores
/// rounded to 4 decimals.
nlohmann::ordered_json report_json(const EvalReport& report);

/// Aligned text table, one row per report: languages as columns plus avg.
std::string render_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows);

struct PipelineOptions {
    AnalyzerConfig analyzer;
    std::optional<std::int64_t> max_features;
    int k = 10;
    Split split = Split::Dev;
    FitCorpusPolicy fit_corpus = FitCorpusPolicy::FactChecksOnly;
    int jobs = 1;
};

/// Full retrieval pass: per language, build the index over its fact checks
/// and predict top-k for every post in the split. Languages run in parallel
/// up to `jobs`; the merged result does not depend on scheduling.
Predictions run_predictions(const Dataset& data, const PipelineOptions& options);

struct SweepCell {
    std::string label;
    AnalyzerConfig analyzer;
    std::optional<std::int64_t> max_features;
};

struct SweepRow {
    SweepCell cell;
    std::optional<EvalReport> report;  // absent when the cell failed
    std::string error;
};

/// One full build/predict/score pass per grid cell. A failing cell is
/// recorded with its error; the remaining cells still run.
std::vector<SweepRow> sweep(const Dataset& data, const std::vector<SweepCell>& grid, int k,
                            Split split = Split::Dev,
                            FitCorpusPolicy fit_corpus = FitCorpusPolicy::FactChecksOnly,
                            int jobs = 1);

std::string render_sweep_table(const std::vector<SweepRow>& rows);
nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows, int k);

}  // namespace claimrank
