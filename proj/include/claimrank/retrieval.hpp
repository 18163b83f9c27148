#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "claimrank/records.hpp"
#include "claimrank/tfidf.hpp"

namespace claimrank {

struct RankedResult {
    std::int64_t fact_check_id = 0;
    double score = 0.0;

    bool operator==(const RankedResult&) const = default;
};

enum class FitCorpusPolicy { FactChecksOnly, FactChecksAndPosts };

/// Immutable per-language index: the fitted model, one vector per fact
/// check (aligned with fact_check_ids), and term postings for scoring.
struct RetrievalIndex {
    std::string language;
    TfidfModel model;
    std::vector<std::int64_t> fact_check_ids;  // row order
    std::vector<SparseVector> vectors;         // aligned with fact_check_ids
    // postings[term] = (row, weight), row ascending
    std::vector<std::vector<std::pair<std::int32_t, double>>> postings;

    std::size_t size() const { return fact_check_ids.size(); }
};

/// Dot product over intersecting indexes; 0 when either side is empty.
/// Inputs are expected L2-normalized (or empty), making this the cosine.
double cosine(const SparseVector& a, const SparseVector& b);

/// Fits the model on the claim texts (plus post texts under the
/// FactChecksAndPosts policy) and transforms every claim text.
RetrievalIndex build_index(const std::vector<FactCheck>& fact_checks, std::string language,
                           const AnalyzerConfig& cfg, std::optional<std::int64_t> max_features,
                           FitCorpusPolicy policy = FitCorpusPolicy::FactChecksOnly,
                           const std::vector<Post>* posts = nullptr);

/// Top-k fact checks for the post, scored against every index row, ordered
/// by score descending then fact_check_id ascending. A fully
/// out-of-vocabulary query therefore yields the k smallest ids at score 0.
std::vector<RankedResult> query_top_k(const RetrievalIndex& index, const Post& post, int k = 10);

/// Runs query_top_k for every post id in the chosen split of every language
/// and merges the answers into one map keyed by post id.
std::map<std::int64_t, std::vector<std::int64_t>> predict_all(
    const std::map<std::string, RetrievalIndex>& indexes, const TaskConfig& tasks,
    const std::vector<Post>& posts, Split split, int k = 10);

}  // namespace claimrank
