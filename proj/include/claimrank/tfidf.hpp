#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "claimrank/analyzer.hpp"

namespace claimrank {

/// Sparse document vector: (term index, weight) entries, strictly increasing
/// by index, no stored zeros. Non-empty transformed vectors are
/// L2-normalized.
struct SparseVector {
    std::vector<std::pair<std::int32_t, double>> entries;

    bool empty() const { return entries.empty(); }
    double norm() const;

    bool operator==(const SparseVector&) const = default;
};

/// Smoothed inverse document frequency: ln((1+n)/(1+df)) + 1.
double idf_weight(std::int64_t df, std::int64_t n);

/// Term -> index bijection onto [0, size). Indexes follow lexicographic term
/// order; corpus_counts keeps the per-term totals the truncation ranked by.
struct Vocabulary {
    std::vector<std::string> terms;  // index order
    std::unordered_map<std::string, std::int32_t> term_to_index;
    std::vector<std::int64_t> corpus_counts;

    std::size_t size() const { return terms.size(); }
    std::int32_t index_of(const std::string& term) const {
        auto it = term_to_index.find(term);
        return it == term_to_index.end() ? -1 : it->second;
    }
};

struct TfidfModel {
    Vocabulary vocabulary;
    std::vector<double> idf;  // aligned with vocabulary indexes
    AnalyzerConfig analyzer;
    std::optional<std::int64_t> max_features;

    std::size_t size() const { return vocabulary.size(); }
};

/// Fits vocabulary and idf weights over the analyzed corpus. When
/// max_features is set and binding, terms are kept by total corpus count
/// descending, ties by term ascending. Throws DataError when no document
/// yields a token.
TfidfModel fit(const std::vector<std::string>& corpus, const AnalyzerConfig& cfg,
               std::optional<std::int64_t> max_features = std::nullopt);

/// Raw weight = term count in doc x idf; the result is L2-normalized.
/// Out-of-vocabulary tokens are ignored; an all-OOV or empty document gives
/// the empty vector.
SparseVector transform(const TfidfModel& model, std::string_view doc);

/// Model persistence: a versioned self-describing JSON container.
void save_model(const TfidfModel& model, const std::filesystem::path& path);
TfidfModel load_model(const std::filesystem::path& path);

}  // namespace claimrank
