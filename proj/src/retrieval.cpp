#include "claimrank/retrieval.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "claimrank/errors.hpp"
#include "claimrank/ingest.hpp"

namespace claimrank {

double cosine(const SparseVector& a, const SparseVector& b) {
    double sum = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() && ib != b.entries.end()) {
        if (ia->first == ib->first) {
            sum += ia->second * ib->second;
            ++ia;
            ++ib;
        } else if (ia->first < ib->first) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return sum;
}

RetrievalIndex build_index(const std::vector<FactCheck>& fact_checks, std::string language,
                           const AnalyzerConfig& cfg, std::optional<std::int64_t> max_features,
                           FitCorpusPolicy policy, const std::vector<Post>* posts) {
    if (fact_checks.empty()) {
        throw DataError("build_index: no fact checks for language '" + language + "'");
    }

    std::vector<std::string> corpus;
    corpus.reserve(fact_checks.size());
    for (const FactCheck& fc : fact_checks) corpus.push_back(claim_text(fc));
    std::size_t n_claims = corpus.size();
    if (policy == FitCorpusPolicy::FactChecksAndPosts && posts) {
        corpus.reserve(corpus.size() + posts->size());
        for (const Post& post : *posts) corpus.push_back(post_text(post));
    }

    RetrievalIndex index;
    index.language = std::move(language);
    index.model = fit(corpus, cfg, max_features);
    index.fact_check_ids.reserve(fact_checks.size());
    for (const FactCheck& fc : fact_checks) index.fact_check_ids.push_back(fc.fact_check_id);

    index.vectors.reserve(n_claims);
    index.postings.resize(index.model.size());
    for (std::size_t row = 0; row < n_claims; ++row) {
        SparseVector vec = transform(index.model, corpus[row]);
        for (const auto& [term, weight] : vec.entries) {
            index.postings[static_cast<std::size_t>(term)].emplace_back(
                static_cast<std::int32_t>(row), weight);
        }
        index.vectors.push_back(std::move(vec));
    }
    return index;
}

std::vector<RankedResult> query_top_k(const RetrievalIndex& index, const Post& post, int k) {
    if (k < 1) throw std::domain_error("query_top_k: k must be >= 1");

    SparseVector query = transform(index.model, post_text(post));

    // Exhaustive exact scoring. Accumulation visits query terms in ascending
    // index order, so each row's sum matches a merge-join dot product
    // bit for bit.
    std::vector<double> scores(index.size(), 0.0);
    for (const auto& [term, qw] : query.entries) {
        for (const auto& [row, dw] : index.postings[static_cast<std::size_t>(term)]) {
            scores[static_cast<std::size_t>(row)] += qw * dw;
        }
    }

    std::vector<std::int32_t> rows(index.size());
    std::iota(rows.begin(), rows.end(), 0);
    auto better = [&](std::int32_t a, std::int32_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return index.fact_check_ids[a] < index.fact_check_ids[b];
    };
    std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(k), rows.size());
    std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(m), rows.end(),
                      better);

    std::vector<RankedResult> results;
    results.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        results.push_back({index.fact_check_ids[rows[i]], scores[rows[i]]});
    }
    return results;
}

std::map<std::int64_t, std::vector<std::int64_t>> predict_all(
    const std::map<std::string, RetrievalIndex>& indexes, const TaskConfig& tasks,
    const std::vector<Post>& posts, Split split, int k) {
    std::unordered_map<std::int64_t, const Post*> by_id;
    by_id.reserve(posts.size());
    for (const Post& post : posts) by_id.emplace(post.post_id, &post);

    std::map<std::int64_t, std::vector<std::int64_t>> predictions;
    for (const auto& [language, task] : tasks.tasks) {
        const auto& post_ids = split == Split::Dev ? task.post_ids_dev : task.post_ids_test;
        if (post_ids.empty()) continue;
        auto idx_it = indexes.find(language);
        if (idx_it == indexes.end()) {
            throw DataError("no retrieval index for language '" + language + "'");
        }
        for (std::int64_t post_id : post_ids) {
            auto post_it = by_id.find(post_id);
            if (post_it == by_id.end()) {
                throw DataError("post " + std::to_string(post_id) + " (language '" + language +
                                "') not present in posts corpus");
            }
            std::vector<RankedResult> ranked = query_top_k(idx_it->second, *post_it->second, k);
            std::vector<std::int64_t> ids;
            ids.reserve(ranked.size());
            for (const RankedResult& r : ranked) ids.push_back(r.fact_check_id);
            if (!predictions.emplace(post_id, std::move(ids)).second) {
                throw DataError("post " + std::to_string(post_id) +
                                " appears in more than one sub-task split");
            }
        }
    }
    return predictions;
}

}  // namespace claimrank
