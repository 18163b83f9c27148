#pragma once

// Shared test machinery: independent oracles (dense TF-IDF, brute-force
// top-k) and seeded random generators. Everything here recomputes results
// from first principles; nothing forwards to the code under test beyond the
// analyzer token stream.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "claimrank/analyzer.hpp"
#include "claimrank/literal.hpp"
#include "claimrank/records.hpp"
#include "claimrank/tfidf.hpp"
#include "claimrank/unicode.hpp"

namespace testsup {

using claimrank::AnalyzerConfig;
using claimrank::AnalyzerMode;
using claimrank::LiteralValue;

// ---------------------------------------------------------------------------
// Dense first-principles TF-IDF oracle.

struct DenseTfidf {
    std::vector<std::string> terms;               // index order
    std::vector<std::vector<double>> doc_vectors; // row-normalized dense rows
};

inline DenseTfidf dense_tfidf(const std::vector<std::string>& corpus, const AnalyzerConfig& cfg,
                              std::optional<std::int64_t> max_features) {
    std::vector<std::map<std::string, std::int64_t>> doc_counts(corpus.size());
    std::map<std::string, std::int64_t> totals;
    std::map<std::string, std::int64_t> dfs;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        for (const std::string& tok : claimrank::analyze(corpus[d], cfg)) {
            doc_counts[d][tok] += 1;
        }
        for (const auto& [term, count] : doc_counts[d]) {
            totals[term] += count;
            dfs[term] += 1;
        }
    }

    std::vector<std::string> selected;
    for (const auto& [term, count] : totals) selected.push_back(term);
    if (max_features && selected.size() > static_cast<std::size_t>(*max_features)) {
        std::stable_sort(selected.begin(), selected.end(),
                         [&](const std::string& a, const std::string& b) {
                             if (totals[a] != totals[b]) return totals[a] > totals[b];
                             return a < b;
                         });
        selected.resize(static_cast<std::size_t>(*max_features));
    }
    std::sort(selected.begin(), selected.end());

    DenseTfidf out;
    out.terms = selected;
    const double n = static_cast<double>(corpus.size());
    std::vector<double> idf(selected.size());
    for (std::size_t t = 0; t < selected.size(); ++t) {
        idf[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(dfs[selected[t]]))) + 1.0;
    }
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        std::vector<double> row(selected.size(), 0.0);
        for (std::size_t t = 0; t < selected.size(); ++t) {
            auto it = doc_counts[d].find(selected[t]);
            if (it != doc_counts[d].end()) {
                row[t] = static_cast<double>(it->second) * idf[t];
            }
        }
        double sq = 0.0;
        for (double v : row) sq += v * v;
        if (sq > 0.0) {
            double inv = 1.0 / std::sqrt(sq);
            for (double& v : row) v *= inv;
        }
        out.doc_vectors.push_back(std::move(row));
    }
    return out;
}

inline std::vector<double> densify(const claimrank::SparseVector& vec, std::size_t size) {
    std::vector<double> out(size, 0.0);
    for (const auto& [idx, w] : vec.entries) out[static_cast<std::size_t>(idx)] = w;
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force retrieval oracle: merge-join dot products, full stable sort.

struct OracleHit {
    std::int64_t fact_check_id;
    double score;
};

inline double oracle_dot(const claimrank::SparseVector& a, const claimrank::SparseVector& b) {
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        if (a.entries[i].first == b.entries[j].first) {
            sum += a.entries[i].second * b.entries[j].second;
            ++i;
            ++j;
        } else if (a.entries[i].first < b.entries[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return sum;
}

inline std::vector<OracleHit> oracle_top_k(const std::vector<std::int64_t>& ids,
                                           const std::vector<claimrank::SparseVector>& docs,
                                           const claimrank::SparseVector& query, int k) {
    std::vector<OracleHit> hits;
    hits.reserve(ids.size());
    for (std::size_t row = 0; row < ids.size(); ++row) {
        hits.push_back({ids[row], oracle_dot(query, docs[row])});
    }
    std::stable_sort(hits.begin(), hits.end(), [](const OracleHit& a, const OracleHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.fact_check_id < b.fact_check_id;
    });
    if (hits.size() > static_cast<std::size_t>(k)) hits.resize(static_cast<std::size_t>(k));
    return hits;
}

// ---------------------------------------------------------------------------
// Random text corpora.

inline std::vector<std::string> random_word_pool(std::mt19937& rng, int pool_size) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    std::uniform_int_distribution<int> len(2, 6);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::vector<std::string> pool;
    pool.reserve(static_cast<std::size_t>(pool_size));
    for (int i = 0; i < pool_size; ++i) {
        std::string w;
        int n = len(rng);
        for (int j = 0; j < n; ++j) w.push_back(alphabet[pick(rng)]);
        pool.push_back(std::move(w));
    }
    return pool;
}

inline std::string random_doc(std::mt19937& rng, const std::vector<std::string>& pool,
                              int max_tokens) {
    std::uniform_int_distribution<int> count(0, max_tokens);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::string doc;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        if (!doc.empty()) doc.push_back(' ');
        doc += pool[pick(rng)];
    }
    return doc;
}

inline AnalyzerConfig random_analyzer(std::mt19937& rng) {
    AnalyzerConfig cfg;
    switch (rng() % 3) {
        case 0: cfg.mode = AnalyzerMode::Word; break;
        case 1: cfg.mode = AnalyzerMode::Char; break;
        default: cfg.mode = AnalyzerMode::CharWb; break;
    }
    cfg.ngram_min = 1 + static_cast<int>(rng() % 2);
    cfg.ngram_max = cfg.ngram_min + static_cast<int>(rng() % 2);
    cfg.lowercase = rng() % 2 == 0;
    return cfg;
}

// ---------------------------------------------------------------------------
// Random literal values for round-trip properties.

inline double random_finite_double(std::mt19937_64& rng) {
    while (true) {
        std::uint64_t bits = rng();
        double d;
        std::memcpy(&d, &bits, sizeof(d));
        if (std::isfinite(d)) return d;
    }
}

inline std::string random_literal_string(std::mt19937_64& rng) {
    static const std::u32string pool =
        U"abcXYZ012 _-!?'\"\\\n\t\r:,.()[]{}éüñ漢ไทยعσВ€";
    std::uniform_int_distribution<int> len(0, 12);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::u32string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(pool[pick(rng)]);
    return claimrank::uni::encode_utf8(s);
}

inline LiteralValue random_literal(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> scalar_kind(0, 4);
    std::uniform_int_distribution<int> any_kind(0, 7);
    int kind = depth <= 0 ? scalar_kind(rng) : any_kind(rng);
    switch (kind) {
        case 0: return LiteralValue::none();
        case 1: return LiteralValue::boolean(rng() % 2 == 0);
        case 2: return LiteralValue::integer(static_cast<std::int64_t>(rng()));
        case 3: return LiteralValue::floating(random_finite_double(rng));
        case 4: return LiteralValue::string(random_literal_string(rng));
        case 5:
        case 6: {
            std::uniform_int_distribution<int> count(0, 4);
            LiteralValue::Items items;
            int n = count(rng);
            for (int i = 0; i < n; ++i) items.push_back(random_literal(rng, depth - 1));
            return kind == 5 ? LiteralValue::list(std::move(items))
                             : LiteralValue::tuple(std::move(items));
        }
        default: {
            std::uniform_int_distribution<int> count(0, 3);
            LiteralValue::Entries entries;
            int n = count(rng);
            for (int i = 0; i < n; ++i) {
                LiteralValue key = random_literal(rng, 0);  // scalar keys
                entries.emplace_back(std::move(key), random_literal(rng, depth - 1));
            }
            return LiteralValue::map(std::move(entries));
        }
    }
}

}  // namespace testsup
