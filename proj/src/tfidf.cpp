#include "claimrank/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "claimrank/errors.hpp"

namespace claimrank {

namespace {

constexpr int kModelFormatVersion = 1;
constexpr const char* kModelFormatName = "claimrank-tfidf";

struct TermStat {
    std::int64_t count = 0;  // total occurrences across the corpus
    std::int64_t df = 0;     // documents containing the term
};

}  // namespace

double SparseVector::norm() const {
    double sum = 0.0;
    for (const auto& [idx, w] : entries) sum += w * w;
    return std::sqrt(sum);
}

double idf_weight(std::int64_t df, std::int64_t n) {
    if (df < 0 || n < 1 || df > n) {
        throw std::domain_error("idf_weight: need 0 <= df <= n, got df=" + std::to_string(df) +
                                ", n=" + std::to_string(n));
    }
    return std::log((1.0 + static_cast<double>(n)) / (1.0 + static_cast<double>(df))) + 1.0;
}

TfidfModel fit(const std::vector<std::string>& corpus, const AnalyzerConfig& cfg,
               std::optional<std::int64_t> max_features) {
    validate(cfg);
    if (corpus.empty()) throw DataError("fit: empty corpus");
    if (max_features && *max_features < 1) {
        throw SchemaError("max_features", "must be >= 1");
    }

    std::unordered_map<std::string, TermStat> stats;
    std::unordered_map<std::string, std::int64_t> doc_counts;
    for (const std::string& doc : corpus) {
        doc_counts.clear();
        for (std::string& token : analyze(doc, cfg)) {
            doc_counts[std::move(token)] += 1;
        }
        for (const auto& [term, count] : doc_counts) {
            TermStat& s = stats[term];
            s.count += count;
            s.df += 1;
        }
    }
    if (stats.empty()) throw DataError("fit: empty vocabulary (no document yields any token)");

    std::vector<const std::string*> terms;
    terms.reserve(stats.size());
    for (const auto& [term, stat] : stats) terms.push_back(&term);

    if (max_features && std::cmp_greater(stats.size(), *max_features)) {
        // Strict total order: corpus count descending, term ascending.
        std::sort(terms.begin(), terms.end(), [&](const std::string* a, const std::string* b) {
            std::int64_t ca = stats.at(*a).count;
            std::int64_t cb = stats.at(*b).count;
            return ca != cb ? ca > cb : *a < *b;
        });
        terms.resize(static_cast<std::size_t>(*max_features));
    }
    std::sort(terms.begin(), terms.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });

    TfidfModel model;
    model.analyzer = cfg;
    model.max_features = max_features;
    const auto n = static_cast<std::int64_t>(corpus.size());
    model.vocabulary.terms.reserve(terms.size());
    model.vocabulary.corpus_counts.reserve(terms.size());
    model.idf.reserve(terms.size());
    model.vocabulary.term_to_index.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const TermStat& stat = stats.at(*terms[i]);
        model.vocabulary.terms.push_back(*terms[i]);
        model.vocabulary.term_to_index.emplace(*terms[i], static_cast<std::int32_t>(i));
        model.vocabulary.corpus_counts.push_back(stat.count);
        model.idf.push_back(idf_weight(stat.df, n));
    }
    return model;
}

SparseVector transform(const TfidfModel& model, std::string_view doc) {
    std::vector<std::pair<std::int32_t, std::int64_t>> counts;
    {
        std::unordered_map<std::int32_t, std::int64_t> acc;
        for (const std::string& token : analyze(doc, model.analyzer)) {
            std::int32_t idx = model.vocabulary.index_of(token);
            if (idx >= 0) acc[idx] += 1;
        }
        counts.assign(acc.begin(), acc.end());
    }
    std::sort(counts.begin(), counts.end());

    SparseVector vec;
    vec.entries.reserve(counts.size());
    double sq_sum = 0.0;
    for (const auto& [idx, count] : counts) {
        double w = static_cast<double>(count) * model.idf[static_cast<std::size_t>(idx)];
        sq_sum += w * w;
        vec.entries.emplace_back(idx, w);
    }
    if (sq_sum > 0.0) {
        double inv = 1.0 / std::sqrt(sq_sum);
        for (auto& [idx, w] : vec.entries) w *= inv;
    }
    return vec;
}

void save_model(const TfidfModel& model, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["format"] = kModelFormatName;
    j["format_version"] = kModelFormatVersion;
    j["analyzer"] = {{"mode", std::string(to_string(model.analyzer.mode))},
                     {"ngram", {model.analyzer.ngram_min, model.analyzer.ngram_max}},
                     {"lowercase", model.analyzer.lowercase}};
    if (model.max_features) {
        j["max_features"] = *model.max_features;
    } else {
        j["max_features"] = nullptr;
    }
    j["terms"] = model.vocabulary.terms;
    j["idf"] = model.idf;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write " + path.string());
    out << j.dump(1) << '\n';
    if (!out) throw FileError("failed writing " + path.string());
}

TfidfModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path.string(), std::string("invalid model JSON: ") + e.what());
    }
    if (j.value("format", "") != kModelFormatName ||
        j.value("format_version", -1) != kModelFormatVersion) {
        throw DataError("model format version mismatch in " + path.string());
    }

    TfidfModel model;
    const auto& an = j.at("analyzer");
    model.analyzer.mode = analyzer_mode_from_string(an.at("mode").get<std::string>());
    model.analyzer.ngram_min = an.at("ngram").at(0).get<int>();
    model.analyzer.ngram_max = an.at("ngram").at(1).get<int>();
    model.analyzer.lowercase = an.at("lowercase").get<bool>();
    if (!j.at("max_features").is_null()) {
        model.max_features = j.at("max_features").get<std::int64_t>();
    }
    model.vocabulary.terms = j.at("terms").get<std::vector<std::string>>();
    model.idf = j.at("idf").get<std::vector<double>>();
    if (model.idf.size() != model.vocabulary.terms.size()) {
        throw SchemaError(path.string(), "terms and idf arrays differ in length");
    }
    model.vocabulary.term_to_index.reserve(model.vocabulary.terms.size());
    for (std::size_t i = 0; i < model.vocabulary.terms.size(); ++i) {
        model.vocabulary.term_to_index.emplace(model.vocabulary.terms[i],
                                               static_cast<std::int32_t>(i));
    }
    return model;
}

}  // namespace claimrank
