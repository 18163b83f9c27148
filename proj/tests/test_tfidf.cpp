#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "claimrank/errors.hpp"
#include "claimrank/tfidf.hpp"
#include "support/helpers.hpp"

using namespace claimrank;
namespace fs = std::filesystem;

namespace {

AnalyzerConfig word_cfg() {
    return AnalyzerConfig{AnalyzerMode::Word, 1, 1, true};
}

double entry(const SparseVector& v, const TfidfModel& m, const std::string& term) {
    std::int32_t idx = m.vocabulary.index_of(term);
    for (const auto& [i, w] : v.entries) {
        if (i == idx) return w;
    }
    return 0.0;
}

}  // namespace

TEST_CASE("idf formula") {
    CHECK(idf_weight(1, 1) == 1.0);
    CHECK(idf_weight(5, 5) == 1.0);
    CHECK(idf_weight(1, 2) == doctest::Approx(1.405465).epsilon(1e-6));
    CHECK(idf_weight(0, 9) == doctest::Approx(3.302585).epsilon(1e-6));
    CHECK_THROWS_AS(idf_weight(3, 2), std::domain_error);
    CHECK_THROWS_AS(idf_weight(-1, 2), std::domain_error);
    CHECK_THROWS_AS(idf_weight(0, 0), std::domain_error);
}

TEST_CASE("idf strictly decreases in df") {
    for (std::int64_t n : {1, 2, 10, 1000}) {
        double prev = idf_weight(0, n);
        for (std::int64_t df = 1; df <= n; ++df) {
            double cur = idf_weight(df, n);
            CHECK(cur < prev);
            prev = cur;
        }
        CHECK(idf_weight(n, n) == 1.0);
    }
}

TEST_CASE("fit counts, truncation, and tie-breaking") {
    TfidfModel m = fit({"aa bb bb", "bb cc"}, word_cfg(), 2);
    REQUIRE(m.size() == 2);
    CHECK(m.vocabulary.terms == std::vector<std::string>{"aa", "bb"});
    CHECK(m.vocabulary.corpus_counts == std::vector<std::int64_t>{1, 3});
}

TEST_CASE("fit without a cap keeps everything; non-binding caps change nothing") {
    TfidfModel m = fit({"xx yy"}, word_cfg());
    REQUIRE(m.size() == 2);
    CHECK(m.idf[0] == 1.0);
    CHECK(m.idf[1] == 1.0);

    TfidfModel capped = fit({"zz"}, word_cfg(), 10);
    CHECK(capped.size() == 1);
}

TEST_CASE("fit matches the reference vectorizer numerically") {
    TfidfModel m = fit({"aa bb bb", "bb cc"}, word_cfg());
    REQUIRE(m.size() == 3);
    CHECK(m.vocabulary.terms == std::vector<std::string>{"aa", "bb", "cc"});
    CHECK(m.idf[0] == doctest::Approx(1.4054651081081644).epsilon(1e-12));
    CHECK(m.idf[1] == 1.0);
    CHECK(m.idf[2] == doctest::Approx(1.4054651081081644).epsilon(1e-12));

    SparseVector v0 = transform(m, "aa bb bb");
    CHECK(entry(v0, m, "aa") == doctest::Approx(0.5749618667993135).epsilon(1e-12));
    CHECK(entry(v0, m, "bb") == doctest::Approx(0.8181802073667197).epsilon(1e-12));
    SparseVector v1 = transform(m, "bb cc");
    CHECK(entry(v1, m, "bb") == doctest::Approx(0.5797386715376657).epsilon(1e-12));
    CHECK(entry(v1, m, "cc") == doctest::Approx(0.8148024746671689).epsilon(1e-12));
}

TEST_CASE("transform examples") {
    TfidfModel m = fit({"xx yy"}, word_cfg());
    SparseVector v = transform(m, "xx yy");
    REQUIRE(v.entries.size() == 2);
    CHECK(v.entries[0].second == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(v.entries[1].second == doctest::Approx(0.70710678).epsilon(1e-8));

    CHECK(transform(m, "qq").empty());
    CHECK(transform(m, "").empty());

    SparseVector single = transform(m, "xx xx");
    REQUIRE(single.entries.size() == 1);
    CHECK(single.entries[0].second == 1.0);
}

TEST_CASE("empty vocabulary is an error") {
    CHECK_THROWS_AS(fit({"a I", "x"}, word_cfg()), DataError);  // all tokens too short
    CHECK_THROWS_AS(fit({}, word_cfg()), DataError);
}

TEST_CASE("fit is deterministic") {
    std::mt19937 rng(21);
    auto pool = testsup::random_word_pool(rng, 60);
    std::vector<std::string> corpus;
    for (int i = 0; i < 20; ++i) corpus.push_back(testsup::random_doc(rng, pool, 15));

    TfidfModel a = fit(corpus, word_cfg(), 30);
    TfidfModel b = fit(corpus, word_cfg(), 30);
    CHECK(a.vocabulary.terms == b.vocabulary.terms);
    CHECK(a.idf == b.idf);

    fs::path pa = fs::temp_directory_path() / ("claimrank_model_a_" + std::to_string(::getpid()));
    fs::path pb = fs::temp_directory_path() / ("claimrank_model_b_" + std::to_string(::getpid()));
    save_model(a, pa);
    save_model(b, pb);
    std::ifstream fa(pa), fb(pb);
    std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    fs::remove(pa);
    fs::remove(pb);
}

TEST_CASE("sparse transform equals the dense oracle") {
    std::mt19937 rng(22);
    for (int iter = 0; iter < 25; ++iter) {
        auto pool = testsup::random_word_pool(rng, 25);
        std::vector<std::string> corpus;
        int docs = 1 + static_cast<int>(rng() % 20);
        for (int d = 0; d < docs; ++d) corpus.push_back(testsup::random_doc(rng, pool, 15));
        AnalyzerConfig cfg = testsup::random_analyzer(rng);
        std::optional<std::int64_t> mf;
        if (rng() % 2 == 0) mf = 1 + static_cast<std::int64_t>(rng() % 50);

        TfidfModel model;
        try {
            model = fit(corpus, cfg, mf);
        } catch (const DataError&) {
            continue;  // all-empty corpus draw
        }
        testsup::DenseTfidf oracle = testsup::dense_tfidf(corpus, cfg, mf);
        REQUIRE(model.vocabulary.terms == oracle.terms);
        for (std::size_t d = 0; d < corpus.size(); ++d) {
            auto dense = testsup::densify(transform(model, corpus[d]), model.size());
            for (std::size_t t = 0; t < model.size(); ++t) {
                CHECK(std::abs(dense[t] - oracle.doc_vectors[d][t]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("non-empty transformed vectors are unit length") {
    std::mt19937 rng(23);
    auto pool = testsup::random_word_pool(rng, 40);
    std::vector<std::string> corpus;
    for (int i = 0; i < 30; ++i) corpus.push_back(testsup::random_doc(rng, pool, 12));
    TfidfModel m = fit(corpus, word_cfg());
    for (const std::string& doc : corpus) {
        SparseVector v = transform(m, doc);
        if (!v.empty()) CHECK(std::abs(v.norm() - 1.0) <= 1e-9);
    }
}

TEST_CASE("vocabulary at max_features m nests inside m+1") {
    std::mt19937 rng(24);
    for (int iter = 0; iter < 20; ++iter) {
        auto pool = testsup::random_word_pool(rng, 30);
        std::vector<std::string> corpus;
        int docs = 2 + static_cast<int>(rng() % 10);
        for (int d = 0; d < docs; ++d) corpus.push_back(testsup::random_doc(rng, pool, 15));
        std::int64_t m_small = 1 + static_cast<std::int64_t>(rng() % 20);
        TfidfModel small, big;
        try {
            small = fit(corpus, word_cfg(), m_small);
            big = fit(corpus, word_cfg(), m_small + 1);
        } catch (const DataError&) {
            continue;
        }
        std::set<std::string> big_terms(big.vocabulary.terms.begin(),
                                        big.vocabulary.terms.end());
        for (const std::string& term : small.vocabulary.terms) {
            CHECK(big_terms.count(term) == 1);
        }
    }
}

TEST_CASE("model save/load round trip and version gate") {
    TfidfModel m = fit({"aa bb bb", "bb cc"}, word_cfg(), 2);
    fs::path path =
        fs::temp_directory_path() / ("claimrank_model_rt_" + std::to_string(::getpid()));
    save_model(m, path);
    TfidfModel back = load_model(path);
    CHECK(back.vocabulary.terms == m.vocabulary.terms);
    CHECK(back.idf == m.idf);
    CHECK(back.analyzer == m.analyzer);
    CHECK(back.max_features == m.max_features);
    CHECK(transform(back, "aa bb") == transform(m, "aa bb"));

    std::ofstream bad(path);
    bad << R"({"format": "claimrank-tfidf", "format_version": 999, "analyzer": {}, )"
        << R"("max_features": null, "terms": [], "idf": []})";
    bad.close();
    CHECK_THROWS_AS(load_model(path), DataError);
    fs::remove(path);
}
