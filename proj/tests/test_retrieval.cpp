#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "claimrank/errors.hpp"
#include "claimrank/ingest.hpp"
#include "claimrank/retrieval.hpp"
#include "support/helpers.hpp"

using namespace claimrank;

namespace {

AnalyzerConfig word_cfg() {
    return AnalyzerConfig{AnalyzerMode::Word, 1, 1, true};
}

FactCheck fc_of(std::int64_t id, std::string text) {
    FactCheck fc;
    fc.fact_check_id = id;
    fc.claim_original = std::move(text);
    return fc;
}

Post post_of(std::int64_t id, std::string text) {
    Post p;
    p.post_id = id;
    p.text_fields.push_back(std::move(text));
    return p;
}

SparseVector sv(std::vector<std::pair<std::int32_t, double>> entries) {
    return SparseVector{std::move(entries)};
}

/// Random per-language universe: unique shuffled ids and pool-drawn texts.
std::vector<FactCheck> random_fact_checks(std::mt19937& rng,
                                          const std::vector<std::string>& pool, int count) {
    std::vector<std::int64_t> ids(static_cast<std::size_t>(count));
    std::iota(ids.begin(), ids.end(), 100);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<FactCheck> fcs;
    fcs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        fcs.push_back(fc_of(ids[static_cast<std::size_t>(i)],
                            testsup::random_doc(rng, pool, 12)));
    }
    return fcs;
}

}  // namespace

TEST_CASE("cosine on sorted sparse vectors") {
    CHECK(cosine(sv({{0, 1.0}}), sv({{0, 1.0}})) == 1.0);
    CHECK(cosine(sv({{0, 1.0}}), sv({{1, 1.0}})) == 0.0);
    CHECK(cosine(sv({{0, 0.6}, {1, 0.8}}), sv({{1, 1.0}})) == doctest::Approx(0.8));
    CHECK(cosine(sv({}), sv({{0, 1.0}})) == 0.0);
    CHECK(cosine(sv({}), sv({})) == 0.0);
}

TEST_CASE("build_index aligns vectors with fact check ids") {
    std::vector<FactCheck> fcs{fc_of(5, "aa bb"), fc_of(3, "cc")};
    RetrievalIndex index = build_index(fcs, "eng", word_cfg(), std::nullopt);
    CHECK(index.language == "eng");
    REQUIRE(index.size() == 2);
    CHECK(index.fact_check_ids == std::vector<std::int64_t>{5, 3});
    for (std::size_t row = 0; row < fcs.size(); ++row) {
        CHECK(index.vectors[row] == transform(index.model, claim_text(fcs[row])));
    }
}

TEST_CASE("fact-checks-only policy ignores the posts argument") {
    std::vector<FactCheck> fcs{fc_of(1, "aa bb"), fc_of(2, "bb cc")};
    std::vector<Post> posts{post_of(9, "zz zz yy")};
    RetrievalIndex without = build_index(fcs, "eng", word_cfg(), std::nullopt,
                                         FitCorpusPolicy::FactChecksOnly, &posts);
    RetrievalIndex plain = build_index(fcs, "eng", word_cfg(), std::nullopt);
    CHECK(without.model.vocabulary.terms == plain.model.vocabulary.terms);
    CHECK(without.model.idf == plain.model.idf);

    RetrievalIndex with = build_index(fcs, "eng", word_cfg(), std::nullopt,
                                      FitCorpusPolicy::FactChecksAndPosts, &posts);
    CHECK(with.model.vocabulary.terms != plain.model.vocabulary.terms);
    // still only claims are indexed
    CHECK(with.size() == 2);
}

TEST_CASE("build_index rejects an empty fact check list") {
    CHECK_THROWS_AS(build_index({}, "eng", word_cfg(), std::nullopt), DataError);
}

TEST_CASE("identity query ranks its document first with score 1") {
    std::vector<FactCheck> fcs{fc_of(1, "aa bb cc"), fc_of(2, "dd ee"), fc_of(3, "ff gg hh")};
    RetrievalIndex index = build_index(fcs, "eng", word_cfg(), std::nullopt);
    auto results = query_top_k(index, post_of(100, "dd ee"), 3);
    REQUIRE(!results.empty());
    CHECK(results[0].fact_check_id == 2);
    CHECK(std::abs(results[0].score - 1.0) <= 1e-9);
}

TEST_CASE("k larger than the index returns exactly n results") {
    std::vector<FactCheck> fcs{fc_of(1, "aa"), fc_of(2, "bb")};
    RetrievalIndex index = build_index(fcs, "eng", word_cfg(), std::nullopt);
    CHECK(query_top_k(index, post_of(1, "aa"), 10).size() == 2);
}

TEST_CASE("fully out-of-vocabulary queries fall back to smallest ids") {
    std::vector<FactCheck> fcs{fc_of(42, "aa"), fc_of(7, "bb"), fc_of(19, "cc"),
                               fc_of(3, "dd")};
    RetrievalIndex index = build_index(fcs, "eng", word_cfg(), std::nullopt);
    auto results = query_top_k(index, post_of(1, "zz qq"), 3);
    REQUIRE(results.size() == 3);
    CHECK(results[0].fact_check_id == 3);
    CHECK(results[1].fact_check_id == 7);
    CHECK(results[2].fact_check_id == 19);
    for (const auto& r : results) CHECK(r.score == 0.0);
}

TEST_CASE("query_top_k matches the brute-force oracle on random instances") {
    std::mt19937 rng(31);
    for (int iter = 0; iter < 30; ++iter) {
        auto pool = testsup::random_word_pool(rng, 40);
        int count = 1 + static_cast<int>(rng() % 30);
        auto fcs = random_fact_checks(rng, pool, count);
        RetrievalIndex index;
        try {
            index = build_index(fcs, "eng", word_cfg(), std::nullopt);
        } catch (const DataError&) {
            continue;
        }
        Post query = post_of(1, testsup::random_doc(rng, pool, 10));
        auto got = query_top_k(index, query, 10);
        auto want = testsup::oracle_top_k(index.fact_check_ids, index.vectors,
                                          transform(index.model, post_text(query)), 10);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].fact_check_id == want[i].fact_check_id);
            CHECK(got[i].score == want[i].score);
        }
    }
}

TEST_CASE("scores stay within cosine bounds") {
    std::mt19937 rng(32);
    auto pool = testsup::random_word_pool(rng, 25);
    auto fcs = random_fact_checks(rng, pool, 40);
    RetrievalIndex index = build_index(fcs, "eng", word_cfg(), std::nullopt);
    for (int q = 0; q < 20; ++q) {
        Post query = post_of(q, testsup::random_doc(rng, pool, 15));
        for (const auto& r : query_top_k(index, query, 10)) {
            CHECK(r.score >= 0.0);
            CHECK(r.score <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("self retrieval puts the document itself (or an exact twin) first") {
    std::mt19937 rng(33);
    auto pool = testsup::random_word_pool(rng, 20);
    auto fcs = random_fact_checks(rng, pool, 30);
    RetrievalIndex index;
    try {
        index = build_index(fcs, "eng", word_cfg(), std::nullopt);
    } catch (const DataError&) {
        return;
    }
    for (std::size_t row = 0; row < fcs.size(); ++row) {
        if (index.vectors[row].empty()) continue;
        auto results = query_top_k(index, post_of(1, claim_text(fcs[row])), 1);
        REQUIRE(!results.empty());
        CHECK(std::abs(results[0].score - 1.0) <= 1e-9);
        if (results[0].fact_check_id != fcs[row].fact_check_id) {
            // permissible only for an exact duplicate vector with a smaller id
            auto other = std::find(index.fact_check_ids.begin(), index.fact_check_ids.end(),
                                   results[0].fact_check_id);
            std::size_t other_row =
                static_cast<std::size_t>(other - index.fact_check_ids.begin());
            CHECK(index.vectors[other_row] == index.vectors[row]);
            CHECK(results[0].fact_check_id < fcs[row].fact_check_id);
        }
    }
}

TEST_CASE("predict_all spans the split across languages deterministically") {
    TaskConfig tasks;
    tasks.tasks["eng"] = {{1, 2}, {10}, {11}};
    tasks.tasks["fra"] = {{3, 4}, {20}, {}};
    std::vector<FactCheck> eng_fcs{fc_of(1, "aa bb"), fc_of(2, "cc dd")};
    std::vector<FactCheck> fra_fcs{fc_of(3, "ee ff"), fc_of(4, "gg hh")};
    std::vector<Post> posts{post_of(10, "aa"), post_of(11, "cc"), post_of(20, "gg")};

    std::map<std::string, RetrievalIndex> indexes;
    indexes.emplace("eng", build_index(eng_fcs, "eng", word_cfg(), std::nullopt));
    indexes.emplace("fra", build_index(fra_fcs, "fra", word_cfg(), std::nullopt));

    auto dev = predict_all(indexes, tasks, posts, Split::Dev, 10);
    REQUIRE(dev.size() == 2);
    REQUIRE(dev.count(10) == 1);
    REQUIRE(dev.count(20) == 1);
    CHECK(dev.at(10).size() == 2);  // index smaller than k
    CHECK(dev.at(10)[0] == 1);
    CHECK(dev.at(20)[0] == 4);

    // monolinguality: predictions come from the post's own language list
    std::set<std::int64_t> eng_ids{1, 2};
    for (std::int64_t id : dev.at(10)) CHECK(eng_ids.count(id) == 1);

    auto again = predict_all(indexes, tasks, posts, Split::Dev, 10);
    CHECK(dev == again);

    auto test_split = predict_all(indexes, tasks, posts, Split::Test, 10);
    REQUIRE(test_split.size() == 1);
    CHECK(test_split.count(11) == 1);
}

TEST_CASE("predict_all error paths") {
    TaskConfig tasks;
    tasks.tasks["eng"] = {{1}, {10}, {}};
    std::vector<FactCheck> fcs{fc_of(1, "aa")};
    std::map<std::string, RetrievalIndex> indexes;
    indexes.emplace("eng", build_index(fcs, "eng", word_cfg(), std::nullopt));

    CHECK_THROWS_AS(predict_all(indexes, tasks, {}, Split::Dev, 10), DataError);

    TaskConfig missing_lang;
    missing_lang.tasks["fra"] = {{1}, {10}, {}};
    std::vector<Post> posts{post_of(10, "aa")};
    CHECK_THROWS_AS(predict_all(indexes, missing_lang, posts, Split::Dev, 10), DataError);
}
