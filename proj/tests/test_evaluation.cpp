#include <doctest.h>

#include <cmath>

#include "claimrank/errors.hpp"
#include "claimrank/evaluation.hpp"

using namespace claimrank;

namespace {

GoldStandard gold_of(std::map<std::int64_t, std::set<std::int64_t>> relevant) {
    return GoldStandard{std::move(relevant)};
}

std::vector<std::int64_t> ids_1_to(int n) {
    std::vector<std::int64_t> out;
    for (int i = 1; i <= n; ++i) out.push_back(i);
    return out;
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

/// Two-language toy dataset with one dev post per language.
Dataset toy_dataset() {
    Dataset data;
    data.fact_checks = {fc_of(1, "aa bb"), fc_of(2, "cc dd"), fc_of(3, "ee ff"),
                        fc_of(4, "gg hh")};
    data.posts = {post_of(10, "aa bb"), post_of(20, "gg hh")};
    data.pairs = {{1, 10}, {4, 20}};
    data.tasks.tasks["eng"] = {{1, 2}, {10}, {}};
    data.tasks.tasks["fra"] = {{3, 4}, {20}, {}};
    return data;
}

}  // namespace

TEST_CASE("success_at_k indicator semantics") {
    GoldStandard one_hit = gold_of({{7, {3}}});
    Predictions preds{{7, ids_1_to(10)}};
    CHECK(success_at_k(preds, one_hit, 10) == 1.0);

    GoldStandard one_miss = gold_of({{7, {99}}});
    CHECK(success_at_k(preds, one_miss, 10) == 0.0);

    GoldStandard two_posts = gold_of({{7, {3}}, {8, {99}}});
    Predictions both{{7, ids_1_to(10)}, {8, ids_1_to(10)}};
    CHECK(success_at_k(both, two_posts, 10) == 0.5);

    // gold item at rank 11 is a miss at k=10
    std::vector<std::int64_t> eleven = ids_1_to(11);
    GoldStandard rank11 = gold_of({{7, {11}}});
    Predictions long_list{{7, eleven}};
    CHECK(success_at_k(long_list, rank11, 10) == 0.0);
    CHECK(success_at_k(long_list, rank11, 11) == 1.0);
}

TEST_CASE("success_at_k uses min(k, list length)") {
    GoldStandard gold = gold_of({{7, {2}}});
    Predictions short_list{{7, {5, 2}}};
    CHECK(success_at_k(short_list, gold, 10) == 1.0);
}

TEST_CASE("missing predictions are an error, not a silent zero") {
    GoldStandard gold = gold_of({{7, {1}}, {8, {2}}});
    Predictions only7{{7, {1}}};
    CHECK_THROWS_AS(success_at_k(only7, gold, 10), DataError);
    CHECK_THROWS_AS(success_at_k({}, gold_of({}), 10), DataError);
}

TEST_CASE("success_at_k is monotone in k") {
    GoldStandard gold = gold_of({{1, {5}}, {2, {9}}, {3, {1}}});
    Predictions preds{{1, ids_1_to(10)}, {2, {9, 8, 7}}, {3, {2, 3}}};
    double prev = 0.0;
    for (int k = 1; k <= 12; ++k) {
        double cur = success_at_k(preds, gold, k);
        CHECK(cur >= prev);
        prev = cur;
    }
    // a huge k equals "anywhere in the list"
    CHECK(success_at_k(preds, gold, 1 << 30) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("aggregate reproduces the published per-language averages") {
    std::map<std::string, double> dev15k{{"eng", 0.6130}, {"spa", 0.8358}, {"deu", 0.6627},
                                         {"por", 0.8278}, {"fra", 0.8032}, {"ara", 0.7821},
                                         {"msa", 0.8000}, {"tha", 0.8810}};
    CHECK(std::abs(aggregate(dev15k) - 0.7757) <= 0.00005);

    std::map<std::string, double> test_dlh{{"pol", 0.626},  {"eng", 0.452}, {"msa", 0.8495},
                                           {"por", 0.558},  {"deu", 0.690}, {"ara", 0.820},
                                           {"spa", 0.546},  {"fra", 0.814}, {"tha", 0.8415},
                                           {"tur", 0.686}};
    CHECK(std::abs(aggregate(test_dlh) - 0.6883) <= 0.00005);

    CHECK(aggregate({{"x", 0.42}}) == 0.42);
    CHECK_THROWS_AS(aggregate({}), DataError);
}

TEST_CASE("gold_from_pairs deduplicates and filters by post list") {
    std::vector<Pair> pairs{{1, 10}, {1, 10}, {2, 10}, {3, 99}};
    GoldStandard gold = gold_from_pairs(pairs, {10, 20});
    REQUIRE(gold.relevant.size() == 1);
    CHECK(gold.relevant.at(10) == std::set<std::int64_t>{1, 2});
}

TEST_CASE("evaluate_predictions scores per language and averages") {
    Dataset data = toy_dataset();
    Predictions preds{{10, {1, 2}}, {20, {3, 4}}};
    EvalReport report = evaluate_predictions(preds, data, Split::Dev, 10);
    CHECK(report.per_language.at("eng") == 1.0);
    CHECK(report.per_language.at("fra") == 1.0);
    CHECK(report.average == 1.0);
    CHECK(report.n_posts.at("eng") == 1);

    Predictions misses{{10, {2}}, {20, {4}}};
    EvalReport half = evaluate_predictions(misses, data, Split::Dev, 10);
    CHECK(half.per_language.at("eng") == 0.0);
    CHECK(half.per_language.at("fra") == 1.0);
    CHECK(half.average == 0.5);

    CHECK_THROWS_AS(evaluate_predictions(preds, data, Split::Test, 10), DataError);
}

TEST_CASE("report JSON carries 4-decimal scores, avg, and k") {
    EvalReport report;
    report.per_language = {{"eng", 0.61304}, {"tha", 0.88096}};
    report.average = aggregate(report.per_language);
    report.k = 10;
    nlohmann::ordered_json j = report_json(report);
    CHECK(j.at("eng").get<double>() == 0.613);
    CHECK(j.at("tha").get<double>() == 0.881);
    CHECK(j.at("avg").get<double>() == 0.747);
    CHECK(j.at("k").get<int>() == 10);
}

TEST_CASE("sweep runs every cell and repeats deterministically") {
    Dataset data = toy_dataset();
    SweepCell word_cell{"word", {AnalyzerMode::Word, 1, 1, true}, std::nullopt};
    SweepCell char_cell{"char", {AnalyzerMode::Char, 1, 2, true}, 50};
    std::vector<SweepRow> rows = sweep(data, {word_cell, char_cell, word_cell}, 10);
    REQUIRE(rows.size() == 3);
    for (const SweepRow& row : rows) {
        REQUIRE(row.report.has_value());
        CHECK(row.error.empty());
    }
    CHECK(rows[0].report->per_language == rows[2].report->per_language);
    CHECK(rows[0].report->average == rows[2].report->average);

    CHECK(sweep(data, {}, 10).empty());
}

TEST_CASE("a failing sweep cell is recorded, not fabricated") {
    Dataset data = toy_dataset();
    for (FactCheck& fc : data.fact_checks) fc.claim_original = "a";  // single-char tokens only
    SweepCell cell{"word", {AnalyzerMode::Word, 1, 1, true}, std::nullopt};
    std::vector<SweepRow> rows = sweep(data, {cell}, 10);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].report.has_value());
    CHECK_FALSE(rows[0].error.empty());

    std::string table = render_sweep_table(rows);
    CHECK(table.find("FAILED") != std::string::npos);
    nlohmann::ordered_json j = sweep_json(rows, 10);
    CHECK(j.at(0).contains("error"));
}

TEST_CASE("run_predictions honors k and parallelism deterministically") {
    Dataset data = toy_dataset();
    PipelineOptions options;
    options.k = 1;
    Predictions serial = run_predictions(data, options);
    REQUIRE(serial.size() == 2);
    CHECK(serial.at(10) == std::vector<std::int64_t>{1});
    CHECK(serial.at(20) == std::vector<std::int64_t>{4});

    options.jobs = 4;
    CHECK(run_predictions(data, options) == serial);
}

TEST_CASE("run_predictions rejects a task pointing at unknown fact checks") {
    Dataset data = toy_dataset();
    data.tasks.tasks["eng"].fact_check_ids.push_back(777);
    PipelineOptions options;
    CHECK_THROWS_AS(run_predictions(data, options), DataError);
}
