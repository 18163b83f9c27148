#include <doctest.h>

#include <random>
#include <set>

#include "claimrank/analyzer.hpp"
#include "claimrank/unicode.hpp"
#include "support/helpers.hpp"

using namespace claimrank;

namespace {

AnalyzerConfig make(AnalyzerMode mode, int lo = 1, int hi = 1, bool lower = true) {
    return AnalyzerConfig{mode, lo, hi, lower};
}

using Tokens = std::vector<std::string>;

}  // namespace

TEST_CASE("preprocess lowercases and composes") {
    AnalyzerConfig cfg;
    CHECK(preprocess("FLIP the Bell", cfg) == "flip the bell");
    CHECK(preprocess("", cfg) == "");
    // decomposed input comes out composed
    std::string decomposed = "Éléphant";
    CHECK(preprocess(decomposed, cfg) == "éléphant");

    cfg.lowercase = false;
    CHECK(preprocess("FLIP the Bell", cfg) == "FLIP the Bell");
    CHECK(preprocess(decomposed, cfg) == decomposed);
}

TEST_CASE("word analyzer matches the reference tokenizer") {
    CHECK(analyze("Flip the bell peppers", make(AnalyzerMode::Word)) ==
          Tokens{"flip", "the", "bell", "peppers"});
    CHECK(analyze("a I x", make(AnalyzerMode::Word)).empty());
    CHECK(analyze("", make(AnalyzerMode::Word)).empty());
    CHECK(analyze("Crème BRÛLÉE costs 12,50€ — won't táke te_st 2nd",
                  make(AnalyzerMode::Word)) ==
          Tokens{"crème", "brûlée", "costs", "12", "50", "won", "táke", "te_st", "2nd"});
    CHECK(analyze("هذا اختبار للنظام", make(AnalyzerMode::Word)) ==
          Tokens{"هذا", "اختبار", "للنظام"});
    // Thai: combining vowel marks are not word characters, so runs split
    CHECK(analyze("กรุงเทพมหานคร test", make(AnalyzerMode::Word)) ==
          Tokens{"กร", "งเทพมหานคร", "test"});
    CHECK(analyze("Üben von Xylophon", make(AnalyzerMode::Word)) ==
          Tokens{"üben", "von", "xylophon"});
}

TEST_CASE("word n-grams join tokens with single spaces") {
    CHECK(analyze("aa bb cc dd", make(AnalyzerMode::Word, 1, 2)) ==
          Tokens{"aa", "bb", "cc", "dd", "aa bb", "bb cc", "cc dd"});
    CHECK(analyze("aa bb cc", make(AnalyzerMode::Word, 2, 3)) ==
          Tokens{"aa bb", "bb cc", "aa bb cc"});
}

TEST_CASE("char analyzer emits n-grams over collapsed text") {
    CHECK(analyze("ab cd", make(AnalyzerMode::Char, 3, 3)) == Tokens{"ab ", "b c", " cd"});
    CHECK(analyze("héllo", make(AnalyzerMode::Char, 1, 2)) ==
          Tokens{"h", "é", "l", "l", "o", "hé", "él", "ll", "lo"});
    CHECK(analyze("a  b", make(AnalyzerMode::Char, 3, 3)) == Tokens{"a b"});
    CHECK(analyze("abcd", make(AnalyzerMode::Char, 2, 3)) ==
          Tokens{"ab", "bc", "cd", "abc", "bcd"});
    CHECK(analyze("", make(AnalyzerMode::Char, 1, 3)).empty());
}

TEST_CASE("char_wb analyzer pads words and stays inside them") {
    CHECK(analyze("ab cd", make(AnalyzerMode::CharWb, 3, 3)) ==
          Tokens{" ab", "ab ", " cd", "cd "});
    CHECK(analyze("añ b", make(AnalyzerMode::CharWb, 2, 4)) ==
          Tokens{" a", "añ", "ñ ", " añ", "añ ", " añ ", " b", "b ", " b "});
    // word shorter than n: emitted once, longer lengths skipped
    CHECK(analyze("ab", make(AnalyzerMode::CharWb, 3, 4)) == Tokens{" ab", "ab ", " ab "});
    CHECK(analyze("ab", make(AnalyzerMode::CharWb, 4, 6)) == Tokens{" ab "});
    CHECK(analyze("", make(AnalyzerMode::CharWb, 3, 3)).empty());
}

TEST_CASE("uppercase input is analyzed case-insensitively by default") {
    CHECK(analyze("ABC abc", make(AnalyzerMode::Word)) == Tokens{"abc", "abc"});
    CHECK(analyze("ABC", make(AnalyzerMode::Word, 1, 1, /*lower=*/false)) == Tokens{"ABC"});
}

TEST_CASE("analyzer names parse, including the compact spelling") {
    CHECK(analyzer_mode_from_string("word") == AnalyzerMode::Word);
    CHECK(analyzer_mode_from_string("char") == AnalyzerMode::Char);
    CHECK(analyzer_mode_from_string("char_wb") == AnalyzerMode::CharWb);
    CHECK(analyzer_mode_from_string("charwb") == AnalyzerMode::CharWb);
    CHECK_THROWS_AS(analyzer_mode_from_string("wordish"), SchemaError);
    CHECK(to_string(AnalyzerMode::CharWb) == "char_wb");
}

TEST_CASE("invalid n-gram ranges are rejected") {
    CHECK_THROWS_AS(analyze("x", make(AnalyzerMode::Word, 0, 1)), SchemaError);
    CHECK_THROWS_AS(analyze("x", make(AnalyzerMode::Word, 3, 2)), SchemaError);
}

TEST_CASE("property: word unigrams have no whitespace and length >= 2") {
    std::mt19937 rng(7);
    auto pool = testsup::random_word_pool(rng, 30);
    for (int iter = 0; iter < 50; ++iter) {
        std::string doc = testsup::random_doc(rng, pool, 20);
        for (const std::string& tok : analyze(doc, make(AnalyzerMode::Word))) {
            CHECK(tok.find(' ') == std::string::npos);
            CHECK(uni::decode_utf8(tok).size() >= 2);
        }
    }
}

TEST_CASE("property: char token count is max(L - n + 1, 0) on single words") {
    std::mt19937 rng(8);
    auto pool = testsup::random_word_pool(rng, 30);
    for (int iter = 0; iter < 50; ++iter) {
        std::string word = pool[rng() % pool.size()];
        int n = 1 + static_cast<int>(rng() % 4);
        auto tokens = analyze(word, make(AnalyzerMode::Char, n, n));
        long expected = std::max<long>(static_cast<long>(word.size()) - n + 1, 0);
        CHECK(static_cast<long>(tokens.size()) == expected);
    }
}

TEST_CASE("property: char_wb tokens never span two words") {
    std::mt19937 rng(9);
    auto pool = testsup::random_word_pool(rng, 30);
    for (int iter = 0; iter < 50; ++iter) {
        std::string doc = testsup::random_doc(rng, pool, 12);
        for (const std::string& tok : analyze(doc, make(AnalyzerMode::CharWb, 2, 4))) {
            // interior spaces flanked by non-spaces would mean a crossing
            for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
                bool crossing = tok[i] == ' ' && tok[i - 1] != ' ' && tok[i + 1] != ' ';
                CHECK_FALSE(crossing);
            }
        }
    }
}

TEST_CASE("property: analyze is deterministic") {
    std::mt19937 rng(10);
    auto pool = testsup::random_word_pool(rng, 30);
    for (int iter = 0; iter < 25; ++iter) {
        std::string doc = testsup::random_doc(rng, pool, 20);
        AnalyzerConfig cfg = testsup::random_analyzer(rng);
        CHECK(analyze(doc, cfg) == analyze(doc, cfg));
    }
}

TEST_CASE("tokens are never empty") {
    std::mt19937 rng(11);
    auto pool = testsup::random_word_pool(rng, 20);
    for (int iter = 0; iter < 40; ++iter) {
        std::string doc = testsup::random_doc(rng, pool, 10);
        AnalyzerConfig cfg = testsup::random_analyzer(rng);
        for (const std::string& tok : analyze(doc, cfg)) CHECK_FALSE(tok.empty());
    }
}
