#include <doctest.h>

#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "claimrank/unicode.hpp"

using namespace claimrank;

namespace {

nlohmann::json load_cases() {
    std::ifstream in(std::string(CLAIMRANK_TEST_DATA_DIR) + "/unicode_cases.json");
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

std::u32string d32(const std::string& s) {
    return uni::decode_utf8(s);
}

}  // namespace

TEST_CASE("utf8 validity") {
    CHECK(uni::valid_utf8("plain ascii"));
    CHECK(uni::valid_utf8("héllo жизнь 漢字 ไทย"));
    CHECK(uni::valid_utf8(""));
    CHECK_FALSE(uni::valid_utf8("\xC0\xAF"));              // overlong
    CHECK_FALSE(uni::valid_utf8("\xED\xA0\x80"));          // surrogate
    CHECK_FALSE(uni::valid_utf8("\xF5\x80\x80\x80"));      // beyond U+10FFFF
    CHECK_FALSE(uni::valid_utf8("abc\xFFxyz"));
    CHECK_FALSE(uni::valid_utf8("trunc \xE4\xB8"));
}

TEST_CASE("utf8 round trip") {
    std::string s = "mixé 漢字 ไทย عربى \U0001F600";
    CHECK(uni::encode_utf8(uni::decode_utf8(s)) == s);
}

TEST_CASE("decode replaces invalid bytes") {
    std::u32string got = uni::decode_utf8("a\xFF"
                                          "b");
    REQUIRE(got.size() == 3);
    CHECK(got[1] == 0xFFFD);
}

TEST_CASE("word and space classification") {
    CHECK(uni::is_word_char(U'a'));
    CHECK(uni::is_word_char(U'Z'));
    CHECK(uni::is_word_char(U'7'));
    CHECK(uni::is_word_char(U'_'));
    CHECK(uni::is_word_char(U'é'));
    CHECK(uni::is_word_char(U'ع'));          // Arabic letter
    CHECK(uni::is_word_char(U'ไ'));          // Thai letter
    CHECK(uni::is_word_char(U'²'));          // superscript digit counts
    CHECK(uni::is_word_char(U'½'));          // vulgar fraction counts
    CHECK_FALSE(uni::is_word_char(U'-'));
    CHECK_FALSE(uni::is_word_char(U'́'));  // combining acute
    CHECK_FALSE(uni::is_word_char(U' '));

    CHECK(uni::is_space(U' '));
    CHECK(uni::is_space(U'\t'));
    CHECK(uni::is_space(U'\n'));
    CHECK(uni::is_space(U' '));  // no-break space
    CHECK(uni::is_space(U'　'));  // ideographic space
    CHECK_FALSE(uni::is_space(U'x'));
}

TEST_CASE("lowercase mappings") {
    CHECK(uni::to_lower(d32("FLIP The Bell")) == d32("flip the bell"));
    CHECK(uni::to_lower(d32("ÉLÉPHANT")) == d32("éléphant"));
    CHECK(uni::to_lower(d32("ß")) == d32("ß"));
    CHECK(uni::to_lower(d32("Σ")) == d32("σ"));
    CHECK(uni::to_lower(d32("İ")) == std::u32string{U'i', U'̇'});  // expands
    CHECK(uni::to_lower(d32("ВЕРА")) == d32("вера"));
}

TEST_CASE("nfc composes decomposed sequences") {
    // e + combining acute -> é
    CHECK(uni::nfc(std::u32string{U'e', U'́'}) == d32("é"));
    // Hangul jamo -> syllable
    CHECK(uni::nfc(std::u32string{U'ᄀ', U'ᅡ'}) == std::u32string{U'가'});
    CHECK(uni::nfc(std::u32string{U'ᄀ', U'ᅡ', U'ᆨ'}) ==
          std::u32string{U'각'});
    // already composed stays put
    CHECK(uni::nfc(d32("éléphant")) == d32("éléphant"));
    // mark reordering before composition
    std::u32string input{U'a', U'̖', U'́'};  // below-mark first
    std::u32string swapped{U'a', U'́', U'̖'};
    CHECK(uni::nfc(input) == uni::nfc(swapped));
}

TEST_CASE("nfc and lowercase match the reference normalizer corpus") {
    nlohmann::json cases = load_cases();
    for (const auto& c : cases.at("cases")) {
        std::u32string input = d32(c.at("in").get<std::string>());
        std::u32string want_nfc = d32(c.at("nfc").get<std::string>());
        std::u32string want_lower = d32(c.at("lower_nfc").get<std::string>());
        CHECK(uni::nfc(input) == want_nfc);
        CHECK(uni::nfc(uni::to_lower(input)) == want_lower);
    }
}

TEST_CASE("nfc is idempotent on random strings") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<char32_t> cp(0x20, 0x2FFF);
    for (int iter = 0; iter < 200; ++iter) {
        std::u32string s;
        for (int i = 0; i < 24; ++i) {
            char32_t c = cp(rng);
            if (c >= 0xD800 && c <= 0xDFFF) c = 0x61;
            s.push_back(c);
        }
        std::u32string once = uni::nfc(s);
        CHECK(uni::nfc(once) == once);
    }
}
