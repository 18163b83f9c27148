#include <doctest.h>

#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "claimrank/literal.hpp"
#include "support/helpers.hpp"

using namespace claimrank;

namespace {

LiteralValue from_tagged(const nlohmann::json& tag) {
    const std::string& k = tag.at("k").get_ref<const std::string&>();
    if (k == "none") return LiteralValue::none();
    if (k == "bool") return LiteralValue::boolean(tag.at("v").get<bool>());
    if (k == "int") return LiteralValue::integer(tag.at("v").get<std::int64_t>());
    if (k == "float") return LiteralValue::floating(tag.at("v").get<double>());
    if (k == "str") return LiteralValue::string(tag.at("v").get<std::string>());
    if (k == "list" || k == "tuple") {
        LiteralValue::Items items;
        for (const auto& item : tag.at("v")) items.push_back(from_tagged(item));
        return k == "list" ? LiteralValue::list(std::move(items))
                           : LiteralValue::tuple(std::move(items));
    }
    REQUIRE(k == "map");
    LiteralValue::Entries entries;
    for (const auto& kv : tag.at("v")) {
        entries.emplace_back(from_tagged(kv.at(0)), from_tagged(kv.at(1)));
    }
    return LiteralValue::map(std::move(entries));
}

}  // namespace

TEST_CASE("parses the data files' instance and language fields") {
    LiteralValue v = parse_literal("[(1525826671.0, 'fb')]");
    REQUIRE(v.kind() == LiteralValue::Kind::List);
    REQUIRE(v.items().size() == 1);
    const LiteralValue& inst = v.items()[0];
    REQUIRE(inst.kind() == LiteralValue::Kind::Tuple);
    REQUIRE(inst.items().size() == 2);
    CHECK(inst.items()[0].as_float() == doctest::Approx(1525826671.0));
    CHECK(inst.items()[1].as_string() == "fb");

    LiteralValue langs = parse_literal("[('eng', 1.0)]");
    REQUIRE(langs.kind() == LiteralValue::Kind::List);
    REQUIRE(langs.items().size() == 1);
    CHECK(langs.items()[0].items()[0].as_string() == "eng");
    CHECK(langs.items()[0].items()[1].as_float() == 1.0);
}

TEST_CASE("empty and nested collections") {
    CHECK(parse_literal("[]").items().empty());
    CHECK(parse_literal("()").kind() == LiteralValue::Kind::Tuple);
    CHECK(parse_literal("{}").kind() == LiteralValue::Kind::Map);

    LiteralValue v = parse_literal("('a', \"b\", [('x', 0.5)])");
    REQUIRE(v.kind() == LiteralValue::Kind::Tuple);
    REQUIRE(v.items().size() == 3);
    CHECK(v.items()[0].as_string() == "a");
    CHECK(v.items()[1].as_string() == "b");
    CHECK(v.items()[2].items()[0].items()[0].as_string() == "x");
    CHECK(v.items()[2].items()[0].items()[1].as_float() == 0.5);
}

TEST_CASE("scalars, signs, and exponents") {
    CHECK(parse_literal("None").is_none());
    CHECK(parse_literal("True").as_bool());
    CHECK_FALSE(parse_literal("False").as_bool());
    CHECK(parse_literal("-42").as_int() == -42);
    CHECK(parse_literal("+7").as_int() == 7);
    CHECK(parse_literal("9223372036854775807").as_int() == INT64_MAX);
    CHECK(parse_literal("-9223372036854775808").as_int() == INT64_MIN);
    CHECK(parse_literal("1.5e-7").as_float() == doctest::Approx(1.5e-7));
    CHECK(parse_literal(".5").as_float() == 0.5);
    CHECK(parse_literal("5.").as_float() == 5.0);
    CHECK(parse_literal("-0.0").as_float() == 0.0);
}

TEST_CASE("string escapes") {
    CHECK(parse_literal("'a\\nb'").as_string() == "a\nb");
    CHECK(parse_literal("'don\\'t'").as_string() == "don't");
    CHECK(parse_literal("\"say \\\"hi\\\"\"").as_string() == "say \"hi\"");
    CHECK(parse_literal("'tab\\there'").as_string() == "tab\there");
    CHECK(parse_literal("'\\x41\\u00e9'").as_string() == "Aé");
    CHECK(parse_literal("'\\q'").as_string() == "\\q");  // unknown escape kept
    CHECK(parse_literal("'I didn\\u2019t'").as_string() == "I didn’t");
}

TEST_CASE("whitespace and trailing commas are tolerated") {
    LiteralValue v = parse_literal("  [ 1 , 2 , 3 , ]  ");
    REQUIRE(v.items().size() == 3);
    CHECK(v.items()[2].as_int() == 3);
    CHECK(parse_literal("( 'a' , )").items().size() == 1);
    CHECK(parse_literal("{ 'k' : 1 , }").entries().size() == 1);
}

TEST_CASE("parenthesized value is not a tuple") {
    CHECK(parse_literal("(5)").as_int() == 5);
    CHECK(parse_literal("(5,)").kind() == LiteralValue::Kind::Tuple);
}

TEST_CASE("maps preserve entry order") {
    LiteralValue v = parse_literal("{'b': 1, 'a': 2}");
    REQUIRE(v.entries().size() == 2);
    CHECK(v.entries()[0].first.as_string() == "b");
    CHECK(v.entries()[1].first.as_string() == "a");
}

TEST_CASE("syntax errors carry position and expectation") {
    CHECK_THROWS_AS(parse_literal(""), ParseError);
    CHECK_THROWS_AS(parse_literal("[1, 2"), ParseError);
    CHECK_THROWS_AS(parse_literal("'unterminated"), ParseError);
    CHECK_THROWS_AS(parse_literal("(1, 2) trailing"), ParseError);
    CHECK_THROWS_AS(parse_literal("{1: }"), ParseError);
    CHECK_THROWS_AS(parse_literal("{1, 2}"), ParseError);  // sets unsupported
    CHECK_THROWS_AS(parse_literal("Nope"), ParseError);
    CHECK_THROWS_AS(parse_literal("99999999999999999999999999"), ParseError);

    try {
        parse_literal("[1, oops]");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
        CHECK_FALSE(e.expected().empty());
    }
}

TEST_CASE("no partial results on malformed nested input") {
    CHECK_THROWS_AS(parse_literal("[(1, 'a'), (2,]"), ParseError);
}

TEST_CASE("render matches the reference source form") {
    CHECK(render_literal(parse_literal("[(1525826671.0, 'fb')]")) == "[(1525826671.0, 'fb')]");
    CHECK(render_literal(LiteralValue::floating(1e16)) == "1e+16");
    CHECK(render_literal(LiteralValue::floating(1e15)) == "1000000000000000.0");
    CHECK(render_literal(LiteralValue::floating(1e-5)) == "1e-05");
    CHECK(render_literal(LiteralValue::floating(0.0001)) == "0.0001");
    CHECK(render_literal(LiteralValue::floating(2.0)) == "2.0");
    CHECK(render_literal(LiteralValue::floating(-0.0)) == "-0.0");
    CHECK(render_literal(LiteralValue::string("don't")) == "\"don't\"");
    CHECK(render_literal(LiteralValue::string("both ' and \"")) == "'both \\' and \"'");
    CHECK(render_literal(LiteralValue::tuple({LiteralValue::integer(1)})) == "(1,)");
}

TEST_CASE("reference evaluator corpus: parse and re-render") {
    std::ifstream in(std::string(CLAIMRANK_TEST_DATA_DIR) + "/literal_cases.json");
    REQUIRE(in.good());
    nlohmann::json cases = nlohmann::json::parse(in);
    std::size_t n = 0;
    for (const auto& c : cases.at("cases")) {
        const std::string& expr = c.at("expr").get_ref<const std::string&>();
        CAPTURE(expr);
        LiteralValue parsed = parse_literal(expr);
        CHECK(parsed == from_tagged(c.at("value")));
        CHECK(render_literal(parsed) == expr);
        ++n;
    }
    CHECK(n == 200);
}

TEST_CASE("random literal round trip: render, parse, render") {
    std::mt19937_64 rng(20250708);
    for (int i = 0; i < 500; ++i) {
        LiteralValue v = testsup::random_literal(rng, 4);
        std::string once = render_literal(v);
        CAPTURE(once);
        LiteralValue back = parse_literal(once);
        CHECK(back == v);
        CHECK(render_literal(back) == once);
    }
}
