#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "claimrank/errors.hpp"
#include "claimrank/ingest.hpp"

using namespace claimrank;
namespace fs = std::filesystem;

namespace {

class TempFile {
public:
    explicit TempFile(const std::string& content, const char* suffix = ".csv") {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("claimrank_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++) + suffix);
        std::ofstream out(path_, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::error_code ec; fs::remove(path_, ec); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

}  // namespace

TEST_CASE("normalize_csv_field escapes newlines only") {
    CHECK(normalize_csv_field("a\n b") == "a\\n b");
    CHECK(normalize_csv_field("abc") == "abc");
    CHECK(normalize_csv_field("") == "");
    CHECK(normalize_csv_field("x\ny\nz") == "x\\ny\\nz");
    CHECK(normalize_csv_field("keep \\n as is") == "keep \\n as is");
    // output never contains a raw newline
    for (const char* s : {"\n", "a\nb\nc\n", "\n\n"}) {
        CHECK(normalize_csv_field(s).find('\n') == std::string::npos);
    }
}

TEST_CASE("load_fact_checks parses the claim tuple") {
    TempFile file(
        "fact_check_id,claim,instances,title\n"
        "175,\"(' Are avocados good for you?', ' Are avocados good for you?', [('eng', "
        "1.0)])\",\"[(1525653998.0, "
        "'https://metafact.io/factchecks/175-are-avocados-good-for-you')]\",\n");
    LoadReport report;
    auto fcs = load_fact_checks(file.path(), &report);
    REQUIRE(fcs.size() == 1);
    CHECK(fcs[0].fact_check_id == 175);
    CHECK(fcs[0].claim_original == " Are avocados good for you?");
    CHECK(fcs[0].claim_english == " Are avocados good for you?");
    REQUIRE(fcs[0].claim_languages.size() == 1);
    CHECK(fcs[0].claim_languages[0].language == "eng");
    CHECK(fcs[0].claim_languages[0].confidence == 1.0);
    REQUIRE(fcs[0].instances.size() == 1);
    CHECK(*fcs[0].instances[0].timestamp == doctest::Approx(1525653998.0));
    CHECK(fcs[0].instances[0].source ==
          "https://metafact.io/factchecks/175-are-avocados-good-for-you");
    CHECK(fcs[0].title.empty());
    CHECK(report.rows_total == 1);
    CHECK(report.rows_loaded == 1);
    CHECK(report.malformed.empty());
}

TEST_CASE("fact check title shapes") {
    TempFile file(
        "fact_check_id,claim,instances,title\n"
        "1,\"('a', 'a', [])\",[],plain text title\n"
        "2,\"('a', 'a', [])\",[],\"('titre', 'title', [('fra', 1.0)])\"\n"
        "3,\"('a', 'a', [])\",[],\n"
        "4,\"('a', 'a', [])\",[],'just quoted'\n");
    auto fcs = load_fact_checks(file.path());
    REQUIRE(fcs.size() == 4);
    CHECK(fcs[0].title == "plain text title");
    CHECK(fcs[1].title == "titre title");
    CHECK(fcs[2].title.empty());
    CHECK(fcs[3].title == "just quoted");
}

TEST_CASE("header-only file loads empty") {
    TempFile file("fact_check_id,claim,instances,title\n");
    LoadReport report;
    CHECK(load_fact_checks(file.path(), &report).empty());
    CHECK(report.rows_total == 0);
}

TEST_CASE("missing file and missing column") {
    CHECK_THROWS_AS(load_fact_checks("/nonexistent/nope.csv"), FileError);
    TempFile file("fact_check_id,instances\n1,[]\n");
    CHECK_THROWS_AS(load_fact_checks(file.path()), SchemaError);
}

TEST_CASE("malformed fact check rows are reported, not fatal") {
    TempFile file(
        "fact_check_id,claim,instances,title\n"
        "1,\"('ok', 'ok', [])\",[],\n"
        "notanid,\"('x', 'x', [])\",[],\n"           // bad id
        "2,\"['broken\",[],\n"                        // claim does not parse
        "3,\"('x', 'x', [('eng', 1.5)])\",[],\n"      // confidence out of range
        "1,\"('dup', 'dup', [])\",[],\n"              // duplicate id
        "4,\"('y', 'y', [])\",[],,,extra,fields\n"    // too many fields
        "5,\"('z', 'z', [])\",[],\n");
    LoadReport report;
    auto fcs = load_fact_checks(file.path(), &report);
    REQUIRE(fcs.size() == 2);
    CHECK(fcs[0].fact_check_id == 1);
    CHECK(fcs[1].fact_check_id == 5);
    REQUIRE(report.rows_total == 7);
    CHECK(report.rows_loaded == 2);
    CHECK(report.malformed.size() == 5);
    CHECK(report.rows_loaded + report.malformed.size() == report.rows_total);
    // record numbers are 1-based data rows
    CHECK(report.malformed[0].record == 2);
}

TEST_CASE("load_posts keeps both text renditions and verdicts") {
    TempFile file(
        "post_id,instances,ocr,verdicts,text\n"
        "7,\"[(1525826671.0, 'fb')]\",\"[(\"\"Flip the bell peppers over to check their "
        "gender. I didn't know this!\"\", \"\"Flip the bell peppers over to check their "
        "gender. I didn't know this!\"\", [('eng', 1.0)])]\",['False information'],\"\"\n");
    LoadReport report;
    auto posts = load_posts(file.path(), &report);
    REQUIRE(posts.size() == 1);
    const Post& p = posts[0];
    CHECK(p.post_id == 7);
    REQUIRE(p.instances.size() == 1);
    CHECK(p.instances[0].source == "fb");
    // OCR produces two renditions (identical here), text column two empties
    REQUIRE(p.text_fields.size() == 4);
    CHECK(p.text_fields[0] == p.text_fields[1]);
    CHECK(p.text_fields[0].find("bell peppers") != std::string::npos);
    CHECK(p.text_fields[2].empty());
    CHECK(p.text_fields[3].empty());
    CHECK(p.verdicts == std::vector<std::string>{"False information"});
    REQUIRE(p.text_languages.size() == 1);
    CHECK(p.text_languages[0].language == "eng");
}

TEST_CASE("post with all text cells empty") {
    TempFile file("post_id,instances,ocr,verdicts,text\n9,,,,\n");
    auto posts = load_posts(file.path());
    REQUIRE(posts.size() == 1);
    CHECK(posts[0].text_fields == std::vector<std::string>{"", ""});
    CHECK(posts[0].verdicts.empty());
    CHECK(post_text(posts[0]).empty());
}

TEST_CASE("extra text columns only when whitelisted") {
    TempFile file("post_id,text,comment\n1,\"('b', 'b', [])\",hello\n");
    auto without = load_posts(file.path());
    REQUIRE(without.size() == 1);
    CHECK(without[0].text_fields == std::vector<std::string>{"b", "b"});

    LoadOptions options;
    options.extra_text_columns = {"comment"};
    auto with = load_posts(file.path(), nullptr, options);
    REQUIRE(with.size() == 1);
    CHECK(with[0].text_fields == std::vector<std::string>{"b", "b", "hello"});
}

TEST_CASE("load_pairs keeps duplicates and reports bad ids") {
    TempFile file(
        "fact_check_id,post_id\n"
        "12,7\n"
        "12,7\n"
        "x,9\n");
    LoadReport report;
    auto pairs = load_pairs(file.path(), &report);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == Pair{12, 7});
    CHECK(pairs[1] == Pair{12, 7});
    CHECK(report.malformed.size() == 1);
    CHECK(report.rows_total == 3);
}

TEST_CASE("check_references reports violations without dropping pairs") {
    std::vector<FactCheck> fcs(1);
    fcs[0].fact_check_id = 12;
    std::vector<Post> posts(1);
    posts[0].post_id = 7;
    std::vector<Pair> pairs{{12, 7}, {12, 8}, {99, 7}};
    ReferenceReport rep = check_references(pairs, fcs, posts);
    CHECK(rep.valid == std::vector<Pair>{{12, 7}});
    REQUIRE(rep.violations.size() == 2);
    CHECK(rep.violations[0].pair == Pair{12, 8});
    CHECK(rep.violations[0].cause.find("post_id 8") != std::string::npos);
    CHECK(rep.violations[1].cause.find("fact_check_id 99") != std::string::npos);
}

TEST_CASE("task config: flat and track-nested shapes") {
    TempFile flat(R"({"eng": {"fact_checks": [1, 2], "posts_dev": [10], "posts_test": [11]}})",
                  ".json");
    TaskConfig cfg = load_task_config(flat.path());
    REQUIRE(cfg.tasks.size() == 1);
    CHECK(cfg.tasks.at("eng").fact_check_ids == std::vector<std::int64_t>{1, 2});
    CHECK(cfg.tasks.at("eng").post_ids_dev == std::vector<std::int64_t>{10});
    CHECK(cfg.tasks.at("eng").post_ids_test == std::vector<std::int64_t>{11});

    TempFile nested(
        R"({"monolingual": {"spa": {"fact_checks": [5], "posts_dev": [], "posts_test": [6]}},
            "crosslingual": {"fact_checks": [1]}})",
        ".json");
    TaskConfig cfg2 = load_task_config(nested.path());
    REQUIRE(cfg2.tasks.size() == 1);
    CHECK(cfg2.tasks.count("spa") == 1);
}

TEST_CASE("task config: ten languages and the empty config") {
    std::string ten = "{";
    const char* langs[] = {"ara", "deu", "eng", "fra", "msa", "pol", "por", "spa", "tha", "tur"};
    for (int i = 0; i < 10; ++i) {
        if (i) ten += ",";
        ten += "\"" + std::string(langs[i]) +
               "\": {\"fact_checks\": [1], \"posts_dev\": [], \"posts_test\": []}";
    }
    ten += "}";
    TempFile file(ten, ".json");
    CHECK(load_task_config(file.path()).tasks.size() == 10);

    TempFile empty("{}", ".json");
    CHECK(load_task_config(empty.path()).tasks.empty());
}

TEST_CASE("task config schema errors") {
    TempFile missing(R"({"eng": {"posts_dev": []}})", ".json");
    CHECK_THROWS_AS(load_task_config(missing.path()), SchemaError);

    TempFile bad_type(R"({"eng": {"fact_checks": [1, "two"]}})", ".json");
    try {
        load_task_config(bad_type.path());
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.key_path() == "eng.fact_checks[1]");
    }

    TempFile overlap(
        R"({"eng": {"fact_checks": [1], "posts_dev": [5, 6], "posts_test": [6]}})", ".json");
    CHECK_THROWS_AS(load_task_config(overlap.path()), SchemaError);

    TempFile garbage("not json at all", ".json");
    CHECK_THROWS_AS(load_task_config(garbage.path()), SchemaError);
    CHECK_THROWS_AS(load_task_config("/nonexistent/tasks.json"), FileError);
}

TEST_CASE("post_text joins non-empty fields then verdicts") {
    Post p;
    p.text_fields = {"a", "", "b"};
    p.verdicts = {"False information"};
    CHECK(post_text(p) == "a b False information");

    Post empty;
    CHECK(post_text(empty).empty());

    Post single;
    single.text_fields = {"x"};
    CHECK(post_text(single) == "x");
}

TEST_CASE("claim_text joins original, english, title") {
    FactCheck fc;
    fc.claim_original = "x";
    fc.claim_english = "x";
    CHECK(claim_text(fc) == "x x");

    FactCheck empty;
    CHECK(claim_text(empty).empty());

    FactCheck full;
    full.claim_original = "a";
    full.claim_english = "b";
    full.title = "t";
    CHECK(claim_text(full) == "a b t");
}

TEST_CASE("multi-line quoted claims load cleanly") {
    TempFile file(
        "fact_check_id,claim,instances,title\n"
        "42,\"('line one\nline two', 'line one\nline two', [('eng', 1.0)])\",[],\n");
    auto fcs = load_fact_checks(file.path());
    REQUIRE(fcs.size() == 1);
    CHECK(fcs[0].claim_original == "line one\nline two");
}

TEST_CASE("invalid UTF-8 cells are malformed rows") {
    TempFile file(
        "fact_check_id,claim,instances,title\n"
        "1,\"('ok', 'ok', [])\",[],\n"
        "2,\"('bad \xFF\xFE', 'x', [])\",[],\n");
    LoadReport report;
    auto fcs = load_fact_checks(file.path(), &report);
    CHECK(fcs.size() == 1);
    REQUIRE(report.malformed.size() == 1);
    CHECK(report.malformed[0].cause.find("UTF-8") != std::string::npos);
}

TEST_CASE("load_dataset wires all four files") {
    fs::path dir = CLAIMRANK_FIXTURE_DIR;
    std::vector<LoadReport> reports;
    Dataset ds = load_dataset(dir, dir / "tasks.json", &reports);
    CHECK(ds.fact_checks.size() == 300);
    CHECK(ds.posts.size() == 60);
    CHECK(ds.pairs.size() > 0);
    CHECK(ds.tasks.tasks.size() == 3);
    REQUIRE(reports.size() == 3);
    for (const LoadReport& r : reports) {
        CHECK(r.malformed.empty());
        CHECK(r.rows_loaded == r.rows_total);
    }
    ReferenceReport refs = check_references(ds.pairs, ds.fact_checks, ds.posts);
    CHECK(refs.violations.empty());
}
