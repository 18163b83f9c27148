#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimrank/cli_app.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kFixtures = CLAIMRANK_FIXTURE_DIR;

int cli(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"claimrank"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(storage.size());
    for (const std::string& s : storage) argv.push_back(s.c_str());
    return claimrank::run_cli(static_cast<int>(argv.size()), argv.data());
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("claimrank_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path_, ec); }
    fs::path operator/(const char* name) const { return path_ / name; }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

json read_json(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

}  // namespace

TEST_CASE("predict writes a complete, numerically sorted prediction map") {
    TempDir dir;
    fs::path out = dir / "preds.json";
    int rc = cli({"predict", "--data-dir", kFixtures, "--split", "dev", "--out", out.string()});
    REQUIRE(rc == 0);

    json preds = read_json(out);
    REQUIRE(preds.is_object());
    CHECK(preds.size() == 30);  // 10 dev posts x 3 languages
    std::int64_t prev = -1;
    for (const auto& [key, value] : preds.items()) {
        std::int64_t id = std::stoll(key);
        CHECK(id > prev);  // keys ascend numerically in file order
        prev = id;
        REQUIRE(value.is_array());
        CHECK(value.size() == 10);
        for (const auto& fc : value) CHECK(fc.is_number_integer());
    }
}

TEST_CASE("predict supports the wrap key") {
    TempDir dir;
    fs::path out = dir / "wrapped.json";
    int rc = cli({"predict", "--data-dir", kFixtures, "--split", "dev", "--out", out.string(),
                  "--wrap-key", "monolingual"});
    REQUIRE(rc == 0);
    json root = read_json(out);
    REQUIRE(root.contains("monolingual"));
    CHECK(root.at("monolingual").size() == 30);
}

TEST_CASE("evaluate scores a prediction file and writes the report") {
    TempDir dir;
    fs::path preds = dir / "preds.json";
    REQUIRE(cli({"predict", "--data-dir", kFixtures, "--split", "dev", "--out",
                 preds.string()}) == 0);
    fs::path report_path = dir / "report.json";
    int rc = cli({"evaluate", preds.string(), "--data-dir", kFixtures, "--split", "dev",
                  "--out", report_path.string()});
    REQUIRE(rc == 0);
    json report = read_json(report_path);
    CHECK(report.contains("eng"));
    CHECK(report.contains("fra"));
    CHECK(report.contains("deu"));
    CHECK(report.at("k") == 10);
    double avg = report.at("avg").get<double>();
    CHECK(avg > 0.0);
    CHECK(avg <= 1.0);
}

TEST_CASE("evaluate accepts string fact check ids and wrap keys") {
    TempDir dir;
    std::ofstream pairs(dir / "pairs.csv");
    pairs << "fact_check_id,post_id\n5,10\n";
    pairs.close();
    std::ofstream tasks(dir / "tasks.json");
    tasks << R"({"eng": {"fact_checks": [5, 6], "posts_dev": [10], "posts_test": []}})";
    tasks.close();
    std::ofstream preds(dir / "p.json");
    preds << R"({"wrapped": {"10": ["6", "5"]}})";
    preds.close();

    int rc = cli({"evaluate", (dir / "p.json").string(), "--pairs", (dir / "pairs.csv").string(),
                  "--tasks", (dir / "tasks.json").string(), "--split", "dev", "--wrap-key",
                  "wrapped", "--out", (dir / "r.json").string()});
    REQUIRE(rc == 0);
    CHECK(read_json(dir / "r.json").at("eng") == 1.0);
}

TEST_CASE("evaluate fails loudly when a gold post has no prediction") {
    TempDir dir;
    std::ofstream preds(dir / "p.json");
    preds << R"({"99999999": [1]})";
    preds.close();
    int rc = cli({"evaluate", (dir / "p.json").string(), "--data-dir", kFixtures, "--split",
                  "dev", "--out", (dir / "r.json").string()});
    CHECK(rc == 2);
    CHECK_FALSE(fs::exists(dir / "r.json"));
}

TEST_CASE("sweep runs a grid and reports per-row scores") {
    TempDir dir;
    std::ofstream grid(dir / "grid.json");
    grid << R"([
        {"analyzer": "word", "max_features": 200},
        {"analyzer": "char", "ngram": [1, 2], "label": "char12"},
        {"analyzer": "charwb", "ngram": [2, 3]}
    ])";
    grid.close();
    fs::path out = dir / "sweep.json";
    int rc = cli({"sweep", "--grid", (dir / "grid.json").string(), "--data-dir", kFixtures,
                  "--split", "dev", "--out", out.string()});
    REQUIRE(rc == 0);
    json rows = read_json(out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].at("label") == "word(1,1) mf=200");
    CHECK(rows[1].at("label") == "char12");
    for (const auto& row : rows) {
        REQUIRE(row.contains("scores"));
        CHECK(row.at("scores").at("avg").get<double>() > 0.0);
    }
}

TEST_CASE("sweep rejects an invalid analyzer in the grid") {
    TempDir dir;
    std::ofstream grid(dir / "grid.json");
    grid << R"([{"analyzer": "wordish"}])";
    grid.close();
    CHECK(cli({"sweep", "--grid", (dir / "grid.json").string(), "--data-dir", kFixtures}) == 1);
}

TEST_CASE("ingest-check reports counts and reference integrity") {
    TempDir dir;
    fs::path out = dir / "ingest.json";
    int rc = cli({"ingest-check", "--data-dir", kFixtures, "--out", out.string()});
    REQUIRE(rc == 0);
    json report = read_json(out);
    CHECK(report.at("fact_checks").at("rows_loaded") == 300);
    CHECK(report.at("posts").at("rows_loaded") == 60);
    CHECK(report.at("pairs").at("malformed").empty());
    CHECK(report.at("tasks").at("languages") == 3);
    CHECK(report.at("references").at("violations").empty());
}

TEST_CASE("exit codes distinguish usage, data, and success") {
    TempDir dir;
    // usage: bad analyzer value
    CHECK(cli({"predict", "--data-dir", kFixtures, "--analyzer", "bogus", "--out",
               (dir / "x.json").string()}) == 1);
    // usage: malformed ngram
    CHECK(cli({"predict", "--data-dir", kFixtures, "--ngram", "2", "--out",
               (dir / "x.json").string()}) == 1);
    // usage: unknown flag
    CHECK(cli({"predict", "--nope"}) == 1);
    // data: missing directory
    CHECK(cli({"predict", "--data-dir", (dir / "missing").string()}) == 2);
    // data: unreadable tasks file
    CHECK(cli({"predict", "--data-dir", kFixtures, "--tasks",
               (dir / "nope.json").string()}) == 2);
    // no partial output left behind on failure
    CHECK_FALSE(fs::exists(dir / "x.json"));
}

TEST_CASE("config file provides defaults, flags win") {
    TempDir dir;
    std::ofstream cfg(dir / "cfg.json");
    cfg << json{{"data_dir", kFixtures},
                {"split", "dev"},
                {"analyzer", "char"},
                {"ngram", {1, 2}},
                {"max_features", 500},
                {"k", 3}}
               .dump();
    cfg.close();

    fs::path out = dir / "from_config.json";
    REQUIRE(cli({"predict", "--config", (dir / "cfg.json").string(), "--out",
                 out.string()}) == 0);
    json preds = read_json(out);
    CHECK(preds.begin().value().size() == 3);  // k from config

    fs::path out2 = dir / "override.json";
    REQUIRE(cli({"predict", "--config", (dir / "cfg.json").string(), "--k", "5", "--out",
                 out2.string()}) == 0);
    CHECK(read_json(out2).begin().value().size() == 5);
}

TEST_CASE("rerunning predict reproduces the file byte for byte") {
    TempDir dir;
    fs::path a = dir / "a.json";
    fs::path b = dir / "b.json";
    REQUIRE(cli({"predict", "--data-dir", kFixtures, "--split", "test", "--out", a.string(),
                 "--jobs", "3"}) == 0);
    REQUIRE(cli({"predict", "--data-dir", kFixtures, "--split", "test", "--out", b.string(),
                 "--jobs", "1"}) == 0);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK_FALSE(sa.empty());
}
