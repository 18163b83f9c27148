#include "claimrank/cli_app.hpp"

#include <unistd.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "claimrank/errors.hpp"
#include "claimrank/evaluation.hpp"
#include "claimrank/ingest.hpp"

namespace claimrank {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "claimrank 0.1.0";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a command resolves from defaults, the config file, and flags
/// (flags win over config values).
struct EngineConfig {
    std::string data_dir;
    std::string tasks_path;
    std::string pairs_path;
    std::string split = "dev";
    std::string analyzer = "word";
    std::string ngram = "1,1";
    bool lowercase = true;
    std::int64_t max_features_raw = 0;  // 0: no cap
    int k = 10;
    std::string fit_corpus = "fact-checks";
    std::string out;
    std::string wrap_key;
    int jobs = 0;  // 0: one worker per hardware thread

    std::optional<std::int64_t> max_features() const {
        if (max_features_raw == 0) return std::nullopt;
        if (max_features_raw < 0) throw UsageError("--max-features must be >= 1");
        return max_features_raw;
    }
};

std::pair<int, int> parse_ngram(const std::string& text) {
    int lo = 0, hi = 0;
    auto comma = text.find(',');
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (comma == std::string::npos) {
        throw UsageError("--ngram expects MIN,MAX (got '" + text + "')");
    }
    auto r1 = std::from_chars(begin, begin + comma, lo);
    auto r2 = std::from_chars(begin + comma + 1, end, hi);
    if (r1.ec != std::errc() || r1.ptr != begin + comma || r2.ec != std::errc() ||
        r2.ptr != end) {
        throw UsageError("--ngram expects MIN,MAX (got '" + text + "')");
    }
    if (lo < 1 || hi < lo) {
        throw UsageError("--ngram range must satisfy 1 <= MIN <= MAX");
    }
    return {lo, hi};
}

Split parse_split(const std::string& name) {
    if (name == "dev") return Split::Dev;
    if (name == "test") return Split::Test;
    throw UsageError("--split must be dev or test (got '" + name + "')");
}

FitCorpusPolicy parse_fit_corpus(const std::string& name) {
    if (name == "fact-checks") return FitCorpusPolicy::FactChecksOnly;
    if (name == "fact-checks+posts") return FitCorpusPolicy::FactChecksAndPosts;
    throw UsageError("--fit-corpus must be fact-checks or fact-checks+posts (got '" + name +
                     "')");
}

json load_json_file(const fs::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError(std::string("cannot open ") + what + " " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(path.string(), std::string("invalid JSON: ") + e.what());
    }
}

/// Fill fields the command line left untouched from the config file.
void apply_config_file(const std::string& config_path, const CLI::App& cmd, EngineConfig& cfg) {
    if (config_path.empty()) return;
    json file = load_json_file(config_path, "config");
    if (!file.is_object()) throw SchemaError(config_path, "config must be a JSON object");

    auto untouched = [&cmd](const std::string& flag) {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    auto get_str = [&](const char* key, std::string& target, const std::string& flag) {
        if (file.contains(key) && untouched(flag)) target = file.at(key).get<std::string>();
    };
    get_str("data_dir", cfg.data_dir, "--data-dir");
    get_str("tasks", cfg.tasks_path, "--tasks");
    get_str("split", cfg.split, "--split");
    get_str("analyzer", cfg.analyzer, "--analyzer");
    get_str("fit_corpus", cfg.fit_corpus, "--fit-corpus");
    get_str("out", cfg.out, "--out");
    get_str("wrap_key", cfg.wrap_key, "--wrap-key");
    if (file.contains("ngram") && untouched("--ngram")) {
        const json& g = file.at("ngram");
        if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() ||
            !g[1].is_number_integer()) {
            throw SchemaError("ngram", "expected [min, max] in config");
        }
        cfg.ngram = std::to_string(g[0].get<int>()) + "," + std::to_string(g[1].get<int>());
    }
    if (file.contains("lowercase")) cfg.lowercase = file.at("lowercase").get<bool>();
    if (file.contains("max_features") && untouched("--max-features") &&
        !file.at("max_features").is_null()) {
        cfg.max_features_raw = file.at("max_features").get<std::int64_t>();
    }
    if (file.contains("k") && untouched("--k")) cfg.k = file.at("k").get<int>();
    if (file.contains("jobs") && untouched("--jobs")) cfg.jobs = file.at("jobs").get<int>();
    get_str("pairs", cfg.pairs_path, "--pairs");
}

PipelineOptions pipeline_options(const EngineConfig& cfg) {
    PipelineOptions options;
    try {
        options.analyzer.mode = analyzer_mode_from_string(cfg.analyzer);
    } catch (const SchemaError& e) {
        throw UsageError(e.what());
    }
    auto [lo, hi] = parse_ngram(cfg.ngram);
    options.analyzer.ngram_min = lo;
    options.analyzer.ngram_max = hi;
    options.analyzer.lowercase = cfg.lowercase;
    options.max_features = cfg.max_features();
    if (cfg.k < 1) throw UsageError("--k must be >= 1");
    options.k = cfg.k;
    options.split = parse_split(cfg.split);
    options.fit_corpus = parse_fit_corpus(cfg.fit_corpus);
    if (cfg.jobs < 0) throw UsageError("--jobs must be >= 1");
    options.jobs = cfg.jobs > 0 ? cfg.jobs
                                : std::max(1u, std::thread::hardware_concurrency());
    return options;
}

fs::path resolve_tasks_path(const EngineConfig& cfg) {
    if (!cfg.tasks_path.empty()) return cfg.tasks_path;
    if (cfg.data_dir.empty()) throw UsageError("--data-dir (or --tasks) is required");
    return fs::path(cfg.data_dir) / "tasks.json";
}

void require_exists(const fs::path& path, const char* what) {
    if (!fs::exists(path)) {
        throw FileError(std::string(what) + " not found: " + path.string());
    }
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw FileError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw FileError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw FileError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                        ec.message());
    }
}

ordered_json predictions_to_json(const Predictions& predictions, const std::string& wrap_key) {
    ordered_json obj = ordered_json::object();
    for (const auto& [post_id, ids] : predictions) {
        obj[std::to_string(post_id)] = ids;  // map order: ids ascending
    }
    if (wrap_key.empty()) return obj;
    ordered_json root = ordered_json::object();
    root[wrap_key] = std::move(obj);
    return root;
}

Predictions predictions_from_json(const json& root_in, const std::string& wrap_key,
                                  const std::string& path) {
    const json* root = &root_in;
    if (!wrap_key.empty()) {
        auto it = root_in.find(wrap_key);
        if (it == root_in.end()) {
            throw SchemaError(path, "wrap key '" + wrap_key + "' not found");
        }
        root = &*it;
    }
    if (!root->is_object()) throw SchemaError(path, "predictions must be a JSON object");

    Predictions predictions;
    for (const auto& [key, value] : root->items()) {
        std::int64_t post_id = 0;
        auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), post_id);
        if (ec != std::errc() || p != key.data() + key.size()) {
            throw SchemaError(path, "post id key '" + key + "' is not an integer");
        }
        if (!value.is_array()) {
            throw SchemaError(path, "predictions for post " + key + " must be an array");
        }
        std::vector<std::int64_t> ids;
        ids.reserve(value.size());
        for (const json& item : value) {
            if (item.is_number_integer()) {
                ids.push_back(item.get<std::int64_t>());
            } else if (item.is_string()) {
                const std::string& s = item.get_ref<const std::string&>();
                std::int64_t id = 0;
                auto [q, ec2] = std::from_chars(s.data(), s.data() + s.size(), id);
                if (ec2 != std::errc() || q != s.data() + s.size()) {
                    throw SchemaError(path, "fact check id '" + s + "' is not an integer");
                }
                ids.push_back(id);
            } else {
                throw SchemaError(path, "fact check ids must be integers");
            }
        }
        predictions.emplace(post_id, std::move(ids));
    }
    return predictions;
}

int cmd_predict(const EngineConfig& cfg) {
    PipelineOptions options = pipeline_options(cfg);
    if (cfg.data_dir.empty()) throw UsageError("--data-dir is required");
    fs::path data_dir = cfg.data_dir;
    fs::path tasks_path = resolve_tasks_path(cfg);
    require_exists(data_dir, "data directory");
    require_exists(tasks_path, "tasks file");

    Dataset data = load_dataset(data_dir, tasks_path);
    Predictions predictions = run_predictions(data, options);

    fs::path out = cfg.out.empty() ? fs::path("monolingual_predictions.json") : fs::path(cfg.out);
    write_atomic(out, predictions_to_json(predictions, cfg.wrap_key).dump(2) + "\n");
    std::cout << "wrote " << out.string() << " (" << predictions.size() << " posts, k=" << cfg.k
              << ", split=" << cfg.split << ")\n";
    return 0;
}

int cmd_evaluate(const std::string& predictions_path, const EngineConfig& cfg) {
    require_exists(predictions_path, "predictions file");
    fs::path tasks_path = resolve_tasks_path(cfg);
    require_exists(tasks_path, "tasks file");
    if (cfg.pairs_path.empty() && cfg.data_dir.empty()) {
        throw UsageError("--pairs (or --data-dir) is required");
    }
    fs::path pairs_path = cfg.pairs_path.empty() ? fs::path(cfg.data_dir) / "pairs.csv"
                                                 : fs::path(cfg.pairs_path);
    require_exists(pairs_path, "pairs file");
    if (cfg.k < 1) throw UsageError("--k must be >= 1");
    Split split = parse_split(cfg.split);

    Predictions predictions = predictions_from_json(
        load_json_file(predictions_path, "predictions"), cfg.wrap_key, predictions_path);

    Dataset data;
    data.pairs = load_pairs(pairs_path);
    data.tasks = load_task_config(tasks_path);
    EvalReport report = evaluate_predictions(predictions, data, split, cfg.k);

    std::cout << render_report_table({{fs::path(predictions_path).filename().string(), report}});
    ordered_json j = report_json(report);
    fs::path out = cfg.out.empty() ? fs::path("eval_report.json") : fs::path(cfg.out);
    write_atomic(out, j.dump(2) + "\n");
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

std::vector<SweepCell> load_grid(const fs::path& path) {
    json grid_json = load_json_file(path, "grid");
    if (!grid_json.is_array()) {
        throw UsageError("grid file must be a JSON array of configurations");
    }
    std::vector<SweepCell> grid;
    grid.reserve(grid_json.size());
    for (std::size_t i = 0; i < grid_json.size(); ++i) {
        const json& row = grid_json[i];
        std::string where = "grid[" + std::to_string(i) + "]";
        if (!row.is_object()) throw UsageError(where + ": expected an object");
        SweepCell cell;
        try {
            if (row.contains("analyzer")) {
                cell.analyzer.mode =
                    analyzer_mode_from_string(row.at("analyzer").get<std::string>());
            }
            if (row.contains("ngram")) {
                const json& g = row.at("ngram");
                if (!g.is_array() || g.size() != 2) {
                    throw UsageError(where + ".ngram: expected [min, max]");
                }
                cell.analyzer.ngram_min = g[0].get<int>();
                cell.analyzer.ngram_max = g[1].get<int>();
            }
            if (row.contains("lowercase")) {
                cell.analyzer.lowercase = row.at("lowercase").get<bool>();
            }
            if (row.contains("max_features") && !row.at("max_features").is_null()) {
                cell.max_features = row.at("max_features").get<std::int64_t>();
                if (*cell.max_features < 1) {
                    throw UsageError(where + ".max_features: must be >= 1");
                }
            }
            validate(cell.analyzer);
        } catch (const json::exception& e) {
            throw UsageError(where + ": " + e.what());
        } catch (const SchemaError& e) {
            throw UsageError(where + ": " + e.what());
        }
        cell.label = row.value("label", "");
        if (cell.label.empty()) {
            cell.label = std::string(to_string(cell.analyzer.mode)) + "(" +
                         std::to_string(cell.analyzer.ngram_min) + "," +
                         std::to_string(cell.analyzer.ngram_max) + ")";
            if (cell.max_features) cell.label += " mf=" + std::to_string(*cell.max_features);
        }
        grid.push_back(std::move(cell));
    }
    return grid;
}

int cmd_sweep(const std::string& grid_path, const EngineConfig& cfg) {
    require_exists(grid_path, "grid file");
    if (cfg.data_dir.empty()) throw UsageError("--data-dir is required");
    fs::path tasks_path = resolve_tasks_path(cfg);
    require_exists(tasks_path, "tasks file");
    if (cfg.k < 1) throw UsageError("--k must be >= 1");

    std::vector<SweepCell> grid = load_grid(grid_path);
    Dataset data = load_dataset(cfg.data_dir, tasks_path);
    int jobs = cfg.jobs > 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
    std::vector<SweepRow> rows = sweep(data, grid, cfg.k, parse_split(cfg.split),
                                       parse_fit_corpus(cfg.fit_corpus), jobs);
    std::cout << render_sweep_table(rows);
    if (!cfg.out.empty()) {
        write_atomic(cfg.out, sweep_json(rows, cfg.k).dump(2) + "\n");
        std::cout << "wrote " << cfg.out << "\n";
    }
    return 0;
}

int cmd_ingest_check(const EngineConfig& cfg) {
    if (cfg.data_dir.empty()) throw UsageError("--data-dir is required");
    fs::path data_dir = cfg.data_dir;
    fs::path tasks_path = resolve_tasks_path(cfg);
    require_exists(data_dir, "data directory");
    require_exists(tasks_path, "tasks file");

    std::vector<LoadReport> reports;
    Dataset data = load_dataset(data_dir, tasks_path, &reports);
    ReferenceReport refs = check_references(data.pairs, data.fact_checks, data.posts);

    ordered_json j;
    const char* names[] = {"fact_checks", "posts", "pairs"};
    for (std::size_t i = 0; i < reports.size() && i < 3; ++i) {
        ordered_json section;
        section["path"] = reports[i].path;
        section["rows_total"] = reports[i].rows_total;
        section["rows_loaded"] = reports[i].rows_loaded;
        ordered_json malformed = ordered_json::array();
        for (const MalformedRow& row : reports[i].malformed) {
            malformed.push_back({{"record", row.record}, {"line", row.line}, {"cause", row.cause}});
        }
        section["malformed"] = std::move(malformed);
        j[names[i]] = std::move(section);
    }
    j["tasks"] = {{"path", tasks_path.string()},
                  {"languages", data.tasks.tasks.size()}};
    ordered_json violations = ordered_json::array();
    for (const ReferenceViolation& v : refs.violations) {
        violations.push_back({{"fact_check_id", v.pair.fact_check_id},
                              {"post_id", v.pair.post_id},
                              {"cause", v.cause}});
    }
    j["references"] = {{"checked", data.pairs.size()},
                       {"valid", refs.valid.size()},
                       {"violations", std::move(violations)}};

    fs::path out = cfg.out.empty() ? fs::path("ingest_report.json") : fs::path(cfg.out);
    write_atomic(out, j.dump(2) + "\n");

    std::cout << "fact checks: " << data.fact_checks.size() << " loaded";
    if (!reports.empty()) std::cout << " (" << reports[0].malformed.size() << " malformed)";
    std::cout << "\nposts:       " << data.posts.size() << " loaded";
    if (reports.size() > 1) std::cout << " (" << reports[1].malformed.size() << " malformed)";
    std::cout << "\npairs:       " << data.pairs.size() << " loaded";
    if (reports.size() > 2) std::cout << " (" << reports[2].malformed.size() << " malformed)";
    std::cout << "\nlanguages:   " << data.tasks.tasks.size();
    std::cout << "\nreference violations: " << refs.violations.size() << "\n";
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

void add_engine_flags(CLI::App* cmd, EngineConfig& cfg, std::string& config_path,
                      bool full = true) {
    cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    cmd->add_option("--data-dir", cfg.data_dir,
                    "directory holding fact_checks.csv, posts.csv, pairs.csv");
    cmd->add_option("--tasks", cfg.tasks_path, "tasks.json path (default: <data-dir>/tasks.json)");
    cmd->add_option("--split", cfg.split, "post split to use: dev or test");
    cmd->add_option("--k", cfg.k, "results per post");
    cmd->add_option("--out", cfg.out, "output path");
    cmd->add_option("--jobs", cfg.jobs, "max parallel language pipelines");
    if (full) {
        cmd->add_option("--analyzer", cfg.analyzer, "word, char, or char_wb");
        cmd->add_option("--ngram", cfg.ngram, "n-gram range MIN,MAX");
        cmd->add_option("--max-features", cfg.max_features_raw, "vocabulary size cap");
        cmd->add_option("--fit-corpus", cfg.fit_corpus,
                        "fitting corpus: fact-checks or fact-checks+posts");
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Multilingual fact-checked claim retrieval (TF-IDF, per-language indexes)"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    EngineConfig predict_cfg;
    std::string predict_config_path;
    CLI::App* predict = app.add_subcommand("predict", "build indexes and write prediction JSON");
    add_engine_flags(predict, predict_cfg, predict_config_path);
    predict->add_option("--wrap-key", predict_cfg.wrap_key,
                        "nest the prediction map under this key");

    EngineConfig eval_cfg;
    std::string eval_config_path;
    std::string predictions_path;
    CLI::App* evaluate = app.add_subcommand("evaluate", "score a prediction file (success@k)");
    evaluate->add_option("predictions", predictions_path, "prediction JSON file")->required();
    add_engine_flags(evaluate, eval_cfg, eval_config_path, /*full=*/false);
    evaluate->add_option("--pairs", eval_cfg.pairs_path,
                         "pairs.csv path (default: <data-dir>/pairs.csv)");
    evaluate->add_option("--wrap-key", eval_cfg.wrap_key,
                         "prediction map is nested under this key");

    EngineConfig sweep_cfg;
    std::string sweep_config_path;
    std::string grid_path;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a grid of configurations");
    sweep_cmd->add_option("--grid", grid_path, "JSON grid file")->required();
    add_engine_flags(sweep_cmd, sweep_cfg, sweep_config_path, /*full=*/false);
    sweep_cmd->add_option("--fit-corpus", sweep_cfg.fit_corpus,
                          "fitting corpus: fact-checks or fact-checks+posts");

    EngineConfig ingest_cfg;
    std::string ingest_config_path;
    CLI::App* ingest = app.add_subcommand("ingest-check", "load the data files and report");
    add_engine_flags(ingest, ingest_cfg, ingest_config_path, /*full=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const char* command = "claimrank";
    try {
        if (predict->parsed()) {
            command = "predict";
            apply_config_file(predict_config_path, *predict, predict_cfg);
            return cmd_predict(predict_cfg);
        }
        if (evaluate->parsed()) {
            command = "evaluate";
            apply_config_file(eval_config_path, *evaluate, eval_cfg);
            return cmd_evaluate(predictions_path, eval_cfg);
        }
        if (sweep_cmd->parsed()) {
            command = "sweep";
            apply_config_file(sweep_config_path, *sweep_cmd, sweep_cfg);
            return cmd_sweep(grid_path, sweep_cfg);
        }
        if (ingest->parsed()) {
            command = "ingest-check";
            apply_config_file(ingest_config_path, *ingest, ingest_cfg);
            return cmd_ingest_check(ingest_cfg);
        }
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "claimrank " << command << ": " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "claimrank " << command << ": data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "claimrank " << command << ": internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace claimrank
