#include "claimrank/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "claimrank/errors.hpp"
#include "claimrank/ingest.hpp"

namespace claimrank {

namespace {

double round4(double v) {
    return std::round(v * 10000.0) / 10000.0;
}

std::string format4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

const std::vector<std::int64_t>& split_posts(const LanguageTask& task, Split split) {
    return split == Split::Dev ? task.post_ids_dev : task.post_ids_test;
}

}  // namespace

GoldStandard gold_from_pairs(const std::vector<Pair>& pairs,
                             const std::vector<std::int64_t>& post_ids) {
    std::unordered_set<std::int64_t> wanted(post_ids.begin(), post_ids.end());
    GoldStandard gold;
    for (const Pair& pair : pairs) {
        if (wanted.count(pair.post_id)) {
            gold.relevant[pair.post_id].insert(pair.fact_check_id);
        }
    }
    return gold;
}

double success_at_k(const Predictions& predictions, const GoldStandard& gold, int k) {
    if (k < 1) throw std::domain_error("success_at_k: k must be >= 1");
    if (gold.relevant.empty()) throw DataError("success_at_k: empty gold standard");

    std::size_t hits = 0;
    for (const auto& [post_id, relevant] : gold.relevant) {
        auto it = predictions.find(post_id);
        if (it == predictions.end()) {
            throw DataError("missing prediction for post " + std::to_string(post_id));
        }
        const auto& ranked = it->second;
        std::size_t cutoff = std::min<std::size_t>(static_cast<std::size_t>(k), ranked.size());
        for (std::size_t i = 0; i < cutoff; ++i) {
            if (relevant.count(ranked[i])) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(gold.relevant.size());
}

double aggregate(const std::map<std::string, double>& per_language) {
    if (per_language.empty()) throw DataError("aggregate: empty report");
    double sum = 0.0;
    for (const auto& [lang, score] : per_language) sum += score;
    return sum / static_cast<double>(per_language.size());
}

EvalReport evaluate_predictions(const Predictions& predictions, const Dataset& data, Split split,
                                int k) {
    EvalReport report;
    report.k = k;
    for (const auto& [language, task] : data.tasks.tasks) {
        GoldStandard gold = gold_from_pairs(data.pairs, split_posts(task, split));
        if (gold.relevant.empty()) continue;
        report.per_language[language] = success_at_k(predictions, gold, k);
        report.n_posts[language] = gold.relevant.size();
    }
    if (report.per_language.empty()) {
        throw DataError("no language has gold pairs in the selected split");
    }
    report.average = aggregate(report.per_language);
    return report;
}

nlohmann::ordered_json report_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    for (const auto& [language, score] : report.per_language) j[language] = round4(score);
    j["avg"] = round4(report.average);
    j["k"] = report.k;
    return j;
}

std::string render_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
    // Column set: union of languages across rows, sorted, then avg.
    std::set<std::string> languages;
    for (const auto& [label, report] : rows) {
        for (const auto& [lang, score] : report.per_language) languages.insert(lang);
    }
    std::size_t label_width = std::strlen("system");
    for (const auto& [label, report] : rows) label_width = std::max(label_width, label.size());

    std::ostringstream out;
    out << std::left;
    out.width(static_cast<std::streamsize>(label_width));
    out << "system";
    for (const auto& lang : languages) out << "  " << std::setw(6) << lang.substr(0, 6);
    out << "  avg\n";
    for (const auto& [label, report] : rows) {
        out.width(static_cast<std::streamsize>(label_width));
        out << label;
        for (const auto& lang : languages) {
            auto it = report.per_language.find(lang);
            out << "  " << std::setw(6) << (it == report.per_language.end() ? std::string("-")
                                                                            : format4(it->second));
        }
        out << "  " << format4(report.average) << "\n";
    }
    return out.str();
}

Predictions run_predictions(const Dataset& data, const PipelineOptions& options) {
    if (options.k < 1) throw std::domain_error("k must be >= 1");

    std::unordered_map<std::int64_t, const FactCheck*> fact_checks_by_id;
    fact_checks_by_id.reserve(data.fact_checks.size());
    for (const FactCheck& fc : data.fact_checks) fact_checks_by_id.emplace(fc.fact_check_id, &fc);
    std::unordered_map<std::int64_t, const Post*> posts_by_id;
    posts_by_id.reserve(data.posts.size());
    for (const Post& post : data.posts) posts_by_id.emplace(post.post_id, &post);

    struct LanguageJob {
        const std::string* language = nullptr;
        const LanguageTask* task = nullptr;
        Predictions result;
        std::exception_ptr failure;
    };
    std::vector<LanguageJob> jobs_list;
    for (const auto& [language, task] : data.tasks.tasks) {
        if (split_posts(task, options.split).empty()) continue;
        jobs_list.push_back({&language, &task, {}, nullptr});
    }

    auto run_language = [&](LanguageJob& job) {
        const LanguageTask& task = *job.task;
        std::vector<FactCheck> fact_checks;
        fact_checks.reserve(task.fact_check_ids.size());
        for (std::int64_t id : task.fact_check_ids) {
            auto it = fact_checks_by_id.find(id);
            if (it == fact_checks_by_id.end()) {
                throw DataError("task for language '" + *job.language +
                                "' references unknown fact_check_id " + std::to_string(id));
            }
            fact_checks.push_back(*it->second);
        }
        std::vector<Post> language_posts;
        const std::vector<Post>* fit_posts = nullptr;
        if (options.fit_corpus == FitCorpusPolicy::FactChecksAndPosts) {
            for (std::int64_t id : split_posts(task, options.split)) {
                auto it = posts_by_id.find(id);
                if (it != posts_by_id.end()) language_posts.push_back(*it->second);
            }
            fit_posts = &language_posts;
        }
        RetrievalIndex index = build_index(fact_checks, *job.language, options.analyzer,
                                           options.max_features, options.fit_corpus, fit_posts);
        for (std::int64_t post_id : split_posts(task, options.split)) {
            auto it = posts_by_id.find(post_id);
            if (it == posts_by_id.end()) {
                throw DataError("post " + std::to_string(post_id) + " (language '" +
                                *job.language + "') not present in posts corpus");
            }
            std::vector<RankedResult> ranked = query_top_k(index, *it->second, options.k);
            std::vector<std::int64_t>& ids = job.result[post_id];
            ids.reserve(ranked.size());
            for (const RankedResult& r : ranked) ids.push_back(r.fact_check_id);
        }
    };

    int worker_count = std::max(1, std::min<int>(options.jobs,
                                                 static_cast<int>(jobs_list.size())));
    if (worker_count <= 1) {
        for (LanguageJob& job : jobs_list) run_language(job);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) {
            workers.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= jobs_list.size()) break;
                    try {
                        run_language(jobs_list[i]);
                    } catch (...) {
                        jobs_list[i].failure = std::current_exception();
                    }
                }
            });
        }
        for (std::thread& t : workers) t.join();
    }

    // Merge in language order so failures and results are deterministic.
    Predictions merged;
    for (LanguageJob& job : jobs_list) {
        if (job.failure) std::rethrow_exception(job.failure);
        for (auto& [post_id, ids] : job.result) {
            if (!merged.emplace(post_id, std::move(ids)).second) {
                throw DataError("post " + std::to_string(post_id) +
                                " appears in more than one sub-task split");
            }
        }
    }
    return merged;
}

std::vector<SweepRow> sweep(const Dataset& data, const std::vector<SweepCell>& grid, int k,
                            Split split, FitCorpusPolicy fit_corpus, int jobs) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const SweepCell& cell : grid) {
        SweepRow row;
        row.cell = cell;
        try {
            PipelineOptions options;
            options.analyzer = cell.analyzer;
            options.max_features = cell.max_features;
            options.k = k;
            options.split = split;
            options.fit_corpus = fit_corpus;
            options.jobs = jobs;
            Predictions predictions = run_predictions(data, options);
            row.report = evaluate_predictions(predictions, data, split, k);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_sweep_table(const std::vector<SweepRow>& rows) {
    std::vector<std::pair<std::string, EvalReport>> ok_rows;
    std::string failures;
    for (const SweepRow& row : rows) {
        if (row.report) {
            ok_rows.emplace_back(row.cell.label, *row.report);
        } else {
            failures += row.cell.label + "  FAILED: " + row.error + "\n";
        }
    }
    std::string out;
    if (!ok_rows.empty()) out += render_report_table(ok_rows);
    out += failures;
    return out;
}

nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows, int k) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
        nlohmann::ordered_json j;
        j["label"] = row.cell.label;
        j["analyzer"] = std::string(to_string(row.cell.analyzer.mode));
        j["ngram"] = {row.cell.analyzer.ngram_min, row.cell.analyzer.ngram_max};
        j["lowercase"] = row.cell.analyzer.lowercase;
        if (row.cell.max_features) {
            j["max_features"] = *row.cell.max_features;
        } else {
            j["max_features"] = nullptr;
        }
        j["k"] = k;
        if (row.report) {
            j["scores"] = report_json(*row.report);
        } else {
            j["error"] = row.error;
        }
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace claimrank
