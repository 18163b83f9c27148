// Acceptance suite: one self-contained check per release criterion, each
// printed as a [PASS]/[FAIL]/[SKIP] line. Exits nonzero if any check fails.
//
// The dev-data check needs the real task data and only runs when
// CLAIMRANK_DATA_DIR points at a directory holding fact_checks.csv,
// posts.csv, pairs.csv, and tasks.json.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "claimrank/evaluation.hpp"
#include "claimrank/ingest.hpp"
#include "claimrank/literal.hpp"
#include "claimrank/retrieval.hpp"
#include "claimrank/tfidf.hpp"
#include "support/helpers.hpp"

using namespace claimrank;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    enum Kind { Pass, Fail, Skip } kind = Pass;
    std::string detail;
};

Outcome pass(std::string detail = "") {
    return {Outcome::Pass, std::move(detail)};
}
Outcome fail(std::string detail) {
    return {Outcome::Fail, std::move(detail)};
}
Outcome skip(std::string detail) {
    return {Outcome::Skip, std::move(detail)};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------

struct PropertyCorpus {
    std::vector<std::string> docs;
    AnalyzerConfig analyzer;
    std::optional<std::int64_t> max_features;
};

std::vector<PropertyCorpus> make_property_corpora() {
    std::mt19937 rng(1001);
    std::vector<PropertyCorpus> corpora;
    for (int i = 0; i < 100; ++i) {
        PropertyCorpus c;
        switch (i % 3) {
            case 0:
                c.analyzer = {AnalyzerMode::Word, 1, 1, true};
                break;
            case 1:
                c.analyzer = {AnalyzerMode::Char, 1, 1 + static_cast<int>(rng() % 2), true};
                break;
            default:
                c.analyzer = {AnalyzerMode::CharWb, 2, 3, rng() % 2 == 0};
                break;
        }
        auto pool = testsup::random_word_pool(rng, 15);
        int docs = 1 + static_cast<int>(rng() % 50);
        while (true) {
            c.docs.clear();
            for (int d = 0; d < docs; ++d) {
                c.docs.push_back(testsup::random_doc(rng, pool, 12));
            }
            auto oracle = testsup::dense_tfidf(c.docs, c.analyzer, std::nullopt);
            if (oracle.terms.size() <= 200 && !oracle.terms.empty()) break;
            docs = std::max(1, docs / 2);
        }
        if (rng() % 2 == 0) {
            c.max_features = 1 + static_cast<std::int64_t>(rng() % 60);
        }
        corpora.push_back(std::move(c));
    }
    return corpora;
}

const std::vector<PropertyCorpus>& property_corpora() {
    static const std::vector<PropertyCorpus> corpora = make_property_corpora();
    return corpora;
}

Outcome check_vectorizer_oracle() {
    double worst = 0.0;
    for (const PropertyCorpus& c : property_corpora()) {
        TfidfModel model = fit(c.docs, c.analyzer, c.max_features);
        testsup::DenseTfidf oracle = testsup::dense_tfidf(c.docs, c.analyzer, c.max_features);
        if (model.vocabulary.terms != oracle.terms) {
            return fail("vocabulary mismatch against the dense oracle");
        }
        for (std::size_t d = 0; d < c.docs.size(); ++d) {
            auto dense = testsup::densify(transform(model, c.docs[d]), model.size());
            for (std::size_t t = 0; t < model.size(); ++t) {
                worst = std::max(worst, std::abs(dense[t] - oracle.doc_vectors[d][t]));
            }
        }
        if (worst > 1e-9) {
            return fail("max abs deviation " + fmt(worst) + " > 1e-9");
        }
    }
    return pass("100 corpora, all analyzers, max abs err " + fmt(worst));
}

Outcome check_normalization() {
    double worst = 0.0;
    std::size_t checked = 0;
    for (const PropertyCorpus& c : property_corpora()) {
        TfidfModel model = fit(c.docs, c.analyzer, c.max_features);
        for (const std::string& doc : c.docs) {
            SparseVector v = transform(model, doc);
            if (v.empty()) continue;
            worst = std::max(worst, std::abs(v.norm() - 1.0));
            ++checked;
        }
    }
    if (worst > 1e-9) {
        return fail("norm deviates by " + fmt(worst) + " > 1e-9");
    }
    return pass(std::to_string(checked) + " vectors, max |norm-1| " + fmt(worst));
}

Outcome check_retrieval_oracle() {
    std::mt19937 rng(2002);
    for (int iter = 0; iter < 100; ++iter) {
        auto pool = testsup::random_word_pool(rng, 50);
        int count = 1 + static_cast<int>(rng() % 1000);
        std::vector<std::int64_t> ids(static_cast<std::size_t>(count));
        std::iota(ids.begin(), ids.end(), 1);
        std::shuffle(ids.begin(), ids.end(), rng);

        std::vector<FactCheck> fcs(static_cast<std::size_t>(count));
        std::string prev_text = "seed";
        for (int i = 0; i < count; ++i) {
            fcs[static_cast<std::size_t>(i)].fact_check_id = ids[static_cast<std::size_t>(i)];
            // ~10% duplicate texts to force score ties
            if (i > 0 && rng() % 10 == 0) {
                fcs[static_cast<std::size_t>(i)].claim_original = prev_text;
            } else {
                prev_text = testsup::random_doc(rng, pool, 12);
                fcs[static_cast<std::size_t>(i)].claim_original = prev_text;
            }
        }

        RetrievalIndex index;
        try {
            index = build_index(fcs, "xx", {AnalyzerMode::Word, 1, 1, true}, std::nullopt);
        } catch (const DataError&) {
            continue;  // corpus with no tokens at all
        }

        for (int q = 0; q < 5; ++q) {
            Post post;
            post.post_id = q;
            switch (rng() % 4) {
                case 0: post.text_fields.push_back(""); break;
                case 1: post.text_fields.push_back("zzzzzz qqqqqq"); break;  // fully OOV
                default: post.text_fields.push_back(testsup::random_doc(rng, pool, 10));
            }
            auto got = query_top_k(index, post, 10);
            auto want = testsup::oracle_top_k(index.fact_check_ids, index.vectors,
                                              transform(index.model, post_text(post)), 10);
            if (got.size() != want.size()) {
                return fail("result size mismatch at instance " + std::to_string(iter));
            }
            for (std::size_t i = 0; i < got.size(); ++i) {
                if (got[i].fact_check_id != want[i].fact_check_id ||
                    got[i].score != want[i].score) {
                    return fail("rank " + std::to_string(i) +
                                " differs from oracle at instance " + std::to_string(iter));
                }
            }
        }
    }
    return pass("100 random indexes up to 1000 docs, ids and order exact");
}

Outcome check_idf_formula() {
    for (std::int64_t n : {1, 2, 7, 100, 12345}) {
        if (idf_weight(n, n) != 1.0) {
            return fail("idf(df=n) != 1.0 for n=" + std::to_string(n));
        }
    }
    if (std::abs(idf_weight(1, 2) - 1.405465) > 1e-6) {
        return fail("idf(1,2) = " + fmt(idf_weight(1, 2)));
    }
    if (std::abs(idf_weight(0, 9) - 3.302585) > 1e-6) {
        return fail("idf(0,9) = " + fmt(idf_weight(0, 9)));
    }
    return pass("df=n -> 1.0 exact; 1.405465 and 3.302585 within 1e-6");
}

Outcome check_max_features() {
    TfidfModel m = fit({"aa bb bb", "bb cc"}, {AnalyzerMode::Word, 1, 1, true}, 2);
    if (m.vocabulary.terms != std::vector<std::string>{"aa", "bb"}) {
        return fail("truncation picked the wrong terms");
    }

    std::mt19937 rng(3003);
    for (int iter = 0; iter < 50; ++iter) {
        auto pool = testsup::random_word_pool(rng, 30);
        std::vector<std::string> corpus;
        int docs = 2 + static_cast<int>(rng() % 12);
        for (int d = 0; d < docs; ++d) corpus.push_back(testsup::random_doc(rng, pool, 15));
        std::int64_t mf = 1 + static_cast<std::int64_t>(rng() % 25);
        TfidfModel small, big;
        try {
            small = fit(corpus, {AnalyzerMode::Word, 1, 1, true}, mf);
            big = fit(corpus, {AnalyzerMode::Word, 1, 1, true}, mf + 1);
        } catch (const DataError&) {
            --iter;
            continue;
        }
        std::set<std::string> big_terms(big.vocabulary.terms.begin(),
                                        big.vocabulary.terms.end());
        for (const std::string& term : small.vocabulary.terms) {
            if (!big_terms.count(term)) {
                return fail("vocabulary at m not nested in m+1 (term '" + term + "')");
            }
        }
    }
    return pass("exact truncation case plus nesting on 50 corpora");
}

Outcome check_aggregation() {
    std::map<std::string, double> dev_row{{"eng", 0.6130}, {"spa", 0.8358}, {"deu", 0.6627},
                                          {"por", 0.8278}, {"fra", 0.8032}, {"ara", 0.7821},
                                          {"msa", 0.8000}, {"tha", 0.8810}};
    double dev_avg = aggregate(dev_row);
    if (std::abs(dev_avg - 0.7757) > 0.00005) {
        return fail("dev-row average " + fmt(dev_avg) + " != 0.7757");
    }
    std::map<std::string, double> test_row{{"pol", 0.626},  {"eng", 0.452}, {"msa", 0.8495},
                                           {"por", 0.558},  {"deu", 0.690}, {"ara", 0.820},
                                           {"spa", 0.546},  {"fra", 0.814}, {"tha", 0.8415},
                                           {"tur", 0.686}};
    double test_avg = aggregate(test_row);
    if (std::abs(test_avg - 0.6883) > 0.00005) {
        return fail("test-row average " + fmt(test_avg) + " != 0.6883");
    }
    return pass("0.7757 and 0.6883 within 5e-5");
}

Outcome check_metric_semantics() {
    std::vector<std::int64_t> top10;
    for (std::int64_t i = 1; i <= 10; ++i) top10.push_back(i);

    Predictions preds{{7, top10}};
    if (success_at_k(preds, {{{7, {3}}}}, 10) != 1.0) return fail("hit != 1.0");
    if (success_at_k(preds, {{{7, {99}}}}, 10) != 0.0) return fail("miss != 0.0");

    Predictions both{{7, top10}, {8, top10}};
    if (success_at_k(both, {{{7, {3}}, {8, {99}}}}, 10) != 0.5) return fail("mixed != 0.5");

    std::vector<std::int64_t> eleven = top10;
    eleven.push_back(11);
    Predictions long_list{{7, eleven}};
    if (success_at_k(long_list, {{{7, {11}}}}, 10) != 0.0) {
        return fail("rank-11 item counted as a hit at k=10");
    }
    return pass("hit 1.0, miss 0.0, mixed 0.5, rank-11 cutoff");
}

Outcome check_predict_determinism() {
    fs::path fixture = CLAIMRANK_FIXTURE_DIR;
    fs::path bin = CLAIMRANK_CLI_BIN;
    if (!fs::exists(bin)) return fail("CLI binary missing: " + bin.string());
    fs::path out_a = fs::temp_directory_path() / "claimrank_acc_a.json";
    fs::path out_b = fs::temp_directory_path() / "claimrank_acc_b.json";

    auto run = [&](const fs::path& out) {
        std::string cmd = bin.string() + " predict --data-dir " + fixture.string() +
                          " --split dev --jobs 3 --out " + out.string() + " > /dev/null";
        return std::system(cmd.c_str());
    };
    auto started = std::chrono::steady_clock::now();
    if (run(out_a) != 0) return fail("first predict run failed");
    if (run(out_b) != 0) return fail("second predict run failed");
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);

    std::ifstream fa(out_a, std::ios::binary), fb(out_b, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    std::error_code ec;
    fs::remove(out_a, ec);
    fs::remove(out_b, ec);
    if (sa.empty()) return fail("empty prediction file");
    if (sa != sb) return fail("outputs differ between runs");
    if (elapsed.count() > 5.0) {
        return fail("two runs took " + fmt(elapsed.count()) + "s (budget 5s)");
    }
    return pass("byte-identical, " + fmt(elapsed.count()) + "s for both runs");
}

Outcome check_literal_round_trip() {
    std::mt19937_64 rng(4004);
    for (int i = 0; i < 500; ++i) {
        LiteralValue v = testsup::random_literal(rng, 4);
        std::string once = render_literal(v);
        LiteralValue back;
        try {
            back = parse_literal(once);
        } catch (const ParseError& e) {
            return fail(std::string("rendered form failed to parse: ") + e.what());
        }
        if (!(back == v) || render_literal(back) != once) {
            return fail("round trip changed the value (case " + std::to_string(i) + ")");
        }
    }

    // The documented data-format examples.
    LiteralValue inst = parse_literal("[(1525826671.0, 'fb')]");
    bool inst_ok = inst.kind() == LiteralValue::Kind::List && inst.items().size() == 1 &&
                   inst.items()[0].kind() == LiteralValue::Kind::Tuple &&
                   inst.items()[0].items().size() == 2 &&
                   inst.items()[0].items()[0].as_float() == 1525826671.0 &&
                   inst.items()[0].items()[1].as_string() == "fb";
    if (!inst_ok) return fail("instance example parsed to the wrong structure");

    LiteralValue claim = parse_literal(
        "(' Are avocados good for you?', ' Are avocados good for you?', [('eng', 1.0)])");
    bool claim_ok = claim.kind() == LiteralValue::Kind::Tuple && claim.items().size() == 3 &&
                    claim.items()[0].as_string() == " Are avocados good for you?" &&
                    claim.items()[1].as_string() == " Are avocados good for you?" &&
                    claim.items()[2].items().size() == 1 &&
                    claim.items()[2].items()[0].items()[0].as_string() == "eng" &&
                    claim.items()[2].items()[0].items()[1].as_float() == 1.0;
    if (!claim_ok) return fail("claim example parsed to the wrong structure");
    return pass("500 round trips plus the documented examples");
}

Outcome check_dev_data() {
    const char* env = std::getenv("CLAIMRANK_DATA_DIR");
    if (env == nullptr || *env == '\0') {
        return skip("CLAIMRANK_DATA_DIR not set");
    }
    fs::path dir = env;
    for (const char* name : {"fact_checks.csv", "posts.csv", "pairs.csv", "tasks.json"}) {
        if (!fs::exists(dir / name)) {
            return fail("missing " + (dir / name).string());
        }
    }

    Dataset data = load_dataset(dir, dir / "tasks.json");

    const std::map<std::string, double> expected_15k{
        {"eng", 0.6130}, {"spa", 0.8358}, {"deu", 0.6627}, {"por", 0.8278},
        {"fra", 0.8032}, {"ara", 0.7821}, {"msa", 0.8000}, {"tha", 0.8810}};

    PipelineOptions options;
    options.analyzer = {AnalyzerMode::Word, 1, 1, true};
    options.max_features = 15000;
    options.k = 10;
    options.split = Split::Dev;
    options.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    EvalReport report_15k =
        evaluate_predictions(run_predictions(data, options), data, Split::Dev, 10);

    std::string detail_15k;
    for (const auto& [lang, want] : expected_15k) {
        auto it = report_15k.per_language.find(lang);
        if (it == report_15k.per_language.end()) {
            return fail("language '" + lang + "' missing from the dev report");
        }
        detail_15k += lang + "=" + fmt(it->second) + " ";
        if (std::abs(it->second - want) > 0.02) {
            return fail("15k " + lang + " = " + fmt(it->second) + ", expected " + fmt(want) +
                        " within 0.02");
        }
    }
    if (std::abs(report_15k.average - 0.776) > 0.01) {
        return fail("15k average = " + fmt(report_15k.average) + ", expected 0.776 within 0.01");
    }

    options.max_features = 10000;
    EvalReport report_10k =
        evaluate_predictions(run_predictions(data, options), data, Split::Dev, 10);
    if (std::abs(report_10k.average - 0.763) > 0.01) {
        return fail("10k average = " + fmt(report_10k.average) + ", expected 0.763 within 0.01");
    }

    return pass("15k avg " + fmt(report_15k.average) + ", 10k avg " + fmt(report_10k.average) +
                "; " + detail_15k);
}

}  // namespace

int main() {
    using Check = std::pair<const char*, std::function<Outcome()>>;
    const std::vector<Check> checks{
        {"oracle-equivalence-vectorizer", check_vectorizer_oracle},
        {"oracle-equivalence-retrieval", check_retrieval_oracle},
        {"idf-formula", check_idf_formula},
        {"normalization", check_normalization},
        {"max-features-truncation", check_max_features},
        {"aggregation-reference-averages", check_aggregation},
        {"success-at-k-semantics", check_metric_semantics},
        {"predict-determinism", check_predict_determinism},
        {"literal-round-trip", check_literal_round_trip},
        {"dev-data-15k", check_dev_data},
    };

    int failures = 0;
    for (const auto& [name, fn] : checks) {
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome = fail(std::string("unexpected error: ") + e.what());
        }
        const char* tag = outcome.kind == Outcome::Pass   ? "[PASS]"
                          : outcome.kind == Outcome::Skip ? "[SKIP]"
                                                          : "[FAIL]";
        std::cout << tag << " " << name;
        if (!outcome.detail.empty()) std::cout << ": " << outcome.detail;
        std::cout << "\n";
        if (outcome.kind == Outcome::Fail) ++failures;
    }
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    return 0;
}
