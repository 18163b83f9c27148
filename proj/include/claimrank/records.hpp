#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace claimrank {

struct LangConfidence {
    std::string language;
    double confidence = 0.0;

    bool operator==(const LangConfidence&) const = default;
};

/// One appearance of a claim or post: when and where it was published.
struct Instance {
    std::optional<double> timestamp;  // seconds since epoch
    std::string source;               // URL or platform tag

    bool operator==(const Instance&) const = default;
};

struct FactCheck {
    std::int64_t fact_check_id = 0;
    std::string claim_original;
    std::string claim_english;
    std::vector<LangConfidence> claim_languages;
    std::vector<Instance> instances;
    std::string title;
};

struct Post {
    std::int64_t post_id = 0;
    std::vector<Instance> instances;
    std::vector<std::string> text_fields;  // post body, OCR text, whitelisted extras
    std::vector<std::string> verdicts;
    std::vector<LangConfidence> text_languages;
};

struct Pair {
    std::int64_t fact_check_id = 0;
    std::int64_t post_id = 0;

    bool operator==(const Pair&) const = default;
};

/// One monolingual sub-task: which fact checks are searchable and which posts
/// form the dev/test query splits.
struct LanguageTask {
    std::vector<std::int64_t> fact_check_ids;
    std::vector<std::int64_t> post_ids_dev;
    std::vector<std::int64_t> post_ids_test;
};

struct TaskConfig {
    std::map<std::string, LanguageTask> tasks;  // keyed by language code
};

struct MalformedRow {
    std::size_t record = 0;  // 1-based data-record index (header excluded)
    std::size_t line = 0;    // 1-based line where the record began
    std::string cause;
};

struct LoadReport {
    std::string path;
    std::size_t rows_total = 0;   // data records seen (malformed included)
    std::size_t rows_loaded = 0;
    std::vector<MalformedRow> malformed;
};

enum class Split { Dev, Test };

/// Everything the task ships: the three corpora plus the task configuration.
struct Dataset {
    std::vector<FactCheck> fact_checks;
    std::vector<Post> posts;
    std::vector<Pair> pairs;
    TaskConfig tasks;
};

}  // namespace claimrank
