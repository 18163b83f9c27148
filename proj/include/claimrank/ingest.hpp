#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "claimrank/records.hpp"

namespace claimrank {

/// Replaces every literal newline with the two characters `\n`, so a cell
/// holding a multi-line literal expression becomes a single-line one.
std::string normalize_csv_field(std::string_view raw);

struct LoadOptions {
    /// Extra post columns whose raw cell text is appended to text_fields.
    /// Off by default; unknown columns are otherwise ignored.
    std::vector<std::string> extra_text_columns;
};

/// Loaders are tolerant: malformed rows are reported through `report` (when
/// given) and skipped, never silently dropped and never fatal. Only a
/// missing/unreadable file or a missing required column throws.
std::vector<FactCheck> load_fact_checks(const std::filesystem::path& path,
                                        LoadReport* report = nullptr);
std::vector<Post> load_posts(const std::filesystem::path& path, LoadReport* report = nullptr,
                             const LoadOptions& options = {});
std::vector<Pair> load_pairs(const std::filesystem::path& path, LoadReport* report = nullptr);

TaskConfig load_task_config(const std::filesystem::path& path);

/// All non-empty text fields, then verdicts, joined by single spaces.
std::string post_text(const Post& post);

/// claim_original, claim_english, and title, joined by single spaces,
/// skipping empty parts.
std::string claim_text(const FactCheck& fc);

struct ReferenceViolation {
    Pair pair;
    std::string cause;
};

/// Referential check: every pair must point at a loaded fact check and a
/// loaded post. Violations are reported, and the surviving pairs returned.
struct ReferenceReport {
    std::vector<Pair> valid;
    std::vector<ReferenceViolation> violations;
};

ReferenceReport check_references(const std::vector<Pair>& pairs,
                                 const std::vector<FactCheck>& fact_checks,
                                 const std::vector<Post>& posts);

/// Loads the four task files from `data_dir` (fact_checks.csv, posts.csv,
/// pairs.csv) and `tasks_path`.
Dataset load_dataset(const std::filesystem::path& data_dir,
                     const std::filesystem::path& tasks_path,
                     std::vector<LoadReport>* reports = nullptr,
                     const LoadOptions& options = {});

}  // namespace claimrank
