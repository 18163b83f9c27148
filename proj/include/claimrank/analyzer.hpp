#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "claimrank/errors.hpp"

namespace claimrank {

enum class AnalyzerMode { Word, Char, CharWb };

struct AnalyzerConfig {
    AnalyzerMode mode = AnalyzerMode::Word;
    int ngram_min = 1;
    int ngram_max = 1;
    bool lowercase = true;

    bool operator==(const AnalyzerConfig&) const = default;
};

/// Accepts "word", "char", "char_wb" (and the "charwb" spelling).
AnalyzerMode analyzer_mode_from_string(std::string_view name);
std::string_view to_string(AnalyzerMode mode);

/// Throws SchemaError on an invalid n-gram range.
void validate(const AnalyzerConfig& cfg);

/// Lowercases (full Unicode mappings) and canonically composes the text when
/// cfg.lowercase is set; returns the text unchanged otherwise.
std::string preprocess(std::string_view text, const AnalyzerConfig& cfg);

/// Token stream for the vectorizer:
///   word    — maximal runs of two or more word characters; for ranges above
///             1, contiguous runs joined by single spaces are emitted too.
///   char    — all code-point n-grams of each length in the range, with
///             whitespace runs collapsed to single spaces.
///   char_wb — n-grams taken inside space-padded words only, never across
///             word boundaries.
std::vector<std::string> analyze(std::string_view text, const AnalyzerConfig& cfg);

}  // namespace claimrank
