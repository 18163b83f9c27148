#include "claimrank/analyzer.hpp"

#include <algorithm>

#include "claimrank/unicode.hpp"

namespace claimrank {

namespace {

std::u32string preprocess_u32(std::u32string_view text, const AnalyzerConfig& cfg) {
    if (!cfg.lowercase) return std::u32string(text);
    return uni::nfc(uni::to_lower(text));
}

/// Whitespace runs become single spaces; other characters pass through.
std::u32string collapse_whitespace(std::u32string_view text) {
    std::u32string out;
    out.reserve(text.size());
    bool in_space = false;
    for (char32_t cp : text) {
        if (uni::is_space(cp)) {
            in_space = true;
            continue;
        }
        if (in_space) out.push_back(U' ');
        in_space = false;
        out.push_back(cp);
    }
    if (in_space) out.push_back(U' ');
    return out;
}

std::vector<std::u32string> split_words(std::u32string_view text) {
    std::vector<std::u32string> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && uni::is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !uni::is_space(text[i])) ++i;
        if (i > start) words.emplace_back(text.substr(start, i - start));
    }
    return words;
}

void word_tokens(std::u32string_view text, int ngram_min, int ngram_max,
                 std::vector<std::string>& out) {
    // Maximal runs of word characters, keeping runs of length >= 2.
    std::vector<std::u32string> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !uni::is_word_char(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && uni::is_word_char(text[i])) ++i;
        if (i - start >= 2) words.emplace_back(text.substr(start, i - start));
    }
    int n_words = static_cast<int>(words.size());
    for (int n = ngram_min; n <= std::min(ngram_max, n_words); ++n) {
        for (int start = 0; start + n <= n_words; ++start) {
            std::u32string joined = words[start];
            for (int j = 1; j < n; ++j) {
                joined.push_back(U' ');
                joined += words[start + j];
            }
            out.push_back(uni::encode_utf8(joined));
        }
    }
}

void char_tokens(std::u32string_view text, int ngram_min, int ngram_max,
                 std::vector<std::string>& out) {
    std::u32string collapsed = collapse_whitespace(text);
    int len = static_cast<int>(collapsed.size());
    for (int n = ngram_min; n <= std::min(ngram_max, len); ++n) {
        for (int start = 0; start + n <= len; ++start) {
            out.push_back(uni::encode_utf8(std::u32string_view(collapsed).substr(start, n)));
        }
    }
}

void char_wb_tokens(std::u32string_view text, int ngram_min, int ngram_max,
                    std::vector<std::string>& out) {
    for (const std::u32string& word : split_words(text)) {
        std::u32string padded;
        padded.reserve(word.size() + 2);
        padded.push_back(U' ');
        padded += word;
        padded.push_back(U' ');
        int len = static_cast<int>(padded.size());
        for (int n = ngram_min; n <= ngram_max; ++n) {
            int offset = 0;
            out.push_back(uni::encode_utf8(
                std::u32string_view(padded).substr(0, std::min(n, len))));
            while (offset + n < len) {
                ++offset;
                out.push_back(uni::encode_utf8(std::u32string_view(padded).substr(offset, n)));
            }
            if (offset == 0) break;  // word shorter than n: emit it once only
        }
    }
}

}  // namespace

AnalyzerMode analyzer_mode_from_string(std::string_view name) {
    if (name == "word") return AnalyzerMode::Word;
    if (name == "char") return AnalyzerMode::Char;
    if (name == "char_wb" || name == "charwb") return AnalyzerMode::CharWb;
    throw SchemaError("analyzer", "unknown analyzer '" + std::string(name) +
                                      "' (expected word, char, or char_wb)");
}

std::string_view to_string(AnalyzerMode mode) {
    switch (mode) {
        case AnalyzerMode::Word: return "word";
        case AnalyzerMode::Char: return "char";
        case AnalyzerMode::CharWb: return "char_wb";
    }
    return "word";
}

void validate(const AnalyzerConfig& cfg) {
    if (cfg.ngram_min < 1 || cfg.ngram_max < cfg.ngram_min) {
        throw SchemaError("ngram", "invalid n-gram range [" + std::to_string(cfg.ngram_min) +
                                       "," + std::to_string(cfg.ngram_max) + "]");
    }
}

std::string preprocess(std::string_view text, const AnalyzerConfig& cfg) {
    if (!cfg.lowercase) return std::string(text);
    return uni::encode_utf8(preprocess_u32(uni::decode_utf8(text), cfg));
}

std::vector<std::string> analyze(std::string_view text, const AnalyzerConfig& cfg) {
    validate(cfg);
    std::u32string prepared = preprocess_u32(uni::decode_utf8(text), cfg);
    std::vector<std::string> tokens;
    switch (cfg.mode) {
        case AnalyzerMode::Word:
            word_tokens(prepared, cfg.ngram_min, cfg.ngram_max, tokens);
            break;
        case AnalyzerMode::Char:
            char_tokens(prepared, cfg.ngram_min, cfg.ngram_max, tokens);
            break;
        case AnalyzerMode::CharWb:
            char_wb_tokens(prepared, cfg.ngram_min, cfg.ngram_max, tokens);
            break;
    }
    return tokens;
}

}  // namespace claimrank
