#include "claimrank/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "claimrank/csv.hpp"
#include "claimrank/errors.hpp"
#include "claimrank/literal.hpp"
#include "claimrank/unicode.hpp"

namespace claimrank {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::int64_t parse_id(std::string_view cell, const char* what) {
    std::string_view t = trim(cell);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
        throw DataError(std::string(what) + ": not an integer: '" + std::string(cell) + "'");
    }
    return v;
}

/// Maps header names to column indexes; lookup accepts a list of aliases.
class Header {
public:
    explicit Header(const std::vector<std::string>& names) : names_(names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            index_.emplace(std::string(trim(names[i])), i);
        }
    }

    std::optional<std::size_t> find(std::initializer_list<const char*> aliases) const {
        for (const char* a : aliases) {
            auto it = index_.find(a);
            if (it != index_.end()) return it->second;
        }
        return std::nullopt;
    }

    std::size_t require(std::initializer_list<const char*> aliases, const char* file) const {
        if (auto idx = find(aliases)) return *idx;
        throw SchemaError(file, std::string("missing required column '") + *aliases.begin() + "'");
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

std::string cell_at(const std::vector<std::string>& record, std::size_t idx) {
    return idx < record.size() ? record[idx] : std::string();
}

LiteralValue parse_cell(const std::string& cell, const char* what) {
    try {
        return parse_literal(normalize_csv_field(cell));
    } catch (const ParseError& e) {
        throw DataError(std::string(what) + ": " + e.what());
    }
}

std::vector<LangConfidence> extract_languages(const LiteralValue& v, const char* what) {
    if (!v.is_sequence()) throw DataError(std::string(what) + ": expected a language list");
    std::vector<LangConfidence> out;
    out.reserve(v.items().size());
    for (const auto& item : v.items()) {
        if (!item.is_sequence() || item.items().size() != 2 || !item.items()[0].is_string() ||
            !item.items()[1].is_number()) {
            throw DataError(std::string(what) + ": expected (language, confidence) entries");
        }
        double conf = item.items()[1].as_number();
        if (conf < 0.0 || conf > 1.0) {
            throw DataError(std::string(what) + ": confidence out of [0,1]");
        }
        out.push_back({item.items()[0].as_string(), conf});
    }
    return out;
}

/// A (original, english, languages) text payload, the shape shared by claim,
/// post text, and OCR entries.
struct TextPayload {
    std::string original;
    std::string english;
    std::vector<LangConfidence> languages;
};

TextPayload extract_payload(const LiteralValue& v, const char* what) {
    TextPayload out;
    if (v.is_string()) {
        out.original = v.as_string();
        out.english = v.as_string();
        return out;
    }
    if (!v.is_sequence() || v.items().empty()) {
        throw DataError(std::string(what) + ": expected (original, english, languages)");
    }
    const auto& items = v.items();
    if (!items[0].is_string()) throw DataError(std::string(what) + ": slot 0 must be text");
    out.original = items[0].as_string();
    if (items.size() > 1) {
        if (!items[1].is_string()) throw DataError(std::string(what) + ": slot 1 must be text");
        out.english = items[1].as_string();
    }
    if (items.size() > 2) out.languages = extract_languages(items[2], what);
    return out;
}

std::vector<Instance> extract_instances(const LiteralValue& v) {
    if (!v.is_sequence()) throw DataError("instances: expected a list");
    std::vector<Instance> out;
    out.reserve(v.items().size());
    for (const auto& item : v.items()) {
        Instance inst;
        if (item.is_string()) {
            inst.source = item.as_string();
        } else if (item.is_sequence() && !item.items().empty()) {
            const auto& slots = item.items();
            if (slots[0].is_number()) {
                inst.timestamp = slots[0].as_number();
            } else if (!slots[0].is_none()) {
                throw DataError("instances: timestamp must be a number or None");
            }
            if (slots.size() > 1) {
                if (!slots[1].is_string()) throw DataError("instances: source must be text");
                inst.source = slots[1].as_string();
            }
        } else {
            throw DataError("instances: expected (timestamp, source) entries");
        }
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<std::string> extract_verdicts(const LiteralValue& v) {
    if (v.is_string()) return {v.as_string()};
    if (!v.is_sequence()) throw DataError("verdicts: expected a list of text");
    std::vector<std::string> out;
    out.reserve(v.items().size());
    for (const auto& item : v.items()) {
        if (!item.is_string()) throw DataError("verdicts: expected a list of text");
        out.push_back(item.as_string());
    }
    return out;
}

/// Title cells appear both as plain text and as (original, english,
/// languages) literals; either way the result is the title's text.
std::string extract_title(const std::string& cell) {
    if (cell.empty()) return "";
    if (cell.front() == '(' || cell.front() == '[' || cell.front() == '\'' ||
        cell.front() == '"') {
        try {
            LiteralValue v = parse_literal(normalize_csv_field(cell));
            if (v.is_string()) return v.as_string();
            if (v.is_sequence()) {
                TextPayload p = extract_payload(v, "title");
                if (p.english.empty() || p.english == p.original) return p.original;
                return p.original + " " + p.english;
            }
        } catch (const Error&) {
            // fall through: free-text title
        }
    }
    return cell;
}

void check_utf8(const std::vector<std::string>& record) {
    for (const auto& cell : record) {
        if (!uni::valid_utf8(cell)) throw DataError("invalid UTF-8");
    }
}

bool blank_record(const std::vector<std::string>& record) {
    return record.size() == 1 && record[0].empty();
}

/// Drives the shared per-row loop: blank-line skipping, field-count checks,
/// UTF-8 validation, and malformed-row collection.
template <typename RowFn>
void for_each_row(const std::filesystem::path& path, LoadReport* report, std::size_t header_size,
                  CsvReader& reader, RowFn&& row_fn) {
    LoadReport local;
    LoadReport& rep = report ? *report : local;
    rep.path = path.string();

    std::vector<std::string> record;
    std::size_t line = 0;
    std::size_t record_no = 0;
    while (true) {
        try {
            if (!reader.next(record, line)) break;
        } catch (const CsvError& e) {
            rep.rows_total += 1;
            rep.malformed.push_back({record_no + 1, e.line(), e.what()});
            break;
        }
        if (blank_record(record)) continue;
        ++record_no;
        rep.rows_total += 1;
        try {
            if (record.size() > header_size) {
                throw DataError("expected " + std::to_string(header_size) + " fields, got " +
                                std::to_string(record.size()));
            }
            check_utf8(record);
            row_fn(record);
            rep.rows_loaded += 1;
        } catch (const Error& e) {
            rep.malformed.push_back({record_no, line, e.what()});
        }
    }
}

std::ifstream open_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path.string());
    return in;
}

Header read_header(CsvReader& reader, const std::filesystem::path& path) {
    std::vector<std::string> names;
    std::size_t line = 0;
    if (!reader.next(names, line) || blank_record(names)) {
        throw SchemaError(path.string(), "missing header row");
    }
    return Header(names);
}

std::vector<std::int64_t> int_array(const json& j, const std::string& key_path) {
    if (!j.is_array()) throw SchemaError(key_path, "expected an array of integers");
    std::vector<std::int64_t> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) {
            throw SchemaError(key_path + "[" + std::to_string(i) + "]", "expected an integer");
        }
        out.push_back(j[i].get<std::int64_t>());
    }
    return out;
}

}  // namespace

std::string normalize_csv_field(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (c == '\n') {
            out += "\\n";
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<FactCheck> load_fact_checks(const std::filesystem::path& path, LoadReport* report) {
    std::ifstream in = open_file(path);
    CsvReader reader(in);
    Header header = read_header(reader, path);

    const std::size_t id_col = header.require({"fact_check_id", "id"}, "fact_checks.csv");
    const std::size_t claim_col = header.require({"claim"}, "fact_checks.csv");
    const auto instances_col = header.find({"instances"});
    const auto title_col = header.find({"title"});

    std::vector<FactCheck> out;
    std::unordered_set<std::int64_t> seen;
    for_each_row(path, report, header.size(), reader, [&](const std::vector<std::string>& rec) {
        FactCheck fc;
        fc.fact_check_id = parse_id(cell_at(rec, id_col), "fact_check_id");
        if (!seen.insert(fc.fact_check_id).second) {
            throw DataError("duplicate fact_check_id " + std::to_string(fc.fact_check_id));
        }
        const std::string claim_cell = cell_at(rec, claim_col);
        if (!claim_cell.empty()) {
            TextPayload p = extract_payload(parse_cell(claim_cell, "claim"), "claim");
            fc.claim_original = std::move(p.original);
            fc.claim_english = std::move(p.english);
            fc.claim_languages = std::move(p.languages);
        }
        if (instances_col) {
            const std::string cell = cell_at(rec, *instances_col);
            if (!cell.empty()) fc.instances = extract_instances(parse_cell(cell, "instances"));
        }
        if (title_col) fc.title = extract_title(cell_at(rec, *title_col));
        out.push_back(std::move(fc));
    });
    return out;
}

std::vector<Post> load_posts(const std::filesystem::path& path, LoadReport* report,
                             const LoadOptions& options) {
    std::ifstream in = open_file(path);
    CsvReader reader(in);
    Header header = read_header(reader, path);

    const std::size_t id_col = header.require({"post_id", "id"}, "posts.csv");
    const auto instances_col = header.find({"instances"});
    const auto verdicts_col = header.find({"verdicts"});

    // Text-bearing columns contribute to text_fields in header order.
    enum class TextKind { Payload, OcrList, Raw };
    std::vector<std::pair<std::size_t, TextKind>> text_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name(trim(header.name(i)));
        if (name == "text") {
            text_cols.emplace_back(i, TextKind::Payload);
        } else if (name == "ocr") {
            text_cols.emplace_back(i, TextKind::OcrList);
        } else if (std::find(options.extra_text_columns.begin(), options.extra_text_columns.end(),
                             name) != options.extra_text_columns.end()) {
            text_cols.emplace_back(i, TextKind::Raw);
        }
    }

    std::vector<Post> out;
    std::unordered_set<std::int64_t> seen;
    for_each_row(path, report, header.size(), reader, [&](const std::vector<std::string>& rec) {
        Post post;
        post.post_id = parse_id(cell_at(rec, id_col), "post_id");
        if (!seen.insert(post.post_id).second) {
            throw DataError("duplicate post_id " + std::to_string(post.post_id));
        }
        if (instances_col) {
            const std::string cell = cell_at(rec, *instances_col);
            if (!cell.empty()) post.instances = extract_instances(parse_cell(cell, "instances"));
        }
        for (auto [col, kind] : text_cols) {
            const std::string cell = cell_at(rec, col);
            switch (kind) {
                case TextKind::Payload: {
                    TextPayload p;
                    if (!cell.empty()) p = extract_payload(parse_cell(cell, "text"), "text");
                    post.text_fields.push_back(std::move(p.original));
                    post.text_fields.push_back(std::move(p.english));
                    for (auto& lc : p.languages) post.text_languages.push_back(std::move(lc));
                    break;
                }
                case TextKind::OcrList: {
                    if (cell.empty()) break;
                    LiteralValue v = parse_cell(cell, "ocr");
                    if (!v.is_sequence()) throw DataError("ocr: expected a list");
                    const auto* items = &v.items();
                    LiteralValue::Items single;
                    if (!v.items().empty() && v.items()[0].is_string()) {
                        // a bare (original, english, languages) tuple
                        single.push_back(std::move(v));
                        items = &single;
                    }
                    for (const auto& item : *items) {
                        TextPayload p = extract_payload(item, "ocr");
                        post.text_fields.push_back(std::move(p.original));
                        post.text_fields.push_back(std::move(p.english));
                        for (auto& lc : p.languages) post.text_languages.push_back(std::move(lc));
                    }
                    break;
                }
                case TextKind::Raw:
                    post.text_fields.push_back(cell);
                    break;
            }
        }
        if (verdicts_col) {
            const std::string cell = cell_at(rec, *verdicts_col);
            if (!cell.empty()) post.verdicts = extract_verdicts(parse_cell(cell, "verdicts"));
        }
        out.push_back(std::move(post));
    });
    return out;
}

std::vector<Pair> load_pairs(const std::filesystem::path& path, LoadReport* report) {
    std::ifstream in = open_file(path);
    CsvReader reader(in);
    Header header = read_header(reader, path);
    const std::size_t fc_col = header.require({"fact_check_id"}, "pairs.csv");
    const std::size_t post_col = header.require({"post_id"}, "pairs.csv");

    std::vector<Pair> out;
    for_each_row(path, report, header.size(), reader, [&](const std::vector<std::string>& rec) {
        Pair p;
        p.fact_check_id = parse_id(cell_at(rec, fc_col), "fact_check_id");
        p.post_id = parse_id(cell_at(rec, post_col), "post_id");
        out.push_back(p);
    });
    return out;
}

TaskConfig load_task_config(const std::filesystem::path& path) {
    std::ifstream in = open_file(path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(path.string(), std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw SchemaError(path.string(), "expected a JSON object");

    // Both shapes are accepted: a flat {language: ...} map, and the
    // track-nested form {"monolingual": {language: ...}, ...}.
    const json* langs = &root;
    if (auto it = root.find("monolingual"); it != root.end() && it->is_object()) {
        langs = &*it;
    }

    TaskConfig cfg;
    for (const auto& [lang, entry] : langs->items()) {
        if (!entry.is_object()) {
            throw SchemaError(lang, "expected an object with task id lists");
        }
        LanguageTask task;
        auto fc = entry.find("fact_checks");
        if (fc == entry.end()) throw SchemaError(lang + ".fact_checks", "missing required key");
        task.fact_check_ids = int_array(*fc, lang + ".fact_checks");
        if (auto it = entry.find("posts_dev"); it != entry.end()) {
            task.post_ids_dev = int_array(*it, lang + ".posts_dev");
        }
        if (auto it = entry.find("posts_test"); it != entry.end()) {
            task.post_ids_test = int_array(*it, lang + ".posts_test");
        }
        std::unordered_set<std::int64_t> dev(task.post_ids_dev.begin(), task.post_ids_dev.end());
        for (std::int64_t id : task.post_ids_test) {
            if (dev.count(id)) {
                throw SchemaError(lang, "post id " + std::to_string(id) +
                                            " appears in both posts_dev and posts_test");
            }
        }
        cfg.tasks.emplace(lang, std::move(task));
    }
    return cfg;
}

std::string post_text(const Post& post) {
    std::string out;
    auto append = [&out](const std::string& part) {
        if (part.empty()) return;
        if (!out.empty()) out.push_back(' ');
        out += part;
    };
    for (const auto& field : post.text_fields) append(field);
    for (const auto& verdict : post.verdicts) append(verdict);
    return out;
}

std::string claim_text(const FactCheck& fc) {
    std::string out;
    auto append = [&out](const std::string& part) {
        if (part.empty()) return;
        if (!out.empty()) out.push_back(' ');
        out += part;
    };
    append(fc.claim_original);
    append(fc.claim_english);
    append(fc.title);
    return out;
}

ReferenceReport check_references(const std::vector<Pair>& pairs,
                                 const std::vector<FactCheck>& fact_checks,
                                 const std::vector<Post>& posts) {
    std::unordered_set<std::int64_t> fc_ids;
    fc_ids.reserve(fact_checks.size());
    for (const auto& fc : fact_checks) fc_ids.insert(fc.fact_check_id);
    std::unordered_set<std::int64_t> post_ids;
    post_ids.reserve(posts.size());
    for (const auto& p : posts) post_ids.insert(p.post_id);

    ReferenceReport report;
    for (const Pair& pair : pairs) {
        std::string cause;
        if (!fc_ids.count(pair.fact_check_id)) {
            cause = "unknown fact_check_id " + std::to_string(pair.fact_check_id);
        }
        if (!post_ids.count(pair.post_id)) {
            if (!cause.empty()) cause += "; ";
            cause += "unknown post_id " + std::to_string(pair.post_id);
        }
        if (cause.empty()) {
            report.valid.push_back(pair);
        } else {
            report.violations.push_back({pair, std::move(cause)});
        }
    }
    return report;
}

Dataset load_dataset(const std::filesystem::path& data_dir,
                     const std::filesystem::path& tasks_path, std::vector<LoadReport>* reports,
                     const LoadOptions& options) {
    Dataset ds;
    LoadReport fc_rep, post_rep, pair_rep;
    ds.fact_checks = load_fact_checks(data_dir / "fact_checks.csv", &fc_rep);
    ds.posts = load_posts(data_dir / "posts.csv", &post_rep, options);
    ds.pairs = load_pairs(data_dir / "pairs.csv", &pair_rep);
    ds.tasks = load_task_config(tasks_path);
    if (reports) {
        reports->push_back(std::move(fc_rep));
        reports->push_back(std::move(post_rep));
        reports->push_back(std::move(pair_rep));
    }
    return ds;
}

}  // namespace claimrank
