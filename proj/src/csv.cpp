#include "claimrank/csv.hpp"

namespace claimrank {

CsvReader::CsvReader(std::istream& in) : in_(in) {}

int CsvReader::get() {
    return in_.get();
}

int CsvReader::peek() {
    return in_.peek();
}

bool CsvReader::next(std::vector<std::string>& record, std::size_t& start_line) {
    record.clear();

    if (first_record_) {
        // UTF-8 BOM
        if (peek() == 0xEF) {
            get();
            if (peek() == 0xBB) {
                get();
                if (peek() == 0xBF) {
                    get();
                } else {
                    in_.unget();
                    in_.putback(static_cast<char>(0xEF));
                }
            } else {
                in_.putback(static_cast<char>(0xEF));
            }
        }
        first_record_ = false;
    }

    if (peek() == std::char_traits<char>::eof()) return false;

    start_line = line_;
    std::string field;
    bool in_quotes = false;
    bool any_char = false;

    while (true) {
        int ci = get();
        if (ci == std::char_traits<char>::eof()) {
            if (in_quotes) throw CsvError(start_line, "unterminated quoted field");
            record.push_back(std::move(field));
            return true;
        }
        char c = static_cast<char>(ci);
        if (in_quotes) {
            if (c == '"') {
                if (peek() == '"') {
                    get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else if (c == '\r') {
                if (peek() == '\n') get();
                field.push_back('\n');
                ++line_;
            } else if (c == '\n') {
                field.push_back('\n');
                ++line_;
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty() && !any_char) {
                    in_quotes = true;
                    any_char = true;
                } else {
                    field.push_back('"');  // quote not at field start: literal
                }
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                any_char = false;
                break;
            case '\r':
                if (peek() == '\n') get();
                [[fallthrough]];
            case '\n':
                ++line_;
                record.push_back(std::move(field));
                return true;
            default:
                field.push_back(c);
                any_char = true;
                break;
        }
    }
}

}  // namespace claimrank
