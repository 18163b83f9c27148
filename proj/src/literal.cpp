#include "claimrank/literal.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "claimrank/unicode.hpp"

namespace claimrank {

double LiteralValue::as_number() const {
    return kind_ == Kind::Integer ? static_cast<double>(as_int()) : as_float();
}

bool LiteralValue::operator==(const LiteralValue& other) const {
    return kind_ == other.kind_ && value_ == other.value_;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    LiteralValue run() {
        skip_ws();
        LiteralValue v = value();
        skip_ws();
        if (pos_ != src_.size()) fail("end of input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(pos_, expected);
    }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) {
            ++pos_;
        }
    }

    bool try_word(std::string_view w) {
        if (src_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    LiteralValue value() {
        if (eof()) fail("a value");
        char c = peek();
        switch (c) {
            case '\'':
            case '"': return LiteralValue::string(string_body());
            case '[': return sequence(']');
            case '(': return sequence(')');
            case '{': return mapping();
            case 'N':
                if (try_word("None")) return LiteralValue::none();
                fail("None");
            case 'T':
                if (try_word("True")) return LiteralValue::boolean(true);
                fail("True");
            case 'F':
                if (try_word("False")) return LiteralValue::boolean(false);
                fail("False");
            default:
                if (c == '+' || c == '-' || (c >= '0' && c <= '9') || c == '.') return number();
                fail("a value");
        }
    }

    // '(v)' without a comma is a parenthesized value, not a 1-tuple.
    LiteralValue sequence(char close) {
        ++pos_;
        LiteralValue::Items items;
        bool saw_comma = false;
        skip_ws();
        while (true) {
            if (eof()) fail(std::string("',' or '") + close + "'");
            if (peek() == close) {
                ++pos_;
                break;
            }
            items.push_back(value());
            skip_ws();
            if (eof()) fail(std::string("',' or '") + close + "'");
            if (peek() == ',') {
                saw_comma = true;
                ++pos_;
                skip_ws();
            } else if (peek() != close) {
                fail(std::string("',' or '") + close + "'");
            }
        }
        if (close == ']') return LiteralValue::list(std::move(items));
        if (items.size() == 1 && !saw_comma) return std::move(items.front());
        return LiteralValue::tuple(std::move(items));
    }

    LiteralValue mapping() {
        ++pos_;
        LiteralValue::Entries entries;
        skip_ws();
        while (true) {
            if (eof()) fail("',' or '}'");
            if (peek() == '}') {
                ++pos_;
                break;
            }
            LiteralValue key = value();
            skip_ws();
            if (eof() || peek() != ':') fail("':'");
            ++pos_;
            skip_ws();
            LiteralValue val = value();
            entries.emplace_back(std::move(key), std::move(val));
            skip_ws();
            if (eof()) fail("',' or '}'");
            if (peek() == ',') {
                ++pos_;
                skip_ws();
            } else if (peek() != '}') {
                fail("',' or '}'");
            }
        }
        return LiteralValue::map(std::move(entries));
    }

    LiteralValue number() {
        std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        std::size_t digits_start = pos_;
        bool is_float = false;
        while (!eof() && peek() >= '0' && peek() <= '9') ++pos_;
        if (!eof() && peek() == '.') {
            is_float = true;
            ++pos_;
            while (!eof() && peek() >= '0' && peek() <= '9') ++pos_;
        }
        if (pos_ == digits_start || (is_float && pos_ == digits_start + 1)) {
            pos_ = start;
            fail("a number");
        }
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (!eof() && (peek() == '+' || peek() == '-')) ++pos_;
            if (eof() || peek() < '0' || peek() > '9') {
                pos_ = mark;  // 'e' belongs to something else; number ends here
            } else {
                is_float = true;
                while (!eof() && peek() >= '0' && peek() <= '9') ++pos_;
            }
        }
        std::string_view text = src_.substr(start, pos_ - start);
        if (is_float) {
            std::string buf(text);
            char* end = nullptr;
            double d = std::strtod(buf.c_str(), &end);
            if (end != buf.c_str() + buf.size()) {
                pos_ = start;
                fail("a number");
            }
            return LiteralValue::floating(d);
        }
        std::int64_t i = 0;
        const char* first = text.data() + (text.front() == '+' ? 1 : 0);
        auto [p, ec] = std::from_chars(first, text.data() + text.size(), i);
        if (ec == std::errc::result_out_of_range) {
            pos_ = start;
            fail("an integer in range");
        }
        if (ec != std::errc() || p != text.data() + text.size()) {
            pos_ = start;
            fail("a number");
        }
        return LiteralValue::integer(i);
    }

    std::string string_body() {
        char quote = peek();
        ++pos_;
        std::string out;
        while (true) {
            if (eof()) fail("closing quote");
            char c = src_[pos_];
            if (c == quote) {
                ++pos_;
                return out;
            }
            if (c != '\\') {
                out.push_back(c);
                ++pos_;
                continue;
            }
            ++pos_;
            if (eof()) fail("escape sequence");
            char e = src_[pos_++];
            switch (e) {
                case '\\': out.push_back('\\'); break;
                case '\'': out.push_back('\''); break;
                case '"': out.push_back('"'); break;
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case 'r': out.push_back('\r'); break;
                case 'b': out.push_back('\b'); break;
                case 'f': out.push_back('\f'); break;
                case 'v': out.push_back('\v'); break;
                case 'a': out.push_back('\a'); break;
                case '0': out.push_back('\0'); break;
                case '\n': break;  // line continuation
                case 'x': out += uni::encode_utf8(std::u32string(1, hex_escape(2))); break;
                case 'u': out += uni::encode_utf8(std::u32string(1, hex_escape(4))); break;
                case 'U': out += uni::encode_utf8(std::u32string(1, hex_escape(8))); break;
                default:
                    // Unknown escapes keep the backslash, as the source
                    // language does.
                    out.push_back('\\');
                    out.push_back(e);
                    break;
            }
        }
    }

    char32_t hex_escape(int ndigits) {
        char32_t cp = 0;
        for (int i = 0; i < ndigits; ++i) {
            if (eof()) fail("hex digit");
            char c = src_[pos_];
            int v;
            if (c >= '0' && c <= '9') {
                v = c - '0';
            } else if (c >= 'a' && c <= 'f') {
                v = c - 'a' + 10;
            } else if (c >= 'A' && c <= 'F') {
                v = c - 'A' + 10;
            } else {
                fail("hex digit");
            }
            cp = cp * 16 + static_cast<char32_t>(v);
            ++pos_;
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("a valid code point");
        return cp;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

void render_string(const std::string& s, std::string& out) {
    // Quote selection mirrors the data's source form: single quotes unless
    // the text contains one and no double quote.
    bool has_single = s.find('\'') != std::string::npos;
    bool has_double = s.find('"') != std::string::npos;
    char quote = (has_single && !has_double) ? '"' : '\'';
    out.push_back(quote);
    for (unsigned char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c == static_cast<unsigned char>(quote)) {
                    out.push_back('\\');
                    out.push_back(quote);
                } else if (c < 0x20 || c == 0x7F) {
                    constexpr char kHex[] = "0123456789abcdef";
                    out += "\\x";
                    out.push_back(kHex[c >> 4]);
                    out.push_back(kHex[c & 0xF]);
                } else {
                    out.push_back(static_cast<char>(c));
                }
        }
    }
    out.push_back(quote);
}

void render_float(double d, std::string& out) {
    assert(std::isfinite(d));
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), d, std::chars_format::scientific);
    assert(ec == std::errc());
    std::string_view sci(buf, p - buf);

    bool negative = sci.front() == '-';
    if (negative) sci.remove_prefix(1);
    std::size_t e_pos = sci.find('e');
    std::string digits;
    for (char c : sci.substr(0, e_pos)) {
        if (c != '.') digits.push_back(c);
    }
    int exp10 = std::atoi(std::string(sci.substr(e_pos + 1)).c_str());

    if (negative) out.push_back('-');
    if (exp10 >= -4 && exp10 < 16) {
        if (exp10 >= static_cast<int>(digits.size()) - 1) {
            out += digits;
            out.append(exp10 - (digits.size() - 1), '0');
            out += ".0";
        } else if (exp10 >= 0) {
            out += digits.substr(0, exp10 + 1);
            out.push_back('.');
            out += digits.substr(exp10 + 1);
        } else {
            out += "0.";
            out.append(-exp10 - 1, '0');
            out += digits;
        }
    } else {
        out.push_back(digits.front());
        if (digits.size() > 1) {
            out.push_back('.');
            out += digits.substr(1);
        }
        out.push_back('e');
        out.push_back(exp10 < 0 ? '-' : '+');
        std::string e = std::to_string(std::abs(exp10));
        if (e.size() < 2) e.insert(e.begin(), '0');
        out += e;
    }
}

void render(const LiteralValue& v, std::string& out) {
    switch (v.kind()) {
        case LiteralValue::Kind::None: out += "None"; break;
        case LiteralValue::Kind::Boolean: out += v.as_bool() ? "True" : "False"; break;
        case LiteralValue::Kind::Integer: out += std::to_string(v.as_int()); break;
        case LiteralValue::Kind::Float: render_float(v.as_float(), out); break;
        case LiteralValue::Kind::String: render_string(v.as_string(), out); break;
        case LiteralValue::Kind::List: {
            out.push_back('[');
            bool first = true;
            for (const auto& item : v.items()) {
                if (!first) out += ", ";
                first = false;
                render(item, out);
            }
            out.push_back(']');
            break;
        }
        case LiteralValue::Kind::Tuple: {
            out.push_back('(');
            bool first = true;
            for (const auto& item : v.items()) {
                if (!first) out += ", ";
                first = false;
                render(item, out);
            }
            if (v.items().size() == 1) out.push_back(',');
            out.push_back(')');
            break;
        }
        case LiteralValue::Kind::Map: {
            out.push_back('{');
            bool first = true;
            for (const auto& [key, val] : v.entries()) {
                if (!first) out += ", ";
                first = false;
                render(key, out);
                out += ": ";
                render(val, out);
            }
            out.push_back('}');
            break;
        }
    }
}

}  // namespace

LiteralValue parse_literal(std::string_view src) {
    return Parser(src).run();
}

std::string render_literal(const LiteralValue& value) {
    std::string out;
    render(value, out);
    return out;
}

}  // namespace claimrank
