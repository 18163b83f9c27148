#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "claimrank/errors.hpp"

namespace claimrank {

/// A parsed literal expression: the value language used by the data files'
/// embedded fields. Tuples, lists, and maps preserve element order; map keys
/// keep their source order (no deduplication beyond last-write-wins).
class LiteralValue {
public:
    enum class Kind { None, Boolean, Integer, Float, String, List, Tuple, Map };

    using Items = std::vector<LiteralValue>;
    using Entries = std::vector<std::pair<LiteralValue, LiteralValue>>;

    LiteralValue() = default;

    static LiteralValue none() { return LiteralValue(); }
    static LiteralValue boolean(bool b) { return LiteralValue(Kind::Boolean, b); }
    static LiteralValue integer(std::int64_t i) { return LiteralValue(Kind::Integer, i); }
    static LiteralValue floating(double d) { return LiteralValue(Kind::Float, d); }
    static LiteralValue string(std::string s) { return LiteralValue(Kind::String, std::move(s)); }
    static LiteralValue list(Items v) { return LiteralValue(Kind::List, std::move(v)); }
    static LiteralValue tuple(Items v) { return LiteralValue(Kind::Tuple, std::move(v)); }
    static LiteralValue map(Entries v) { return LiteralValue(Kind::Map, std::move(v)); }

    Kind kind() const { return kind_; }
    bool is_none() const { return kind_ == Kind::None; }
    bool is_string() const { return kind_ == Kind::String; }
    bool is_number() const { return kind_ == Kind::Integer || kind_ == Kind::Float; }
    bool is_sequence() const { return kind_ == Kind::List || kind_ == Kind::Tuple; }

    bool as_bool() const { return std::get<bool>(value_); }
    std::int64_t as_int() const { return std::get<std::int64_t>(value_); }
    double as_float() const { return std::get<double>(value_); }
    /// Integer or float, widened to double.
    double as_number() const;
    const std::string& as_string() const { return std::get<std::string>(value_); }
    const Items& items() const { return std::get<Items>(value_); }
    const Entries& entries() const { return std::get<Entries>(value_); }

    bool operator==(const LiteralValue& other) const;

private:
    template <typename T>
    LiteralValue(Kind k, T&& v) : kind_(k), value_(std::forward<T>(v)) {}

    Kind kind_ = Kind::None;
    std::variant<std::monostate, bool, std::int64_t, double, std::string, Items, Entries> value_;
};

/// Parses one literal expression (whitespace around it is ignored; trailing
/// commas inside brackets are accepted). Throws ParseError on anything else,
/// including trailing garbage.
LiteralValue parse_literal(std::string_view src);

/// Renders a value back to source form. Inverse of parse_literal.
std::string render_literal(const LiteralValue& value);

}  // namespace claimrank
