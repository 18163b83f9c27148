#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace claimrank {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing or unreadable input file.
class FileError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid configuration or JSON input. `key_path` points at the
/// offending key ("eng.posts_dev[3]").
class SchemaError : public Error {
public:
    SchemaError(std::string key_path, const std::string& what)
        : Error(key_path.empty() ? what : key_path + ": " + what),
          key_path_(std::move(key_path)) {}

    const std::string& key_path() const { return key_path_; }

private:
    std::string key_path_;
};

/// Syntax error from the literal-expression parser. `position` is a byte
/// offset into the source text; `expected` names what the parser wanted.
class ParseError : public Error {
public:
    ParseError(std::size_t position, std::string expected)
        : Error("syntax error at offset " + std::to_string(position) +
                ": expected " + expected),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

/// Semantically invalid data: empty vocabulary, missing prediction, missing
/// post, unknown fact-check id, model version mismatch.
class DataError : public Error {
public:
    using Error::Error;
};

}  // namespace claimrank
