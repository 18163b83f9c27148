#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "claimrank/errors.hpp"

namespace claimrank {

/// Unterminated quoted field at end of input.
class CsvError : public Error {
public:
    CsvError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Streaming CSV reader: comma-separated, double-quote quoting with doubled
/// quotes as the escape, records ended by LF/CRLF/CR. Newlines inside quoted
/// fields are kept (normalized to LF). Text after a closing quote is taken
/// literally, which is how the dumps' irregular quoting reads back cleanly.
class CsvReader {
public:
    explicit CsvReader(std::istream& in);

    /// Reads the next record. Returns false at end of input. `start_line`
    /// receives the 1-based line number where the record began.
    bool next(std::vector<std::string>& record, std::size_t& start_line);

private:
    int get();
    int peek();

    std::istream& in_;
    std::size_t line_ = 1;
    bool first_record_ = true;
};

}  // namespace claimrank
