#include <doctest.h>

#include <sstream>

#include "claimrank/csv.hpp"

using namespace claimrank;

namespace {

std::vector<std::vector<std::string>> read_all(const std::string& text) {
    std::istringstream in(text);
    CsvReader reader(in);
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::size_t line = 0;
    while (reader.next(record, line)) records.push_back(record);
    return records;
}

}  // namespace

TEST_CASE("plain fields and records") {
    auto rows = read_all("a,b,c\n1,2,3\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"a", "b", "c"});
    CHECK(rows[1] == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("doubled quotes inside quoted fields") {
    auto rows = read_all("\"say \"\"hi\"\"\",x\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == "say \"hi\"");
    CHECK(rows[0][1] == "x");
}

TEST_CASE("newlines survive inside quoted fields") {
    auto rows = read_all("\"line1\nline2\",tail\nnext,row\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "line1\nline2");
    CHECK(rows[1][0] == "next");
}

TEST_CASE("CRLF inside quotes becomes LF") {
    auto rows = read_all("\"a\r\nb\",x\r\nc,d\r\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "a\nb");
    CHECK(rows[1] == std::vector<std::string>{"c", "d"});
}

TEST_CASE("record line numbers account for embedded newlines") {
    std::istringstream in("\"a\nb\",x\nsecond\n");
    CsvReader reader(in);
    std::vector<std::string> record;
    std::size_t line = 0;
    REQUIRE(reader.next(record, line));
    CHECK(line == 1);
    REQUIRE(reader.next(record, line));
    CHECK(line == 3);
}

TEST_CASE("missing trailing newline") {
    auto rows = read_all("a,b");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == std::vector<std::string>{"a", "b"});
}

TEST_CASE("empty fields and empty quoted fields") {
    auto rows = read_all(",,\n\"\",\"\",x\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"", "", ""});
    CHECK(rows[1] == std::vector<std::string>{"", "", "x"});
}

TEST_CASE("text after a closing quote is kept literally") {
    auto rows = read_all("\"abc\"def,x\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == "abcdef");
}

TEST_CASE("quote in the middle of an unquoted field is literal") {
    auto rows = read_all("ab\"cd,x\n");
    CHECK(rows[0][0] == "ab\"cd");
}

TEST_CASE("unterminated quote throws") {
    std::istringstream in("\"never closed\nmore");
    CsvReader reader(in);
    std::vector<std::string> record;
    std::size_t line = 0;
    CHECK_THROWS_AS(reader.next(record, line), CsvError);
}

TEST_CASE("utf8 BOM is stripped") {
    auto rows = read_all("\xEF\xBB\xBFid,name\n1,x\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "id");
}

TEST_CASE("the data format's post row reads back intact") {
    // Shape taken from the task data: literal tuple cells, doubled quotes,
    // apostrophes, and an empty trailing field.
    std::string row =
        "\"[(1525826671.0, 'fb')]\","
        "\"[(\"\"fb/david avocado wolfe Flip the bell peppers over to check their gender. I "
        "didn't know this!\"\", \"\"fb/david avocado wolfe Flip the bell peppers over to check "
        "their gender. I didn't know this!\"\", [('eng', 1.0)])]\","
        "['False information'],\"\"\n";
    auto rows = read_all(row);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].size() == 4);
    CHECK(rows[0][0] == "[(1525826671.0, 'fb')]");
    CHECK(rows[0][1].substr(0, 2) == "[(");
    CHECK(rows[0][1].find("didn't") != std::string::npos);
    CHECK(rows[0][1].find("\"fb/david") == 2);  // doubled quotes collapsed
    CHECK(rows[0][2] == "['False information']");
    CHECK(rows[0][3].empty());
}
