#include <catch2/catch_amalgamated.hpp>

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include <attrition/csv.hpp>

using namespace attrition;

namespace {

std::vector<std::vector<std::string>> read_all(const std::string& text) {
  std::istringstream in(text);
  CsvReader reader(in);
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  while (reader.next_record(fields)) records.push_back(fields);
  return records;
}

}  // namespace

TEST_CASE("plain records split on commas and newlines", "[csv]") {
  const auto recs = read_all("a,b,c\nd,e,f\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0] == std::vector<std::string>{"a", "b", "c"});
  CHECK(recs[1] == std::vector<std::string>{"d", "e", "f"});
}

TEST_CASE("a missing trailing newline still yields the last record", "[csv]") {
  const auto recs = read_all("a,b\nc,d");
  REQUIRE(recs.size() == 2);
  CHECK(recs[1] == std::vector<std::string>{"c", "d"});
}

TEST_CASE("crlf line endings read like lf", "[csv]") {
  const auto recs = read_all("a,b\r\nc,d\r\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0] == std::vector<std::string>{"a", "b"});
  CHECK(recs[1] == std::vector<std::string>{"c", "d"});
}

TEST_CASE("quoted fields keep commas and escaped quotes", "[csv]") {
  const auto recs = read_all("\"x,y\",\"he said \"\"hi\"\"\",plain\n");
  REQUIRE(recs.size() == 1);
  REQUIRE(recs[0].size() == 3);
  CHECK(recs[0][0] == "x,y");
  CHECK(recs[0][1] == "he said \"hi\"");
  CHECK(recs[0][2] == "plain");
}

TEST_CASE("quoted fields may span lines", "[csv]") {
  const auto recs = read_all("\"line1\nline2\",b\n");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0][0] == "line1\nline2");
  CHECK(recs[0][1] == "b");
}

TEST_CASE("empty fields survive", "[csv]") {
  const auto recs = read_all("a,,c\n,,\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0] == std::vector<std::string>{"a", "", "c"});
  CHECK(recs[1] == std::vector<std::string>{"", "", ""});
}

TEST_CASE("writer quotes exactly when needed", "[csv]") {
  CHECK_FALSE(csv_needs_quoting("plain"));
  CHECK(csv_needs_quoting("a,b"));
  CHECK(csv_needs_quoting("say \"hi\""));
  CHECK(csv_needs_quoting("two\nlines"));

  std::ostringstream out;
  csv_write_record(out, {std::string("a,b"), std::string("c\"d"), std::string("e")});
  CHECK(out.str() == "\"a,b\",\"c\"\"d\",e\n");
}

TEST_CASE("tricky fields round-trip through write and read", "[csv]") {
  const std::vector<std::string> fields = {
      "plain", "with,comma", "with\"quote", "multi\nline", "", "  spaced  "};
  std::ostringstream out;
  csv_write_record(out, fields);
  const auto recs = read_all(out.str());
  REQUIRE(recs.size() == 1);
  CHECK(recs[0] == fields);
}

TEST_CASE("format_double is shortest and round-trips", "[csv]") {
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.3) == "-1.3");
  CHECK(format_double(0.0) == "0");

  for (double v : {0.1, 1.0 / 3.0, 1e300, -2.5e-7, 123456.789}) {
    const std::string s = format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(res.ec == std::errc{});
    CHECK(back == v);
  }
}
