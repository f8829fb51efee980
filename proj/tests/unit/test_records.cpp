#include "clausedag/error.hpp"
#include "clausedag/records.hpp"

#include <doctest.h>

using namespace clausedag;

TEST_CASE("records keep insertion order and round trip")
{
    Record r("diff");
    r.add("n", 6).add("agree", true).add("kind", "none").add("ratio", 4.25);
    const std::string line = to_json_line(r);
    CHECK(line == R"({"type":"diff","n":6,"agree":true,"kind":"none","ratio":4.25})");
    const Record back = parse_json_line(line);
    CHECK(back == r);
    CHECK(back.get_int("n") == 6);
    CHECK(back.get_bool("agree") == true);
    CHECK(back.get_string("kind") == "none");
    CHECK_FALSE(back.get_int("kind"));
    CHECK_FALSE(back.find("missing"));
}

TEST_CASE("text rendering")
{
    Record r("insert");
    r.add("clause", "x1 x2 x4").add("ok", false).add("stage", 4);
    CHECK(to_text_line(r) == R"(insert clause="x1 x2 x4" ok=false stage=4)");
}

TEST_CASE("malformed records are rejected")
{
    CHECK_THROWS_AS((void)parse_json_line("{"), Error);
    CHECK_THROWS_AS((void)parse_json_line(R"({"n":1})"), Error);
    CHECK_THROWS_AS((void)parse_json_line(R"({"type":"x","a":[1]})"), Error);
    CHECK_THROWS_AS((void)parse_json_line("[]"), Error);
}
