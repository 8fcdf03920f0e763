#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyplyap/error.hpp"
#include "hyplyap/run_record.hpp"

using namespace hyplyap;

TEST_CASE("records round trip") {
  RunRecord r;
  r.tool_version = tool_version();
  r.command = "simulate";
  r.config = {{"case", 4}, {"simulation", {{"dt", 0.1}, {"seed", 7}}}};
  r.results = {{"lambda", {1.125, 0.0751, -0.0751, -1.125}}, {"bound", "6/5"}};
  r.wall_seconds = 2.5;
  r.timestamp = utc_timestamp();

  const std::string text = emit_record(r);
  CHECK(parse_record(text) == r);
  CHECK(record_from_json(record_to_json(r)) == r);

  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"schema_version", "tool_version", "command", "config", "results", "wall_seconds", "timestamp"})
    CHECK(j.contains(key));
}

TEST_CASE("timestamps are UTC ISO 8601") {
  const std::string t = utc_timestamp();
  REQUIRE(t.size() == 20);
  CHECK(t[4] == '-');
  CHECK(t[10] == 'T');
  CHECK(t.back() == 'Z');
}

TEST_CASE("malformed records") {
  auto code = [](const std::string& text) {
    try {
      parse_record(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::OutOfRange;
  };
  CHECK(code("not json") == ErrorCode::InvalidParams);
  CHECK(code("{}") == ErrorCode::InvalidParams);

  RunRecord r;
  r.command = "catalog";
  auto j = record_to_json(r);
  j["schema_version"] = kRecordSchemaVersion + 1;
  CHECK(code(j.dump()) == ErrorCode::InvalidParams);
}
