#pragma once

// Self-describing record of one command invocation.

#include <nlohmann/json.hpp>

#include <string>

namespace hyplyap {

inline constexpr int kRecordSchemaVersion = 1;

const char* tool_version();

struct RunRecord {
  int schema_version = kRecordSchemaVersion;
  std::string tool_version;
  std::string command;
  nlohmann::json config = nlohmann::json::object();   // every option, defaults included
  nlohmann::json results = nlohmann::json::object();
  double wall_seconds = 0.0;
  std::string timestamp;  // UTC, ISO 8601

  bool operator==(const RunRecord&) const = default;
};

nlohmann::json record_to_json(const RunRecord& r);
/// Throws Error(InvalidParams) for missing fields or an unknown schema version.
RunRecord record_from_json(const nlohmann::json& j);

std::string emit_record(const RunRecord& r);
RunRecord parse_record(const std::string& text);

std::string utc_timestamp();

}  // namespace hyplyap
