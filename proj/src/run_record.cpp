#include "hyplyap/run_record.hpp"

#include <chrono>
#include <ctime>

#include "hyplyap/error.hpp"

namespace hyplyap {

const char* tool_version() { return "0.1.0"; }

nlohmann::json record_to_json(const RunRecord& r) {
  return {{"schema_version", r.schema_version},
          {"tool_version", r.tool_version},
          {"command", r.command},
          {"config", r.config},
          {"results", r.results},
          {"wall_seconds", r.wall_seconds},
          {"timestamp", r.timestamp}};
}

RunRecord record_from_json(const nlohmann::json& j) {
  try {
    RunRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kRecordSchemaVersion) {
      throw Error(ErrorCode::InvalidParams, "unsupported record schema version " + std::to_string(r.schema_version));
    }
    r.tool_version = j.at("tool_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    r.results = j.at("results");
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParams, std::string("malformed run record: ") + e.what());
  }
}

std::string emit_record(const RunRecord& r) { return record_to_json(r).dump(2); }

RunRecord parse_record(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParams, std::string("run record is not JSON: ") + e.what());
  }
  return record_from_json(j);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hyplyap
