#pragma once

// nlohmann::json conversions for the configuration and result types.

#include <nlohmann/json.hpp>

#include "hyplyap/hodge.hpp"
#include "hyplyap/lyapunov.hpp"

namespace hyplyap::lyapunov {

void to_json(nlohmann::json& j, const SimulationConfig& c);
/// Missing keys keep their defaults; wrong types throw Error(InvalidParams).
void from_json(const nlohmann::json& j, SimulationConfig& c);

void to_json(nlohmann::json& j, const LyapunovEstimate& e);
void from_json(const nlohmann::json& j, LyapunovEstimate& e);

}  // namespace hyplyap::lyapunov

namespace hyplyap::hodge {

nlohmann::json to_json_value(const SlopePolygon& p);

}  // namespace hyplyap::hodge
