#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyplyap/lyapunov.hpp"
#include "hyplyap/run_record.hpp"

namespace hyplyap::tool {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string output = "json";
  std::string checkpoint;
  std::string resume;
  std::string config_path;
  std::string out_path;
  unsigned threads = 0;  // 0: hardware concurrency
  std::int64_t checkpoint_every = 100'000;
};

/// Simulation overrides given on the command line.
struct SimOverrides {
  std::optional<double> dt;
  std::optional<std::int64_t> steps, burn_in, qr_interval, trajectories;
  std::optional<double> y_guard;
  std::optional<int> cusp_rotation;
};

struct SimulateOptions {
  std::optional<int> case_id;
  std::string alpha, beta;
  std::string rep_file;
  std::string inject_expanding;  // rational scale; empty for none
  SimOverrides sim;
};

struct TableOptions {
  std::string cases;  // comma separated ids; empty for all 14
  SimOverrides sim;
};

struct DegreesOptions {
  std::optional<int> case_id;
  std::string mu1, mu2;
};

struct StrataOptions {
  long genus = 2;
  std::string stratum = "minimal";
  long kmax = 0;  // 0: min(g, 5)
  bool trend = false;
  std::string lyapunov;
};

struct PolygonOptions {
  std::string pieces;  // "rank:degree,..."
  std::string chi = "1";
  std::string lyapunov;
  std::string stderr_values;
  double scale = 1.0;
};

struct WronskianOptions {
  long order = 200;
  long n0 = 50;
  std::string synthetic = "none";  // none | exp-n | exp-sqrt
};

struct CommandOutput {
  RunRecord record;
  std::string csv;
  int exit_code = 0;
};

lyapunov::SimulationConfig resolve_config(const GlobalOptions& g, const SimOverrides& o);

CommandOutput cmd_simulate(const GlobalOptions& g, const SimulateOptions& o);
CommandOutput cmd_table(const GlobalOptions& g, const TableOptions& o);
CommandOutput cmd_degrees(const GlobalOptions& g, const DegreesOptions& o);
CommandOutput cmd_strata(const GlobalOptions& g, const StrataOptions& o);
CommandOutput cmd_polygon(const GlobalOptions& g, const PolygonOptions& o);
CommandOutput cmd_wronskian(const GlobalOptions& g, const WronskianOptions& o);
CommandOutput cmd_catalog(const GlobalOptions& g);

/// HYPLYAP_THREADS, or 0 when unset.
unsigned default_threads();

}  // namespace hyplyap::tool
