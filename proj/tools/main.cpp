// hyplyap command-line tool.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "hyplyap/error.hpp"

namespace {

using namespace hyplyap::tool;

void add_sim_overrides(CLI::App* app, SimOverrides& o) {
  app->add_option("--dt", o.dt, "geodesic time step, in (0, 1]");
  app->add_option("--steps", o.steps, "steps per trajectory");
  app->add_option("--burn-in", o.burn_in, "discarded initial steps");
  app->add_option("--qr-interval", o.qr_interval, "steps between QR re-orthonormalizations");
  app->add_option("--trajectories", o.trajectories, "independent trajectories");
  app->add_option("--y-guard", o.y_guard, "precision alarm threshold for the basepoint height");
  app->add_option("--cusp-rotation", o.cusp_rotation, "cyclic relabeling of the cusps (0, 1, 2)");
}

int emit(const CommandOutput& out, const GlobalOptions& g) {
  const std::string text = g.output == "csv" ? out.csv : hyplyap::emit_record(out.record) + "\n";
  if (g.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out_path, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw hyplyap::Error(hyplyap::ErrorCode::InvalidParams, "cannot write " + g.out_path);
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov spectra of hypergeometric local systems, Hodge-bundle degrees and period series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hyplyap::tool_version()));

  GlobalOptions g;
  g.threads = default_threads();
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "master seed for all random streams");
  app.add_option("--output", g.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--checkpoint", g.checkpoint, "write resumable snapshots to this path");
  app.add_option("--checkpoint-every", g.checkpoint_every, "steps per trajectory between snapshots");
  app.add_option("--resume", g.resume, "continue from a snapshot");
  app.add_option("--threads", g.threads, "worker threads (0: all cores; default from HYPLYAP_THREADS)");
  app.add_option("--config", g.config_path, "JSON file with simulation settings");
  app.add_option("-o,--out", g.out_path, "write output to a file instead of stdout");
  app.fallthrough();

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "estimate the Lyapunov spectrum of one local system");
  simulate->add_option("--case", sim.case_id, "Calabi-Yau case id 1..14");
  simulate->add_option("--alpha", sim.alpha, "hypergeometric alpha, comma separated rationals");
  simulate->add_option("--beta", sim.beta, "hypergeometric beta, comma separated rationals");
  simulate->add_option("--rep-file", sim.rep_file, "JSON with matrices h0, h1, hinf");
  simulate->add_option("--inject-expanding", sim.inject_expanding, "scale h0 by diag(s, 1/s, 1, ...)");
  add_sim_overrides(simulate, sim.sim);

  TableOptions table;
  auto* table_cmd = app.add_subcommand("table", "simulate all Calabi-Yau cases");
  table_cmd->add_option("--cases", table.cases, "subset of case ids, comma separated");
  add_sim_overrides(table_cmd, table.sim);

  DegreesOptions deg;
  auto* degrees = app.add_subcommand("degrees", "exact Hodge-bundle degrees and bounds");
  degrees->add_option("--case", deg.case_id, "Calabi-Yau case id 1..14");
  degrees->add_option("--mu1", deg.mu1, "first exponent at infinity");
  degrees->add_option("--mu2", deg.mu2, "second exponent at infinity");

  StrataOptions strata;
  auto* strata_cmd = app.add_subcommand("strata", "hyperelliptic strata degrees and large-genus bounds");
  strata_cmd->add_option("--genus,-g", strata.genus, "genus");
  strata_cmd->add_option("--stratum", strata.stratum, "minimal or bimodal");
  strata_cmd->add_option("--kmax", strata.kmax, "largest k in the bound table");
  strata_cmd->add_flag("--trend", strata.trend, "add lambda_k bounds for g = 10 .. 10^6");
  strata_cmd->add_option("--lyapunov", strata.lyapunov, "exponents to test against the HN polygon");

  PolygonOptions poly;
  auto* polygon = app.add_subcommand("polygon", "Harder-Narasimhan polygon and dominance test");
  polygon->add_option("--pieces", poly.pieces, "HN pieces as rank:degree, comma separated");
  polygon->add_option("--chi", poly.chi, "|chi| of the base curve");
  polygon->add_option("--lyapunov", poly.lyapunov, "exponents for the Lyapunov polygon");
  polygon->add_option("--stderr", poly.stderr_values, "standard errors of the exponents");
  polygon->add_option("--scale", poly.scale, "multiply exponents by this factor");

  WronskianOptions wr;
  auto* wronskian = app.add_subcommand("wronskian", "mirror quintic Wronskian and growth of 1/(qF)");
  wronskian->add_option("--order,-N", wr.order, "truncation order");
  wronskian->add_option("--n0", wr.n0, "first coefficient of the growth fit");
  wronskian->add_option("--synthetic", wr.synthetic, "none, exp-n or exp-sqrt");

  auto* catalog = app.add_subcommand("catalog", "list the Calabi-Yau cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*seed_opt) g.seed = seed;

  try {
    if (*simulate) return emit(cmd_simulate(g, sim), g);
    if (*table_cmd) return emit(cmd_table(g, table), g);
    if (*degrees) return emit(cmd_degrees(g, deg), g);
    if (*strata_cmd) return emit(cmd_strata(g, strata), g);
    if (*polygon) return emit(cmd_polygon(g, poly), g);
    if (*wronskian) return emit(cmd_wronskian(g, wr), g);
    if (*catalog) return emit(cmd_catalog(g), g);
  } catch (const hyplyap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hyplyap::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
