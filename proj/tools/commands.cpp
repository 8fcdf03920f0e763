#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hyplyap/error.hpp"
#include "hyplyap/hodge.hpp"
#include "hyplyap/json_io.hpp"
#include "hyplyap/monodromy.hpp"
#include "hyplyap/series.hpp"

namespace hyplyap::tool {

using nlohmann::json;
using monodromy::CYCase;
using monodromy::MonodromyRep;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunRecord make_record(const std::string& command, json config, json results, const Stopwatch& sw) {
  RunRecord r;
  r.tool_version = tool_version();
  r.command = command;
  r.config = std::move(config);
  r.results = std::move(results);
  r.wall_seconds = sw.seconds();
  r.timestamp = utc_timestamp();
  return r;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidParams, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParams, path + " is not valid JSON: " + e.what());
  }
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::InvalidParams, "cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::InvalidParams, "cannot write " + path);
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(10);
  out << x;
  return out.str();
}

// ---------------------------------------------------------------------------
// Representations.

struct Source {
  std::optional<MonodromyRep> rep;
  std::optional<CYCase> cy;
  json description;
};

Rational entry_value(const json& v, bool& exact) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) {
    exact = false;
    return Rational(v.get<double>());
  }
  throw Error(ErrorCode::InvalidParams, "matrix entries must be numbers or rational strings");
}

MonodromyRep rep_from_file(const std::string& path) {
  const json j = parse_json_file(path);
  bool exact = true;
  std::array<RationalMatrix, 3> m;
  const char* keys[3] = {"h0", "h1", "hinf"};
  for (int k = 0; k < 3; ++k) {
    if (!j.contains(keys[k]) || !j.at(keys[k]).is_array()) {
      throw Error(ErrorCode::InvalidParams, std::string("representation file needs a matrix '") + keys[k] + "'");
    }
    const json& rows = j.at(keys[k]);
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorCode::InvalidParams, "empty monodromy matrix");
    m[k] = RationalMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) throw Error(ErrorCode::InvalidParams, "matrices must be square");
      for (std::size_t c = 0; c < n; ++c) m[k](i, c) = entry_value(rows[i][c], exact);
    }
  }
  if (exact) return MonodromyRep::exact(m[0], m[1], m[2]);
  return MonodromyRep::floating(m[0].to_complex(), m[1].to_complex(), m[2].to_complex());
}

// h0 -> h0 diag(s, 1/s, 1, ...), hinf re-solved so the product relation still holds.
MonodromyRep inject_expanding(const MonodromyRep& rep, const Rational& s) {
  if (s == 0) throw Error(ErrorCode::InvalidParams, "expanding scale must be nonzero");
  if (rep.rank() < 2) throw Error(ErrorCode::InvalidParams, "expanding injection needs rank >= 2");
  using monodromy::Cusp;
  if (rep.mode() == monodromy::ArithmeticMode::Exact) {
    RationalMatrix d = RationalMatrix::identity(rep.rank());
    d(0, 0) = s;
    d(1, 1) = 1 / s;
    const RationalMatrix h0 = rep.exact_at(Cusp::Zero) * d;
    const RationalMatrix& h1 = rep.exact_at(Cusp::One);
    return MonodromyRep::exact(h0, h1, (h1 * h0).inverse());
  }
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(rep.rank()),
                                                  static_cast<Eigen::Index>(rep.rank()));
  d(0, 0) = s.get_d();
  d(1, 1) = 1.0 / s.get_d();
  const Eigen::MatrixXcd h0 = rep.at(Cusp::Zero) * d;
  const Eigen::MatrixXcd& h1 = rep.at(Cusp::One);
  return MonodromyRep::floating(h0, h1, (h1 * h0).inverse());
}

Source resolve_source(const SimulateOptions& o) {
  const int given = (o.case_id ? 1 : 0) + (!o.alpha.empty() || !o.beta.empty() ? 1 : 0) + (!o.rep_file.empty() ? 1 : 0);
  if (given != 1) {
    throw Error(ErrorCode::InvalidParams, "give exactly one of --case, --alpha/--beta or --rep-file");
  }
  Source s;
  if (o.case_id) {
    s.cy = monodromy::cy_case(*o.case_id);
    s.rep = monodromy::cy_realization(*o.case_id);
    s.description = {{"case", *o.case_id}};
  } else if (!o.rep_file.empty()) {
    s.rep = rep_from_file(o.rep_file);
    s.description = {{"rep_file", o.rep_file}};
  } else {
    if (o.alpha.empty() || o.beta.empty()) throw Error(ErrorCode::InvalidParams, "--alpha and --beta go together");
    const auto p = monodromy::HypergeometricParams::make(parse_rational_list(o.alpha), parse_rational_list(o.beta));
    s.rep = monodromy::levelt_construct(p);
    json a = json::array(), b = json::array();
    for (const auto& v : p.alpha) a.push_back(to_string(v));
    for (const auto& v : p.beta) b.push_back(to_string(v));
    s.description = {{"alpha", a}, {"beta", b}};
  }
  if (!o.inject_expanding.empty()) {
    const Rational scale = parse_rational(o.inject_expanding);
    s.rep = inject_expanding(*s.rep, scale);
    s.description["inject_expanding"] = to_string(scale);
    s.cy.reset();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Simulation.

struct Simulated {
  lyapunov::LyapunovEstimate estimate;
  lyapunov::SimulationConfig config;
};

unsigned worker_count(const GlobalOptions& g) { return g.threads; }

Simulated simulate_rep(const MonodromyRep& rep, const lyapunov::SimulationConfig& cfg, const GlobalOptions& g,
                       const std::optional<std::string>& resume_snapshot,
                       const std::function<void(const lyapunov::Estimator&)>& on_chunk) {
  lyapunov::Estimator est = resume_snapshot ? lyapunov::Estimator::from_snapshot(rep, *resume_snapshot)
                                            : lyapunov::Estimator(rep, cfg);
  const std::int64_t chunk = on_chunk ? std::max<std::int64_t>(1, g.checkpoint_every) : 0;
  est.run(worker_count(g), chunk, on_chunk);
  return {est.result(), est.config()};
}

json bound_json(const lyapunov::LyapunovEstimate& e, const CYCase& c) {
  const Rational deg_par = c.mu1 + c.mu2;
  const auto cmp = lyapunov::compare_bound(e, 2, deg_par, 0, 3);
  return {{"k", 2},
          {"deg_par", to_string(deg_par)},
          {"bound", to_string(cmp.bound_exact)},
          {"bound_value", cmp.bound},
          {"partial_sum", cmp.partial_sum},
          {"slack", cmp.slack}};
}

json orbifold_json(const lyapunov::LyapunovEstimate& e, const CYCase& c) {
  const auto orb = hodge::orbifold_normalize(e.lambda, c.mu1, c.mu2);
  json j{{"chi_abs", to_string(orb.chi_abs)}, {"lambda_orb", orb.lambda_orb}};
  j["n"] = orb.order ? json(orb.order->get_str()) : json("inf");
  return j;
}

json simulation_results(const lyapunov::LyapunovEstimate& e, const std::optional<CYCase>& cy) {
  json r;
  r["estimate"] = e;
  r["symmetry_defect"] = e.symmetry_defect;
  if (cy) {
    r["bound"] = bound_json(e, *cy);
    r["thin_expected"] = cy->thin_expected();
    r["orbifold"] = orbifold_json(e, *cy);
  }
  return r;
}

std::string estimate_csv(const lyapunov::LyapunovEstimate& e) {
  std::ostringstream out;
  out << "index,lambda,stderr\n";
  for (std::size_t i = 0; i < e.lambda.size(); ++i) {
    out << i + 1 << ',' << fmt(e.lambda[i]) << ',' << fmt(e.std_error[i]) << '\n';
  }
  return out.str();
}

json global_json(const GlobalOptions& g) {
  return {{"output", g.output}, {"seed", g.seed.value_or(lyapunov::SimulationConfig{}.seed)}};
}

std::vector<int> parse_case_list(const std::string& text) {
  std::vector<int> ids;
  if (text.empty()) {
    for (int i = 1; i <= 14; ++i) ids.push_back(i);
    return ids;
  }
  for (const auto& q : parse_rational_list(text)) {
    if (q.get_den() != 1) throw Error(ErrorCode::InvalidParams, "case ids must be integers");
    const int id = static_cast<int>(q.get_num().get_si());
    monodromy::cy_case(id);
    ids.push_back(id);
  }
  return ids;
}

json table_row(const CYCase& c, const lyapunov::LyapunovEstimate& e) {
  const auto cmp = lyapunov::compare_bound(e, 2, c.mu1 + c.mu2, 0, 3);
  const auto orb = hodge::orbifold_normalize(e.lambda, c.mu1, c.mu2);
  return {{"id", c.id},
          {"model", c.label},
          {"C", c.C},
          {"d", c.d},
          {"mu1", to_string(c.mu1)},
          {"mu2", to_string(c.mu2)},
          {"lambda1", e.lambda[0]},
          {"lambda1_plus_lambda2", e.lambda[0] + e.lambda[1]},
          {"bound", to_string(cmp.bound_exact)},
          {"slack", cmp.slack},
          {"chi_abs", to_string(orb.chi_abs)},
          {"thin_expected", c.thin_expected()},
          {"stderr", e.std_error},
          {"symmetry_defect", e.symmetry_defect}};
}

std::string table_csv(const json& rows) {
  std::ostringstream out;
  out << "id,model,C,d,mu1,mu2,lambda1,lambda1_plus_lambda2,bound,slack,chi_abs,thin_expected\n";
  for (const auto& r : rows) {
    std::string model = r.at("model").get<std::string>();
    if (model.find(',') != std::string::npos) model = '"' + model + '"';
    out << r.at("id").get<int>() << ',' << model << ',' << r.at("C").get<int>() << ',' << r.at("d").get<int>() << ','
        << r.at("mu1").get<std::string>() << ',' << r.at("mu2").get<std::string>() << ','
        << fmt(r.at("lambda1").get<double>()) << ',' << fmt(r.at("lambda1_plus_lambda2").get<double>()) << ','
        << r.at("bound").get<std::string>() << ',' << fmt(r.at("slack").get<double>()) << ','
        << r.at("chi_abs").get<std::string>() << ',' << (r.at("thin_expected").get<bool>() ? "true" : "false")
        << '\n';
  }
  return out.str();
}

constexpr const char* kTableCheckpointFormat = "hyplyap-table-checkpoint";

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::CorruptSnapshot, what); }

std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------

unsigned default_threads() {
  if (const char* env = std::getenv("HYPLYAP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<unsigned>(v);
  }
  return 0;
}

lyapunov::SimulationConfig resolve_config(const GlobalOptions& g, const SimOverrides& o) {
  lyapunov::SimulationConfig cfg;
  if (!g.config_path.empty()) {
    const json j = parse_json_file(g.config_path);
    lyapunov::from_json(j.contains("simulation") ? j.at("simulation") : j, cfg);
  }
  if (o.dt) cfg.dt = *o.dt;
  if (o.steps) cfg.steps = *o.steps;
  if (o.burn_in) cfg.burn_in = *o.burn_in;
  if (o.qr_interval) cfg.qr_interval = *o.qr_interval;
  if (o.trajectories) cfg.trajectories = *o.trajectories;
  if (o.y_guard) cfg.y_guard = *o.y_guard;
  if (o.cusp_rotation) cfg.assignment.rotation = *o.cusp_rotation;
  if (g.seed) cfg.seed = *g.seed;
  cfg.validate();
  return cfg;
}

CommandOutput cmd_simulate(const GlobalOptions& g, const SimulateOptions& o) {
  Stopwatch sw;
  const Source src = resolve_source(o);
  const lyapunov::SimulationConfig cfg = resolve_config(g, o.sim);
  std::optional<std::string> snapshot;
  if (!g.resume.empty()) snapshot = lyapunov::read_snapshot_file(g.resume);
  std::function<void(const lyapunov::Estimator&)> on_chunk;
  if (!g.checkpoint.empty()) {
    on_chunk = [&g](const lyapunov::Estimator& e) { lyapunov::write_snapshot_file(g.checkpoint, e); };
  }
  const Simulated sim = simulate_rep(*src.rep, cfg, g, snapshot, on_chunk);

  json config = global_json(g);
  config["source"] = src.description;
  config["simulation"] = sim.config;
  CommandOutput out;
  out.record = make_record("simulate", std::move(config), simulation_results(sim.estimate, src.cy), sw);
  out.csv = estimate_csv(sim.estimate);
  return out;
}

CommandOutput cmd_table(const GlobalOptions& g, const TableOptions& o) {
  Stopwatch sw;
  lyapunov::SimulationConfig cfg = resolve_config(g, o.sim);
  std::vector<int> ids = parse_case_list(o.cases);

  json rows = json::array();
  json failures = json::array();
  std::optional<std::pair<int, std::string>> current;
  if (!g.resume.empty()) {
    json state;
    try {
      state = json::parse(lyapunov::read_snapshot_file(g.resume));
      if (state.value("format", "") != kTableCheckpointFormat || state.value("version", 0) != lyapunov::kSnapshotVersion) {
        corrupt("not a table checkpoint of a supported version");
      }
      cfg = state.at("config").get<lyapunov::SimulationConfig>();
      ids = state.at("cases").get<std::vector<int>>();
      rows = state.at("completed");
      if (!state.at("current").is_null()) {
        current = std::make_pair(state.at("current").at("id").get<int>(),
                                 state.at("current").at("snapshot").get<std::string>());
      }
    } catch (const json::exception& e) {
      corrupt(std::string("unreadable table checkpoint: ") + e.what());
    }
  }

  auto save = [&](const json& in_progress) {
    if (g.checkpoint.empty()) return;
    const json state{{"format", kTableCheckpointFormat},
                     {"version", lyapunov::kSnapshotVersion},
                     {"config", cfg},
                     {"cases", ids},
                     {"completed", rows},
                     {"current", in_progress}};
    write_text_atomic(g.checkpoint, state.dump());
  };

  std::optional<ErrorCode> first_error;
  for (int id : ids) {
    const bool done = std::any_of(rows.begin(), rows.end(), [id](const json& r) { return r.at("id").get<int>() == id; });
    if (done) continue;
    try {
      std::optional<std::string> snapshot;
      if (current && current->first == id) snapshot = current->second;
      std::function<void(const lyapunov::Estimator&)> on_chunk;
      if (!g.checkpoint.empty()) {
        on_chunk = [&, id](const lyapunov::Estimator& e) { save({{"id", id}, {"snapshot", e.snapshot()}}); };
      }
      const Simulated sim = simulate_rep(monodromy::cy_realization(id), cfg, g, snapshot, on_chunk);
      rows.push_back(table_row(monodromy::cy_case(id), sim.estimate));
      save(nullptr);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::CorruptSnapshot) throw;
      failures.push_back({{"id", id}, {"error", std::string(error_name(e.code()))}, {"message", e.what()}});
      if (!first_error) first_error = e.code();
    }
  }
  std::sort(rows.begin(), rows.end(), [](const json& a, const json& b) { return a.at("id").get<int>() < b.at("id").get<int>(); });

  json config = global_json(g);
  config["cases"] = ids;
  config["simulation"] = cfg;
  CommandOutput out;
  out.record = make_record("table", std::move(config), {{"rows", rows}, {"failures", failures}}, sw);
  out.csv = table_csv(rows);
  if (first_error) out.exit_code = exit_code_for(*first_error);
  return out;
}

CommandOutput cmd_degrees(const GlobalOptions& g, const DegreesOptions& o) {
  Stopwatch sw;
  CYCase shape;
  json source;
  if (o.case_id) {
    if (!o.mu1.empty() || !o.mu2.empty()) throw Error(ErrorCode::InvalidParams, "give --case or --mu1/--mu2, not both");
    shape = monodromy::cy_case(*o.case_id);
    source = {{"case", *o.case_id}};
  } else {
    if (o.mu1.empty() || o.mu2.empty()) throw Error(ErrorCode::InvalidParams, "give --case or both --mu1 and --mu2");
    shape.mu1 = parse_rational(o.mu1);
    shape.mu2 = parse_rational(o.mu2);
    source = {{"mu1", to_string(shape.mu1)}, {"mu2", to_string(shape.mu2)}};
  }

  const auto deg = hodge::cy_hodge_degrees(shape.mu1, shape.mu2);
  const auto check = hodge::cy_hodge_degrees_from_cokernels(shape.mu1, shape.mu2);
  const auto hodge_nums = monodromy::hodge_numbers(shape.params());
  const Rational b1 = hodge::main_bound(deg.e30, 0, 3);
  const Rational b2 = hodge::main_bound(deg.e30 + deg.e21, 0, 3);

  json cokernels = json::array();
  for (auto c : {monodromy::Cusp::Zero, monodromy::Cusp::One, monodromy::Cusp::Infinity}) {
    const auto exps = monodromy::local_exponents(shape, c);
    json mu = json::array();
    for (const auto& v : exps.exponents) mu.push_back(to_string(v));
    cokernels.push_back({{"point", exps.point},
                         {"exponents", mu},
                         {"tau0", hodge::cokernel_length(exps, 0)},
                         {"tau1", hodge::cokernel_length(exps, 1)},
                         {"tau2", hodge::cokernel_length(exps, 2)}});
  }

  json results{{"degrees",
                {{"E30", to_string(deg.e30)}, {"E21", to_string(deg.e21)}, {"E12", to_string(deg.e12)},
                 {"E03", to_string(deg.e03)}}},
               {"duality", deg.dual()},
               {"cokernel_cross_check", deg == check},
               {"hodge_numbers", hodge_nums},
               {"bounds", {{"k1", to_string(b1)}, {"k2", to_string(b2)}}},
               {"cokernels", cokernels}};

  json config = global_json(g);
  config["source"] = source;
  CommandOutput out;
  out.record = make_record("degrees", std::move(config), results, sw);
  out.csv = key_value_csv({{"E30", to_string(deg.e30)},
                           {"E21", to_string(deg.e21)},
                           {"E12", to_string(deg.e12)},
                           {"E03", to_string(deg.e03)},
                           {"bound_k1", to_string(b1)},
                           {"bound_k2", to_string(b2)}});
  return out;
}

CommandOutput cmd_strata(const GlobalOptions& g, const StrataOptions& o) {
  Stopwatch sw;
  const hodge::Stratum stratum = hodge::parse_stratum(o.stratum);
  if (o.genus < 1) throw Error(ErrorCode::OutOfRange, "genus must be at least 1");
  const long kmax = o.kmax > 0 ? std::min(o.kmax, o.genus) : std::min<long>(o.genus, 5);

  const auto hn = hodge::hyperelliptic_hn_polygon(o.genus, stratum);
  json quotients = json::array();
  for (long k = 1; k <= o.genus && k <= 64; ++k) {
    quotients.push_back(to_string(hodge::hyperelliptic_quotient_degree(o.genus, k, stratum)));
  }
  json bounds = json::array();
  for (long k = 1; k <= kmax; ++k) {
    const auto b = hodge::large_genus_bound(o.genus, k, stratum);
    bounds.push_back({{"k", k},
                      {"sum_bound", to_string(b.sum_bound)},
                      {"lambda_k_bound", to_string(b.lambda_k_bound)},
                      {"lambda_k_bound_value", b.lambda_k_bound.get_d()}});
  }
  json results{{"quotient_degrees", quotients},
               {"hn_polygon", hodge::to_json_value(hn)},
               {"large_genus_bounds", bounds}};

  if (o.trend) {
    json trend = json::array();
    for (long genus : {10L, 100L, 1000L, 10000L, 100000L, 1000000L}) {
      for (long k = 1; k <= 5; ++k) {
        const auto b = hodge::large_genus_bound(genus, k, stratum);
        trend.push_back({{"g", genus},
                         {"k", k},
                         {"lambda_k_bound", to_string(b.lambda_k_bound)},
                         {"lambda_k_bound_value", b.lambda_k_bound.get_d()}});
      }
    }
    results["trend"] = trend;
  }
  if (!o.lyapunov.empty()) {
    std::vector<double> lambda;
    for (const auto& q : parse_rational_list(o.lyapunov)) lambda.push_back(q.get_d());
    results["dominates"] = hodge::polygon_dominates(hodge::lyapunov_polygon(lambda), hn);
  }

  json config = global_json(g);
  config["genus"] = o.genus;
  config["stratum"] = hodge::stratum_name(stratum);
  config["kmax"] = kmax;
  config["trend"] = o.trend;
  config["lyapunov"] = o.lyapunov;
  CommandOutput out;
  out.record = make_record("strata", std::move(config), results, sw);
  out.csv = hn.csv();
  return out;
}

CommandOutput cmd_polygon(const GlobalOptions& g, const PolygonOptions& o) {
  Stopwatch sw;
  if (o.pieces.empty()) throw Error(ErrorCode::InvalidParams, "--pieces is required (rank:degree,...)");
  std::vector<hodge::HnPiece> pieces;
  std::stringstream ss(o.pieces);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidParams, "piece '" + item + "' is not rank:degree");
    const Rational rank = parse_rational(item.substr(0, colon));
    if (rank.get_den() != 1) throw Error(ErrorCode::InvalidParams, "piece ranks must be integers");
    pieces.push_back({rank.get_num().get_si(), parse_rational(item.substr(colon + 1))});
  }
  const auto hn = hodge::hn_polygon(pieces, parse_rational(o.chi));
  json results{{"hn_polygon", hodge::to_json_value(hn)}};
  if (!o.lyapunov.empty()) {
    std::vector<double> lambda, sigma;
    for (const auto& q : parse_rational_list(o.lyapunov)) lambda.push_back(q.get_d());
    if (!o.stderr_values.empty()) {
      for (const auto& q : parse_rational_list(o.stderr_values)) sigma.push_back(q.get_d());
    }
    const auto lp = hodge::lyapunov_polygon(lambda, o.scale, sigma);
    results["lyapunov_polygon"] = hodge::to_json_value(lp);
    results["dominates"] = hodge::polygon_dominates(lp, hn);
  }
  json config = global_json(g);
  config["pieces"] = o.pieces;
  config["chi"] = o.chi;
  config["lyapunov"] = o.lyapunov;
  config["stderr"] = o.stderr_values;
  config["scale"] = o.scale;
  CommandOutput out;
  out.record = make_record("polygon", std::move(config), results, sw);
  out.csv = hn.csv();
  return out;
}

CommandOutput cmd_wronskian(const GlobalOptions& g, const WronskianOptions& o) {
  Stopwatch sw;
  if (o.order < 2) throw Error(ErrorCode::InvalidParams, "--order must be at least 2");
  if (o.n0 < 0 || o.n0 + 2 > o.order) throw Error(ErrorCode::InvalidParams, "--n0 must leave at least three coefficients");
  const auto N = static_cast<std::size_t>(o.order);

  json results;
  series::RationalSeries coeffs;
  if (o.synthetic == "none") {
    const auto tw = series::wronskian_series(N);
    const auto qf = series::qF_series(N);
    coeffs = series::inverse_F_coefficients(N);
    json head = json::array();
    for (std::size_t n = 0; n <= std::min<std::size_t>(N, 5); ++n) head.push_back(to_string(tw[n]));
    results["tW_head"] = head;
    results["log_cancellation"] = true;
    results["qF_constant_term"] = to_string(qf[0]);
  } else if (o.synthetic == "exp-n" || o.synthetic == "exp-sqrt") {
    coeffs = series::RationalSeries(N);
    for (std::size_t n = 0; n <= N; ++n) {
      const double v = o.synthetic == "exp-n" ? std::exp(static_cast<double>(n))
                                              : std::exp(2.0 * std::sqrt(static_cast<double>(n)));
      coeffs[n] = Rational(v);
    }
    results["synthetic"] = o.synthetic;
  } else {
    throw Error(ErrorCode::InvalidParams, "--synthetic must be none, exp-n or exp-sqrt");
  }

  const auto fit = series::growth_fit(coeffs, static_cast<std::size_t>(o.n0), N);
  results["growth_fit"] = {{"C", fit.C},
                           {"intercept", fit.intercept},
                           {"rms_sqrt", fit.rms_sqrt},
                           {"slope_linear", fit.slope_linear},
                           {"intercept_linear", fit.intercept_linear},
                           {"rms_linear", fit.rms_linear},
                           {"n0", fit.n0},
                           {"N", fit.N}};
  results["verdict"] = std::string("sqrt-growth consistent: ") + (fit.sqrt_growth_preferred() ? "yes" : "no");

  json config = global_json(g);
  config["order"] = o.order;
  config["n0"] = o.n0;
  config["synthetic"] = o.synthetic;
  CommandOutput out;
  out.record = make_record("wronskian", std::move(config), results, sw);
  out.csv = series::coefficients_csv(coeffs);
  return out;
}

CommandOutput cmd_catalog(const GlobalOptions& g) {
  Stopwatch sw;
  json cases = json::array();
  for (const auto& c : monodromy::cy_catalog()) {
    cases.push_back({{"id", c.id},
                     {"label", c.label},
                     {"C", c.C},
                     {"d", c.d},
                     {"mu1", to_string(c.mu1)},
                     {"mu2", to_string(c.mu2)},
                     {"thin_expected", c.thin_expected()}});
  }
  CommandOutput out;
  out.record = make_record("catalog", global_json(g), {{"cases", cases}}, sw);
  out.csv = monodromy::cy_catalog_csv();
  return out;
}

}  // namespace hyplyap::tool
