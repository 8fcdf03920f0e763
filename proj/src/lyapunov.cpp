#include "hyplyap/lyapunov.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "hyplyap/error.hpp"
#include "hyplyap/hodge.hpp"
#include "hyplyap/json_io.hpp"

namespace hyplyap::lyapunov {

using hyperbolic::FrameState;
using hyperbolic::Isometry;
using hyperbolic::WordRun;
using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::CorruptSnapshot, what); }

}  // namespace

void SimulationConfig::validate() const {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidParams, msg); };
  if (!(dt > 0.0 && dt <= 1.0)) bad("dt must lie in (0, 1]");
  if (qr_interval < 1) bad("qr_interval must be at least 1");
  if (steps < 1) bad("steps must be positive");
  if (burn_in < 0 || burn_in >= steps) bad("burn_in must satisfy 0 <= burn_in < steps");
  if (trajectories < 1) bad("trajectories must be at least 1");
  if (!(y_guard > 0.0 && y_guard < 1.0)) bad("y_guard must lie in (0, 1)");
  if (assignment.rotation < 0 || assignment.rotation > 2) bad("cusp rotation must be 0, 1 or 2");
}

double LyapunovEstimate::max_std_error() const {
  double m = 0.0;
  for (double s : std_error) m = std::max(m, s);
  return m;
}

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

// ---------------------------------------------------------------------------

Trajectory::Trajectory(std::shared_ptr<const monodromy::RealWordAction> action, const SimulationConfig& cfg,
                       std::uint64_t stream_seed)
    : action_(std::move(action)), cfg_(cfg), stretch_(std::exp(cfg.dt)) {
  const auto n = static_cast<Eigen::Index>(action_->dimension());
  st_.rng.seed(stream_seed);
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(st_.rng() >> 11) * 0x1.0p-53;
  st_.frame = hyperbolic::rotate_frame(FrameState{}, theta);
  st_.B = Eigen::MatrixXd::Identity(n, n);
  st_.logsums.assign(static_cast<std::size_t>(n), 0.0);
  tmp_.resize(n, n);
}

Trajectory::Trajectory(std::shared_ptr<const monodromy::RealWordAction> action, const SimulationConfig& cfg,
                       CocycleState state)
    : action_(std::move(action)), cfg_(cfg), st_(std::move(state)), stretch_(std::exp(cfg.dt)) {
  const auto n = static_cast<Eigen::Index>(action_->dimension());
  if (st_.B.rows() != n || st_.B.cols() != n || st_.logsums.size() != static_cast<std::size_t>(n)) {
    corrupt("trajectory state has the wrong dimension");
  }
  tmp_.resize(n, n);
}

void Trajectory::qr_event(bool record) {
  // Modified Gram-Schmidt with one reorthogonalization pass; R has a positive diagonal.
  Eigen::MatrixXd& b = st_.B;
  const Eigen::Index n = b.cols();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) b.col(j) -= b.col(i).dot(b.col(j)) * b.col(i);
    }
    const double r = b.col(j).norm();
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw Error(ErrorCode::PrecisionAlarm,
                  "cocycle lost rank at step " + std::to_string(st_.step) + " (column " + std::to_string(j) + ")");
    }
    b.col(j) /= r;
    if (record) st_.logsums[static_cast<std::size_t>(j)] += std::log(r);
  }
  st_.steps_since_qr = 0;
  st_.labels_since_qr = 0;
}

void Trajectory::apply_word(bool record) {
  const auto& runs = word_.runs();
  // matrix(w) acts on the left, so the rightmost run is applied first.
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    const std::uint64_t per = it->length;
    const std::int64_t sign = it->exponent > 0 ? 1 : -1;
    std::int64_t remaining = std::llabs(it->exponent);
    while (remaining > 0) {
      const std::uint64_t budget =
          st_.labels_since_qr < kMaxLabelsBetweenQR ? kMaxLabelsBetweenQR - st_.labels_since_qr : 0;
      if (budget < per) {
        qr_event(record);
        continue;
      }
      const std::int64_t take = std::min<std::int64_t>(remaining, static_cast<std::int64_t>(budget / per));
      if (per == 1 && take == 1) {
        const auto l = sign > 0 ? it->base[0] : hyperbolic::inverse(it->base[0]);
        tmp_.noalias() = action_->label_matrix(l) * st_.B;
      } else {
        tmp_.noalias() = action_->run_matrix(WordRun{it->base, it->length, sign * take}) * st_.B;
      }
      st_.B.swap(tmp_);
      st_.labels_since_qr += static_cast<std::uint64_t>(take) * per;
      remaining -= take;
    }
  }
}

void Trajectory::advance(std::int64_t max_steps) {
  const std::int64_t stop = max_steps > 0 ? std::min(cfg_.steps, st_.step + max_steps) : cfg_.steps;
  const double e = stretch_;
  const double lo = cfg_.y_guard, hi = 1.0 / cfg_.y_guard;
  while (st_.step < stop) {
    ++st_.step;
    const bool record = st_.step > cfg_.burn_in;

    Isometry& m = st_.frame.frame;
    m = Isometry{m.a * e, m.b / e, m.c * e, m.d / e}.renormalized();
    hyperbolic::reduce_to_domain(st_.frame, word_);
    if (!word_.empty()) apply_word(record);
    ++st_.steps_since_qr;

    if (st_.step == cfg_.burn_in) {
      qr_event(false);
    } else if (st_.steps_since_qr >= cfg_.qr_interval || st_.step == cfg_.steps) {
      qr_event(record);
    } else {
      const double y = hyperbolic::basepoint(st_.frame).y;
      if (y < lo || y > hi) {
        throw Error(ErrorCode::PrecisionAlarm, "basepoint height " + std::to_string(y) + " outside the guard at step " +
                                                   std::to_string(st_.step));
      }
    }
    if (record) st_.elapsed = static_cast<double>(st_.step - cfg_.burn_in) * cfg_.dt;
  }
}

std::vector<double> Trajectory::exponents() const {
  std::vector<double> out(st_.logsums.size(), 0.0);
  if (st_.elapsed > 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = st_.logsums[i] / st_.elapsed;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  if (action_->realified()) {
    std::vector<double> paired(out.size() / 2);
    for (std::size_t i = 0; i < paired.size(); ++i) paired[i] = 0.5 * (out[2 * i] + out[2 * i + 1]);
    return paired;
  }
  return out;
}

// ---------------------------------------------------------------------------

void require_non_expanding(const monodromy::MonodromyRep& rep) {
  const auto gate = monodromy::check_nonexpanding(rep);
  if (gate.non_expanding) return;
  std::ostringstream msg;
  msg << "cusp monodromy has eigenvalues off the unit circle:";
  for (auto c : {monodromy::Cusp::Zero, monodromy::Cusp::One, monodromy::Cusp::Infinity}) {
    msg << ' ' << monodromy::cusp_name(c) << '[';
    const auto& mods = gate.moduli[static_cast<int>(c)];
    for (std::size_t i = 0; i < mods.size(); ++i) msg << (i ? "," : "") << mods[i];
    msg << ']';
  }
  throw Error(ErrorCode::NotIntegrable, msg.str());
}

std::vector<double> run_trajectory(const monodromy::MonodromyRep& rep, const SimulationConfig& cfg,
                                   std::uint64_t stream_seed) {
  cfg.validate();
  require_non_expanding(rep);
  Trajectory t(std::make_shared<monodromy::RealWordAction>(rep, cfg.assignment), cfg, stream_seed);
  t.advance();
  return t.exponents();
}

LyapunovEstimate aggregate(const std::vector<std::vector<double>>& per_trajectory, double total_time) {
  LyapunovEstimate e;
  e.per_trajectory = per_trajectory;
  e.total_time = total_time;
  if (per_trajectory.empty()) return e;
  const std::size_t r = per_trajectory.front().size();
  const double n = static_cast<double>(per_trajectory.size());
  e.lambda.assign(r, 0.0);
  e.std_error.assign(r, 0.0);
  for (const auto& v : per_trajectory) {
    for (std::size_t i = 0; i < r; ++i) e.lambda[i] += v[i];
  }
  for (double& l : e.lambda) l /= n;
  if (per_trajectory.size() > 1) {
    for (std::size_t i = 0; i < r; ++i) {
      double ss = 0.0;
      for (const auto& v : per_trajectory) ss += (v[i] - e.lambda[i]) * (v[i] - e.lambda[i]);
      e.std_error[i] = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
  }
  std::sort(e.lambda.begin(), e.lambda.end(), std::greater<>());
  e.symmetry_defect = symmetry_defect(e.lambda);
  return e;
}

double symmetry_defect(const std::vector<double>& lambda) {
  double d = 0.0;
  const std::size_t r = lambda.size();
  for (std::size_t i = 0; i < r; ++i) d = std::max(d, std::fabs(lambda[i] + lambda[r - 1 - i]));
  return d;
}

// ---------------------------------------------------------------------------

std::string rep_fingerprint(const monodromy::MonodromyRep& rep, monodromy::CuspAssignment assign) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](const void* p, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001B3ULL;
    }
  };
  const std::uint64_t r = rep.rank();
  mix(&r, sizeof r);
  mix(&assign.rotation, sizeof assign.rotation);
  for (auto c : {monodromy::Cusp::Zero, monodromy::Cusp::One, monodromy::Cusp::Infinity}) {
    const auto& m = rep.at(c);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      const double re = m.data()[i].real() + 0.0, im = m.data()[i].imag() + 0.0;
      mix(&re, sizeof re);
      mix(&im, sizeof im);
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Estimator::Estimator(const monodromy::MonodromyRep& rep, const SimulationConfig& cfg) : Estimator(rep, cfg, true) {
  for (std::int64_t i = 0; i < cfg_.trajectories; ++i) {
    trajectories_.emplace_back(action_, cfg_, trajectory_seed(cfg_.seed, static_cast<std::uint64_t>(i)));
  }
}

Estimator::Estimator(const monodromy::MonodromyRep& rep, const SimulationConfig& cfg, bool gate)
    : cfg_(cfg), fingerprint_(rep_fingerprint(rep, cfg.assignment)) {
  cfg_.validate();
  if (gate) require_non_expanding(rep);
  action_ = std::make_shared<monodromy::RealWordAction>(rep, cfg_.assignment);
}

bool Estimator::finished() const {
  return std::all_of(trajectories_.begin(), trajectories_.end(), [](const Trajectory& t) { return t.finished(); });
}

void Estimator::advance(std::int64_t chunk_steps, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n = trajectories_.size();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        trajectories_[i].advance(chunk_steps);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::ostringstream report;
  std::exception_ptr first;
  ErrorCode code = ErrorCode::PrecisionAlarm;
  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      if (!first) code = e.code();
      report << (first ? "; " : "") << "trajectory " << i << ": " << e.what();
    } catch (const std::exception& e) {
      if (!first) std::rethrow_exception(failures[i]);
      report << "; trajectory " << i << ": " << e.what();
    }
    if (!first) first = failures[i];
  }
  if (first) throw Error(code, report.str());
}

void Estimator::run(unsigned threads, std::int64_t chunk_steps,
                    const std::function<void(const Estimator&)>& after_chunk) {
  while (!finished()) {
    advance(chunk_steps, threads);
    if (after_chunk) after_chunk(*this);
  }
}

LyapunovEstimate Estimator::result() const {
  if (!finished()) throw std::logic_error("estimate requested before all trajectories finished");
  std::vector<std::vector<double>> per;
  double total = 0.0;
  for (const auto& t : trajectories_) {
    per.push_back(t.exponents());
    total += t.state().elapsed;
  }
  return aggregate(per, total);
}

namespace {

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != rows) corrupt("matrix is not square");
    for (Eigen::Index k = 0; k < rows; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

}  // namespace

std::string Estimator::snapshot() const {
  json j;
  j["format"] = "hyplyap-snapshot";
  j["version"] = kSnapshotVersion;
  j["config"] = cfg_;
  j["representation"] = fingerprint_;
  json trajs = json::array();
  for (const auto& t : trajectories_) {
    const CocycleState& s = t.state();
    std::ostringstream rng;
    rng << s.rng;
    const auto& f = s.frame.frame;
    trajs.push_back({{"frame", {f.a, f.b, f.c, f.d}},
                     {"B", matrix_json(s.B)},
                     {"logsums", s.logsums},
                     {"elapsed", s.elapsed},
                     {"step", s.step},
                     {"steps_since_qr", s.steps_since_qr},
                     {"labels_since_qr", s.labels_since_qr},
                     {"rng", rng.str()}});
  }
  j["trajectories"] = std::move(trajs);
  return j.dump();
}

Estimator Estimator::from_snapshot(const monodromy::MonodromyRep& rep, const std::string& snapshot) {
  json j;
  try {
    j = json::parse(snapshot);
  } catch (const json::exception& e) {
    corrupt(std::string("snapshot is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != "hyplyap-snapshot") corrupt("not a hyplyap snapshot");
    if (!j.contains("version") || j.at("version").get<int>() != kSnapshotVersion) {
      corrupt("unsupported snapshot version");
    }
    SimulationConfig cfg = j.at("config").get<SimulationConfig>();
    Estimator est(rep, cfg, true);
    if (j.at("representation").get<std::string>() != est.fingerprint_) {
      corrupt("snapshot was taken with a different representation");
    }
    const json& trajs = j.at("trajectories");
    if (!trajs.is_array() || static_cast<std::int64_t>(trajs.size()) != cfg.trajectories) {
      corrupt("trajectory count does not match the configuration");
    }
    for (const json& t : trajs) {
      CocycleState s;
      const auto f = t.at("frame").get<std::vector<double>>();
      if (f.size() != 4) corrupt("frame must have four entries");
      s.frame.frame = Isometry{f[0], f[1], f[2], f[3]};
      s.B = matrix_from_json(t.at("B"));
      s.logsums = t.at("logsums").get<std::vector<double>>();
      s.elapsed = t.at("elapsed").get<double>();
      s.step = t.at("step").get<std::int64_t>();
      s.steps_since_qr = t.at("steps_since_qr").get<std::int64_t>();
      s.labels_since_qr = t.at("labels_since_qr").get<std::uint64_t>();
      if (s.step < 0 || s.step > cfg.steps) corrupt("step counter out of range");
      std::istringstream rng(t.at("rng").get<std::string>());
      rng >> s.rng;
      if (rng.fail()) corrupt("unreadable RNG state");
      est.trajectories_.emplace_back(est.action_, est.cfg_, std::move(s));
    }
    return est;
  } catch (const json::exception& e) {
    corrupt(std::string("snapshot is missing fields: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptSnapshot || e.code() == ErrorCode::NotIntegrable) throw;
    corrupt(std::string("snapshot holds an invalid configuration: ") + e.what());
  }
}

LyapunovEstimate estimate(const monodromy::MonodromyRep& rep, const SimulationConfig& cfg, unsigned threads) {
  Estimator est(rep, cfg);
  est.run(threads);
  return est.result();
}

void write_snapshot_file(const std::string& path, const Estimator& est) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidParams, "cannot write checkpoint " + tmp);
    out << est.snapshot();
    if (!out) throw Error(ErrorCode::InvalidParams, "cannot write checkpoint " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error(ErrorCode::InvalidParams, "cannot move checkpoint into place at " + path);
  }
}

std::string read_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) corrupt("cannot open snapshot " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BoundComparison compare_bound(const LyapunovEstimate& e, long k, const Rational& deg_par, long genus, long cusps) {
  if (k < 1 || k > static_cast<long>(e.lambda.size())) throw Error(ErrorCode::OutOfRange, "need 1 <= k <= rank");
  BoundComparison out;
  out.bound_exact = hodge::main_bound(deg_par, genus, cusps);
  out.bound = out.bound_exact.get_d();
  for (long i = 0; i < k; ++i) out.partial_sum += e.lambda[static_cast<std::size_t>(i)];
  out.slack = out.partial_sum - out.bound;
  return out;
}

// ---------------------------------------------------------------------------

void to_json(json& j, const SimulationConfig& c) {
  j = json{{"dt", c.dt},
           {"steps", c.steps},
           {"burn_in", c.burn_in},
           {"qr_interval", c.qr_interval},
           {"trajectories", c.trajectories},
           {"seed", c.seed},
           {"y_guard", c.y_guard},
           {"cusp_rotation", c.assignment.rotation}};
}

void from_json(const json& j, SimulationConfig& c) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidParams, "configuration must be a JSON object");
  try {
    if (j.contains("dt")) c.dt = j.at("dt").get<double>();
    if (j.contains("steps")) c.steps = j.at("steps").get<std::int64_t>();
    if (j.contains("burn_in")) c.burn_in = j.at("burn_in").get<std::int64_t>();
    if (j.contains("qr_interval")) c.qr_interval = j.at("qr_interval").get<std::int64_t>();
    if (j.contains("trajectories")) c.trajectories = j.at("trajectories").get<std::int64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("y_guard")) c.y_guard = j.at("y_guard").get<double>();
    if (j.contains("cusp_rotation")) c.assignment.rotation = j.at("cusp_rotation").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParams, std::string("bad configuration value: ") + e.what());
  }
}

void to_json(json& j, const LyapunovEstimate& e) {
  j = json{{"lambda", e.lambda},
           {"stderr", e.std_error},
           {"total_time", e.total_time},
           {"symmetry_defect", e.symmetry_defect},
           {"per_trajectory", e.per_trajectory}};
}

void from_json(const json& j, LyapunovEstimate& e) {
  e.lambda = j.at("lambda").get<std::vector<double>>();
  e.std_error = j.at("stderr").get<std::vector<double>>();
  e.total_time = j.at("total_time").get<double>();
  e.symmetry_defect = j.at("symmetry_defect").get<double>();
  e.per_trajectory = j.at("per_trajectory").get<std::vector<std::vector<double>>>();
}

}  // namespace hyplyap::lyapunov

namespace hyplyap::hodge {

nlohmann::json to_json_value(const SlopePolygon& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : p.vertices) {
    nlohmann::json vertex{{"rank", v.rank}, {"height", v.height}};
    if (v.exact) vertex["exact"] = to_string(*v.exact);
    if (v.sigma > 0.0) vertex["sigma"] = v.sigma;
    out.push_back(std::move(vertex));
  }
  return out;
}

}  // namespace hyplyap::hodge
