#pragma once

// Oseledets cocycle over the geodesic flow on the thrice-punctured sphere:
// random trajectories, QR deflation, aggregation, and checkpoint/resume.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hyplyap/hyperbolic.hpp"
#include "hyplyap/monodromy.hpp"
#include "hyplyap/rational.hpp"

namespace hyplyap::lyapunov {

struct SimulationConfig {
  double dt = 0.1;
  std::int64_t steps = 2'000'000;
  std::int64_t burn_in = 10'000;
  std::int64_t qr_interval = 10;
  std::int64_t trajectories = 8;
  std::uint64_t seed = 1;
  double y_guard = 1e-12;
  monodromy::CuspAssignment assignment;

  /// Throws Error(InvalidParams).
  void validate() const;
  /// Geodesic time accumulated by one trajectory after burn-in.
  double accumulated_time() const { return static_cast<double>(steps - burn_in) * dt; }

  bool operator==(const SimulationConfig& o) const {
    return dt == o.dt && steps == o.steps && burn_in == o.burn_in && qr_interval == o.qr_interval &&
           trajectories == o.trajectories && seed == o.seed && y_guard == o.y_guard &&
           assignment.rotation == o.assignment.rotation;
  }
};

struct CocycleState {
  hyperbolic::FrameState frame;
  Eigen::MatrixXd B;
  std::vector<double> logsums;
  double elapsed = 0.0;
  std::int64_t step = 0;
  std::int64_t steps_since_qr = 0;
  std::uint64_t labels_since_qr = 0;
  std::mt19937_64 rng;
};

struct LyapunovEstimate {
  std::vector<double> lambda;        // descending
  std::vector<double> std_error;     // sample sd / sqrt(n); 0 for a single trajectory
  double total_time = 0.0;           // summed over trajectories
  double symmetry_defect = 0.0;
  std::vector<std::vector<double>> per_trajectory;

  double max_std_error() const;
};

/// A QR event is forced once this many generator labels have been applied
/// since the previous one, so long cusp runs never reach QR as a single
/// badly conditioned product.
inline constexpr std::uint64_t kMaxLabelsBetweenQR = 16;

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index);

/// One trajectory, advanced in chunks.
class Trajectory {
 public:
  Trajectory(std::shared_ptr<const monodromy::RealWordAction> action, const SimulationConfig& cfg,
             std::uint64_t stream_seed);
  Trajectory(std::shared_ptr<const monodromy::RealWordAction> action, const SimulationConfig& cfg,
             CocycleState state);

  /// Runs at most max_steps further steps (all remaining when max_steps <= 0).
  void advance(std::int64_t max_steps = 0);
  bool finished() const { return st_.step >= cfg_.steps; }
  const CocycleState& state() const { return st_; }

  /// logsums / elapsed, sorted descending; realified pairs are averaged.
  std::vector<double> exponents() const;

 private:
  void apply_word(bool record);
  void qr_event(bool record);

  std::shared_ptr<const monodromy::RealWordAction> action_;
  SimulationConfig cfg_;
  CocycleState st_;
  hyperbolic::GeneratorWord word_;
  Eigen::MatrixXd tmp_;
  double stretch_ = 1.0;
};

/// Throws Error(NotIntegrable) unless every cusp monodromy is non-expanding.
void require_non_expanding(const monodromy::MonodromyRep& rep);

std::vector<double> run_trajectory(const monodromy::MonodromyRep& rep, const SimulationConfig& cfg,
                                   std::uint64_t stream_seed);

LyapunovEstimate aggregate(const std::vector<std::vector<double>>& per_trajectory, double total_time);

double symmetry_defect(const std::vector<double>& lambda);
inline double symmetry_defect(const LyapunovEstimate& e) { return symmetry_defect(e.lambda); }

/// All trajectories of one estimate; the unit of parallelism and checkpointing.
class Estimator {
 public:
  Estimator(const monodromy::MonodromyRep& rep, const SimulationConfig& cfg);
  /// Throws Error(CorruptSnapshot) on malformed input, version or representation mismatch.
  static Estimator from_snapshot(const monodromy::MonodromyRep& rep, const std::string& snapshot);

  /// Advances every trajectory by up to chunk_steps (all when <= 0) using
  /// `threads` workers (0: hardware concurrency). Results do not depend on
  /// the worker count.
  void advance(std::int64_t chunk_steps, unsigned threads = 1);
  /// Repeats advance until finished, calling after_chunk between chunks.
  void run(unsigned threads = 1, std::int64_t chunk_steps = 0,
           const std::function<void(const Estimator&)>& after_chunk = {});

  bool finished() const;
  const SimulationConfig& config() const { return cfg_; }
  const std::vector<Trajectory>& trajectories() const { return trajectories_; }

  LyapunovEstimate result() const;
  std::string snapshot() const;

 private:
  Estimator(const monodromy::MonodromyRep& rep, const SimulationConfig& cfg, bool gate);

  SimulationConfig cfg_;
  std::string fingerprint_;
  std::shared_ptr<const monodromy::RealWordAction> action_;
  std::vector<Trajectory> trajectories_;
};

inline constexpr int kSnapshotVersion = 1;

LyapunovEstimate estimate(const monodromy::MonodromyRep& rep, const SimulationConfig& cfg, unsigned threads = 1);

/// Writes via a temporary file and rename.
void write_snapshot_file(const std::string& path, const Estimator& est);
std::string read_snapshot_file(const std::string& path);

/// Stable hash of the representation and cusp assignment.
std::string rep_fingerprint(const monodromy::MonodromyRep& rep, monodromy::CuspAssignment assign);

struct BoundComparison {
  Rational bound_exact;
  double bound = 0.0;
  double partial_sum = 0.0;
  double slack = 0.0;
};

/// bound = main_bound(deg_par, g, cusps), partial_sum = lambda_1 + ... + lambda_k.
BoundComparison compare_bound(const LyapunovEstimate& e, long k, const Rational& deg_par, long genus, long cusps);

}  // namespace hyplyap::lyapunov
