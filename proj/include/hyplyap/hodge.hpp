#pragma once

// Exact rational bookkeeping for parabolic degrees, Hodge-bundle degrees of
// the Calabi-Yau hypergeometric systems, the Lyapunov lower bound and slope
// polygons.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyplyap/monodromy.hpp"
#include "hyplyap/rational.hpp"

namespace hyplyap::hodge {

/// Weights strictly increasing in [0, 1) with positive graded dimensions.
class WeightedFiltration {
 public:
  struct Piece {
    Rational weight;
    int dimension = 0;
  };

  /// Throws Error(InvalidParams) unless the invariants hold.
  explicit WeightedFiltration(std::vector<Piece> pieces);
  static WeightedFiltration trivial(int dimension) { return WeightedFiltration({{Rational(0), dimension}}); }

  const std::vector<Piece>& pieces() const { return pieces_; }
  int dimension() const;

 private:
  std::vector<Piece> pieces_;
};

/// sum_i weight_i * dim gr_i
Rational filtered_dimension(const WeightedFiltration& f);

/// deg + sum over cusps of the filtered dimensions
Rational parabolic_degree(long deg, const std::vector<WeightedFiltration>& cusp_filtrations);

/// Cokernel length of the Kodaira-Spencer map tau_{index} (index 0, 1, 2) for
/// a rank-4 system with the given local exponents.
///   interior (distinct integral exponents): mu2-mu1-1, mu3-mu2-1, tau2 = tau0
///   cusp: floor(mu2)-floor(mu1), floor(mu3)-floor(mu2), tau2 = tau0
long cokernel_length(const monodromy::LocalExponentData& exps, int tau_index);

struct HodgeDegrees {
  Rational e30, e21, e12, e03;  // parabolic degrees of E^{3,0}, ..., E^{0,3}

  bool operator==(const HodgeDegrees&) const = default;
  /// deg E^{p,q} == -deg E^{q,p}
  bool dual() const { return e30 == -e03 && e21 == -e12; }
};

/// (mu1, mu2, -mu2, -mu1); requires 0 < mu1 <= mu2 <= 1/2.
HodgeDegrees cy_hodge_degrees(const Rational& mu1, const Rational& mu2);

/// The same degrees obtained by chaining the Kodaira-Spencer cokernel lengths
/// at 0, 1, oo with the duality of the real structure and the filtration
/// weights at oo. Independent cross-check of cy_hodge_degrees.
HodgeDegrees cy_hodge_degrees_from_cokernels(const Rational& mu1, const Rational& mu2);

/// 2 deg_par / (2g - 2 + cusps); Error(InvalidTopology) when the Euler
/// characteristic is not negative.
Rational main_bound(const Rational& deg_par, long genus, long cusps);

enum class Stratum { Minimal, Bimodal };  // H(2g-2)^hyp, H(g-1, g-1)^hyp

Stratum parse_stratum(const std::string& name);
const char* stratum_name(Stratum s);

/// Degree of E_k / E_{k-1} in units of |chi| / 2.
Rational hyperelliptic_quotient_degree(long genus, long k, Stratum stratum);

struct LargeGenusBound {
  Rational sum_bound;       // lower bound for lambda_1 + ... + lambda_k
  Rational lambda_k_bound;  // sum_bound - (k - 1), using lambda_i <= 1
};

LargeGenusBound large_genus_bound(long genus, long k, Stratum stratum);

// ---------------------------------------------------------------------------
// Slope polygons.

struct PolygonVertex {
  long rank = 0;
  double height = 0.0;
  std::optional<Rational> exact;  // set for exact polygons
  double sigma = 0.0;             // standard error of a simulated height
};

struct SlopePolygon {
  std::vector<PolygonVertex> vertices;  // starts at (0, 0), rank increasing

  bool exact() const;
  /// Height at an integer abscissa by linear interpolation.
  double height_at(long rank) const;
  std::optional<Rational> exact_height_at(long rank) const;
  double sigma_at(long rank) const;
  /// "rank,height" CSV.
  std::string csv() const;
};

struct HnPiece {
  long rank = 0;
  Rational degree;
};

/// Vertices (rk F_i, 2 deg F_i / |chi|). Error(NotConcave) unless the piece
/// slopes are strictly decreasing.
SlopePolygon hn_polygon(const std::vector<HnPiece>& pieces, const Rational& chi_abs);

/// Vertices (k, scale * sum_{i<=k} lambda_i). scale = |chi| converts orbifold
/// normalized exponents; stderr, when given, sets per-vertex sigmas.
SlopePolygon lyapunov_polygon(const std::vector<double>& lambda, double scale = 1.0,
                              const std::vector<double>& stderr_values = {});
/// Exact heights, e.g. for equality checks against HN polygons.
SlopePolygon lyapunov_polygon_exact(const std::vector<Rational>& lambda);

/// Default tolerance when neither polygon carries simulation error.
inline constexpr double kExactPolygonTolerance = 1e-9;

/// upper(x) >= lower(x) at every shared integer abscissa, within 3 sigma of
/// the simulated heights (or exactly when both are exact).
bool polygon_dominates(const SlopePolygon& upper, const SlopePolygon& lower);

/// Hyperelliptic HN polygon in normalized units: heights are partial sums of
/// hyperelliptic_quotient_degree.
SlopePolygon hyperelliptic_hn_polygon(long genus, Stratum stratum);

// ---------------------------------------------------------------------------

struct OrbifoldNormalization {
  std::vector<double> lambda_orb;
  Rational chi_abs;
  std::optional<Integer> order;  // n of Delta(n, oo, oo); empty for n = oo
};

/// |chi| = 1 - 1/n with n the lcm of the denominators of mu1, mu2 when
/// 0 < mu1 < mu2 < 1/2, and n = oo otherwise; lambda_orb = lambda / |chi|.
OrbifoldNormalization orbifold_normalize(const std::vector<double>& lambda, const Rational& mu1, const Rational& mu2);

}  // namespace hyplyap::hodge
