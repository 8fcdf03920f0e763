#include "hyplyap/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyplyap/error.hpp"

namespace hyplyap::hodge {

namespace {

void require_cy_range(const Rational& mu1, const Rational& mu2) {
  if (!(mu1 > 0 && mu1 <= mu2 && mu2 <= ratio(1, 2))) {
    throw Error(ErrorCode::InvalidParams,
                "need 0 < mu1 <= mu2 <= 1/2, got (" + to_string(mu1) + ", " + to_string(mu2) + ")");
  }
}

void require_rank4(const monodromy::LocalExponentData& exps) {
  if (exps.exponents.size() != 4) {
    throw Error(ErrorCode::InvalidExponents, "cokernel lengths are defined for rank 4 only");
  }
  if (!std::is_sorted(exps.exponents.begin(), exps.exponents.end())) {
    throw Error(ErrorCode::InvalidExponents, "local exponents must be sorted");
  }
}

long to_long(const Integer& z) { return z.get_si(); }

}  // namespace

WeightedFiltration::WeightedFiltration(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::InvalidParams, "filtration needs at least one weight");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (p.weight < 0 || p.weight >= 1) throw Error(ErrorCode::InvalidParams, "weight outside [0, 1)");
    if (p.dimension < 1) throw Error(ErrorCode::InvalidParams, "graded dimensions must be positive");
    if (i > 0 && !(pieces_[i - 1].weight < p.weight)) {
      throw Error(ErrorCode::InvalidParams, "weights must be strictly increasing");
    }
  }
}

int WeightedFiltration::dimension() const {
  int n = 0;
  for (const auto& p : pieces_) n += p.dimension;
  return n;
}

Rational filtered_dimension(const WeightedFiltration& f) {
  Rational sum = 0;
  for (const auto& p : f.pieces()) sum += p.weight * p.dimension;
  return sum;
}

Rational parabolic_degree(long deg, const std::vector<WeightedFiltration>& cusp_filtrations) {
  Rational sum = deg;
  for (const auto& f : cusp_filtrations) sum += filtered_dimension(f);
  return sum;
}

long cokernel_length(const monodromy::LocalExponentData& exps, int tau_index) {
  require_rank4(exps);
  if (tau_index < 0 || tau_index > 2) throw Error(ErrorCode::OutOfRange, "tau index must be 0, 1 or 2");
  const auto& mu = exps.exponents;
  const int lo = tau_index == 1 ? 1 : 0;  // tau2 has the same cokernel as tau0

  if (exps.location == monodromy::PointLocation::Interior) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (mu[i].get_den() != 1) throw Error(ErrorCode::InvalidExponents, "interior exponents must be integral");
      if (i > 0 && mu[i] == mu[i - 1]) throw Error(ErrorCode::InvalidExponents, "interior exponents must be distinct");
    }
    const Rational len = mu[static_cast<std::size_t>(lo + 1)] - mu[static_cast<std::size_t>(lo)] - 1;
    return to_long(len.get_num());
  }
  return to_long(floor_of(mu[static_cast<std::size_t>(lo + 1)]) - floor_of(mu[static_cast<std::size_t>(lo)]));
}

HodgeDegrees cy_hodge_degrees(const Rational& mu1, const Rational& mu2) {
  require_cy_range(mu1, mu2);
  return {mu1, mu2, -mu2, -mu1};
}

HodgeDegrees cy_hodge_degrees_from_cokernels(const Rational& mu1, const Rational& mu2) {
  require_cy_range(mu1, mu2);
  using monodromy::Cusp;
  monodromy::CYCase shape;
  shape.mu1 = mu1;
  shape.mu2 = mu2;

  // Total cokernel lengths of tau_0, tau_1, tau_2; regular points contribute nothing.
  long total[3] = {0, 0, 0};
  for (Cusp c : {Cusp::Zero, Cusp::One, Cusp::Infinity}) {
    const auto exps = monodromy::local_exponents(shape, c);
    for (int i = 0; i < 3; ++i) total[i] += cokernel_length(exps, i);
  }

  // tau_{p-1}: E^{p,q} -> E^{p-1,q+1} (x) Omega^1(Delta), deg Omega^1_{P^1}(3 points) = 1:
  //   deg E^{p-1,q+1} + 1 = deg E^{p,q} + total[p-1].
  // Weights at oo: E^{3,0} ~ mu1, E^{2,1} ~ mu2, E^{1,2} ~ 1-mu2, E^{0,3} ~ 1-mu1.
  // Duality deg_par E^{p,q} = -deg_par E^{q,p} gives -deg E^{2,1} = deg E^{1,2} + 1
  // and -deg E^{3,0} = deg E^{0,3} + 1 on the integer parts d_pq.
  //   d12 = d21 - 1 + total[1],  -d21 = d12 + 1  =>  2 d21 = -total[1].
  if (total[1] % 2 != 0) throw Error(ErrorCode::InvalidExponents, "inconsistent cokernel lengths");
  const long d21 = -total[1] / 2;
  const long d12 = d21 - 1 + total[1];
  const long d30 = d21 + 1 - total[0];
  const long d03 = d12 - 1 + total[2];
  if (-d30 != d03 + 1) throw Error(ErrorCode::InvalidExponents, "cokernel lengths contradict duality");

  return {Rational(d30) + mu1, Rational(d21) + mu2, Rational(d12) + (1 - mu2), Rational(d03) + (1 - mu1)};
}

Rational main_bound(const Rational& deg_par, long genus, long cusps) {
  const long chi_abs = 2 * genus - 2 + cusps;
  if (genus < 0 || cusps < 0 || chi_abs <= 0) {
    throw Error(ErrorCode::InvalidTopology, "2g - 2 + |cusps| must be positive");
  }
  return Rational(2) * deg_par / chi_abs;
}

Stratum parse_stratum(const std::string& name) {
  if (name == "minimal" || name == "H(2g-2)") return Stratum::Minimal;
  if (name == "bimodal" || name == "H(g-1,g-1)") return Stratum::Bimodal;
  throw Error(ErrorCode::InvalidParams, "unknown stratum '" + name + "' (expected minimal or bimodal)");
}

const char* stratum_name(Stratum s) { return s == Stratum::Minimal ? "minimal" : "bimodal"; }

Rational hyperelliptic_quotient_degree(long genus, long k, Stratum stratum) {
  if (genus < 1 || k < 1 || k > genus) {
    throw Error(ErrorCode::OutOfRange, "need 1 <= k <= g");
  }
  if (stratum == Stratum::Minimal) return 1 - ratio(2 * (k - 1), 2 * genus - 1);
  return 1 - ratio(k - 1, genus);
}

LargeGenusBound large_genus_bound(long genus, long k, Stratum stratum) {
  if (genus < 1 || k < 1 || k > genus) throw Error(ErrorCode::OutOfRange, "need 1 <= k <= g");
  // Closed forms of the partial sums of hyperelliptic_quotient_degree.
  const Rational kk(k);
  const Rational sum = stratum == Stratum::Minimal ? kk - ratio(k * (k - 1), 2 * genus - 1)
                                                   : kk - ratio(k * (k - 1), 2 * genus);
  return {sum, sum - (k - 1)};
}

// ---------------------------------------------------------------------------

bool SlopePolygon::exact() const {
  return std::all_of(vertices.begin(), vertices.end(), [](const PolygonVertex& v) { return v.exact.has_value(); });
}

namespace {

// Index i with vertices[i].rank <= x <= vertices[i+1].rank.
std::size_t segment_for(const std::vector<PolygonVertex>& v, long x) {
  if (v.empty() || x < v.front().rank || x > v.back().rank) {
    throw Error(ErrorCode::OutOfRange, "abscissa outside polygon");
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (x <= v[i + 1].rank) return i;
  }
  return v.size() - 1;
}

}  // namespace

double SlopePolygon::height_at(long x) const {
  const std::size_t i = segment_for(vertices, x);
  if (i + 1 >= vertices.size() || vertices[i].rank == x) return vertices[i].height;
  const auto& a = vertices[i];
  const auto& b = vertices[i + 1];
  const double t = static_cast<double>(x - a.rank) / static_cast<double>(b.rank - a.rank);
  return a.height + t * (b.height - a.height);
}

std::optional<Rational> SlopePolygon::exact_height_at(long x) const {
  if (!exact()) return std::nullopt;
  const std::size_t i = segment_for(vertices, x);
  if (i + 1 >= vertices.size() || vertices[i].rank == x) return vertices[i].exact;
  const auto& a = vertices[i];
  const auto& b = vertices[i + 1];
  const Rational t = ratio(x - a.rank, b.rank - a.rank);
  return *a.exact + t * (*b.exact - *a.exact);
}

double SlopePolygon::sigma_at(long x) const {
  const std::size_t i = segment_for(vertices, x);
  if (i + 1 >= vertices.size() || vertices[i].rank == x) return vertices[i].sigma;
  return std::max(vertices[i].sigma, vertices[i + 1].sigma);
}

std::string SlopePolygon::csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "rank,height\n";
  for (const auto& v : vertices) {
    out << v.rank << ',';
    if (v.exact) {
      out << to_string(*v.exact);
    } else {
      out << v.height;
    }
    out << '\n';
  }
  return out.str();
}

SlopePolygon hn_polygon(const std::vector<HnPiece>& pieces, const Rational& chi_abs) {
  if (chi_abs <= 0) throw Error(ErrorCode::InvalidTopology, "|chi| must be positive");
  SlopePolygon poly;
  poly.vertices.push_back({0, 0.0, Rational(0), 0.0});
  long rank = 0;
  Rational degree = 0;
  std::optional<Rational> previous_slope;
  for (const auto& p : pieces) {
    if (p.rank < 1) throw Error(ErrorCode::InvalidParams, "HN pieces need positive rank");
    const Rational slope = p.degree / p.rank;
    if (previous_slope && !(slope < *previous_slope)) {
      throw Error(ErrorCode::NotConcave, "Harder-Narasimhan slopes must be strictly decreasing");
    }
    previous_slope = slope;
    rank += p.rank;
    degree += p.degree;
    const Rational h = Rational(2) * degree / chi_abs;
    poly.vertices.push_back({rank, h.get_d(), h, 0.0});
  }
  return poly;
}

SlopePolygon lyapunov_polygon(const std::vector<double>& lambda, double scale,
                              const std::vector<double>& stderr_values) {
  SlopePolygon poly;
  poly.vertices.push_back({0, 0.0, std::nullopt, 0.0});
  double sum = 0.0, var = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    sum += scale * lambda[i];
    if (i < stderr_values.size()) var += scale * scale * stderr_values[i] * stderr_values[i];
    poly.vertices.push_back({static_cast<long>(i + 1), sum, std::nullopt, std::sqrt(var)});
  }
  return poly;
}

SlopePolygon lyapunov_polygon_exact(const std::vector<Rational>& lambda) {
  SlopePolygon poly;
  poly.vertices.push_back({0, 0.0, Rational(0), 0.0});
  Rational sum = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    sum += lambda[i];
    poly.vertices.push_back({static_cast<long>(i + 1), sum.get_d(), sum, 0.0});
  }
  return poly;
}

bool polygon_dominates(const SlopePolygon& upper, const SlopePolygon& lower) {
  if (upper.vertices.empty() || lower.vertices.empty()) return true;
  const long lo = std::max(upper.vertices.front().rank, lower.vertices.front().rank);
  const long hi = std::min(upper.vertices.back().rank, lower.vertices.back().rank);
  const bool exact = upper.exact() && lower.exact();
  for (long x = lo; x <= hi; ++x) {
    if (exact) {
      if (*upper.exact_height_at(x) < *lower.exact_height_at(x)) return false;
      continue;
    }
    const double sigma = std::hypot(upper.sigma_at(x), lower.sigma_at(x));
    const double tol = sigma > 0.0 ? 3.0 * sigma : kExactPolygonTolerance;
    if (upper.height_at(x) < lower.height_at(x) - tol) return false;
  }
  return true;
}

SlopePolygon hyperelliptic_hn_polygon(long genus, Stratum stratum) {
  // Quotient degrees are (|chi|/2) q_k, so 2 deg / |chi| sums the q_k directly.
  std::vector<HnPiece> pieces;
  for (long k = 1; k <= genus; ++k) pieces.push_back({1, hyperelliptic_quotient_degree(genus, k, stratum) / 2});
  return hn_polygon(pieces, Rational(1));
}

OrbifoldNormalization orbifold_normalize(const std::vector<double>& lambda, const Rational& mu1, const Rational& mu2) {
  require_cy_range(mu1, mu2);
  OrbifoldNormalization out;
  if (mu1 < mu2 && mu2 < ratio(1, 2)) {
    out.order = lcm_of_denominators({mu1, mu2});
    out.chi_abs = 1 - ratio(1, *out.order);
  } else {
    out.chi_abs = 1;
  }
  const double chi = out.chi_abs.get_d();
  for (double l : lambda) out.lambda_orb.push_back(l / chi);
  return out;
}

}  // namespace hyplyap::hodge
