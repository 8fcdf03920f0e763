#include "hyplyap/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "hyplyap/error.hpp"

namespace hyplyap::monodromy {

namespace {

using cd = std::complex<double>;

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// prod (X - e^{2 pi i t_j}), coefficients from X^0 up.
std::vector<cd> unit_root_polynomial(const std::vector<Rational>& params) {
  std::vector<cd> p{cd(1.0, 0.0)};
  for (const auto& t : params) {
    const cd root = std::polar(1.0, 2.0 * std::numbers::pi * t.get_d());
    std::vector<cd> next(p.size() + 1, cd(0.0, 0.0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= root * p[i];
    }
    p = std::move(next);
  }
  return p;
}

std::optional<RationalPolynomial> integral_coefficients(const std::vector<cd>& p) {
  RationalPolynomial out;
  for (const auto& c : p) {
    const double re = std::round(c.real());
    if (std::fabs(c.real() - re) > 1e-9 || std::fabs(c.imag()) > 1e-9) return std::nullopt;
    out.emplace_back(static_cast<long>(re));
  }
  return out;
}

Eigen::MatrixXcd complex_companion(const std::vector<cd>& monic) {
  const auto n = static_cast<Eigen::Index>(monic.size() - 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1) = -monic[static_cast<std::size_t>(i)];
  return m;
}

bool entries_real(const Eigen::MatrixXcd& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

Eigen::MatrixXcd drop_tiny_imaginary(Eigen::MatrixXcd m) {
  if (m.imag().cwiseAbs().maxCoeff() < 1e-13 * (1.0 + m.real().cwiseAbs().maxCoeff())) {
    m = m.real().cast<cd>();
  }
  return m;
}

// Eigenvalues that coalesce numerically (Jordan blocks) are replaced by the
// geometric mean of the cluster, which is well conditioned.
std::vector<double> clustered_moduli(const Eigen::VectorXcd& eig) {
  const auto n = static_cast<std::size_t>(eig.size());
  std::vector<int> cluster(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = next;
    // grow transitively
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (cluster[j] >= 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (cluster[k] == next && std::abs(eig[static_cast<Eigen::Index>(j)] - eig[static_cast<Eigen::Index>(k)]) <
                                        1e-3 * (1.0 + std::abs(eig[static_cast<Eigen::Index>(k)]))) {
            cluster[j] = next;
            grew = true;
            break;
          }
        }
      }
    }
    ++next;
  }
  std::vector<double> moduli(n);
  for (int c = 0; c < next; ++c) {
    double log_sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cluster[i] == c) {
        log_sum += std::log(std::abs(eig[static_cast<Eigen::Index>(i)]));
        ++count;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (cluster[i] == c) moduli[i] = std::exp(log_sum / count);
    }
  }
  std::sort(moduli.begin(), moduli.end());
  return moduli;
}

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

// Splits off cyclotomic factors exactly; any remainder is examined numerically.
std::vector<double> exact_moduli(const RationalMatrix& m) {
  RationalPolynomial p = m.characteristic_polynomial();
  const std::size_t r = m.rows();
  std::vector<double> moduli;
  const unsigned max_order = static_cast<unsigned>(std::max<std::size_t>(2, 2 * r * r + 2));
  for (unsigned order = 1; order <= max_order && p.size() > 1; ++order) {
    if (euler_phi(order) > p.size() - 1) continue;
    const RationalPolynomial phi = cyclotomic_polynomial(order);
    for (;;) {
      auto [q, rem] = poly_divmod(p, phi);
      if (!rem.empty()) break;
      p = std::move(q);
      moduli.insert(moduli.end(), phi.size() - 1, 1.0);
      if (p.size() <= 1) break;
    }
  }
  if (p.size() > 1) {
    Eigen::MatrixXcd comp = companion_matrix(p).to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    const auto rest = clustered_moduli(solver.eigenvalues());
    moduli.insert(moduli.end(), rest.begin(), rest.end());
  }
  std::sort(moduli.begin(), moduli.end());
  return moduli;
}

Eigen::MatrixXcd complex_power(Eigen::MatrixXcd m, std::int64_t e) {
  if (e < 0) {
    m = m.inverse().eval();
    e = -e;
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  while (e > 0) {
    if (e & 1) out = (out * m).eval();
    m = (m * m).eval();
    e >>= 1;
  }
  return out;
}

RationalMatrix rational_power(RationalMatrix m, std::int64_t e) {
  if (e < 0) {
    m = m.inverse();
    e = -e;
  }
  RationalMatrix out = RationalMatrix::identity(m.rows());
  while (e > 0) {
    if (e & 1) out = out * m;
    m = m * m;
    e >>= 1;
  }
  return out;
}

std::array<int, 3> rotation_order(CuspAssignment assign) {
  switch (((assign.rotation % 3) + 3) % 3) {
    case 1: return {1, 2, 0};
    case 2: return {2, 0, 1};
    default: return {0, 1, 2};
  }
}

}  // namespace

const char* cusp_name(Cusp c) {
  switch (c) {
    case Cusp::Zero: return "0";
    case Cusp::One: return "1";
    case Cusp::Infinity: return "inf";
  }
  return "?";
}

HypergeometricParams HypergeometricParams::make(std::vector<Rational> alpha, std::vector<Rational> beta) {
  if (alpha.empty() || alpha.size() != beta.size()) {
    throw Error(ErrorCode::InvalidParams, "alpha and beta must be non-empty and of equal length");
  }
  for (const auto* list : {&alpha, &beta}) {
    for (const auto& v : *list) {
      if (v < 0 || v >= 1) throw Error(ErrorCode::InvalidParams, "parameter " + to_string(v) + " outside [0, 1)");
    }
  }
  std::sort(alpha.begin(), alpha.end());
  std::sort(beta.begin(), beta.end());
  for (const auto& a : alpha) {
    for (const auto& b : beta) {
      const Rational sum = a + b;
      if (is_integer(sum)) {
        throw Error(ErrorCode::InvalidParams,
                    "alpha " + to_string(a) + " and beta " + to_string(b) + " violate alpha != 1 - beta (mod 1)");
      }
      if (a == b) {
        throw Error(ErrorCode::InvalidParams,
                    "alpha and beta share " + to_string(a) + "; the companion-matrix group is reducible");
      }
    }
  }
  return {std::move(alpha), std::move(beta)};
}

// ---------------------------------------------------------------------------

MonodromyRep MonodromyRep::exact(RationalMatrix h0, RationalMatrix h1, RationalMatrix hinf) {
  const std::size_t n = h0.rows();
  for (const auto* m : {&h0, &h1, &hinf}) {
    if (m->rows() != n || m->cols() != n) throw Error(ErrorCode::InvalidParams, "monodromy matrices must be square of equal size");
  }
  if (!(hinf * h1 * h0 == RationalMatrix::identity(n))) {
    throw Error(ErrorCode::InvalidParams, "hinf * h1 * h0 != Id");
  }
  MonodromyRep rep;
  rep.numeric_ = {h0.to_complex(), h1.to_complex(), hinf.to_complex()};
  rep.exact_ = std::array<RationalMatrix, 3>{std::move(h0), std::move(h1), std::move(hinf)};
  rep.real_ = true;
  return rep;
}

MonodromyRep MonodromyRep::unchecked(Eigen::MatrixXcd h0, Eigen::MatrixXcd h1, Eigen::MatrixXcd hinf) {
  const auto n = h0.rows();
  for (const auto* m : {&h0, &h1, &hinf}) {
    if (m->rows() != n || m->cols() != n || n == 0) {
      throw Error(ErrorCode::InvalidParams, "monodromy matrices must be square of equal size");
    }
  }
  MonodromyRep rep;
  rep.numeric_ = {std::move(h0), std::move(h1), std::move(hinf)};
  rep.real_ = std::all_of(rep.numeric_.begin(), rep.numeric_.end(), entries_real);
  return rep;
}

MonodromyRep MonodromyRep::floating(Eigen::MatrixXcd h0, Eigen::MatrixXcd h1, Eigen::MatrixXcd hinf) {
  MonodromyRep rep = unchecked(drop_tiny_imaginary(std::move(h0)), drop_tiny_imaginary(std::move(h1)),
                               drop_tiny_imaginary(std::move(hinf)));
  if (rep.product_residual() > 1e-10) {
    throw Error(ErrorCode::InvalidParams, "hinf * h1 * h0 != Id (residual " + std::to_string(rep.product_residual()) + ")");
  }
  return rep;
}

const RationalMatrix& MonodromyRep::exact_at(Cusp c) const {
  if (!exact_) throw std::logic_error("representation is in floating mode");
  return (*exact_)[static_cast<int>(c)];
}

double MonodromyRep::product_residual() const {
  const auto n = numeric_[0].rows();
  const Eigen::MatrixXcd prod = numeric_[2] * numeric_[1] * numeric_[0];
  return (prod - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

MonodromyRep MonodromyRep::conjugated(const RationalMatrix& g) const {
  if (!exact_) return conjugated(g.to_complex());
  const RationalMatrix gi = g.inverse();
  const auto& e = *exact_;
  return exact(gi * e[0] * g, gi * e[1] * g, gi * e[2] * g);
}

MonodromyRep MonodromyRep::conjugated(const Eigen::MatrixXcd& g) const {
  const Eigen::MatrixXcd gi = g.inverse();
  return floating(gi * numeric_[0] * g, gi * numeric_[1] * g, gi * numeric_[2] * g);
}

MonodromyRep levelt_construct(const HypergeometricParams& p) {
  const auto a_poly = unit_root_polynomial(p.alpha);
  const auto b_poly = unit_root_polynomial(p.beta);
  const auto a_exact = integral_coefficients(a_poly);
  const auto b_exact = integral_coefficients(b_poly);
  if (a_exact && b_exact) {
    const RationalMatrix hinf = companion_matrix(*a_exact);
    const RationalMatrix b_comp = companion_matrix(*b_exact);
    return MonodromyRep::exact(b_comp.inverse(), hinf.inverse() * b_comp, hinf);
  }
  const Eigen::MatrixXcd hinf = complex_companion(a_poly);
  const Eigen::MatrixXcd b_comp = complex_companion(b_poly);
  return MonodromyRep::floating(b_comp.inverse(), hinf.inverse() * b_comp, hinf);
}

MonodromyRep cy_realization(int id) {
  const CYCase& c = cy_case(id);
  return MonodromyRep::exact(c.T0, c.T1, (c.T1 * c.T0).inverse());
}

CuspSpectrum check_nonexpanding(const MonodromyRep& rep) {
  CuspSpectrum out;
  out.non_expanding = true;
  for (Cusp c : {Cusp::Zero, Cusp::One, Cusp::Infinity}) {
    auto& moduli = out.moduli[static_cast<int>(c)];
    if (rep.mode() == ArithmeticMode::Exact) {
      moduli = exact_moduli(rep.exact_at(c));
    } else {
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(rep.at(c), false);
      moduli = clustered_moduli(solver.eigenvalues());
    }
    for (double m : moduli) {
      if (!(std::fabs(m - 1.0) <= kUnitModulusTolerance)) out.non_expanding = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> generator_images(const MonodromyRep& rep, CuspAssignment assign) {
  const auto order = rotation_order(assign);
  const Eigen::MatrixXcd& x = rep.at(static_cast<Cusp>(order[0]));
  const Eigen::MatrixXcd& y = rep.at(static_cast<Cusp>(order[1]));
  return {x, y.inverse()};
}

Eigen::MatrixXcd rep_of_word(const MonodromyRep& rep, const hyperbolic::GeneratorWord& w, CuspAssignment assign) {
  using hyperbolic::Label;
  const auto [a, b] = generator_images(rep, assign);
  auto label_matrix = [&, &a = a, &b = b](Label l) -> Eigen::MatrixXcd {
    switch (l) {
      case Label::A: return a;
      case Label::AInv: return a.inverse();
      case Label::B: return b;
      case Label::BInv: return b.inverse();
    }
    return a;
  };
  const auto n = static_cast<Eigen::Index>(rep.rank());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& run : w.runs()) {
    Eigen::MatrixXcd base = label_matrix(run.base[0]);
    if (run.length == 2) base = (base * label_matrix(run.base[1])).eval();
    out = (out * complex_power(base, run.exponent)).eval();
  }
  return out;
}

RationalMatrix rep_of_word_exact(const MonodromyRep& rep, const hyperbolic::GeneratorWord& w, CuspAssignment assign) {
  using hyperbolic::Label;
  const auto order = rotation_order(assign);
  const RationalMatrix a = rep.exact_at(static_cast<Cusp>(order[0]));
  const RationalMatrix b = rep.exact_at(static_cast<Cusp>(order[1])).inverse();
  const RationalMatrix a_inv = a.inverse(), b_inv = rep.exact_at(static_cast<Cusp>(order[1]));
  auto label_matrix = [&](Label l) -> const RationalMatrix& {
    switch (l) {
      case Label::A: return a;
      case Label::AInv: return a_inv;
      case Label::B: return b;
      case Label::BInv: return b_inv;
    }
    return a;
  };
  RationalMatrix out = RationalMatrix::identity(rep.rank());
  for (const auto& run : w.runs()) {
    RationalMatrix base = label_matrix(run.base[0]);
    if (run.length == 2) base = base * label_matrix(run.base[1]);
    out = out * rational_power(base, run.exponent);
  }
  return out;
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) {
  const auto r = m.rows(), c = m.cols();
  Eigen::MatrixXd out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.real();
  out.topRightCorner(r, c) = -m.imag();
  out.bottomLeftCorner(r, c) = m.imag();
  out.bottomRightCorner(r, c) = m.real();
  return out;
}

RealWordAction::RealWordAction(const MonodromyRep& rep, CuspAssignment assign) {
  const auto [a, b] = generator_images(rep, assign);
  realified_ = !rep.is_real();
  auto to_real = [this](const Eigen::MatrixXcd& m) -> Eigen::MatrixXd {
    return realified_ ? realify(m) : Eigen::MatrixXd(m.real());
  };
  if (rep.mode() == ArithmeticMode::Exact) {
    const auto order = rotation_order(assign);
    const RationalMatrix& x = rep.exact_at(static_cast<Cusp>(order[0]));
    const RationalMatrix& y = rep.exact_at(static_cast<Cusp>(order[1]));
    a_ = x.to_double();
    a_inv_ = x.inverse().to_double();
    b_ = y.inverse().to_double();
    b_inv_ = y.to_double();
  } else {
    a_ = to_real(a);
    a_inv_ = to_real(a.inverse());
    b_ = to_real(b);
    b_inv_ = to_real(b.inverse());
  }
}

const Eigen::MatrixXd& RealWordAction::label_matrix(hyperbolic::Label l) const {
  using hyperbolic::Label;
  switch (l) {
    case Label::A: return a_;
    case Label::AInv: return a_inv_;
    case Label::B: return b_;
    case Label::BInv: return b_inv_;
  }
  return a_;
}

Eigen::MatrixXd RealWordAction::run_matrix(const hyperbolic::WordRun& run) const {
  Eigen::MatrixXd base = label_matrix(run.base[0]);
  std::int64_t e = run.exponent;
  if (run.length == 2) {
    base = e > 0 ? Eigen::MatrixXd(base * label_matrix(run.base[1]))
                 : Eigen::MatrixXd(label_matrix(hyperbolic::inverse(run.base[1])) *
                                   label_matrix(hyperbolic::inverse(run.base[0])));
  } else if (e < 0) {
    base = label_matrix(hyperbolic::inverse(run.base[0]));
  }
  e = std::llabs(e);
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) out = (out * base).eval();
    e >>= 1;
    if (e > 0) base = (base * base).eval();
  }
  return out;
}

void RealWordAction::apply(const hyperbolic::GeneratorWord& w, Eigen::MatrixXd& m) const {
  const auto& runs = w.runs();
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    if (it->length == 1 && (it->exponent == 1 || it->exponent == -1)) {
      const auto& g = label_matrix(it->exponent == 1 ? it->base[0] : hyperbolic::inverse(it->base[0]));
      m = (g * m).eval();
    } else {
      m = (run_matrix(*it) * m).eval();
    }
  }
}

Eigen::MatrixXd RealWordAction::matrix(const hyperbolic::GeneratorWord& w) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(a_.rows(), a_.cols());
  apply(w, m);
  return m;
}

// ---------------------------------------------------------------------------

std::vector<int> hodge_numbers(const HypergeometricParams& p) {
  const std::size_t n = p.rank();
  std::vector<long> rho(n);
  for (std::size_t k = 0; k < n; ++k) {
    long count = 0;
    for (const auto& a : p.alpha) {
      if (a < p.beta[k]) ++count;
    }
    rho[k] = count - static_cast<long>(k + 1);
  }
  const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
  std::vector<int> h(static_cast<std::size_t>(*hi - *lo + 1), 0);
  for (long v : rho) ++h[static_cast<std::size_t>(v - *lo)];
  return h;
}

LocalExponentData local_exponents(const ExponentSource& source, Cusp point) {
  LocalExponentData out;
  out.point = cusp_name(point);
  out.location = PointLocation::Cusp;
  if (const auto* cy = std::get_if<CYCase>(&source)) {
    switch (point) {
      case Cusp::Zero: out.exponents = {0, 0, 0, 0}; break;
      case Cusp::One: out.exponents = {0, 1, 1, 2}; break;
      case Cusp::Infinity: out.exponents = {cy->mu1, cy->mu2, 1 - cy->mu2, 1 - cy->mu1}; break;
    }
  } else {
    const auto& p = std::get<HypergeometricParams>(source);
    switch (point) {
      case Cusp::Zero: out.exponents = p.beta; break;
      case Cusp::Infinity: out.exponents = p.alpha; break;
      case Cusp::One:
        throw Error(ErrorCode::UnsupportedPoint, "local exponents at t=1 are only encoded for the Calabi-Yau systems");
    }
  }
  std::sort(out.exponents.begin(), out.exponents.end());
  return out;
}

}  // namespace hyplyap::monodromy
