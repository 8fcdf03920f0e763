#pragma once

// Truncated power series with exact rational coefficients, the mirror quintic
// periods, their Wronskian, the theta quotient lambda(q), the pullback
// F = W o lambda, and growth diagnostics for the coefficients of 1/(qF).

#include <cstddef>
#include <string>
#include <vector>

#include "hyplyap/rational.hpp"

namespace hyplyap::series {

/// c_0 + c_1 t + ... + c_N t^N, known exactly through order N.
class RationalSeries {
 public:
  RationalSeries() : c_(1) {}
  /// Zero series of the given order.
  explicit RationalSeries(std::size_t order) : c_(order + 1) {}
  /// Throws Error(InvalidParams) when coeffs is empty.
  explicit RationalSeries(std::vector<Rational> coeffs);

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return c_[n]; }
  Rational& operator[](std::size_t n) { return c_[n]; }
  const std::vector<Rational>& coefficients() const { return c_; }

  RationalSeries truncated(std::size_t order) const;
  bool is_zero() const;

  bool operator==(const RationalSeries&) const = default;

 private:
  std::vector<Rational> c_;
};

RationalSeries series_add(const RationalSeries& a, const RationalSeries& b);
RationalSeries series_sub(const RationalSeries& a, const RationalSeries& b);
/// Truncated at min(order a, order b).
RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b);
/// outer(inner(t)); Error(CompositionConstantTerm) unless inner(0) = 0.
RationalSeries series_compose(const RationalSeries& outer, const RationalSeries& inner);
/// Error(ReciprocalZeroConstant) when s(0) = 0.
RationalSeries series_reciprocal(const RationalSeries& s);
/// d/dt; the result has order N - 1 (order 0 for a constant input).
RationalSeries series_derivative(const RationalSeries& s);
/// t d/dt, order preserved.
RationalSeries series_theta(const RationalSeries& s);

/// S(t) + log(t) T(t).
struct LogSeries {
  RationalSeries regular;
  RationalSeries log_part;
};

/// (5n)! / n!^5
RationalSeries psi0_series(std::size_t N);
/// log(t) psi0 + sum_n (5n)!/n!^5 (H_{5n} - H_n) t^n
LogSeries psi1_series(std::size_t N);

struct WronskianAssembly {
  RationalSeries tW;                          // log^0 part of psi0 theta(psi1) - theta(psi0) psi1
  std::vector<RationalSeries> log_parts;      // coefficients of log^1, log^2; zero when consistent
};

WronskianAssembly wronskian_assembly(std::size_t N);
/// t W(t) with W = psi0 psi1' - psi0' psi1. Error(LogCancellationFailure) if
/// any logarithmic term survives. Requires N >= 1.
RationalSeries wronskian_series(std::size_t N);

/// Numerator 2 sum_{n>=0} q^{n(n+1)} and denominator 1 + 2 sum_{n>=1} q^{n^2}.
RationalSeries theta_numerator(std::size_t N);
RationalSeries theta_denominator(std::size_t N);
/// q / 5^5 (numerator / denominator)^4. Requires N >= 1.
RationalSeries lambda_q_series(std::size_t N);

/// q F(q) = q (W o lambda)(q), the simple pole cancelled. Requires N >= 2.
RationalSeries qF_series(std::size_t N);
/// Coefficients of 1 / (q F); Error(PoleOrderMismatch) when qF(0) = 0.
RationalSeries inverse_F_coefficients(std::size_t N);

struct GrowthFit {
  double C = 0.0;          // slope of log|c_n| against sqrt(n)
  double intercept = 0.0;
  double rms_sqrt = 0.0;
  double slope_linear = 0.0;
  double intercept_linear = 0.0;
  double rms_linear = 0.0;
  std::size_t n0 = 0, N = 0;

  bool sqrt_growth_preferred() const { return rms_sqrt < rms_linear; }
};

/// Least squares of log|c_n| on [n0, N] (N = order when omitted) against
/// sqrt(n) and against n. Error(ZeroCoefficientInWindow) for a zero c_n,
/// Error(InvalidParams) for a window with fewer than three points.
GrowthFit growth_fit(const RationalSeries& coeffs, std::size_t n0, std::size_t N = 0);

/// n,numerator,denominator,log_abs
std::string coefficients_csv(const RationalSeries& s);

}  // namespace hyplyap::series
