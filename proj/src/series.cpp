#include "hyplyap/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyplyap/error.hpp"

namespace hyplyap::series {

RationalSeries::RationalSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw Error(ErrorCode::InvalidParams, "a series needs at least its constant term");
}

RationalSeries RationalSeries::truncated(std::size_t order) const {
  std::vector<Rational> c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(order, this->order()) + 1));
  return RationalSeries(std::move(c));
}

bool RationalSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

RationalSeries series_add(const RationalSeries& a, const RationalSeries& b) {
  RationalSeries out(std::min(a.order(), b.order()));
  for (std::size_t n = 0; n <= out.order(); ++n) out[n] = a[n] + b[n];
  return out;
}

RationalSeries series_sub(const RationalSeries& a, const RationalSeries& b) {
  RationalSeries out(std::min(a.order(), b.order()));
  for (std::size_t n = 0; n <= out.order(); ++n) out[n] = a[n] - b[n];
  return out;
}

namespace {

// a * b truncated at `order`, skipping zero coefficients of a.
RationalSeries mul_to(const RationalSeries& a, const RationalSeries& b, std::size_t order) {
  RationalSeries out(order);
  Rational term;
  for (std::size_t i = 0; i <= std::min(order, a.order()); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j <= std::min(order - i, b.order()); ++j) {
      if (b[j] == 0) continue;
      term = a[i] * b[j];
      out[i + j] += term;
    }
  }
  return out;
}

// Integer series, used where denominators factor out.
using IntSeries = std::vector<Integer>;

IntSeries int_mul(const IntSeries& a, const IntSeries& b, std::size_t order) {
  IntSeries out(order + 1);
  for (std::size_t i = 0; i <= std::min(order, a.size() - 1); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j <= std::min(order - i, b.size() - 1); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

// Series of log(t)-polynomials: terms[k] multiplies log(t)^k.
struct LogPoly {
  std::vector<RationalSeries> terms;
};

LogPoly log_mul(const LogPoly& a, const LogPoly& b, std::size_t order) {
  LogPoly out;
  out.terms.assign(a.terms.size() + b.terms.size() - 1, RationalSeries(order));
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    for (std::size_t j = 0; j < b.terms.size(); ++j) {
      out.terms[i + j] = series_add(out.terms[i + j], mul_to(a.terms[i], b.terms[j], order));
    }
  }
  return out;
}

// theta(log^k S) = k log^{k-1} S + log^k theta(S)
LogPoly log_theta(const LogPoly& a) {
  LogPoly out;
  const std::size_t order = a.terms.front().order();
  out.terms.assign(a.terms.size(), RationalSeries(order));
  for (std::size_t k = 0; k < a.terms.size(); ++k) {
    out.terms[k] = series_add(out.terms[k], series_theta(a.terms[k]));
    if (k > 0) {
      RationalSeries scaled = a.terms[k];
      for (std::size_t n = 0; n <= order; ++n) scaled[n] *= static_cast<long>(k);
      out.terms[k - 1] = series_add(out.terms[k - 1], scaled);
    }
  }
  return out;
}

LogPoly log_sub(const LogPoly& a, const LogPoly& b) {
  LogPoly out;
  const std::size_t order = a.terms.front().order();
  out.terms.assign(std::max(a.terms.size(), b.terms.size()), RationalSeries(order));
  for (std::size_t k = 0; k < out.terms.size(); ++k) {
    if (k < a.terms.size()) out.terms[k] = series_add(out.terms[k], a.terms[k]);
    if (k < b.terms.size()) out.terms[k] = series_sub(out.terms[k], b.terms[k]);
  }
  return out;
}

void require_order(std::size_t N, std::size_t minimum, const char* what) {
  if (N < minimum) {
    throw Error(ErrorCode::InvalidParams,
                std::string(what) + " needs truncation order N >= " + std::to_string(minimum));
  }
}

}  // namespace

RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b) {
  return mul_to(a, b, std::min(a.order(), b.order()));
}

RationalSeries series_compose(const RationalSeries& outer, const RationalSeries& inner) {
  if (inner[0] != 0) {
    throw Error(ErrorCode::CompositionConstantTerm, "inner series of a composition must vanish at 0");
  }
  const std::size_t N = std::min(outer.order(), inner.order());
  // Horner from the top. The partial result at index k only matters through
  // order N - k, because it is multiplied by inner^k afterwards.
  RationalSeries acc(std::vector<Rational>{outer[N]});
  for (std::size_t k = N; k-- > 0;) {
    RationalSeries next = mul_to(acc, inner, N - k);
    next[0] += outer[k];
    acc = std::move(next);
  }
  return acc;
}

RationalSeries series_reciprocal(const RationalSeries& s) {
  if (s[0] == 0) throw Error(ErrorCode::ReciprocalZeroConstant, "reciprocal of a series with zero constant term");
  const std::size_t N = s.order();
  RationalSeries out(N);
  const Rational inv0 = 1 / s[0];
  out[0] = inv0;
  Rational acc, term;
  for (std::size_t n = 1; n <= N; ++n) {
    acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (s[k] == 0) continue;
      term = s[k] * out[n - k];
      acc += term;
    }
    out[n] = -acc * inv0;
  }
  return out;
}

RationalSeries series_derivative(const RationalSeries& s) {
  if (s.order() == 0) return RationalSeries(0);
  RationalSeries out(s.order() - 1);
  for (std::size_t n = 0; n < s.order(); ++n) out[n] = s[n + 1] * static_cast<unsigned long>(n + 1);
  return out;
}

RationalSeries series_theta(const RationalSeries& s) {
  RationalSeries out(s.order());
  for (std::size_t n = 0; n <= s.order(); ++n) out[n] = s[n] * static_cast<unsigned long>(n);
  return out;
}

// ---------------------------------------------------------------------------

RationalSeries psi0_series(std::size_t N) {
  RationalSeries out(N);
  Integer c = 1;
  out[0] = 1;
  for (std::size_t n = 0; n < N; ++n) {
    // c_{n+1} / c_n = (5n+1)(5n+2)(5n+3)(5n+4)(5n+5) / (n+1)^5
    for (unsigned long j = 1; j <= 5; ++j) c *= 5 * static_cast<unsigned long>(n) + j;
    Integer d = static_cast<unsigned long>(n + 1);
    mpz_pow_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    out[n + 1] = c;
  }
  return out;
}

LogSeries psi1_series(std::size_t N) {
  LogSeries out{RationalSeries(N), psi0_series(N)};
  Rational harmonic = 0;  // sum_{k=n+1}^{5n} 1/k
  for (std::size_t n = 1; n <= N; ++n) {
    // From n-1 to n: add 1/k for k in (5n-5, 5n], remove 1/n.
    for (unsigned long k = 5 * static_cast<unsigned long>(n) - 4; k <= 5 * n; ++k) harmonic += ratio(1, k);
    harmonic -= ratio(1, static_cast<unsigned long>(n));
    out.regular[n] = out.log_part[n] * harmonic;
  }
  return out;
}

WronskianAssembly wronskian_assembly(std::size_t N) {
  const RationalSeries psi0 = psi0_series(N);
  const LogSeries psi1 = psi1_series(N);
  const LogPoly p0{{psi0}};
  const LogPoly p1{{psi1.regular, psi1.log_part}};
  const LogPoly w = log_sub(log_mul(p0, log_theta(p1), N), log_mul(log_theta(p0), p1, N));
  WronskianAssembly out;
  out.tW = w.terms[0];
  out.log_parts.assign(w.terms.begin() + 1, w.terms.end());
  return out;
}

RationalSeries wronskian_series(std::size_t N) {
  require_order(N, 1, "wronskian_series");
  auto assembly = wronskian_assembly(N);
  for (std::size_t k = 0; k < assembly.log_parts.size(); ++k) {
    if (!assembly.log_parts[k].is_zero()) {
      throw Error(ErrorCode::LogCancellationFailure,
                  "coefficient of log(t)^" + std::to_string(k + 1) + " in the Wronskian does not vanish");
    }
  }
  return std::move(assembly.tW);
}

RationalSeries theta_numerator(std::size_t N) {
  RationalSeries out(N);
  for (std::size_t n = 0; n * (n + 1) <= N; ++n) out[n * (n + 1)] = 2;
  return out;
}

RationalSeries theta_denominator(std::size_t N) {
  RationalSeries out(N);
  out[0] = 1;
  for (std::size_t n = 1; n * n <= N; ++n) out[n * n] = 2;
  return out;
}

namespace {

// M = 5^5 lambda / q = (numerator / denominator)^4 with integer coefficients,
// truncated at `order`. The denominator has constant term 1.
IntSeries lambda_kernel(std::size_t order) {
  const RationalSeries num = theta_numerator(order), den = theta_denominator(order);
  IntSeries inv(order + 1);  // 1 / denominator
  inv[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    Integer acc = 0;
    for (std::size_t k = 1; k * k <= n; ++k) acc += 2 * inv[n - k * k];
    inv[n] = -acc;
  }
  IntSeries ratio_series(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    if (num[i] == 0) continue;
    for (std::size_t j = 0; i + j <= order; ++j) ratio_series[i + j] += 2 * inv[j];
  }
  const IntSeries sq = int_mul(ratio_series, ratio_series, order);
  return int_mul(sq, sq, order);
}

const Integer& five_to_fifth() {
  static const Integer v = 3125;
  return v;
}

}  // namespace

RationalSeries lambda_q_series(std::size_t N) {
  require_order(N, 1, "lambda_q_series");
  const IntSeries m = lambda_kernel(N - 1);
  RationalSeries out(N);
  for (std::size_t n = 1; n <= N; ++n) out[n] = ratio(m[n - 1], five_to_fifth());
  return out;
}

RationalSeries qF_series(std::size_t N) {
  require_order(N, 2, "qF_series");
  const RationalSeries tw = wronskian_series(N);
  const IntSeries m = lambda_kernel(N);

  // (tW o lambda)(q) = sum_k tw_k q^k M^k / 5^{5k}. The powers M^k stay
  // integral, so the only rational work is one scaling per term.
  RationalSeries composed(N);
  composed[0] = tw[0];
  IntSeries power{Integer(1)};
  Integer scale = 1;
  for (std::size_t k = 1; k <= N; ++k) {
    power = int_mul(power, m, N - k);
    scale *= five_to_fifth();
    if (tw[k] == 0) continue;
    const Rational factor = tw[k] / Rational(scale);
    for (std::size_t j = 0; j + k <= N; ++j) {
      if (power[j] != 0) composed[j + k] += factor * power[j];
    }
  }

  // qF = q (tW o lambda) / lambda = 5^5 (tW o lambda) / M.
  RationalSeries mser(N);
  for (std::size_t n = 0; n <= N; ++n) mser[n] = m[n];
  RationalSeries out = series_mul(composed, series_reciprocal(mser));
  for (std::size_t n = 0; n <= N; ++n) out[n] *= five_to_fifth();
  return out;
}

RationalSeries inverse_F_coefficients(std::size_t N) {
  const RationalSeries qf = qF_series(N);
  if (qf[0] == 0) throw Error(ErrorCode::PoleOrderMismatch, "q F(q) vanishes at q = 0; F has no simple pole there");
  return series_reciprocal(qf);
}

// ---------------------------------------------------------------------------

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace

GrowthFit growth_fit(const RationalSeries& coeffs, std::size_t n0, std::size_t N) {
  if (N == 0) N = coeffs.order();
  if (N > coeffs.order()) throw Error(ErrorCode::InvalidParams, "fit window extends past the truncation order");
  if (n0 + 2 > N) throw Error(ErrorCode::InvalidParams, "fit window needs at least three coefficients");
  std::vector<double> sq, lin, y;
  for (std::size_t n = n0; n <= N; ++n) {
    if (coeffs[n] == 0) {
      throw Error(ErrorCode::ZeroCoefficientInWindow, "coefficient " + std::to_string(n) + " is zero");
    }
    sq.push_back(std::sqrt(static_cast<double>(n)));
    lin.push_back(static_cast<double>(n));
    y.push_back(log_abs(coeffs[n]));
  }
  const LineFit a = least_squares(sq, y);
  const LineFit b = least_squares(lin, y);
  GrowthFit g;
  g.C = a.slope;
  g.intercept = a.intercept;
  g.rms_sqrt = a.rms;
  g.slope_linear = b.slope;
  g.intercept_linear = b.intercept;
  g.rms_linear = b.rms;
  g.n0 = n0;
  g.N = N;
  return g;
}

std::string coefficients_csv(const RationalSeries& s) {
  std::ostringstream out;
  out.precision(17);
  out << "n,numerator,denominator,log_abs\n";
  for (std::size_t n = 0; n <= s.order(); ++n) {
    out << n << ',' << s[n].get_num().get_str() << ',' << s[n].get_den().get_str() << ',';
    if (s[n] == 0) {
      out << "-inf";
    } else {
      out << log_abs(s[n]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hyplyap::series
