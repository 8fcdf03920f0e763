#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hyplyap/error.hpp"
#include "hyplyap/monodromy.hpp"

using namespace hyplyap;
using namespace hyplyap::monodromy;
using hyperbolic::GeneratorWord;
using hyperbolic::Label;

namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

std::vector<Rational> qs(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (auto [n, d] : v) out.push_back(q(n, d));
  return out;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidParams;
}

// Coefficients of prod (X - r_j), from X^0 up.
std::vector<std::complex<double>> poly_from_roots(const std::vector<std::complex<double>>& roots) {
  std::vector<std::complex<double>> c{1.0};
  for (auto r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

// Faddeev-LeVerrier characteristic polynomial det(X - M), from X^0 up.
std::vector<std::complex<double>> char_poly(const Eigen::MatrixXcd& m) {
  const auto n = m.rows();
  std::vector<std::complex<double>> c(n + 1);
  c[n] = 1.0;
  Eigen::MatrixXcd mk = Eigen::MatrixXcd::Zero(n, n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    c[n - k] = -(m * mk).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<Rational> random_exponents(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> den(1, 12);
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) {
    const long d = den(rng);
    out.push_back(q(std::uniform_int_distribution<long>(0, d - 1)(rng), d));
  }
  return out;
}

GeneratorWord random_word(std::mt19937_64& rng, int length) {
  std::vector<Label> labels;
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < length; ++i) labels.push_back(static_cast<Label>(pick(rng)));
  return GeneratorWord::from_labels(labels);
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("params validation") {
  CHECK(code_of([] { HypergeometricParams::make(qs({{0, 1}}), qs({{0, 1}, {1, 2}})); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { HypergeometricParams::make(qs({{1, 1}}), qs({{0, 1}})); }) == ErrorCode::InvalidParams);
  // alpha = 1 - beta makes the system reducible
  CHECK(code_of([] { HypergeometricParams::make(qs({{1, 3}}), qs({{2, 3}})); }) == ErrorCode::InvalidParams);
  const auto p = HypergeometricParams::make(qs({{2, 3}, {1, 3}}), qs({{0, 1}, {0, 1}}));
  CHECK(p.alpha == qs({{1, 3}, {2, 3}}));
}

TEST_CASE("levelt rank-2 unipotent example") {
  const auto rep = levelt_construct(HypergeometricParams::make(qs({{0, 1}, {0, 1}}), qs({{1, 2}, {1, 2}})));
  REQUIRE(rep.mode() == ArithmeticMode::Exact);
  CHECK(rep.exact_at(Cusp::Infinity) == RationalMatrix{{0, -1}, {1, 2}});
  CHECK(rep.exact_at(Cusp::Zero) == RationalMatrix{{0, -1}, {1, -2}}.inverse());
  CHECK(rep.exact_at(Cusp::One) == RationalMatrix{{1, -4}, {0, 1}});
  CHECK((rep.exact_at(Cusp::One) - RationalMatrix::identity(2)).rank() == 1);
}

TEST_CASE("levelt scalar example") {
  const auto rep = levelt_construct(HypergeometricParams::make(qs({{0, 1}}), qs({{1, 2}})));
  CHECK(rep.exact_at(Cusp::Infinity) == RationalMatrix{{1}});
  CHECK(rep.exact_at(Cusp::Zero) == RationalMatrix{{-1}});
  CHECK(rep.exact_at(Cusp::One) == RationalMatrix{{-1}});
  CHECK(rep.product_residual() == 0.0);
}

TEST_CASE("levelt fifth roots example") {
  const auto rep =
      levelt_construct(HypergeometricParams::make(qs({{1, 5}, {2, 5}, {3, 5}, {4, 5}}), qs({{0, 1}, {0, 1}, {0, 1}, {0, 1}})));
  REQUIRE(rep.mode() == ArithmeticMode::Exact);
  CHECK(rep.exact_at(Cusp::Zero).characteristic_polynomial() == qs({{1, 1}, {-4, 1}, {6, 1}, {-4, 1}, {1, 1}}));
  CHECK(rep.exact_at(Cusp::Infinity).characteristic_polynomial() == cyclotomic_polynomial(5));
  const auto gate = check_nonexpanding(rep);
  CHECK(gate.non_expanding);
  for (double m : gate.moduli[static_cast<int>(Cusp::Infinity)]) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("levelt invariants over random parameters") {
  std::mt19937_64 rng(99);
  int built = 0, floating = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    HypergeometricParams p;
    try {
      p = HypergeometricParams::make(random_exponents(rng, n), random_exponents(rng, n));
    } catch (const Error&) {
      continue;
    }
    const auto rep = levelt_construct(p);
    ++built;
    CHECK(rep.product_residual() <= 1e-10);

    // pseudo-reflection: exactly one nonzero singular value of h1 - Id
    const Eigen::MatrixXcd d = rep.at(Cusp::One) - Eigen::MatrixXcd::Identity(n, n);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(d).singularValues();
    CHECK(sv(0) > 1e-6);
    if (n > 1) CHECK(sv(1) <= 1e-9);
    if (rep.mode() == ArithmeticMode::Exact) {
      CHECK((rep.exact_at(Cusp::One) - RationalMatrix::identity(n)).rank() == 1);
    } else {
      ++floating;
    }

    std::vector<std::complex<double>> roots_a, roots_b;
    for (const auto& a : p.alpha) roots_a.push_back(std::polar(1.0, 2 * std::numbers::pi * to_double(a)));
    for (const auto& b : p.beta) roots_b.push_back(std::polar(1.0, 2 * std::numbers::pi * to_double(b)));
    const auto want_a = poly_from_roots(roots_a), want_b = poly_from_roots(roots_b);
    const auto got_a = char_poly(rep.at(Cusp::Infinity)), got_b = char_poly(rep.at(Cusp::Zero).inverse());
    for (int i = 0; i <= n; ++i) {
      CHECK(std::abs(got_a[i] - want_a[i]) <= 1e-10);
      CHECK(std::abs(got_b[i] - want_b[i]) <= 1e-10);
    }
    CHECK(check_nonexpanding(rep).non_expanding);
  }
  CHECK(built > 100);
  CHECK(floating > 10);
}

TEST_CASE("calabi-yau catalog") {
  CHECK(cy_catalog().size() == 14);
  const auto& c4 = cy_case(4);
  CHECK(c4.C == 50);
  CHECK(c4.d == 5);
  CHECK(c4.mu1 == q(1, 5));
  CHECK(c4.mu2 == q(2, 5));
  const auto& c7 = cy_case(7);
  CHECK(c7.C == 64);
  CHECK(c7.d == 16);
  CHECK(c7.mu1 == q(1, 2));
  CHECK(c7.mu2 == q(1, 2));
  CHECK(code_of([] { cy_case(0); }) == ErrorCode::UnknownCase);
  CHECK(code_of([] { cy_realization(15); }) == ErrorCode::UnknownCase);

  const std::string csv = cy_catalog_csv();
  CHECK(csv.rfind("id,label,C,d,mu1,mu2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 15);
}

TEST_CASE("calabi-yau realizations are exact and symplectic") {
  for (const auto& c : cy_catalog()) {
    CAPTURE(c.id);
    const auto rep = cy_realization(c.id);
    REQUIRE(rep.mode() == ArithmeticMode::Exact);
    const auto id4 = RationalMatrix::identity(4);
    const auto& h0 = rep.exact_at(Cusp::Zero);
    const auto& h1 = rep.exact_at(Cusp::One);
    CHECK(rep.exact_at(Cusp::Infinity) * h1 * h0 == id4);
    CHECK(h0 == c.T0);
    CHECK(h1 == c.T1);
    for (const auto* t : {&c.T0, &c.T1}) {
      CHECK(t->transpose() * c.Omega * *t == c.Omega);
      const auto n = *t - id4;
      CHECK(n * n * n * n == RationalMatrix(4, 4));
    }
    CHECK((h1 - id4).rank() == 1);
    CHECK(check_nonexpanding(rep).non_expanding);

    const auto p = c.params();
    CHECK(p.alpha == std::vector<Rational>{c.mu1, c.mu2, 1 - c.mu2, 1 - c.mu1});
    // hinf has the same spectrum as the Levelt hinf for these exponents
    CHECK(rep.exact_at(Cusp::Infinity).characteristic_polynomial() ==
          levelt_construct(p).exact_at(Cusp::Infinity).characteristic_polynomial());
  }
}

TEST_CASE("non-expanding gate") {
  SUBCASE("mirror quintic") {
    const auto gate = check_nonexpanding(cy_realization(4));
    CHECK(gate.non_expanding);
    for (const auto& moduli : gate.moduli)
      for (double m : moduli) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("expanding counterexample") {
    const RationalMatrix h0{{2, 0}, {0, q(1, 2)}};
    const auto rep = MonodromyRep::exact(h0, h0.inverse(), RationalMatrix::identity(2));
    const auto gate = check_nonexpanding(rep);
    CHECK_FALSE(gate.non_expanding);
    const auto& m0 = gate.moduli[0];
    CHECK(*std::max_element(m0.begin(), m0.end()) == doctest::Approx(2.0));
  }
  SUBCASE("product relation is enforced") {
    const RationalMatrix h0{{2, 0}, {0, q(1, 2)}};
    CHECK(code_of([&] { MonodromyRep::exact(h0, h0, RationalMatrix::identity(2)); }) == ErrorCode::InvalidParams);
  }
}

TEST_CASE("words to matrices") {
  const auto rep = cy_realization(4);
  const auto& h0 = rep.exact_at(Cusp::Zero);
  const auto& h1 = rep.exact_at(Cusp::One);
  const auto id4 = RationalMatrix::identity(4);

  CHECK(rep_of_word_exact(rep, GeneratorWord{}) == id4);
  CHECK(rep_of_word_exact(rep, GeneratorWord::from_labels({Label::A})) == h0);
  CHECK(rep_of_word_exact(rep, GeneratorWord::from_labels({Label::B})) == h1.inverse());
  CHECK(rep_of_word_exact(rep, GeneratorWord::from_labels({Label::A, Label::AInv})) == id4);
  CHECK(rep_of_word_exact(rep, GeneratorWord::from_labels({Label::A, Label::B})) == h0 * h1.inverse());

  // rotation 1 sends A to the next loop
  CHECK(rep_of_word_exact(rep, GeneratorWord::from_labels({Label::A}), CuspAssignment{1}) == h1);

  std::mt19937_64 rng(3);
  const RealWordAction action(rep);
  for (int k = 0; k < 200; ++k) {
    const auto w1 = random_word(rng, 12), w2 = random_word(rng, 12);
    CHECK(rep_of_word_exact(rep, w1 * w2) == rep_of_word_exact(rep, w1) * rep_of_word_exact(rep, w2));
    const Eigen::MatrixXd fast = action.matrix(w1 * w2);
    const Eigen::MatrixXd slow = rep_of_word_exact(rep, w1 * w2).to_double();
    CHECK((fast - slow).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, slow.cwiseAbs().maxCoeff()));
  }

  // long runs go through the closed-form powers
  GeneratorWord run;
  run.append(hyperbolic::WordRun::power(Label::A, 1000));
  run.append(hyperbolic::WordRun::cycle(Label::A, Label::BInv, -7));
  GeneratorWord expanded = GeneratorWord::from_labels(run.labels());
  const Eigen::MatrixXd a = action.matrix(run), b = rep_of_word_exact(rep, expanded).to_double();
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-9 * b.cwiseAbs().maxCoeff());
}

TEST_CASE("complex representations are realified") {
  const auto rep = levelt_construct(HypergeometricParams::make(qs({{1, 3}}), qs({{0, 1}})));
  REQUIRE(rep.mode() == ArithmeticMode::Floating);
  const RealWordAction action(rep);
  CHECK(action.realified());
  CHECK(action.dimension() == 2);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const auto w = random_word(rng, 9);
    CHECK((action.matrix(w) - realify(rep_of_word(rep, w))).cwiseAbs().maxCoeff() <= 1e-12);
  }
  const auto w1 = random_word(rng, 10), w2 = random_word(rng, 10);
  CHECK(max_abs(rep_of_word(rep, w1 * w2) - rep_of_word(rep, w1) * rep_of_word(rep, w2)) <= 1e-12);
}

TEST_CASE("hodge numbers") {
  CHECK(hodge_numbers(HypergeometricParams::make(qs({{1, 5}, {2, 5}, {3, 5}, {4, 5}}),
                                                 qs({{0, 1}, {0, 1}, {0, 1}, {0, 1}}))) == std::vector<int>{1, 1, 1, 1});
  CHECK(hodge_numbers(HypergeometricParams::make(qs({{1, 2}}), qs({{0, 1}}))) == std::vector<int>{1});
  CHECK(hodge_numbers(HypergeometricParams::make(qs({{1, 3}, {2, 3}}), qs({{0, 1}, {0, 1}}))) ==
        std::vector<int>{1, 1});
  // interlacing exponents give a single Hodge piece
  CHECK(hodge_numbers(HypergeometricParams::make(qs({{1, 4}, {3, 4}}), qs({{0, 1}, {1, 2}}))) == std::vector<int>{2});
}

TEST_CASE("local exponents") {
  const auto& c4 = cy_case(4);
  CHECK(local_exponents(c4, Cusp::Infinity).exponents == qs({{1, 5}, {2, 5}, {3, 5}, {4, 5}}));
  CHECK(local_exponents(c4, Cusp::One).exponents == qs({{0, 1}, {1, 1}, {1, 1}, {2, 1}}));
  for (const auto& c : cy_catalog()) CHECK(local_exponents(c, Cusp::Zero).exponents == qs({{0, 1}, {0, 1}, {0, 1}, {0, 1}}));

  const auto p = HypergeometricParams::make(qs({{1, 3}, {2, 3}}), qs({{0, 1}, {0, 1}}));
  CHECK(local_exponents(p, Cusp::Infinity).exponents == p.alpha);
  CHECK(local_exponents(p, Cusp::Zero).exponents == p.beta);
  CHECK(code_of([&] { local_exponents(p, Cusp::One); }) == ErrorCode::UnsupportedPoint);
}
