#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hyplyap/error.hpp"
#include "hyplyap/hyperbolic.hpp"

using namespace hyplyap;
using namespace hyplyap::hyperbolic;

namespace {

FrameState frame_at(double x, double y, double theta) {
  const double s = std::sqrt(y);
  return rotate_frame(FrameState{Isometry{s, x / s, 0.0, 1.0 / s}}, theta);
}

// Largest entry difference between m and +-n.
double projective_gap(const Isometry& m, const Isometry& n) {
  auto gap = [&](double sign) {
    return std::max({std::fabs(m.a - sign * n.a), std::fabs(m.b - sign * n.b), std::fabs(m.c - sign * n.c),
                     std::fabs(m.d - sign * n.d)});
  };
  return std::min(gap(1.0), gap(-1.0));
}

double max_entry(const Isometry& m) {
  return std::max({std::fabs(m.a), std::fabs(m.b), std::fabs(m.c), std::fabs(m.d)});
}

// matrix(w) * frame_in, renormalized, in extended precision; relative gap to
// frame_out up to sign.
double reduction_error(const Isometry& w, const Isometry& in, const Isometry& out) {
  using L = long double;
  const L a = L(w.a) * in.a + L(w.b) * in.c, b = L(w.a) * in.b + L(w.b) * in.d;
  const L c = L(w.c) * in.a + L(w.d) * in.c, d = L(w.c) * in.b + L(w.d) * in.d;
  const L s = 1.0L / std::sqrt(std::fabs(a * d - b * c));
  const L m[4] = {a * s, b * s, c * s, d * s};
  const L o[4] = {out.a, out.b, out.c, out.d};
  L plus = 0, minus = 0, scale = 0;
  for (int i = 0; i < 4; ++i) {
    plus = std::max(plus, std::fabs(m[i] - o[i]));
    minus = std::max(minus, std::fabs(m[i] + o[i]));
    scale = std::max(scale, std::fabs(m[i]));
  }
  return static_cast<double>(std::min(plus, minus) / scale);
}

}  // namespace

TEST_CASE("mobius action on i") {
  const UpperHalfPoint i{0.0, 1.0};
  auto z = mobius_apply(Isometry::identity(), i);
  CHECK(z.x == doctest::Approx(0.0));
  CHECK(z.y == doctest::Approx(1.0));

  z = mobius_apply(Isometry{1, 2, 0, 1}, i);
  CHECK(z.x == doctest::Approx(2.0));
  CHECK(z.y == doctest::Approx(1.0));

  // i / (2i + 1) = (2 + i) / 5
  z = mobius_apply(Isometry{1, 0, 2, 1}, i);
  CHECK(z.x == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(z.y == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("basepoint examples") {
  auto p = basepoint(FrameState{});
  CHECK(p.x == doctest::Approx(0.0));
  CHECK(p.y == doctest::Approx(1.0));
  p = basepoint(FrameState{Isometry{1, 2, 0, 1}});
  CHECK(p.x == doctest::Approx(2.0));
  CHECK(p.y == doctest::Approx(1.0));
  p = basepoint(FrameState{Isometry{std::exp(0.5), 0, 0, std::exp(-0.5)}});
  CHECK(p.y == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("geodesic step") {
  const FrameState id{};
  CHECK(projective_gap(geodesic_step(id, 0.0).frame, id.frame) < 1e-15);

  const auto half = geodesic_step(id, 0.5);
  CHECK(basepoint(half).y == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(hyperbolic_distance(basepoint(id), basepoint(half)) == doctest::Approx(0.5).epsilon(1e-12));

  const auto two = geodesic_step(geodesic_step(id, 0.25), 0.25);
  CHECK(projective_gap(two.frame, half.frame) < 1e-12);
}

TEST_CASE("flow property and unit speed on random frames") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), ulog(-2.0, 2.0), uth(0.0, 2 * std::numbers::pi),
      ut(-1.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const auto s = frame_at(ux(rng), std::pow(10.0, ulog(rng)), uth(rng));
    const double a = ut(rng), b = ut(rng);
    const auto lhs = geodesic_step(geodesic_step(s, a), b).frame;
    const auto rhs = geodesic_step(s, a + b).frame;
    CHECK(projective_gap(lhs, rhs) <= 1e-10 * std::max(1.0, max_entry(rhs)));

    const double t = ut(rng);
    const double dist = hyperbolic_distance(basepoint(s), basepoint(geodesic_step(s, t)));
    CHECK(std::fabs(dist - std::fabs(t)) <= 1e-8);
    CHECK(std::fabs(geodesic_step(s, t).frame.det() - 1.0) <= 1e-9);
  }
}

TEST_CASE("rotations fix the basepoint") {
  const FrameState id{};
  CHECK(projective_gap(rotate_frame(id, 0.0).frame, id.frame) < 1e-15);
  CHECK(projective_gap(rotate_frame(id, 2 * std::numbers::pi).frame, id.frame) < 1e-12);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.5, 3.0);
  for (int k = 0; k < 100; ++k) {
    const auto s = frame_at(ux(rng), uy(rng), 0.0);
    const auto p = basepoint(s), q = basepoint(rotate_frame(s, 1.3));
    CHECK(q.x == doctest::Approx(p.x).epsilon(1e-12));
    CHECK(q.y == doctest::Approx(p.y).epsilon(1e-12));
  }
}

TEST_CASE("fundamental domain membership") {
  CHECK(in_fundamental_domain({0.0, 1.0}));
  CHECK(in_fundamental_domain({1.0, 0.5}));   // corner of the strip and the circle |2z - 1| = 1
  CHECK(in_fundamental_domain({-1.0, 0.01}));
  CHECK_FALSE(in_fundamental_domain({1.2, 1.0}));
  CHECK_FALSE(in_fundamental_domain({0.5, 0.4}));
  CHECK_FALSE(in_fundamental_domain({-0.5, 0.3}));
}

TEST_CASE("reduction examples") {
  SUBCASE("one translation") {
    const auto r = reduce_to_domain(frame_at(2.4, 0.9, 0.3));
    const auto p = basepoint(r.frame);
    CHECK(p.x == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(r.word.labels() == std::vector<Label>{Label::AInv});
  }
  SUBCASE("interior point") {
    const auto r = reduce_to_domain(FrameState{});
    CHECK(r.word.empty());
    CHECK(projective_gap(r.frame.frame, Isometry::identity()) == 0.0);
  }
  SUBCASE("idempotent") {
    const auto r = reduce_to_domain(frame_at(7.3, 0.01, 1.0));
    CHECK(in_fundamental_domain(basepoint(r.frame)));
    CHECK(reduce_to_domain(r.frame).word.empty());
  }
}

TEST_CASE("reduction correctness on 1e5 random frames") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ux(-20.0, 20.0), ulog(-4.0, 4.0), uth(0.0, 2 * std::numbers::pi);
  int outside = 0, mismatched = 0;
  for (int k = 0; k < 100000; ++k) {
    const auto s = frame_at(ux(rng), std::pow(10.0, ulog(rng)), uth(rng));
    const auto r = reduce_to_domain(s);
    if (!in_fundamental_domain(basepoint(r.frame))) ++outside;
    if (reduction_error(r.word.matrix(), s.frame, r.frame.frame) > 1e-9) ++mismatched;
  }
  CHECK(outside == 0);
  CHECK(mismatched == 0);
}

TEST_CASE("deep cusp reductions stay short") {
  // Heights 1e-8 near the cusps 0 and +-1 take a few accelerated runs. This
  // deep the word matrices pass 2^53 in intermediate products, so only a
  // loose agreement is expected.
  for (double x : {0.0, 1.0 - 1e-7, -1.0 + 3e-8, 0.3}) {
    const auto s = frame_at(x, 1e-8, 0.7);
    const auto r = reduce_to_domain(s);
    CHECK(in_fundamental_domain(basepoint(r.frame)));
    CHECK(r.word.runs().size() < 64);
    CHECK(reduction_error(r.word.matrix(), s.frame, r.frame.frame) <= 1e-3);
  }
}

TEST_CASE("non-finite frames raise NonTermination") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  FrameState s{Isometry{nan, 0.0, 0.0, 1.0}};
  try {
    (void)reduce_to_domain(s);
    FAIL("expected NonTermination");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonTermination);
  }
}

TEST_CASE("generator words") {
  const auto w = GeneratorWord::from_labels({Label::A, Label::AInv, Label::B, Label::B, Label::AInv});
  CHECK(w.labels() == std::vector<Label>{Label::B, Label::B, Label::AInv});
  CHECK(w.label_count() == 3);

  const auto m = w.matrix();
  const auto expected = Isometry{1, 0, 2, 1} * Isometry{1, 0, 2, 1} * Isometry{1, -2, 0, 1};
  CHECK(projective_gap(m, expected) == 0.0);

  CHECK((w * w.inverse()).empty());
  CHECK(projective_gap((w.inverse()).matrix() * m, Isometry::identity()) == 0.0);

  GeneratorWord runs;
  runs.append(WordRun::cycle(Label::A, Label::BInv, 3));
  CHECK(runs.label_count() == 6);
  CHECK(runs.labels().size() == 6);
  CHECK(projective_gap(runs.matrix(), GeneratorWord::from_labels(runs.labels()).matrix()) == 0.0);
  CHECK(generator_power(Label::BInv, 5).c == -10.0);
}
