#include "hyplyap/hyperbolic.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "hyplyap/error.hpp"

namespace hyplyap::hyperbolic {

namespace {

bool is_a(Label l) { return l == Label::A || l == Label::AInv; }

bool is_inverse(Label l) { return l == Label::AInv || l == Label::BInv; }

Isometry label_matrix(Label l) { return generator_power(l, 1); }

Isometry isometry_power(Isometry m, std::int64_t e) {
  if (e < 0) {
    m = m.inverse();
    e = -e;
  }
  Isometry out = Isometry::identity();
  while (e > 0) {
    if (e & 1) out = out * m;
    m = m * m;
    e >>= 1;
  }
  return out;
}

// Inside the horoball Im w > kCuspDepth around the cusps +-1 the reduction
// jumps by a power of the parabolic fixing the cusp instead of alternating
// single A and B moves.
constexpr double kCuspDepth = 2.0;

}  // namespace

double hyperbolic_distance(UpperHalfPoint p, UpperHalfPoint q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  return 0.5 * std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y));
}

const char* label_name(Label l) {
  switch (l) {
    case Label::A: return "A";
    case Label::AInv: return "A^-1";
    case Label::B: return "B";
    case Label::BInv: return "B^-1";
  }
  return "?";
}

Isometry generator_power(Label l, std::int64_t p) {
  if (is_inverse(l)) p = -p;
  const double t = 2.0 * static_cast<double>(p);
  return is_a(l) ? Isometry{1.0, t, 0.0, 1.0} : Isometry{1.0, 0.0, t, 1.0};
}

std::uint64_t WordRun::label_count() const {
  return static_cast<std::uint64_t>(length) * static_cast<std::uint64_t>(std::llabs(exponent));
}

Isometry WordRun::matrix() const {
  if (length == 1) return generator_power(base[0], exponent);
  return isometry_power(label_matrix(base[0]) * label_matrix(base[1]), exponent);
}

GeneratorWord GeneratorWord::from_labels(const std::vector<Label>& labels) {
  GeneratorWord w;
  for (Label l : labels) w.append(WordRun::power(l, 1));
  return w;
}

void GeneratorWord::append(const WordRun& run) {
  if (run.exponent == 0) return;
  WordRun r = run;
  if (r.length == 1 && is_inverse(r.base[0])) {
    r.base = {hyperbolic::inverse(r.base[0]), hyperbolic::inverse(r.base[0])};
    r.exponent = -r.exponent;
  }
  if (r.length == 1 && !runs_.empty()) {
    WordRun& last = runs_.back();
    if (last.length == 1 && last.base[0] == r.base[0]) {
      last.exponent += r.exponent;
      if (last.exponent == 0) runs_.pop_back();
      return;
    }
  }
  runs_.push_back(r);
}

void GeneratorWord::append(const GeneratorWord& w) {
  for (const auto& r : w.runs_) append(r);
}

std::vector<Label> GeneratorWord::labels() const {
  std::vector<Label> out;
  auto push = [&out](Label l) {
    if (!out.empty() && out.back() == hyperbolic::inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  };
  for (const auto& r : runs_) {
    const std::int64_t reps = std::llabs(r.exponent);
    for (std::int64_t k = 0; k < reps; ++k) {
      if (r.exponent > 0) {
        for (std::uint8_t i = 0; i < r.length; ++i) push(r.base[i]);
      } else {
        for (std::uint8_t i = r.length; i-- > 0;) push(hyperbolic::inverse(r.base[i]));
      }
    }
  }
  return out;
}

std::uint64_t GeneratorWord::label_count() const {
  std::uint64_t n = 0;
  for (const auto& r : runs_) n += r.label_count();
  return n;
}

Isometry GeneratorWord::matrix() const {
  Isometry m = Isometry::identity();
  for (const auto& r : runs_) m = m * r.matrix();
  return m;
}

GeneratorWord GeneratorWord::inverse() const {
  GeneratorWord w;
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) {
    WordRun r = *it;
    r.exponent = -r.exponent;
    w.append(r);
  }
  return w;
}

namespace {

// w * f renormalized, accumulated in extended precision: reduced frames come
// out of products with heavy cancellation when the word is long.
Isometry extended_product(const Isometry& w, const Isometry& f) {
  using L = long double;
  const L a = L(w.a) * f.a + L(w.b) * f.c, b = L(w.a) * f.b + L(w.b) * f.d;
  const L c = L(w.c) * f.a + L(w.d) * f.c, d = L(w.c) * f.b + L(w.d) * f.d;
  const L s = 1.0L / std::sqrt(std::fabs(a * d - b * c));
  return {static_cast<double>(a * s), static_cast<double>(b * s), static_cast<double>(c * s),
          static_cast<double>(d * s)};
}

void reduce_impl(FrameState& s, GeneratorWord& word, int depth) {
  word.clear();
  UpperHalfPoint z = basepoint(s);
  if (in_fundamental_domain(z)) return;

  const Isometry start = s.frame;
  thread_local std::vector<WordRun> applied;
  applied.clear();

  auto apply = [&](const WordRun& run) {
    s.frame = (run.matrix() * s.frame).renormalized();
    applied.push_back(run);
  };

  for (std::int64_t iter = 0;; ++iter) {
    if (iter >= kMaxReductionSteps) {
      throw Error(ErrorCode::NonTermination,
                  "fundamental domain reduction exceeded " + std::to_string(kMaxReductionSteps) + " steps");
    }
    if (!std::isfinite(z.x) || !std::isfinite(z.y) || !(z.y > 0.0)) {
      throw Error(ErrorCode::NonTermination, "basepoint left the upper half plane during reduction");
    }
    if (in_fundamental_domain(z)) break;

    if (std::fabs(z.x) > 1.0) {
      // translate Re z into [-1, 1]
      apply(WordRun::power(Label::A, -std::llround(z.x / 2.0)));
    } else {
      // Inside one of the circles |2z -+ 1| < 1.
      const double cusp = z.x > 0.0 ? 1.0 : -1.0;
      const double ex = z.x - cusp;
      const double r2 = ex * ex + z.y * z.y;
      const double wx = -ex / r2, wy = z.y / r2;  // w = -1/(z - cusp)
      const std::int64_t m = wy > kCuspDepth ? std::llround(wx / 2.0) : 0;
      if (m != 0) {
        // A B^-1 fixes +1 and B^-1 A fixes -1; both act as w -> w - 2.
        apply(cusp > 0.0 ? WordRun::cycle(Label::A, Label::BInv, m) : WordRun::cycle(Label::BInv, Label::A, m));
      } else {
        // In u = 1/z the generator B is u -> u + 2.
        const double ux = z.x / (z.x * z.x + z.y * z.y);
        apply(WordRun::power(Label::B, -std::llround(ux / 2.0)));
      }
    }
    z = basepoint(s);
  }

  for (auto it = applied.rbegin(); it != applied.rend(); ++it) word.append(*it);

  // One product with the exact integer word matrix instead of the chain of
  // per-run roundings. If that nudges the point back across a side, keep
  // reducing from there.
  s.frame = extended_product(word.matrix(), start);
  z = basepoint(s);
  if (!in_fundamental_domain(z)) {
    if (depth >= 4) throw Error(ErrorCode::NonTermination, "reduced frame does not settle in the domain");
    FrameState rest = s;
    GeneratorWord tail;
    reduce_impl(rest, tail, depth + 1);
    word = tail * word;
    s = rest;
  }
}

}  // namespace

void reduce_to_domain(FrameState& s, GeneratorWord& word) { reduce_impl(s, word, 0); }

Reduction reduce_to_domain(const FrameState& s) {
  Reduction out{s, {}};
  reduce_to_domain(out.frame, out.word);
  return out;
}

}  // namespace hyplyap::hyperbolic
