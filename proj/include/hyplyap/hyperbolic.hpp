#pragma once

// Geometry of the upper half plane with the curvature -4 metric
// |dz|^2 / (4 y^2), the geodesic flow on SL2(R) frames, and reduction of
// frames to the standard fundamental domain of Gamma(2).

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace hyplyap::hyperbolic {

struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;
};

/// A 2x2 real matrix standing for a projective class in PSL2(R). M and -M are
/// never canonicalized; consumers are sign-agnostic.
struct Isometry {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static constexpr Isometry identity() { return {}; }

  double det() const { return a * d - b * c; }

  Isometry operator*(const Isometry& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }

  /// Inverse assuming unit determinant.
  Isometry inverse() const { return {d, -b, -c, a}; }

  Isometry renormalized() const {
    const double s = 1.0 / std::sqrt(std::fabs(det()));
    return {a * s, b * s, c * s, d * s};
  }
};

struct FrameState {
  Isometry frame;
};

inline UpperHalfPoint mobius_apply(const Isometry& m, UpperHalfPoint z) {
  // (a z + b) / (c z + d) with z = x + i y
  const double nr = m.a * z.x + m.b, ni = m.a * z.y;
  const double dr = m.c * z.x + m.d, di = m.c * z.y;
  const double den = dr * dr + di * di;
  return {(nr * dr + ni * di) / den, m.det() * z.y / den};
}

/// frame . i
inline UpperHalfPoint basepoint(const FrameState& s) {
  const Isometry& m = s.frame;
  const double den = m.c * m.c + m.d * m.d;
  return {(m.a * m.c + m.b * m.d) / den, m.det() / den};
}

/// Right multiplication by diag(e^dt, e^-dt): unit-speed geodesic flow for
/// the curvature -4 metric.
inline FrameState geodesic_step(const FrameState& s, double dt) {
  const double e = std::exp(dt);
  const Isometry& m = s.frame;
  return {Isometry{m.a * e, m.b / e, m.c * e, m.d / e}.renormalized()};
}

inline FrameState rotate_frame(const FrameState& s, double theta) {
  const double cs = std::cos(theta), sn = std::sin(theta);
  return {(s.frame * Isometry{cs, -sn, sn, cs}).renormalized()};
}

/// Distance in the curvature -4 metric (half the curvature -1 distance).
double hyperbolic_distance(UpperHalfPoint p, UpperHalfPoint q);

/// |Re z| <= 1, |2z - 1| >= 1, |2z + 1| >= 1; boundary points count as inside.
inline bool in_fundamental_domain(UpperHalfPoint z) {
  if (std::fabs(z.x) > 1.0) return false;
  const double y2 = 4.0 * z.y * z.y;
  const double l = 2.0 * z.x - 1.0, r = 2.0 * z.x + 1.0;
  return l * l + y2 >= 1.0 && r * r + y2 >= 1.0;
}

// ---------------------------------------------------------------------------
// Generator words of Gamma(2) = <A, B>, A: z -> z + 2, B: z -> z / (2z + 1).

enum class Label : std::uint8_t { A, AInv, B, BInv };

constexpr Label inverse(Label l) {
  switch (l) {
    case Label::A: return Label::AInv;
    case Label::AInv: return Label::A;
    case Label::B: return Label::BInv;
    case Label::BInv: return Label::B;
  }
  return l;
}

const char* label_name(Label l);

/// Exact integer matrix of the generator raised to `power` (may be negative).
Isometry generator_power(Label l, std::int64_t power);

/// (base[0] base[1] ... base[length-1])^exponent, exponent != 0.
struct WordRun {
  std::array<Label, 2> base{Label::A, Label::A};
  std::uint8_t length = 1;
  std::int64_t exponent = 1;

  static WordRun power(Label l, std::int64_t e) { return {{l, l}, 1, e}; }
  static WordRun cycle(Label first, Label second, std::int64_t e) { return {{first, second}, 2, e}; }

  /// Number of labels in the expansion.
  std::uint64_t label_count() const;
  Isometry matrix() const;
};

/// An element of the free group on A, B written as a product in reading
/// order: matrix() = w[0] * w[1] * ... . Stored run-length compressed so that
/// long cusp excursions stay cheap; labels() gives the freely reduced list.
class GeneratorWord {
 public:
  GeneratorWord() = default;
  static GeneratorWord from_labels(const std::vector<Label>& labels);

  /// Right multiplication by a run. Adjacent powers of the same generator merge.
  void append(const WordRun& run);
  void append(const GeneratorWord& w);
  void clear() { runs_.clear(); }

  bool empty() const { return runs_.empty(); }
  const std::vector<WordRun>& runs() const { return runs_; }

  /// Freely reduced expansion. Intended for inspection of short words.
  std::vector<Label> labels() const;
  std::uint64_t label_count() const;

  Isometry matrix() const;
  GeneratorWord inverse() const;

  friend GeneratorWord operator*(GeneratorWord lhs, const GeneratorWord& rhs) {
    lhs.append(rhs);
    return lhs;
  }

 private:
  std::vector<WordRun> runs_;
};

struct Reduction {
  FrameState frame;
  GeneratorWord word;
};

/// Maximum number of side-pairing applications before reduce_to_domain gives
/// up with NonTermination.
inline constexpr std::int64_t kMaxReductionSteps = 1'000'000;

/// Moves the frame into the fundamental domain. Returns frame_out and word w
/// with frame_out = matrix(w) * frame_in up to sign and renormalization.
Reduction reduce_to_domain(const FrameState& s);

/// In-place variant used by the simulation hot loop; `word` is overwritten
/// and its storage reused.
void reduce_to_domain(FrameState& s, GeneratorWord& word);

}  // namespace hyplyap::hyperbolic
