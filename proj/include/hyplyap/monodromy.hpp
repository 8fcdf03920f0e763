#pragma once

// Hypergeometric monodromy representations over P^1 minus {0, 1, oo}:
// Levelt companion-matrix groups, the 14 Calabi-Yau realizations, the
// non-expanding cusp gate, and the homomorphism from Gamma(2) words.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyplyap/hyperbolic.hpp"
#include "hyplyap/rational.hpp"
#include "hyplyap/rational_matrix.hpp"

namespace hyplyap::monodromy {

enum class Cusp { Zero = 0, One = 1, Infinity = 2 };

const char* cusp_name(Cusp c);

struct HypergeometricParams {
  std::vector<Rational> alpha;  // sorted, each in [0, 1)
  std::vector<Rational> beta;

  std::size_t rank() const { return alpha.size(); }

  /// Sorts both lists and validates ranges, equal lengths and the
  /// irreducibility conditions. Throws Error(InvalidParams).
  static HypergeometricParams make(std::vector<Rational> alpha, std::vector<Rational> beta);
};

enum class ArithmeticMode { Exact, Floating };

/// Three monodromies with hinf * h1 * h0 = Id. Immutable after construction.
class MonodromyRep {
 public:
  /// Validates the product relation exactly.
  static MonodromyRep exact(RationalMatrix h0, RationalMatrix h1, RationalMatrix hinf);
  /// Validates the product relation to 1e-10 entrywise.
  static MonodromyRep floating(Eigen::MatrixXcd h0, Eigen::MatrixXcd h1, Eigen::MatrixXcd hinf);
  /// Skips the product check; used to build deliberately broken inputs.
  static MonodromyRep unchecked(Eigen::MatrixXcd h0, Eigen::MatrixXcd h1, Eigen::MatrixXcd hinf);

  std::size_t rank() const { return static_cast<std::size_t>(numeric_[0].rows()); }
  ArithmeticMode mode() const { return exact_ ? ArithmeticMode::Exact : ArithmeticMode::Floating; }

  const Eigen::MatrixXcd& at(Cusp c) const { return numeric_[static_cast<int>(c)]; }
  /// Exact matrices; throws std::logic_error in floating mode.
  const RationalMatrix& exact_at(Cusp c) const;

  /// True when every entry is real (always in exact mode).
  bool is_real() const { return real_; }

  /// max |(hinf h1 h0 - Id)_ij|
  double product_residual() const;

  /// g^-1 * h * g for each monodromy; exact when both are exact.
  MonodromyRep conjugated(const RationalMatrix& g) const;
  MonodromyRep conjugated(const Eigen::MatrixXcd& g) const;

 private:
  MonodromyRep() = default;
  std::array<Eigen::MatrixXcd, 3> numeric_;
  std::optional<std::array<RationalMatrix, 3>> exact_;
  bool real_ = true;
};

/// Levelt's hypergeometric group: hinf is the companion matrix of
/// prod (X - e^{2 pi i alpha_j}), h0 the inverse companion matrix of
/// prod (X - e^{2 pi i beta_j}), h1 = hinf^-1 h0^-1. Exact mode whenever both
/// characteristic polynomials have integer coefficients.
MonodromyRep levelt_construct(const HypergeometricParams& p);

struct CYCase {
  int id = 0;
  std::string label;
  int C = 0;
  int d = 0;
  Rational mu1, mu2;
  RationalMatrix T0, T1, Omega;

  /// Rows 1-7 have thin monodromy groups in Sp(4, Z).
  bool thin_expected() const { return id <= 7; }
  HypergeometricParams params() const;
};

/// The 14 Calabi-Yau rows, in table order.
const std::vector<CYCase>& cy_catalog();
/// Throws Error(UnknownCase) outside 1..14.
const CYCase& cy_case(int id);
/// CSV with header id,label,C,d,mu1,mu2.
std::string cy_catalog_csv();

/// h0 = T0, h1 = T1, hinf = (T1 T0)^-1, all exact.
MonodromyRep cy_realization(int id);

struct CuspSpectrum {
  std::array<std::vector<double>, 3> moduli;  // indexed by Cusp
  bool non_expanding = false;
};

/// Eigenvalue-modulus tolerance of the floating-point gate.
inline constexpr double kUnitModulusTolerance = 1e-8;

CuspSpectrum check_nonexpanding(const MonodromyRep& rep);

// ---------------------------------------------------------------------------
// Words to matrices.

/// Which loops the Gamma(2) generators stand for. Rotation 0 is the default
/// (A -> h0, B -> h1^-1); rotations 1 and 2 cycle (h0, h1, hinf).
struct CuspAssignment {
  int rotation = 0;
};

/// Images of A and B as loop matrices under an assignment.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> generator_images(const MonodromyRep& rep, CuspAssignment assign = {});

Eigen::MatrixXcd rep_of_word(const MonodromyRep& rep, const hyperbolic::GeneratorWord& w, CuspAssignment assign = {});
/// Exact-mode variant.
RationalMatrix rep_of_word_exact(const MonodromyRep& rep, const hyperbolic::GeneratorWord& w,
                                 CuspAssignment assign = {});

/// Real matrices acting on R^r (real reps) or on the realified R^{2r}
/// (complex reps), with fast powers for long cusp runs. Used by the cocycle.
class RealWordAction {
 public:
  RealWordAction(const MonodromyRep& rep, CuspAssignment assign = {});

  std::size_t dimension() const { return static_cast<std::size_t>(a_.rows()); }
  bool realified() const { return realified_; }

  /// m <- rho(w) * m
  void apply(const hyperbolic::GeneratorWord& w, Eigen::MatrixXd& m) const;
  Eigen::MatrixXd matrix(const hyperbolic::GeneratorWord& w) const;

  const Eigen::MatrixXd& label_matrix(hyperbolic::Label l) const;
  Eigen::MatrixXd run_matrix(const hyperbolic::WordRun& run) const;

 private:

  Eigen::MatrixXd a_, a_inv_, b_, b_inv_;
  bool realified_ = false;
};

/// [[Re, -Im], [Im, Re]]
Eigen::MatrixXd realify(const Eigen::MatrixXcd& m);

// ---------------------------------------------------------------------------
// Hodge numbers and local exponents.

/// h^p = #{k : rho(k) = p} with rho(k) = #{j : alpha_j < beta_k} - k, graded
/// from the minimum value of rho.
std::vector<int> hodge_numbers(const HypergeometricParams& p);

enum class PointLocation { Interior, Cusp };

struct LocalExponentData {
  std::string point;
  std::vector<Rational> exponents;  // sorted
  PointLocation location = PointLocation::Cusp;
};

using ExponentSource = std::variant<CYCase, HypergeometricParams>;

/// CY systems: beta = (0,0,0,0) at 0, (0,1,1,2) at 1, (mu1, mu2, 1-mu2, 1-mu1)
/// at oo. Generic systems: beta at 0 and alpha at oo only.
LocalExponentData local_exponents(const ExponentSource& source, Cusp point);

}  // namespace hyplyap::monodromy
