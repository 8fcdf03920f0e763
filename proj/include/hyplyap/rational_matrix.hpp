#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "hyplyap/rational.hpp"

namespace hyplyap {

/// Dense matrix over Q. Small (rank <= ~16) so everything is naive cubic.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const;

  RationalMatrix transpose() const;
  /// Throws Error(InvalidParams) when singular.
  RationalMatrix inverse() const;
  std::size_t rank() const;
  Rational determinant() const;

  /// Monic characteristic polynomial det(X - M), coefficients from X^0 up.
  std::vector<Rational> characteristic_polynomial() const;

  Eigen::MatrixXd to_double() const;
  Eigen::MatrixXcd to_complex() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Polynomials over Q, coefficient vectors from X^0 up, no trailing zeros
// (the zero polynomial is the empty vector).
using RationalPolynomial = std::vector<Rational>;

void trim(RationalPolynomial& p);

/// Quotient and remainder of a by b (b nonzero).
std::pair<RationalPolynomial, RationalPolynomial> poly_divmod(const RationalPolynomial& a, const RationalPolynomial& b);

/// m-th cyclotomic polynomial.
RationalPolynomial cyclotomic_polynomial(unsigned m);

/// Companion matrix of a monic polynomial: ones on the subdiagonal and
/// -coefficients in the last column.
RationalMatrix companion_matrix(const RationalPolynomial& monic);

}  // namespace hyplyap
