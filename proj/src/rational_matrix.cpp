#include "hyplyap/rational_matrix.hpp"

#include <stdexcept>

#include "hyplyap/error.hpp"

namespace hyplyap {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix out(rows_, o.cols_);
  Rational t;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& lhs = (*this)(i, k);
      if (lhs == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        t = lhs * o(k, j);
        out(i, j) += t;
      }
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::InvalidParams, "singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::size_t RationalMatrix::rank() const {
  RationalMatrix a = *this;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows_ && a(pivot, col) == 0) ++pivot;
    if (pivot == rows_) continue;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(a(pivot, j), a(rank, j));
    for (std::size_t i = rank + 1; i < rows_; ++i) {
      if (a(i, col) == 0) continue;
      const Rational f = a(i, col) / a(rank, col);
      for (std::size_t j = col; j < cols_; ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

Rational RationalMatrix::determinant() const {
  const auto p = characteristic_polynomial();
  // det(X - M) at X = 0 is (-1)^n det M
  return (rows_ % 2 == 0) ? p.front() : Rational(-p.front());
}

std::vector<Rational> RationalMatrix::characteristic_polynomial() const {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  if (rows_ != cols_) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix next = (*this) * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const RationalMatrix am = (*this) * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
  return m;
}

Eigen::MatrixXcd RationalMatrix::to_complex() const { return to_double().cast<std::complex<double>>(); }

void trim(RationalPolynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::pair<RationalPolynomial, RationalPolynomial> poly_divmod(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial rem = a, den = b;
  trim(rem);
  trim(den);
  if (den.empty()) throw std::invalid_argument("polynomial division by zero");
  if (rem.size() < den.size()) return {{}, rem};
  RationalPolynomial quot(rem.size() - den.size() + 1);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational f = rem[k + den.size() - 1] / den.back();
    quot[k] = f;
    for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= f * den[j];
  }
  trim(rem);
  trim(quot);
  return {quot, rem};
}

RationalPolynomial cyclotomic_polynomial(unsigned m) {
  RationalPolynomial p(m + 1);  // X^m - 1
  p[0] = -1;
  p[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d == 0) p = poly_divmod(p, cyclotomic_polynomial(d)).first;
  }
  return p;
}

RationalMatrix companion_matrix(const RationalPolynomial& monic) {
  const std::size_t n = monic.size() - 1;
  RationalMatrix m(n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -monic[i] / monic[n];
  return m;
}

}  // namespace hyplyap
