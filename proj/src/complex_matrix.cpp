#include "momext/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace momext {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, CVector data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw MathError(ErrorCode::InvalidShape,
                    "entry count does not match rows*cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const CVector& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix c(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) c.data_[k] = std::conj(data_[k]);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw MathError(ErrorCode::DimensionMismatch, "matrix addition");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw MathError(ErrorCode::DimensionMismatch, "matrix subtraction");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

CVector ComplexMatrix::column(std::size_t j) const {
  CVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ComplexMatrix::set_column(std::size_t j, const CVector& v) {
  if (v.size() != rows_) {
    throw MathError(ErrorCode::DimensionMismatch, "set_column");
  }
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

ComplexMatrix ComplexMatrix::columns(std::size_t first, std::size_t count) const {
  ComplexMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

ComplexMatrix ComplexMatrix::hcat(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ && !empty() && !other.empty()) {
    throw MathError(ErrorCode::DimensionMismatch, "hcat");
  }
  if (empty()) return other;
  if (other.empty()) return *this;
  ComplexMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
  }
  return out;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw MathError(ErrorCode::DimensionMismatch, "matrix product");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      const cplx* brow = b.row_ptr(k);
      cplx* crow = c.row_ptr(i);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix operator*(cplx scalar, ComplexMatrix a) {
  a *= scalar;
  return a;
}

CVector operator*(const ComplexMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) {
    throw MathError(ErrorCode::DimensionMismatch, "matrix-vector product");
  }
  CVector y(a.rows(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const cplx* row = a.row_ptr(i);
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

cplx inner(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) {
    throw MathError(ErrorCode::DimensionMismatch, "inner product");
  }
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

double norm2(const CVector& x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

CVector conj(CVector x) {
  for (auto& v : x) v = std::conj(v);
  return x;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * b - b * a).frobenius_norm();
}

double hermitian_defect(const ComplexMatrix& a) {
  return (a - a.adjoint()).frobenius_norm();
}

double unitary_defect(const ComplexMatrix& a) {
  return (a.adjoint() * a - ComplexMatrix::identity(a.cols())).frobenius_norm();
}

double symmetry_defect(const ComplexMatrix& a) {
  return (a - a.transpose()).frobenius_norm();
}

}  // namespace momext
