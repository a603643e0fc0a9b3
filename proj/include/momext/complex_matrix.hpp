#ifndef MOMEXT_COMPLEX_MATRIX_HPP
#define MOMEXT_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "momext/error.hpp"

namespace momext {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense complex matrix, row-major. The universal carrier for operators,
// bases and coordinate blocks throughout the toolkit.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, CVector data);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const CVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  cplx* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const cplx* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

  const CVector& data() const { return data_; }
  CVector& data() { return data_; }

  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix adjoint() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

  CVector column(std::size_t j) const;
  void set_column(std::size_t j, const CVector& v);
  // Columns [first, first+count) as a new matrix.
  ComplexMatrix columns(std::size_t first, std::size_t count) const;
  // Horizontal concatenation [this | other].
  ComplexMatrix hcat(const ComplexMatrix& other) const;

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  CVector data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scalar, ComplexMatrix a);
CVector operator*(const ComplexMatrix& a, const CVector& x);

// Scalar product linear in the first argument, (x, y) = sum_i x_i conj(y_i).
cplx inner(const CVector& x, const CVector& y);
double norm2(const CVector& x);
CVector conj(CVector x);

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);
// ||A - A^H||_F
double hermitian_defect(const ComplexMatrix& a);
// ||A^H A - I||_F
double unitary_defect(const ComplexMatrix& a);
// ||A - A^T||_F
double symmetry_defect(const ComplexMatrix& a);

}  // namespace momext

#endif
