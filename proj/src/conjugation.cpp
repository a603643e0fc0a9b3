#include "momext/conjugation.hpp"

#include <algorithm>
#include <cmath>

namespace momext {

namespace {

// Nearest unitary to M (polar factor), via the eigendecomposition of M^H M.
// For symmetric M the polar factor is symmetric again.
ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  HermitianEig eig = hermitian_eig(m.adjoint() * m, 1e-8);
  CVector inv_sqrt(eig.eigenvalues.size());
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = std::max(eig.eigenvalues[i], 1e-300);
    inv_sqrt[i] = cplx(1.0 / std::sqrt(lam), 0.0);
  }
  return m * (eig.eigenvectors * ComplexMatrix::diagonal(inv_sqrt) *
              eig.eigenvectors.adjoint());
}

}  // namespace

Conjugation::Conjugation(ComplexMatrix m, double accept_tol, double repair_tol)
    : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw MathError(ErrorCode::InvalidShape, "conjugation matrix must be square");
  }
  const double d = static_cast<double>(std::max<std::size_t>(dim(), 1));
  double defect = std::max(unitary_defect(matrix_), symmetry_defect(matrix_));
  if (defect > accept_tol * d) {
    if (defect > repair_tol * d) {
      throw MathError(ErrorCode::NotUnitary,
                      "conjugation defect " + std::to_string(defect));
    }
    ComplexMatrix sym = matrix_ + matrix_.transpose();
    sym *= cplx(0.5, 0.0);
    matrix_ = polar_unitary(sym);
    defect = std::max(unitary_defect(matrix_), symmetry_defect(matrix_));
    if (defect > accept_tol * d) {
      throw MathError(ErrorCode::NotUnitary,
                      "conjugation defect " + std::to_string(defect) +
                          " after polar correction");
    }
  }
}

Conjugation Conjugation::plain(std::size_t dim) {
  Conjugation c;
  c.matrix_ = ComplexMatrix::identity(dim);
  return c;
}

Conjugation Conjugation::unchecked(ComplexMatrix m) {
  if (m.rows() != m.cols()) {
    throw MathError(ErrorCode::InvalidShape, "conjugation matrix must be square");
  }
  Conjugation c;
  c.matrix_ = std::move(m);
  return c;
}

CVector Conjugation::apply(const CVector& x) const {
  if (x.size() != dim()) {
    throw MathError(ErrorCode::DimensionMismatch, "conjugation apply");
  }
  return matrix_ * conj(x);
}

ComplexMatrix Conjugation::apply_columns(const ComplexMatrix& cols) const {
  if (cols.rows() != dim()) {
    throw MathError(ErrorCode::DimensionMismatch, "conjugation apply_columns");
  }
  return matrix_ * cols.conjugate();
}

ComplexMatrix compose_JC(const Conjugation& j, const Conjugation& c, double tol) {
  if (j.dim() != c.dim()) {
    throw MathError(ErrorCode::DimensionMismatch, "compose_JC");
  }
  ComplexMatrix u = j.matrix() * c.matrix().conjugate();
  const double defect = unitary_defect(u);
  if (defect > tol * static_cast<double>(std::max<std::size_t>(j.dim(), 1))) {
    throw MathError(ErrorCode::NotUnitary,
                    "composition defect " + std::to_string(defect));
  }
  return u;
}

Conjugation conjugate_by_unitary(const Conjugation& j, const ComplexMatrix& v,
                                 double tol) {
  if (v.rows() != v.cols() || v.rows() != j.dim()) {
    throw MathError(ErrorCode::DimensionMismatch, "conjugate_by_unitary");
  }
  const double defect = unitary_defect(v);
  if (defect > tol * static_cast<double>(std::max<std::size_t>(v.rows(), 1))) {
    throw MathError(ErrorCode::NotUnitary,
                    "transform defect " + std::to_string(defect));
  }
  return Conjugation(v * j.matrix() * v.transpose());
}

ConjugationReport validate(const Conjugation& j, double tol) {
  ConjugationReport report;
  report.unitary_defect = unitary_defect(j.matrix());
  report.symmetry_defect = symmetry_defect(j.matrix());
  const double bound = tol * static_cast<double>(std::max<std::size_t>(j.dim(), 1));
  report.passed =
      report.unitary_defect <= bound && report.symmetry_defect <= bound;
  return report;
}

}  // namespace momext
