#ifndef MOMEXT_CONJUGATION_HPP
#define MOMEXT_CONJUGATION_HPP

#include "momext/complex_matrix.hpp"
#include "momext/numerics.hpp"

namespace momext {

struct ConjugationReport {
  double unitary_defect = 0.0;   // ||M^H M - I||_F
  double symmetry_defect = 0.0;  // ||M - M^T||_F
  bool passed = false;
};

// An antiunitary involution J, stored through its symmetric unitary matrix M:
// J x = M * conj(x). Finite-dimensional conjugations are exactly the maps of
// this form, so equality, serialization and defect measurement are direct.
class Conjugation {
 public:
  Conjugation() = default;

  // Validates M. Defects <= accept_tol*dim pass through unchanged; defects in
  // (accept_tol*dim, repair_tol*dim] are repaired by symmetrization followed
  // by a unitary polar correction; anything larger is rejected (NotUnitary).
  explicit Conjugation(ComplexMatrix m, double accept_tol = 1e-10,
                       double repair_tol = 1e-6);

  static Conjugation plain(std::size_t dim);  // x -> conj(x)
  // No validation; lets `validate` report on defective candidates.
  static Conjugation unchecked(ComplexMatrix m);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  CVector apply(const CVector& x) const;
  // The antilinear action applied to every column of a matrix.
  ComplexMatrix apply_columns(const ComplexMatrix& cols) const;

 private:
  ComplexMatrix matrix_;
};

// The linear unitary U with U x = J(C(x)) = M_J * conj(M_C) * x.
// Asserts unitarity of the result.
ComplexMatrix compose_JC(const Conjugation& j, const Conjugation& c,
                         double tol = kDefaultTol);

// V J V^{-1} as a conjugation: matrix V * M_J * V^T. Throws NotUnitary.
Conjugation conjugate_by_unitary(const Conjugation& j, const ComplexMatrix& v,
                                 double tol = kDefaultTol);

// Defect report; passes iff both defects <= tol * dim.
ConjugationReport validate(const Conjugation& j, double tol = kDefaultTol);

}  // namespace momext

#endif
