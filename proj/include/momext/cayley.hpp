#ifndef MOMEXT_CAYLEY_HPP
#define MOMEXT_CAYLEY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "momext/conjugation.hpp"
#include "momext/numerics.hpp"

namespace momext {

// A symmetric operator defined on a proper subspace of the ambient space.
// `action` maps domain coordinates (relative to domain.basis) to ambient
// vectors: A (domain.basis * c) = action * c.
struct PartialSymmetricOperator {
  std::size_t ambient_dim = 0;
  Subspace domain;
  ComplexMatrix action;  // ambient_dim x domain.dim()

  bool is_total() const { return domain.dim() == ambient_dim; }
  // Apply to an ambient vector assumed to lie in the domain.
  CVector apply(const CVector& x) const;
  // The operator as a full matrix; valid only when total.
  ComplexMatrix total_matrix() const;
  // Symmetry defect ||Q^H M - (Q^H M)^H||_F of the compressed form.
  double symmetry_defect_on_domain() const;
};

// Creates the operator and checks symmetry on the domain (NotSymmetric).
PartialSymmetricOperator make_partial_symmetric(std::size_t ambient_dim,
                                                Subspace domain,
                                                ComplexMatrix action,
                                                double tol = kDefaultTol);

// One instance of the extension problem: a partial symmetric A1, bounded
// self-adjoint A_2..A_rho, unitary B_1..B_tau, a conjugation J and the
// non-real Cayley shift z0.
struct CommutingTupleInstance {
  std::size_t ambient_dim = 0;
  PartialSymmetricOperator a1;
  std::vector<ComplexMatrix> a_rest;
  std::vector<ComplexMatrix> b_list;
  Conjugation j;
  cplx z0 = cplx(0.0, 1.0);
};

// Deficiency geometry of the Cayley transform:
//   H1 = (A1 - z0) D,  H2 = H (-) H1,  H3 = (A1 - conj z0) D,  H4 = H (-) H3,
// and the partial isometry V1 : H1 -> H3 stored as an ambient matrix that
// vanishes on H2.
struct DeficiencyData {
  Subspace h1, h2, h3, h4;
  ComplexMatrix v1;
};

struct HypothesisCheck {
  std::string name;
  double defect = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool passed = true;

  const HypothesisCheck* find(const std::string& name) const;
};

struct ExtensionVerification {
  double extension_defect = 0.0;    // max over domain basis of ||(A1_hat - A1) f||
  double hermitian_defect = 0.0;    // relative
  std::vector<std::pair<std::string, double>> commutation_defects;  // relative
};

struct ExtensionResult {
  ComplexMatrix a1_hat;
  DeficiencyData deficiency;
  Conjugation k;                    // shared left factor used in U_{2,4}
  std::vector<Conjugation> l_list;
  ComplexMatrix u24;                // ambient matrix, zero on H1
  ComplexMatrix cayley_unitary;     // V1 (+) U_{2,4}
  ExtensionVerification verification;
};

DeficiencyData cayley(const PartialSymmetricOperator& a1, cplx z0,
                      double tol = kDefaultTol);

// A = (z0 W - conj(z0) I)(W - I)^{-1} for unitary W without eigenvalue 1.
// Throws EigenvalueOne when some eigenvalue of W is within tol of 1.
ComplexMatrix inverse_cayley(const ComplexMatrix& w, cplx z0,
                             double tol = kDefaultTol,
                             std::uint64_t seed = 0x5eed0001u);

// Numeric defect report for conditions (a)-(d) in their finite-dimensional
// form. Never throws; build_extension requires a passing report.
HypothesisReport validate_hypotheses(const CommutingTupleInstance& t,
                                     double tol = kDefaultTol);

// The commuting self-adjoint extension of A1: Cayley-transform the bounded
// A_j, restrict them and the B_k to H2, take the shared left conjugation K
// of that family, set U_{2,4} = J o K, and invert the Cayley transform of
// V1 (+) U_{2,4}. Throws HypothesisViolation / EigenvalueOne.
ExtensionResult build_extension(const CommutingTupleInstance& t,
                                double tol = kDefaultTol,
                                std::uint64_t seed = 0x5eed0001u);

// Random valid instance: real-orthogonal eigenbasis, real diagonal A-spectra,
// unit-modulus B-spectra, J = plain conjugation, domain = first
// (ambient_dim - codim) eigenvectors. Throws InvalidShape.
CommutingTupleInstance generate_instance(std::size_t ambient_dim,
                                         std::size_t codim, std::size_t rho,
                                         std::size_t tau, std::uint64_t seed);

}  // namespace momext

#endif
