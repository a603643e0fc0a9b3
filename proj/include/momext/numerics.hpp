#ifndef MOMEXT_NUMERICS_HPP
#define MOMEXT_NUMERICS_HPP

#include <cstdint>
#include <vector>

#include "momext/complex_matrix.hpp"

namespace momext {

inline constexpr double kDefaultTol = 1e-10;

// A subspace of C^n held by an orthonormal column basis (n x k, possibly k=0).
struct Subspace {
  std::size_t ambient_dim = 0;
  ComplexMatrix basis;  // ambient_dim x dim, orthonormal columns

  std::size_t dim() const { return basis.cols(); }
  // Orthogonal projector basis * basis^H.
  ComplexMatrix projector() const;
  // Orthonormal basis of the orthogonal complement; deterministic
  // (standard basis vectors swept in index order).
  Subspace orthogonal_complement(double tol = kDefaultTol) const;
};

// Joint eigen-data of a commuting normal family: one unitary eigenbasis and,
// per input matrix, the eigenvalue list read off the diagonalized form.
struct JointSpectrum {
  std::size_t dim = 0;
  ComplexMatrix eigenbasis;                    // dim x dim unitary
  std::vector<CVector> eigenvalue_lists;       // one list per input matrix
};

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, column k pairs with eigenvalues[k]
};

struct RankDecomposition {
  std::size_t rank = 0;
  std::vector<double> eigenvalues;  // ascending, of the (Hermitian) input
  Subspace kernel;
  Subspace range;
};

// Two-sided Jacobi eigensolver for a Hermitian matrix. Sorted ascending;
// eigenvector phases are fixed so the first significant component of each
// column is real positive. Throws NotHermitian / NoConvergence.
HermitianEig hermitian_eig(const ComplexMatrix& a, double tol = kDefaultTol);

// Modified Gram-Schmidt with reorthogonalization. Each input column is
// normalized first; columns whose projected residual has norm <= tol are
// dropped. An empty subspace is a valid result.
Subspace orthonormalize(const ComplexMatrix& vectors, double tol = kDefaultTol);

// Rank / kernel / range split of a Hermitian PSD matrix. rank counts
// eigenvalues > tol * max(eigenvalue). Throws NotPSD when an eigenvalue
// drops below -tol * max|eigenvalue|.
RankDecomposition rank_and_kernel(const ComplexMatrix& g, double tol = kDefaultTol);

// Joint diagonalization of pairwise commuting normal matrices: diagonalize a
// random Hermitian combination, recurse inside eigenvalue clusters, retry
// once with a fresh draw, then fail. Deterministic for a fixed seed.
JointSpectrum joint_diagonalize(const std::vector<ComplexMatrix>& family,
                                double tol = kDefaultTol,
                                std::uint64_t seed = 0x5eed0001u);

// Dense linear solves used by the extension and GNS machinery.
// Gaussian elimination with partial pivoting; throws Singular.
CVector solve_linear(ComplexMatrix a, CVector b);
ComplexMatrix solve_linear(ComplexMatrix a, ComplexMatrix b);
ComplexMatrix inverse(const ComplexMatrix& a);

}  // namespace momext

#endif
