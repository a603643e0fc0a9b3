#ifndef MOMEXT_GODIC_LUCENKO_HPP
#define MOMEXT_GODIC_LUCENKO_HPP

#include <cstdint>
#include <vector>

#include "momext/conjugation.hpp"
#include "momext/numerics.hpp"

namespace momext {

struct RightFactorization {
  std::vector<Conjugation> J;  // one per family member
  Conjugation C;               // shared right factor: U_k = J_k o C
};

struct LeftFactorization {
  Conjugation K;               // shared left factor: U_k = K o L_k
  std::vector<Conjugation> L;
};

// Factor a single unitary into a product of two conjugations, U = J o C.
RightFactorization factor_single(const ComplexMatrix& u, double tol = kDefaultTol,
                                 std::uint64_t seed = 0x5eed0001u);

// Factor a commuting unitary family with one shared right conjugation:
// U_k = J_k o C. Built on joint_diagonalize: with U_k = V D_k V^H,
// M_C = V V^T and M_{J_k} = V D_k V^T.
RightFactorization factor_common_right(const std::vector<ComplexMatrix>& family,
                                       double tol = kDefaultTol,
                                       std::uint64_t seed = 0x5eed0001u);

// Shared left conjugation: U_k = K o L_k. The gauge is fixed by the first
// member's eigenvalue list S = D_1: M_K = V S V^T, M_{L_k} = V S conj(D_k) V^T.
LeftFactorization factor_common_left(const std::vector<ComplexMatrix>& family,
                                     double tol = kDefaultTol,
                                     std::uint64_t seed = 0x5eed0001u);

// Orthogonal decomposition of the space into subspaces that are invariant
// under every U_k and U_k^H and cyclic under the group they generate.
// Seeds are the standard basis vectors in index order; each orbit is closed
// by repeatedly applying all U_k and U_k^H until the dimension stabilizes.
std::vector<Subspace> cyclic_decomposition(const std::vector<ComplexMatrix>& family,
                                           double tol = kDefaultTol);

}  // namespace momext

#endif
