#include "momext/godic_lucenko.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace momext {

namespace {

void check_unitary_family(const std::vector<ComplexMatrix>& family, double tol) {
  for (const auto& u : family) {
    if (u.rows() != u.cols()) {
      throw MathError(ErrorCode::InvalidShape, "family members must be square");
    }
    const double defect = unitary_defect(u);
    if (defect > tol * static_cast<double>(std::max<std::size_t>(u.rows(), 1))) {
      throw MathError(ErrorCode::NotUnitary,
                      "unitarity defect " + std::to_string(defect));
    }
  }
}

Conjugation model_conjugation(const ComplexMatrix& v, const CVector& diag) {
  // V * diag * V^T is symmetric unitary for any unit-modulus diagonal.
  return Conjugation(v * ComplexMatrix::diagonal(diag) * v.transpose());
}

CVector unit_diagonal(std::size_t n) { return CVector(n, cplx(1.0, 0.0)); }

// Projects unit-modulus data back onto the circle; the joint spectrum of a
// unitary family carries O(tol) radial noise.
CVector circle_project(CVector d) {
  for (auto& z : d) {
    const double a = std::abs(z);
    if (a > 1e-300) z /= a;
  }
  return d;
}

}  // namespace

RightFactorization factor_single(const ComplexMatrix& u, double tol,
                                 std::uint64_t seed) {
  return factor_common_right({u}, tol, seed);
}

RightFactorization factor_common_right(const std::vector<ComplexMatrix>& family,
                                       double tol, std::uint64_t seed) {
  check_unitary_family(family, tol);
  JointSpectrum spec = joint_diagonalize(family, tol, seed);
  RightFactorization out;
  out.C = model_conjugation(spec.eigenbasis, unit_diagonal(spec.dim));
  out.J.reserve(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    out.J.push_back(model_conjugation(spec.eigenbasis,
                                      circle_project(spec.eigenvalue_lists[k])));
  }
  return out;
}

LeftFactorization factor_common_left(const std::vector<ComplexMatrix>& family,
                                     double tol, std::uint64_t seed) {
  check_unitary_family(family, tol);
  JointSpectrum spec = joint_diagonalize(family, tol, seed);
  // Gauge S = D_1: M_K = V S V^T, M_{L_k} = V S conj(D_k) V^T, so that
  // K o L_k = U_k exactly and the singleton case puts the spectrum in K.
  const CVector s = circle_project(spec.eigenvalue_lists[0]);
  LeftFactorization out;
  out.K = model_conjugation(spec.eigenbasis, s);
  out.L.reserve(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    CVector d = circle_project(spec.eigenvalue_lists[k]);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = s[i] * std::conj(d[i]);
    out.L.push_back(model_conjugation(spec.eigenbasis, d));
  }
  return out;
}

std::vector<Subspace> cyclic_decomposition(const std::vector<ComplexMatrix>& family,
                                           double tol) {
  check_unitary_family(family, tol);
  if (family.empty()) {
    throw MathError(ErrorCode::InvalidShape, "cyclic_decomposition: empty family");
  }
  const std::size_t n = family[0].rows();
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const double comm = commutator_norm(family[a], family[b]);
      const double scale = family[a].frobenius_norm() * family[b].frobenius_norm();
      if (comm > tol * std::max(scale, 1e-300)) {
        throw MathError(ErrorCode::NotCommuting,
                        "commutator norm " + std::to_string(comm));
      }
    }
  }

  std::vector<ComplexMatrix> actions;
  for (const auto& u : family) {
    actions.push_back(u);
    actions.push_back(u.adjoint());
  }

  std::vector<CVector> done;  // accumulated orthonormal basis of finished blocks
  auto project_out = [&](CVector& v, const std::vector<CVector>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) {
        const cplx coeff = inner(v, u);
        for (std::size_t i = 0; i < n; ++i) v[i] -= coeff * u[i];
      }
    }
  };

  std::vector<Subspace> blocks;
  const double drop = std::max(tol, 1e-12);
  for (std::size_t seed_index = 0; seed_index < n; ++seed_index) {
    CVector v(n, cplx(0.0, 0.0));
    v[seed_index] = 1.0;
    project_out(v, done);
    double res = norm2(v);
    if (res <= drop) continue;
    for (auto& e : v) e /= res;

    std::vector<CVector> block{v};
    std::vector<CVector> frontier{v};
    while (!frontier.empty()) {
      std::vector<CVector> next;
      for (const auto& w : frontier) {
        for (const auto& m : actions) {
          CVector y = m * w;
          project_out(y, done);
          project_out(y, block);
          const double r = norm2(y);
          if (r <= drop) continue;
          for (auto& e : y) e /= r;
          block.push_back(y);
          next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }

    Subspace sub;
    sub.ambient_dim = n;
    sub.basis = ComplexMatrix(n, block.size());
    for (std::size_t j = 0; j < block.size(); ++j) sub.basis.set_column(j, block[j]);
    blocks.push_back(std::move(sub));
    for (auto& b : block) done.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace momext
