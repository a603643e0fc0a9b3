#include "momext/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "momext/rng.hpp"

namespace momext {

namespace {

constexpr double kOffDiagonalTarget = 1e-14;  // convergence: off mass vs ||A||_F
constexpr int kMaxSweeps = 30;

double offdiagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Makes the first significant component of each column real positive.
void normalize_column_phases(ComplexMatrix& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    std::size_t pivot = 0;
    bool found = false;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) > 1e-8) {
        pivot = i;
        found = true;
        break;
      }
    }
    if (!found) continue;
    const cplx p = v(pivot, j);
    const cplx factor = std::conj(p) / std::abs(p);
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) *= factor;
    v(pivot, j) = cplx(v(pivot, j).real(), 0.0);
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& t) {
  ComplexMatrix h = t + t.adjoint();
  h *= cplx(0.5, 0.0);
  return h;
}

}  // namespace

ComplexMatrix Subspace::projector() const {
  if (dim() == 0) return ComplexMatrix(ambient_dim, ambient_dim);
  return basis * basis.adjoint();
}

Subspace Subspace::orthogonal_complement(double tol) const {
  Subspace full = orthonormalize(
      basis.hcat(ComplexMatrix::identity(ambient_dim)), tol);
  Subspace out;
  out.ambient_dim = ambient_dim;
  out.basis = full.basis.columns(dim(), full.dim() - dim());
  return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) {
    throw MathError(ErrorCode::InvalidShape, "hermitian_eig needs a square matrix");
  }
  const std::size_t n = a.rows();
  HermitianEig out;
  if (n == 0) {
    out.eigenvectors = ComplexMatrix(0, 0);
    return out;
  }
  const double norm_a = a.frobenius_norm();
  if (hermitian_defect(a) > tol * std::max(norm_a, 1e-300) && norm_a > 0.0) {
    throw MathError(ErrorCode::NotHermitian,
                    "symmetry defect " + std::to_string(hermitian_defect(a)));
  }

  ComplexMatrix b = hermitian_part(a);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = kOffDiagonalTarget * norm_a;
  const double skip = target / (10.0 * static_cast<double>(n) + 10.0);

  bool converged = offdiagonal_norm(b) <= target;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = b(p, q);
        const double mag = std::abs(apq);
        if (mag <= skip) continue;
        const double app = b(p, p).real();
        const double aqq = b(q, q).real();
        const cplx phase = apq / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (tau >= 0.0) {
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        } else {
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx sp = s * phase;        // enters row updates
        const cplx spc = s * std::conj(phase);

        // B <- G^H B G with G = [[c, s],[-s e^{-i phi}, c e^{-i phi}]]
        for (std::size_t i = 0; i < n; ++i) {  // columns p, q
          const cplx bp = b(i, p);
          const cplx bq = b(i, q);
          b(i, p) = c * bp - spc * bq;
          b(i, q) = s * bp + c * std::conj(phase) * bq;
        }
        for (std::size_t j = 0; j < n; ++j) {  // rows p, q
          const cplx bp = b(p, j);
          const cplx bq = b(q, j);
          b(p, j) = c * bp - sp * bq;
          b(q, j) = s * bp + c * phase * bq;
        }
        b(p, q) = cplx(0.0, 0.0);
        b(q, p) = cplx(0.0, 0.0);
        b(p, p) = cplx(b(p, p).real(), 0.0);
        b(q, q) = cplx(b(q, q).real(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {  // V <- V G
          const cplx vp = v(i, p);
          const cplx vq = v(i, q);
          v(i, p) = c * vp - spc * vq;
          v(i, q) = s * vp + c * std::conj(phase) * vq;
        }
      }
    }
    converged = offdiagonal_norm(b) <= target;
  }
  if (!converged) {
    throw MathError(ErrorCode::NoConvergence,
                    "Jacobi sweeps exhausted at off-diagonal mass " +
                        std::to_string(offdiagonal_norm(b)));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return b(i, i).real() < b(j, j).real();
  });
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = b(order[k], order[k]).real();
    out.eigenvectors.set_column(k, v.column(order[k]));
  }
  normalize_column_phases(out.eigenvectors);
  return out;
}

Subspace orthonormalize(const ComplexMatrix& vectors, double tol) {
  if (vectors.rows() == 0) {
    throw MathError(ErrorCode::InvalidShape, "orthonormalize: empty ambient space");
  }
  const std::size_t n = vectors.rows();
  std::vector<CVector> accepted;
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    CVector v = vectors.column(j);
    const double norm0 = norm2(v);
    if (norm0 <= 1e-300) continue;
    for (auto& e : v) e /= norm0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : accepted) {
        const cplx coeff = inner(v, u);
        for (std::size_t i = 0; i < n; ++i) v[i] -= coeff * u[i];
      }
    }
    const double res = norm2(v);
    if (res <= tol) continue;
    for (auto& e : v) e /= res;
    accepted.push_back(std::move(v));
  }
  Subspace out;
  out.ambient_dim = n;
  out.basis = ComplexMatrix(n, accepted.size());
  for (std::size_t j = 0; j < accepted.size(); ++j) out.basis.set_column(j, accepted[j]);
  return out;
}

RankDecomposition rank_and_kernel(const ComplexMatrix& g, double tol) {
  if (g.rows() != g.cols()) {
    throw MathError(ErrorCode::InvalidShape, "rank_and_kernel needs a square matrix");
  }
  HermitianEig eig = hermitian_eig(g, std::max(tol, kDefaultTol));
  const std::size_t n = g.rows();
  double abs_max = 0.0;
  double lam_max = 0.0;
  for (double lam : eig.eigenvalues) {
    abs_max = std::max(abs_max, std::abs(lam));
    lam_max = std::max(lam_max, lam);
  }
  for (double lam : eig.eigenvalues) {
    if (lam < -tol * abs_max) {
      throw MathError(ErrorCode::NotPSD,
                      "eigenvalue " + std::to_string(lam) + " below -tol*max");
    }
  }
  RankDecomposition out;
  out.eigenvalues = eig.eigenvalues;
  std::size_t rank = 0;
  for (double lam : eig.eigenvalues) {
    if (lam > tol * lam_max && lam > 0.0) ++rank;
  }
  out.rank = rank;
  out.kernel.ambient_dim = n;
  out.kernel.basis = eig.eigenvectors.columns(0, n - rank);
  out.range.ambient_dim = n;
  out.range.basis = eig.eigenvectors.columns(n - rank, rank);
  return out;
}

namespace {

struct JointContext {
  const std::vector<double>& scales;  // Frobenius norms of the original family
  Rng& rng;
};

bool all_scalar(const std::vector<ComplexMatrix>& mats,
                const std::vector<double>& scales) {
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const std::size_t d = mats[k].rows();
    cplx mean(0.0, 0.0);
    for (std::size_t i = 0; i < d; ++i) mean += mats[k](i, i);
    mean /= static_cast<double>(d);
    ComplexMatrix diff = mats[k];
    for (std::size_t i = 0; i < d; ++i) diff(i, i) -= mean;
    if (diff.frobenius_norm() > 1e-12 * std::max(1.0, scales[k])) return false;
  }
  return true;
}

ComplexMatrix diag_recurse(const std::vector<ComplexMatrix>& mats,
                           JointContext& ctx) {
  const std::size_t d = mats.empty() ? 0 : mats[0].rows();
  if (d <= 1 || all_scalar(mats, ctx.scales)) {
    return ComplexMatrix::identity(d);
  }
  for (int attempt = 0; attempt < 2; ++attempt) {
    ComplexMatrix guide(d, d);
    for (const auto& t : mats) {
      const double c = ctx.rng.normal();
      const double s = ctx.rng.normal();
      ComplexMatrix h = t + t.adjoint();
      h *= cplx(0.5 * c, 0.0);
      ComplexMatrix w = t - t.adjoint();
      w *= cplx(0.0, -0.5 * s);
      guide += h;
      guide += w;
    }
    HermitianEig eig = hermitian_eig(guide, 1e-8);
    const double spread = eig.eigenvalues.back() - eig.eigenvalues.front();
    const double gap = 1e-8 * spread;

    std::vector<std::pair<std::size_t, std::size_t>> clusters;  // [first, last)
    std::size_t start = 0;
    for (std::size_t i = 1; i <= d; ++i) {
      if (i == d || eig.eigenvalues[i] - eig.eigenvalues[i - 1] > gap) {
        clusters.emplace_back(start, i);
        start = i;
      }
    }
    if (clusters.size() <= 1) continue;  // draw failed to separate, retry

    ComplexMatrix basis(d, d);
    for (const auto& [first, last] : clusters) {
      const std::size_t width = last - first;
      ComplexMatrix w = eig.eigenvectors.columns(first, width);
      if (width == 1) {
        basis.set_column(first, w.column(0));
        continue;
      }
      std::vector<ComplexMatrix> sub(mats.size());
      ComplexMatrix wh = w.adjoint();
      for (std::size_t k = 0; k < mats.size(); ++k) sub[k] = wh * (mats[k] * w);
      ComplexMatrix inner_basis = diag_recurse(sub, ctx);
      ComplexMatrix cols = w * inner_basis;
      for (std::size_t j = 0; j < width; ++j) basis.set_column(first + j, cols.column(j));
    }
    return basis;
  }
  throw MathError(ErrorCode::NoConvergence,
                  "joint diagonalization failed to split a cluster of dim " +
                      std::to_string(d));
}

}  // namespace

JointSpectrum joint_diagonalize(const std::vector<ComplexMatrix>& family,
                                double tol, std::uint64_t seed) {
  if (family.empty()) {
    throw MathError(ErrorCode::InvalidShape, "joint_diagonalize: empty family");
  }
  const std::size_t n = family[0].rows();
  std::vector<double> scales;
  for (const auto& t : family) {
    if (t.rows() != n || t.cols() != n) {
      throw MathError(ErrorCode::DimensionMismatch, "family members differ in size");
    }
    const double norm_t = t.frobenius_norm();
    scales.push_back(norm_t);
    const double normality = (t.adjoint() * t - t * t.adjoint()).frobenius_norm();
    if (normality > tol * std::max(norm_t * norm_t, 1e-300)) {
      throw MathError(ErrorCode::NotNormal,
                      "normality defect " + std::to_string(normality));
    }
  }
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const double comm = commutator_norm(family[a], family[b]);
      if (comm > tol * std::max(scales[a] * scales[b], 1e-300)) {
        throw MathError(ErrorCode::NotCommuting,
                        "commutator norm " + std::to_string(comm));
      }
    }
  }

  JointSpectrum out;
  out.dim = n;
  if (n == 0) {
    out.eigenbasis = ComplexMatrix(0, 0);
    out.eigenvalue_lists.assign(family.size(), CVector{});
    return out;
  }

  for (int round = 0; round < 2; ++round) {
    Rng rng(seed + static_cast<std::uint64_t>(round));
    JointContext ctx{scales, rng};
    ComplexMatrix v = diag_recurse(family, ctx);

    // Canonical column order: lexicographic over the family's eigenvalues.
    std::vector<CVector> diags(family.size());
    for (std::size_t k = 0; k < family.size(); ++k) {
      ComplexMatrix r = v.adjoint() * (family[k] * v);
      diags[k].resize(n);
      for (std::size_t i = 0; i < n; ++i) diags[k][i] = r(i, i);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      for (std::size_t k = 0; k < diags.size(); ++k) {
        const cplx a = diags[k][i];
        const cplx b = diags[k][j];
        if (a.real() != b.real()) return a.real() < b.real();
        if (a.imag() != b.imag()) return a.imag() < b.imag();
      }
      return false;
    });
    ComplexMatrix sorted(n, n);
    for (std::size_t j = 0; j < n; ++j) sorted.set_column(j, v.column(order[j]));
    normalize_column_phases(sorted);

    bool ok = unitary_defect(sorted) <= 10.0 * std::max(tol, 1e-12) * std::sqrt(double(n));
    out.eigenbasis = sorted;
    out.eigenvalue_lists.assign(family.size(), CVector(n));
    for (std::size_t k = 0; k < family.size() && ok; ++k) {
      ComplexMatrix r = sorted.adjoint() * (family[k] * sorted);
      CVector d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = r(i, i);
      out.eigenvalue_lists[k] = d;
      const double resid =
          (family[k] - sorted * ComplexMatrix::diagonal(d) * sorted.adjoint())
              .frobenius_norm();
      if (resid > tol * std::max(scales[k], 1e-300)) ok = false;
    }
    if (ok) return out;
  }
  throw MathError(ErrorCode::NoConvergence,
                  "joint diagonalization residual above tolerance");
}

CVector solve_linear(ComplexMatrix a, CVector b) {
  ComplexMatrix rhs(b.size(), 1);
  rhs.set_column(0, b);
  return solve_linear(std::move(a), rhs).column(0);
}

ComplexMatrix solve_linear(ComplexMatrix a, ComplexMatrix b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) {
    throw MathError(ErrorCode::DimensionMismatch, "solve_linear");
  }
  const double scale = std::max(a.max_abs(), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const double cand = std::abs(a(i, col));
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best <= 1e-14 * scale) {
      throw MathError(ErrorCode::Singular, "pivot below threshold");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(pivot, j));
    }
    const cplx d = a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      const cplx f = a(i, col) / d;
      if (f == cplx(0.0, 0.0)) continue;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(col, j);
    }
  }
  ComplexMatrix x(n, b.cols());
  for (std::size_t jb = 0; jb < b.cols(); ++jb) {
    for (std::size_t ii = n; ii-- > 0;) {
      cplx s = b(ii, jb);
      for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x(j, jb);
      x(ii, jb) = s / a(ii, ii);
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve_linear(a, ComplexMatrix::identity(a.rows()));
}

}  // namespace momext
