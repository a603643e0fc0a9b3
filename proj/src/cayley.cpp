#include "momext/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "momext/godic_lucenko.hpp"
#include "momext/rng.hpp"

namespace momext {

namespace {

ComplexMatrix cayley_of_total(const ComplexMatrix& a, cplx num_shift,
                              cplx den_shift, double tol) {
  // (A - num_shift)(A - den_shift)^{-1} through the eigendecomposition.
  HermitianEig eig = hermitian_eig(a, tol);
  CVector d(eig.eigenvalues.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const cplx lam(eig.eigenvalues[i], 0.0);
    d[i] = (lam - num_shift) / (lam - den_shift);
  }
  return eig.eigenvectors * ComplexMatrix::diagonal(d) * eig.eigenvectors.adjoint();
}

double domain_escape(const Subspace& space, const ComplexMatrix& images) {
  // || (I - P) * images ||_F
  if (images.cols() == 0) return 0.0;
  ComplexMatrix residual = images - space.basis * (space.basis.adjoint() * images);
  return residual.frobenius_norm();
}

}  // namespace

CVector PartialSymmetricOperator::apply(const CVector& x) const {
  return action * (domain.basis.adjoint() * x);
}

ComplexMatrix PartialSymmetricOperator::total_matrix() const {
  if (!is_total()) {
    throw MathError(ErrorCode::InvalidShape, "operator is not total");
  }
  return action * domain.basis.adjoint();
}

double PartialSymmetricOperator::symmetry_defect_on_domain() const {
  ComplexMatrix compressed = domain.basis.adjoint() * action;
  return hermitian_defect(compressed);
}

PartialSymmetricOperator make_partial_symmetric(std::size_t ambient_dim,
                                                Subspace domain,
                                                ComplexMatrix action,
                                                double tol) {
  PartialSymmetricOperator op;
  op.ambient_dim = ambient_dim;
  op.domain = std::move(domain);
  op.action = std::move(action);
  if (op.domain.ambient_dim != ambient_dim ||
      op.action.rows() != ambient_dim ||
      op.action.cols() != op.domain.dim()) {
    throw MathError(ErrorCode::DimensionMismatch, "partial operator shapes");
  }
  const double defect = op.symmetry_defect_on_domain();
  const double scale = std::max(1.0, op.action.frobenius_norm());
  if (defect > tol * scale) {
    throw MathError(ErrorCode::NotSymmetric,
                    "symmetry defect on domain " + std::to_string(defect));
  }
  return op;
}

DeficiencyData cayley(const PartialSymmetricOperator& a1, cplx z0, double tol) {
  if (std::abs(z0.imag()) < 1e-300) {
    throw MathError(ErrorCode::RealShift, "z0 must be non-real");
  }
  const double scale = std::max(1.0, a1.action.frobenius_norm());
  if (a1.symmetry_defect_on_domain() > tol * scale) {
    throw MathError(ErrorCode::NotSymmetric,
                    "symmetry defect " + std::to_string(a1.symmetry_defect_on_domain()));
  }
  const std::size_t n = a1.ambient_dim;
  const std::size_t d = a1.domain.dim();

  DeficiencyData out;
  if (d == 0) {
    out.h1.ambient_dim = n;
    out.h1.basis = ComplexMatrix(n, 0);
    out.h3 = out.h1;
    out.h2.ambient_dim = n;
    out.h2.basis = ComplexMatrix::identity(n);
    out.h4 = out.h2;
    out.v1 = ComplexMatrix(n, n);
    return out;
  }

  ComplexMatrix shifted1 = a1.action - cplx(z0) * a1.domain.basis;
  ComplexMatrix shifted3 = a1.action - std::conj(z0) * a1.domain.basis;
  out.h1 = orthonormalize(shifted1, tol);
  out.h3 = orthonormalize(shifted3, tol);
  if (out.h1.dim() != d || out.h3.dim() != d) {
    throw MathError(ErrorCode::InvalidShape,
                    "Cayley image rank deficient; domain not injective under A - z0");
  }
  out.h2 = out.h1.orthogonal_complement(tol);
  out.h4 = out.h3.orthogonal_complement(tol);

  // V1 (A1 - z0) f = (A1 - conj z0) f, extended by zero on H2.
  ComplexMatrix gram = shifted1.adjoint() * shifted1;
  out.v1 = shifted3 * solve_linear(gram, shifted1.adjoint());
  return out;
}

ComplexMatrix inverse_cayley(const ComplexMatrix& w, cplx z0, double tol,
                             std::uint64_t seed) {
  if (std::abs(z0.imag()) < 1e-300) {
    throw MathError(ErrorCode::RealShift, "z0 must be non-real");
  }
  if (w.rows() != w.cols()) {
    throw MathError(ErrorCode::InvalidShape, "inverse_cayley needs a square matrix");
  }
  const double defect = unitary_defect(w);
  if (defect > std::max(tol, 1e-10) *
                   static_cast<double>(std::max<std::size_t>(w.rows(), 1))) {
    throw MathError(ErrorCode::NotUnitary,
                    "unitarity defect " + std::to_string(defect));
  }
  JointSpectrum spec = joint_diagonalize({w}, std::max(tol, 1e-10), seed);
  CVector a(spec.dim);
  for (std::size_t i = 0; i < spec.dim; ++i) {
    const cplx lam = spec.eigenvalue_lists[0][i];
    if (std::abs(lam - cplx(1.0, 0.0)) <= tol) {
      throw MathError(ErrorCode::EigenvalueOne,
                      "eigenvalue " + std::to_string(lam.real()) + "+" +
                          std::to_string(lam.imag()) +
                          "i of the Cayley unitary lies within tol of 1; the "
                          "factorization yields a self-adjoint relation, not "
                          "an operator");
    }
    const cplx value = (z0 * lam - std::conj(z0)) / (lam - cplx(1.0, 0.0));
    a[i] = cplx(value.real(), 0.0);  // exact for |lam| = 1
  }
  return spec.eigenbasis * ComplexMatrix::diagonal(a) * spec.eigenbasis.adjoint();
}

const HypothesisCheck* HypothesisReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

HypothesisReport validate_hypotheses(const CommutingTupleInstance& t, double tol) {
  HypothesisReport report;
  auto add = [&](const std::string& name, double defect, double threshold) {
    HypothesisCheck check{name, defect, threshold, defect <= threshold};
    report.passed = report.passed && check.passed;
    report.checks.push_back(std::move(check));
  };

  const std::size_t n = t.ambient_dim;
  const ComplexMatrix& q = t.a1.domain.basis;
  const ComplexMatrix& act = t.a1.action;
  const double act_scale = std::max(1.0, act.frobenius_norm());

  add("z0_nonreal", std::abs(t.z0.imag()) < 1e-300 ? 1.0 : 0.0, 0.0);
  add("A1_symmetric_on_domain", t.a1.symmetry_defect_on_domain(), tol * act_scale);

  for (std::size_t j = 0; j < t.a_rest.size(); ++j) {
    const auto& a = t.a_rest[j];
    const std::string tag = "[" + std::to_string(j) + "]";
    add("A_rest_hermitian" + tag, hermitian_defect(a),
        tol * std::max(1.0, a.frobenius_norm()));
    add("A_rest_preserves_domain" + tag, domain_escape(t.a1.domain, a * q),
        tol * std::max(1.0, a.frobenius_norm()));
    // A1 (A_j f) vs A_j (A1 f) on the domain basis.
    ComplexMatrix lhs = act * (q.adjoint() * (a * q));
    ComplexMatrix rhs = a * act;
    add("commute_A1_Arest" + tag, (lhs - rhs).frobenius_norm(),
        tol * std::max(1.0, a.frobenius_norm() * act_scale));
  }

  for (std::size_t k = 0; k < t.b_list.size(); ++k) {
    const auto& b = t.b_list[k];
    const std::string tag = "[" + std::to_string(k) + "]";
    const double b_scale = std::max(1.0, b.frobenius_norm());
    add("B_unitary" + tag, unitary_defect(b), tol * b_scale);
    add("B_preserves_domain" + tag, domain_escape(t.a1.domain, b * q),
        tol * b_scale);
    add("Binv_preserves_domain" + tag, domain_escape(t.a1.domain, b.adjoint() * q),
        tol * b_scale);
    ComplexMatrix lhs = act * (q.adjoint() * (b * q));
    ComplexMatrix rhs = b * act;
    add("commute_A1_B" + tag, (lhs - rhs).frobenius_norm(),
        tol * std::max(1.0, b_scale * act_scale));
  }

  for (std::size_t a = 0; a < t.a_rest.size(); ++a) {
    for (std::size_t b = a + 1; b < t.a_rest.size(); ++b) {
      add("commute_Arest[" + std::to_string(a) + "," + std::to_string(b) + "]",
          commutator_norm(t.a_rest[a], t.a_rest[b]),
          tol * std::max(1.0, t.a_rest[a].frobenius_norm() *
                                  t.a_rest[b].frobenius_norm()));
    }
    for (std::size_t k = 0; k < t.b_list.size(); ++k) {
      add("commute_Arest_B[" + std::to_string(a) + "," + std::to_string(k) + "]",
          commutator_norm(t.a_rest[a], t.b_list[k]),
          tol * std::max(1.0, t.a_rest[a].frobenius_norm() *
                                  t.b_list[k].frobenius_norm()));
    }
  }
  for (std::size_t a = 0; a < t.b_list.size(); ++a) {
    for (std::size_t b = a + 1; b < t.b_list.size(); ++b) {
      add("commute_B[" + std::to_string(a) + "," + std::to_string(b) + "]",
          commutator_norm(t.b_list[a], t.b_list[b]),
          tol * std::max(1.0, t.b_list[a].frobenius_norm() *
                                  t.b_list[b].frobenius_norm()));
    }
  }

  // Condition (d): J-structure.
  const ComplexMatrix& mj = t.j.matrix();
  const ConjugationReport jrep = validate(t.j, tol);
  add("J_conjugation",
      std::max(jrep.unitary_defect, jrep.symmetry_defect),
      tol * static_cast<double>(std::max<std::size_t>(n, 1)));
  ComplexMatrix jq = t.j.apply_columns(q);
  add("J_preserves_domain", domain_escape(t.a1.domain, jq),
      tol * static_cast<double>(std::max<std::size_t>(n, 1)));
  {
    // A1 J = J A1 on the domain basis.
    ComplexMatrix lhs = act * (q.adjoint() * jq);
    ComplexMatrix rhs = t.j.apply_columns(act);
    add("J_commutes_A1", (lhs - rhs).frobenius_norm(), tol * act_scale);
  }
  for (std::size_t j = 0; j < t.a_rest.size(); ++j) {
    const auto& a = t.a_rest[j];
    add("J_commutes_Arest[" + std::to_string(j) + "]",
        (a * mj - mj * a.conjugate()).frobenius_norm(),
        tol * std::max(1.0, a.frobenius_norm()));
  }
  for (std::size_t k = 0; k < t.b_list.size(); ++k) {
    const auto& b = t.b_list[k];
    add("J_flip_B[" + std::to_string(k) + "]",
        (b * mj - mj * b.transpose()).frobenius_norm(),
        tol * std::max(1.0, b.frobenius_norm()));
  }

  // Finite analogue of hypothesis (c) plus the H-space geometry.
  if (std::abs(t.z0.imag()) >= 1e-300 &&
      t.a1.symmetry_defect_on_domain() <= 1e-6 * act_scale) {
    DeficiencyData dd = cayley(t.a1, t.z0, tol);
    for (std::size_t k = 0; k < t.b_list.size(); ++k) {
      const auto& b = t.b_list[k];
      const std::string tag = "[" + std::to_string(k) + "]";
      const double b_scale = std::max(1.0, b.frobenius_norm());
      add("H1_invariant_B" + tag, domain_escape(dd.h1, b * dd.h1.basis),
          tol * b_scale);
      add("H3_invariant_B" + tag, domain_escape(dd.h3, b * dd.h3.basis),
          tol * b_scale);
      ComplexMatrix restricted = dd.h1.basis.adjoint() * (b * dd.h1.basis);
      add("B_restriction_unitary" + tag, unitary_defect(restricted), tol * b_scale);
    }
    for (std::size_t j = 0; j < t.a_rest.size(); ++j) {
      const auto& a = t.a_rest[j];
      const std::string tag = "[" + std::to_string(j) + "]";
      const double a_scale = std::max(1.0, a.frobenius_norm());
      add("H1_invariant_Arest" + tag, domain_escape(dd.h1, a * dd.h1.basis),
          tol * a_scale);
      ComplexMatrix compressed = dd.h1.basis.adjoint() * (a * dd.h1.basis);
      add("H1_compression_hermitian" + tag, hermitian_defect(compressed),
          tol * a_scale);
    }
    add("J_maps_H2_to_H4", domain_escape(dd.h4, t.j.apply_columns(dd.h2.basis)),
        tol * static_cast<double>(std::max<std::size_t>(n, 1)));
    add("dim_H2_equals_dim_H4",
        std::abs(static_cast<double>(dd.h2.dim()) - static_cast<double>(dd.h4.dim())),
        0.0);
  }
  return report;
}

ExtensionResult build_extension(const CommutingTupleInstance& t, double tol,
                                std::uint64_t seed) {
  HypothesisReport report = validate_hypotheses(t, tol);
  if (!report.passed) {
    std::string failing;
    for (const auto& c : report.checks) {
      if (!c.passed) {
        if (!failing.empty()) failing += ", ";
        failing += c.name + " (defect " + std::to_string(c.defect) + ")";
      }
    }
    throw MathError(ErrorCode::HypothesisViolation, failing);
  }

  const std::size_t n = t.ambient_dim;
  ExtensionResult out;
  out.deficiency = cayley(t.a1, t.z0, tol);
  const Subspace& h2 = out.deficiency.h2;
  const std::size_t codim = h2.dim();

  if (codim == 0) {
    ComplexMatrix total = t.a1.action * t.a1.domain.basis.adjoint();
    ComplexMatrix sym = total + total.adjoint();
    sym *= cplx(0.5, 0.0);
    out.a1_hat = sym;
    out.k = Conjugation::plain(0);
    out.u24 = ComplexMatrix(n, n);
    out.cayley_unitary = out.deficiency.v1;
  } else {
    const ComplexMatrix& b2 = h2.basis;
    std::vector<ComplexMatrix> restricted;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < t.a_rest.size(); ++j) {
      ComplexMatrix u = cayley_of_total(t.a_rest[j], cplx(0.0, -1.0),
                                        cplx(0.0, 1.0), tol);
      ComplexMatrix u2 = b2.adjoint() * (u * b2);
      const double escape = (u * b2 - b2 * u2).frobenius_norm();
      if (escape > 1e-7 * static_cast<double>(n)) {
        throw MathError(ErrorCode::HypothesisViolation,
                        "H2 not invariant under Cayley transform of A_rest[" +
                            std::to_string(j) + "], escape " +
                            std::to_string(escape));
      }
      restricted.push_back(std::move(u2));
      names.push_back("Cayley(A_rest[" + std::to_string(j) + "])");
    }
    for (std::size_t k = 0; k < t.b_list.size(); ++k) {
      ComplexMatrix b2k = b2.adjoint() * (t.b_list[k] * b2);
      const double escape = (t.b_list[k] * b2 - b2 * b2k).frobenius_norm();
      if (escape > 1e-7 * static_cast<double>(n)) {
        throw MathError(ErrorCode::HypothesisViolation,
                        "H2 not invariant under B[" + std::to_string(k) +
                            "], escape " + std::to_string(escape));
      }
      restricted.push_back(std::move(b2k));
      names.push_back("B[" + std::to_string(k) + "]");
    }
    if (restricted.empty()) {
      // Nothing to commute with: factor -E_{H2}, the von Neumann-style choice.
      ComplexMatrix neg = ComplexMatrix::identity(codim);
      neg *= cplx(-1.0, 0.0);
      restricted.push_back(std::move(neg));
      names.push_back("-E_H2");
    }

    LeftFactorization lf =
        factor_common_left(restricted, std::max(tol, 1e-9), seed);
    out.k = lf.K;
    out.l_list = lf.L;
    out.u24 = t.j.matrix() * b2.conjugate() * lf.K.matrix().conjugate() *
              b2.adjoint();
    out.cayley_unitary = out.deficiency.v1 + out.u24;

    std::string family_desc;
    for (const auto& name : names) {
      if (!family_desc.empty()) family_desc += ", ";
      family_desc += name;
    }
    try {
      out.a1_hat = inverse_cayley(out.cayley_unitary, t.z0, tol, seed);
    } catch (const MathError& err) {
      if (err.code() == ErrorCode::EigenvalueOne) {
        throw MathError(ErrorCode::EigenvalueOne,
                        std::string(err.what()) +
                            " [U_{2,4} = J o K with K the shared left factor "
                            "of {" + family_desc + "} on H2]");
      }
      throw;
    }
  }

  ExtensionVerification& verify = out.verification;
  ComplexMatrix ext_residual = out.a1_hat * t.a1.domain.basis - t.a1.action;
  double worst = 0.0;
  for (std::size_t j = 0; j < ext_residual.cols(); ++j) {
    worst = std::max(worst, norm2(ext_residual.column(j)));
  }
  verify.extension_defect = worst;
  verify.hermitian_defect =
      hermitian_defect(out.a1_hat) / std::max(1.0, out.a1_hat.frobenius_norm());
  const double hat_norm = std::max(1.0, out.a1_hat.frobenius_norm());
  for (std::size_t j = 0; j < t.a_rest.size(); ++j) {
    const double rel = commutator_norm(out.a1_hat, t.a_rest[j]) /
                       std::max(1.0, hat_norm * t.a_rest[j].frobenius_norm());
    verify.commutation_defects.emplace_back("A_rest[" + std::to_string(j) + "]", rel);
  }
  for (std::size_t k = 0; k < t.b_list.size(); ++k) {
    const double rel = commutator_norm(out.a1_hat, t.b_list[k]) /
                       std::max(1.0, hat_norm * t.b_list[k].frobenius_norm());
    verify.commutation_defects.emplace_back("B[" + std::to_string(k) + "]", rel);
  }
  return out;
}

CommutingTupleInstance generate_instance(std::size_t ambient_dim,
                                         std::size_t codim, std::size_t rho,
                                         std::size_t tau, std::uint64_t seed) {
  if (ambient_dim == 0 || codim >= ambient_dim || rho == 0) {
    throw MathError(ErrorCode::InvalidShape,
                    "need ambient_dim >= 1, codim < ambient_dim, rho >= 1");
  }
  Rng rng(seed);

  // Real-orthogonal eigenbasis: J = plain conjugation is then compatible
  // with every operator diagonal in it.
  ComplexMatrix gauss(ambient_dim, ambient_dim);
  Subspace frame;
  for (int attempt = 0; attempt < 4; ++attempt) {
    for (auto& v : gauss.data()) v = cplx(rng.normal(), 0.0);
    frame = orthonormalize(gauss, 1e-10);
    if (frame.dim() == ambient_dim) break;
  }
  if (frame.dim() != ambient_dim) {
    throw MathError(ErrorCode::NoConvergence, "random frame degenerate");
  }
  const ComplexMatrix& o = frame.basis;

  CommutingTupleInstance t;
  t.ambient_dim = ambient_dim;
  t.z0 = cplx(0.0, 1.0);
  t.j = Conjugation::plain(ambient_dim);

  const std::size_t d = ambient_dim - codim;
  Subspace domain;
  domain.ambient_dim = ambient_dim;
  domain.basis = o.columns(0, d);
  CVector a1_vals(d);
  for (auto& v : a1_vals) v = cplx(rng.uniform(-2.0, 2.0), 0.0);
  ComplexMatrix action = domain.basis * ComplexMatrix::diagonal(a1_vals);
  t.a1 = make_partial_symmetric(ambient_dim, std::move(domain), std::move(action));

  for (std::size_t j = 1; j < rho; ++j) {
    CVector vals(ambient_dim);
    for (auto& v : vals) v = cplx(rng.uniform(-2.0, 2.0), 0.0);
    t.a_rest.push_back(o * ComplexMatrix::diagonal(vals) * o.transpose());
  }
  for (std::size_t k = 0; k < tau; ++k) {
    CVector vals(ambient_dim);
    for (auto& v : vals) {
      const double theta = rng.uniform(0.1, 2.0 * M_PI - 0.1);
      v = cplx(std::cos(theta), std::sin(theta));
    }
    t.b_list.push_back(o * ComplexMatrix::diagonal(vals) * o.transpose());
  }
  return t;
}

}  // namespace momext
