#include "momext/moment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace momext {

namespace {

// All integer tuples lo <= t <= hi componentwise, lexicographic. The empty
// dimension yields exactly one empty tuple.
std::vector<std::vector<int>> index_grid(const std::vector<int>& lo,
                                         const std::vector<int>& hi) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return out;  // empty box
  }
  std::vector<int> cur = lo;
  while (true) {
    out.push_back(cur);
    std::size_t pos = cur.size();
    while (pos > 0) {
      --pos;
      if (cur[pos] < hi[pos]) {
        ++cur[pos];
        for (std::size_t j = pos + 1; j < cur.size(); ++j) cur[j] = lo[j];
        break;
      }
      if (pos == 0) return out;
    }
    if (cur.size() == 0) return out;  // zero-dimensional grid: single tuple
  }
}

std::vector<int> add_indices(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<int> sub_indices(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

std::vector<int> negate_indices(std::vector<int> a) {
  for (auto& v : a) v = -v;
  return a;
}

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
  return std::min(d, 2.0 * M_PI - d);
}

}  // namespace

bool MonomialIndex::operator<(const MonomialIndex& other) const {
  if (m.size() != other.m.size()) return m.size() < other.m.size();
  if (n.size() != other.n.size()) return n.size() < other.n.size();
  if (m != other.m) return m < other.m;
  return n < other.n;
}

bool MonomialIndex::operator==(const MonomialIndex& other) const {
  return m == other.m && n == other.n;
}

MomentTable::MomentTable(std::vector<int> m_box, std::vector<int> n_box)
    : m_box_(std::move(m_box)), n_box_(std::move(n_box)) {
  for (int v : m_box_) {
    if (v < 0) throw MathError(ErrorCode::InvalidShape, "negative m_box entry");
  }
  for (int v : n_box_) {
    if (v < 0) throw MathError(ErrorCode::InvalidShape, "negative n_box entry");
  }
}

void MomentTable::set(const MonomialIndex& idx, cplx value) {
  if (idx.m.size() != r() || idx.n.size() != l()) {
    throw MathError(ErrorCode::DimensionMismatch, "moment index arity");
  }
  entries_[idx] = value;
}

cplx MomentTable::at(const MonomialIndex& idx) const {
  auto it = entries_.find(idx);
  if (it == entries_.end()) {
    std::string desc = "s_{(";
    for (std::size_t i = 0; i < idx.m.size(); ++i)
      desc += (i ? "," : "") + std::to_string(idx.m[i]);
    desc += "),(";
    for (std::size_t i = 0; i < idx.n.size(); ++i)
      desc += (i ? "," : "") + std::to_string(idx.n[i]);
    desc += ")}";
    throw MathError(ErrorCode::IncompleteTable, desc + " missing");
  }
  return it->second;
}

bool MomentTable::has(const MonomialIndex& idx) const {
  return entries_.count(idx) > 0;
}

std::vector<MonomialIndex> MomentTable::required_indices() const {
  std::vector<int> m_hi(r()), n_lo(l()), n_hi(l());
  for (std::size_t i = 0; i < r(); ++i) m_hi[i] = 2 * m_box_[i] + 2;
  for (std::size_t j = 0; j < l(); ++j) {
    n_hi[j] = 2 * n_box_[j];
    n_lo[j] = -n_hi[j];
  }
  std::vector<MonomialIndex> out;
  for (const auto& m : index_grid(std::vector<int>(r(), 0), m_hi))
    for (const auto& n : index_grid(n_lo, n_hi)) out.push_back({m, n});
  return out;
}

std::vector<MonomialIndex> MomentTable::box_monomials() const {
  std::vector<int> n_lo(l()), n_hi(l());
  for (std::size_t j = 0; j < l(); ++j) {
    n_hi[j] = n_box_[j];
    n_lo[j] = -n_box_[j];
  }
  std::vector<MonomialIndex> out;
  for (const auto& m : index_grid(std::vector<int>(r(), 0), m_box_))
    for (const auto& n : index_grid(n_lo, n_hi)) out.push_back({m, n});
  return out;
}

std::vector<MonomialIndex> MomentTable::inner_box_monomials() const {
  std::vector<int> m_hi(r()), n_lo(l()), n_hi(l());
  for (std::size_t i = 0; i < r(); ++i) m_hi[i] = m_box_[i] - 1;
  for (std::size_t j = 0; j < l(); ++j) {
    n_hi[j] = n_box_[j] - 1;
    n_lo[j] = -n_hi[j];
  }
  std::vector<MonomialIndex> out;
  for (const auto& m : index_grid(std::vector<int>(r(), 0), m_hi))
    for (const auto& n : index_grid(n_lo, n_hi)) out.push_back({m, n});
  return out;
}

void MomentTable::validate(double tol) const {
  for (const auto& idx : required_indices()) {
    const cplx v = at(idx);  // throws IncompleteTable
    MonomialIndex mirrored{idx.m, negate_indices(idx.n)};
    const cplx w = at(mirrored);
    if (std::abs(std::conj(v) - w) > tol * std::max(1.0, std::abs(v))) {
      throw MathError(ErrorCode::InvalidShape,
                      "conjugate symmetry violated: |conj(s_{m,n}) - s_{m,-n}| = " +
                          std::to_string(std::abs(std::conj(v) - w)));
    }
  }
}

double AtomicMeasure::total_mass() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void AtomicMeasure::validate() const {
  if (x.size() != weights.size() || phi.size() != weights.size()) {
    throw MathError(ErrorCode::InvalidShape, "atom arrays differ in length");
  }
  for (std::size_t a = 0; a < weights.size(); ++a) {
    if (!(weights[a] > 0.0)) {
      throw MathError(ErrorCode::InvalidShape, "weights must be positive");
    }
    if (x[a].size() != r || phi[a].size() != l) {
      throw MathError(ErrorCode::InvalidShape, "atom coordinate arity");
    }
    for (double p : phi[a]) {
      if (p < -M_PI || p >= M_PI) {
        throw MathError(ErrorCode::InvalidShape,
                        "phi component outside [-pi, pi)");
      }
    }
  }
}

CVector GnsSpace::coord(const MonomialIndex& idx) const {
  auto it = index_of.find(idx);
  if (it == index_of.end()) {
    throw MathError(ErrorCode::IncompleteTable, "monomial outside the Gram box");
  }
  return coords.column(it->second);
}

MomentTable moments_from_measure(const AtomicMeasure& mu,
                                 const std::vector<int>& m_box,
                                 const std::vector<int>& n_box) {
  mu.validate();
  if (m_box.size() != mu.r || n_box.size() != mu.l) {
    throw MathError(ErrorCode::DimensionMismatch, "box arity vs measure arity");
  }
  MomentTable table(m_box, n_box);
  for (const auto& idx : table.required_indices()) {
    cplx s(0.0, 0.0);
    for (std::size_t a = 0; a < mu.atom_count(); ++a) {
      double xpow = 1.0;
      for (std::size_t i = 0; i < mu.r; ++i)
        xpow *= std::pow(mu.x[a][i], idx.m[i]);
      double angle = 0.0;
      for (std::size_t j = 0; j < mu.l; ++j)
        angle += idx.n[j] * mu.phi[a][j];
      s += mu.weights[a] * xpow * cplx(std::cos(angle), std::sin(angle));
    }
    table.set(idx, s);
  }
  return table;
}

ComplexMatrix gram_matrix(const MomentTable& s) {
  const auto monomials = s.box_monomials();
  const std::size_t size = monomials.size();
  ComplexMatrix g(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      MonomialIndex idx{add_indices(monomials[i].m, monomials[j].m),
                        sub_indices(monomials[i].n, monomials[j].n)};
      g(i, j) = s.at(idx);
    }
  }
  return g;
}

PositivityReport check_positivity(const MomentTable& s, double tol) {
  ComplexMatrix g = gram_matrix(s);
  HermitianEig eig = hermitian_eig(g, std::max(tol, 1e-10));
  PositivityReport report;
  if (eig.eigenvalues.empty()) {
    report.passed = true;
    return report;
  }
  report.min_eigenvalue = eig.eigenvalues.front();
  report.max_eigenvalue = eig.eigenvalues.back();
  report.passed =
      report.min_eigenvalue >= -tol * std::max(report.max_eigenvalue, 0.0) &&
      report.max_eigenvalue >= 0.0;
  if (report.min_eigenvalue == 0.0 && report.max_eigenvalue == 0.0) {
    report.passed = true;  // zero table
  }
  if (!report.passed) {
    const auto monomials = s.box_monomials();
    CVector v = eig.eigenvectors.column(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const cplx coeff = std::conj(v[i]);  // the form is alpha^T G conj(alpha)
      if (std::abs(coeff) > 1e-12) {
        report.certificate.emplace_back(monomials[i], coeff);
      }
    }
  }
  return report;
}

ConditionBReport check_condition_B(const MomentTable& s, std::size_t j0,
                                   double tol) {
  ConditionBReport report;
  report.j0 = j0;
  if (s.r() <= 1) {
    report.passed = true;
    return report;
  }
  if (j0 < 1 || j0 > s.r()) {
    throw MathError(ErrorCode::InvalidShape, "j0 out of range");
  }
  ComplexMatrix g = gram_matrix(s);
  RankDecomposition rk = rank_and_kernel(g, tol);
  const auto monomials = s.box_monomials();
  const std::size_t size = monomials.size();

  report.passed = true;
  for (std::size_t j = 1; j <= s.r(); ++j) {
    if (j == j0) continue;
    std::vector<int> shift(s.r(), 0);
    shift[j - 1] = 2;
    ComplexMatrix gj(size, size);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        MonomialIndex idx{
            add_indices(add_indices(monomials[a].m, monomials[b].m), shift),
            sub_indices(monomials[a].n, monomials[b].n)};
        gj(a, b) = s.at(idx);
      }
    }

    double cj = 0.0;
    bool finite = true;
    if (rk.kernel.dim() > 0) {
      const double leak = (gj * rk.kernel.basis).frobenius_norm();
      if (leak > 10.0 * std::sqrt(tol) * std::max(1.0, gj.frobenius_norm())) {
        finite = false;  // the form does not vanish on ker G: no C_j works
      }
    }
    if (finite && rk.rank > 0) {
      ComplexMatrix vr = rk.range.basis;
      const std::size_t rank = rk.rank;
      CVector inv_sqrt(rank);
      for (std::size_t i = 0; i < rank; ++i) {
        inv_sqrt[i] = cplx(1.0 / std::sqrt(rk.eigenvalues[size - rank + i]), 0.0);
      }
      ComplexMatrix white = vr * ComplexMatrix::diagonal(inv_sqrt);
      ComplexMatrix compressed = white.adjoint() * (gj * white);
      HermitianEig eig = hermitian_eig(compressed, 1e-8);
      cj = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.back(), 0.0);
    }
    if (!finite) {
      cj = std::numeric_limits<double>::infinity();
      report.passed = false;
    }
    report.constants.emplace_back(j, cj);
  }
  return report;
}

GnsSpace gns_construct(const MomentTable& s, double tol) {
  s.validate();
  ComplexMatrix g = gram_matrix(s);
  RankDecomposition rk = rank_and_kernel(g, tol);  // throws NotPSD
  const auto monomials = s.box_monomials();
  const std::size_t size = monomials.size();

  GnsSpace out;
  out.dim = rk.rank;
  out.monomials = monomials;
  out.gram_tol = tol;
  out.coords = ComplexMatrix(rk.rank, size);
  // coord(y_I) = Lambda^{1/2} V_r^T e_I reproduces the Gram identity
  // (coord y_I, coord y_J) = s_{m_I+m_J, n_I-n_J}.
  for (std::size_t t = 0; t < rk.rank; ++t) {
    const double root = std::sqrt(rk.eigenvalues[size - rk.rank + t]);
    for (std::size_t i = 0; i < size; ++i) {
      out.coords(t, i) = root * rk.range.basis(i, t);
    }
  }
  for (std::size_t i = 0; i < size; ++i) out.index_of[monomials[i]] = i;
  return out;
}

namespace {

// Least-squares shift operator: images of the orthonormal domain basis under
// y_I -> y_{I + shift}, solved through the domain Gram pseudo-inverse.
ShiftOperator build_shift(const GnsSpace& g,
                          const std::vector<std::size_t>& domain_cols,
                          const std::vector<std::size_t>& image_cols,
                          const std::string& name) {
  ShiftOperator op;
  op.name = name;
  const std::size_t k = g.dim;
  op.domain.ambient_dim = k;
  op.domain.basis = ComplexMatrix(k, 0);
  op.action = ComplexMatrix(k, 0);
  if (k == 0) {
    op.total = true;
    op.total_matrix = ComplexMatrix(0, 0);
    return op;
  }
  ComplexMatrix d(k, domain_cols.size());
  ComplexMatrix rmat(k, domain_cols.size());
  for (std::size_t c = 0; c < domain_cols.size(); ++c) {
    d.set_column(c, g.coords.column(domain_cols[c]));
    rmat.set_column(c, g.coords.column(image_cols[c]));
  }
  op.domain = orthonormalize(d, 1e-9);
  if (op.domain.dim() == 0) return op;

  ComplexMatrix gram = d.adjoint() * d;
  HermitianEig eig = hermitian_eig(gram, 1e-8);
  const double lam_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  CVector pinv_diag(eig.eigenvalues.size());
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = eig.eigenvalues[i];
    pinv_diag[i] = (lam > 1e-12 * lam_max) ? cplx(1.0 / lam, 0.0) : cplx(0.0, 0.0);
  }
  ComplexMatrix pinv = eig.eigenvectors * ComplexMatrix::diagonal(pinv_diag) *
                       eig.eigenvectors.adjoint();
  op.action = rmat * (pinv * (d.adjoint() * op.domain.basis));
  op.total = (op.domain.dim() == k);
  if (op.total) {
    op.total_matrix = op.action * op.domain.basis.adjoint();
  }
  return op;
}

// Extension-problem instance assembled from already-built shift operators.
CommutingTupleInstance tuple_from_ops(const AssembledOperators& ops,
                                      std::size_t dim, const MomentTable& s,
                                      std::size_t j0, double tol) {
  CommutingTupleInstance t;
  t.ambient_dim = dim;
  t.z0 = cplx(0.0, 1.0);
  t.j = ops.j;

  for (std::size_t j = 0; j < s.r(); ++j) {
    if (j + 1 == j0) {
      t.a1 = make_partial_symmetric(dim, ops.a[j].domain, ops.a[j].action,
                                    std::max(tol * 100.0, 1e-8));
      continue;
    }
    if (!ops.a[j].total) {
      throw MathError(ErrorCode::NotFlat,
                      ops.a[j].name + " does not close to a bounded "
                      "self-adjoint operator on the truncated space");
    }
    ComplexMatrix a = ops.a[j].total_matrix;
    const double defect = hermitian_defect(a);
    if (defect > 1e-8 * std::max(1.0, a.frobenius_norm())) {
      throw MathError(ErrorCode::NotFlat,
                      ops.a[j].name + " Hermitian defect " + std::to_string(defect));
    }
    ComplexMatrix sym = a + a.adjoint();
    sym *= cplx(0.5, 0.0);
    t.a_rest.push_back(std::move(sym));
  }
  for (std::size_t j = 0; j < s.l(); ++j) {
    if (!ops.b[j].total) {
      throw MathError(ErrorCode::NotFlat,
                      ops.b[j].name + " cannot be closed to a unitary on the "
                      "truncated space");
    }
    ComplexMatrix b = ops.b[j].total_matrix;
    const double defect = unitary_defect(b);
    if (defect > 1e-8 * std::max(1.0, b.frobenius_norm())) {
      throw MathError(ErrorCode::NotFlat,
                      ops.b[j].name + " unitarity defect " + std::to_string(defect));
    }
    t.b_list.push_back(std::move(b));
  }
  return t;
}

}  // namespace

AssembledOperators assemble_operators(const GnsSpace& g, const MomentTable& s,
                                      double tol) {
  AssembledOperators out;
  const std::size_t k = g.dim;
  const auto& monomials = g.monomials;

  for (std::size_t j = 0; j < s.r(); ++j) {
    std::vector<std::size_t> domain_cols, image_cols;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      if (monomials[i].m[j] + 1 > s.m_box()[j]) continue;
      MonomialIndex shifted = monomials[i];
      shifted.m[j] += 1;
      domain_cols.push_back(i);
      image_cols.push_back(g.index_of.at(shifted));
    }
    out.a.push_back(build_shift(g, domain_cols, image_cols,
                                "A[" + std::to_string(j + 1) + "]"));
  }
  for (std::size_t j = 0; j < s.l(); ++j) {
    std::vector<std::size_t> domain_cols, image_cols;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      if (monomials[i].n[j] + 1 > s.n_box()[j]) continue;
      MonomialIndex shifted = monomials[i];
      shifted.n[j] += 1;
      domain_cols.push_back(i);
      image_cols.push_back(g.index_of.at(shifted));
    }
    out.b.push_back(build_shift(g, domain_cols, image_cols,
                                "B[" + std::to_string(j + 1) + "]"));
  }
  // J_0: sum alpha y_{m,n} -> sum conj(alpha) y_{m,-n}, i.e. the antilinear
  // map with M conj(Y) = Y P_sigma where sigma negates n.
  if (k > 0) {
    ComplexMatrix mirrored(k, monomials.size());
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      MonomialIndex idx{monomials[i].m, negate_indices(monomials[i].n)};
      mirrored.set_column(i, g.coords.column(g.index_of.at(idx)));
    }
    ComplexMatrix z = g.coords.conjugate();                 // conj(Y)
    ComplexMatrix zzh = z * z.adjoint();                    // k x k, PD
    ComplexMatrix mj = (mirrored * z.adjoint()) * inverse(zzh);
    out.j = Conjugation(std::move(mj), std::max(tol, 1e-10), 1e-6);
  } else {
    out.j = Conjugation::plain(0);
  }

  // Flat case: the inner-box coordinates already span the GNS space.
  if (k == 0) {
    out.flat = true;
  } else {
    const auto inner = s.inner_box_monomials();
    if (inner.empty()) {
      out.flat = false;
    } else {
      ComplexMatrix inner_coords(k, inner.size());
      for (std::size_t i = 0; i < inner.size(); ++i) {
        inner_coords.set_column(i, g.coords.column(g.index_of.at(inner[i])));
      }
      out.flat = orthonormalize(inner_coords, 1e-8).dim() == k;
    }
  }

  MonomialIndex origin{std::vector<int>(s.r(), 0), std::vector<int>(s.l(), 0)};
  out.y00 = (k > 0) ? g.coord(origin) : CVector{};
  return out;
}

CommutingTupleInstance assemble_tuple(const GnsSpace& g, const MomentTable& s,
                                      std::size_t j0, double tol) {
  if (s.r() < 1 || j0 < 1 || j0 > s.r()) {
    throw MathError(ErrorCode::InvalidShape, "j0 must name one of the A_j");
  }
  AssembledOperators ops = assemble_operators(g, s, tol);
  return tuple_from_ops(ops, g.dim, s, j0, tol);
}

AtomicMeasure solve(const MomentTable& s, std::size_t j0, double tol,
                    std::uint64_t seed) {
  s.validate();
  PositivityReport positivity = check_positivity(s, tol);
  if (!positivity.passed) {
    throw MathError(ErrorCode::NotPSD,
                    "moment table fails positivity: min eigenvalue " +
                        std::to_string(positivity.min_eigenvalue));
  }
  if (s.r() >= 2) {
    ConditionBReport cb = check_condition_B(s, j0, tol);
    if (!cb.passed) {
      throw MathError(ErrorCode::ConditionBFailed,
                      "condition (B) fails; some C_j is unbounded on the box");
    }
  }
  GnsSpace g = gns_construct(s, tol);
  MonomialIndex origin{std::vector<int>(s.r(), 0), std::vector<int>(s.l(), 0)};
  const double s00 = s.at(origin).real();

  AtomicMeasure mu;
  mu.r = s.r();
  mu.l = s.l();
  if (g.dim == 0) return mu;  // zero table: empty measure

  std::vector<ComplexMatrix> family(s.r() + s.l(), ComplexMatrix());
  bool used_extension = false;
  AssembledOperators ops = assemble_operators(g, s, tol);
  CVector y00 = ops.y00;
  if (s.r() >= 1) {
    if (j0 < 1 || j0 > s.r()) {
      throw MathError(ErrorCode::InvalidShape, "j0 must name one of the A_j");
    }
    CommutingTupleInstance t = tuple_from_ops(ops, g.dim, s, j0, tol);
    ComplexMatrix a_hat;
    if (t.a1.is_total()) {
      ComplexMatrix a = t.a1.total_matrix();
      ComplexMatrix sym = a + a.adjoint();
      sym *= cplx(0.5, 0.0);
      a_hat = std::move(sym);
    } else {
      ExtensionResult ext = build_extension(t, std::max(tol, 1e-9), seed);
      a_hat = ext.a1_hat;
      used_extension = true;
    }
    family[j0 - 1] = std::move(a_hat);
    std::size_t rest = 0;
    for (std::size_t j = 0; j < s.r(); ++j) {
      if (j + 1 == j0) continue;
      family[j] = t.a_rest[rest++];
    }
    for (std::size_t j = 0; j < s.l(); ++j) family[s.r() + j] = t.b_list[j];
  } else {
    for (std::size_t j = 0; j < s.l(); ++j) {
      if (!ops.b[j].total) {
        throw MathError(ErrorCode::NotFlat, ops.b[j].name + " not total");
      }
      family[j] = ops.b[j].total_matrix;
    }
  }

  const double jd_tol = used_extension ? std::max(tol, 1e-7) : std::max(tol, 1e-10);
  JointSpectrum spec = joint_diagonalize(family, jd_tol, seed);

  struct Atom {
    std::vector<double> x;
    std::vector<double> phi;
    double weight = 0.0;
  };
  std::vector<Atom> atoms;
  for (std::size_t a = 0; a < spec.dim; ++a) {
    Atom atom;
    atom.x.resize(s.r());
    atom.phi.resize(s.l());
    for (std::size_t j = 0; j < s.r(); ++j)
      atom.x[j] = spec.eigenvalue_lists[j][a].real();
    for (std::size_t j = 0; j < s.l(); ++j) {
      const cplx lam = spec.eigenvalue_lists[s.r() + j][a];
      double phi = std::atan2(lam.imag(), lam.real());
      if (phi >= M_PI) phi -= 2.0 * M_PI;
      atom.phi[j] = phi;
    }
    const cplx overlap = inner(y00, spec.eigenbasis.column(a));
    atom.weight = std::norm(overlap);

    bool merged = false;
    for (auto& other : atoms) {  // collapse joint-degenerate eigenvalues
      double dist = 0.0;
      for (std::size_t j = 0; j < s.r(); ++j)
        dist = std::max(dist, std::abs(atom.x[j] - other.x[j]));
      for (std::size_t j = 0; j < s.l(); ++j)
        dist = std::max(dist, angular_distance(atom.phi[j], other.phi[j]));
      if (dist < 1e-9) {
        other.weight += atom.weight;
        merged = true;
        break;
      }
    }
    if (!merged) atoms.push_back(std::move(atom));
  }

  for (const auto& atom : atoms) {
    if (atom.weight <= tol * std::max(s00, 0.0)) continue;
    mu.x.push_back(atom.x);
    mu.phi.push_back(atom.phi);
    mu.weights.push_back(atom.weight);
  }
  mu.validate();
  return mu;
}

SolutionReport verify_solution(const AtomicMeasure& mu, const MomentTable& s,
                               double tol) {
  if (mu.r != s.r() || mu.l != s.l()) {
    throw MathError(ErrorCode::DimensionMismatch, "measure arity vs table arity");
  }
  MomentTable recomputed = moments_from_measure(mu, s.m_box(), s.n_box());
  SolutionReport report;
  for (const auto& idx : s.required_indices()) {
    const double dev = std::abs(recomputed.at(idx) - s.at(idx));
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_index = idx;
    }
  }
  report.passed = report.max_deviation <= tol;
  return report;
}

}  // namespace momext
