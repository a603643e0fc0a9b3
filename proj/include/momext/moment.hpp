#ifndef MOMEXT_MOMENT_HPP
#define MOMEXT_MOMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "momext/cayley.hpp"
#include "momext/complex_matrix.hpp"
#include "momext/conjugation.hpp"
#include "momext/numerics.hpp"

namespace momext {

// A monomial index pair: powers m in Z_+^r, frequencies n in Z^l.
struct MonomialIndex {
  std::vector<int> m;
  std::vector<int> n;

  bool operator<(const MonomialIndex& other) const;
  bool operator==(const MonomialIndex& other) const;
};

// Prescribed moments s_{m,n} on a complete truncation box: every index with
// 0 <= m <= 2*m_box+2 and |n| <= 2*n_box componentwise must be present.
class MomentTable {
 public:
  MomentTable() = default;
  MomentTable(std::vector<int> m_box, std::vector<int> n_box);

  std::size_t r() const { return m_box_.size(); }
  std::size_t l() const { return n_box_.size(); }
  const std::vector<int>& m_box() const { return m_box_; }
  const std::vector<int>& n_box() const { return n_box_; }

  void set(const MonomialIndex& idx, cplx value);
  cplx at(const MonomialIndex& idx) const;  // throws IncompleteTable
  bool has(const MonomialIndex& idx) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<MonomialIndex, cplx>& entries() const { return entries_; }

  // All indices the complete box requires, lexicographic.
  std::vector<MonomialIndex> required_indices() const;
  // Monomials of the Gram box (m <= m_box, |n| <= n_box), lexicographic with
  // n offset to nonnegative.
  std::vector<MonomialIndex> box_monomials() const;
  // Monomials of the inner box (m <= m_box-1, |n| <= n_box-1).
  std::vector<MonomialIndex> inner_box_monomials() const;

  // Throws IncompleteTable when indices are missing; checks the conjugate
  // symmetry conj(s_{m,n}) = s_{m,-n} (forced by real measures).
  void validate(double tol = 1e-12) const;

 private:
  std::vector<int> m_box_;
  std::vector<int> n_box_;
  std::map<MonomialIndex, cplx> entries_;
};

// Finitely many atoms (x, phi) in R^r x [-pi,pi)^l with positive weights.
struct AtomicMeasure {
  std::size_t r = 0;
  std::size_t l = 0;
  std::vector<std::vector<double>> x;    // atom -> r reals
  std::vector<std::vector<double>> phi;  // atom -> l angles in [-pi, pi)
  std::vector<double> weights;

  std::size_t atom_count() const { return weights.size(); }
  double total_mass() const;
  void validate() const;  // throws InvalidShape
};

// GNS data built from the Gram matrix of a positive table: an orthonormal
// coordinate system of dimension rank(G) in which every box monomial y_{m,n}
// has an explicit coordinate vector.
struct GnsSpace {
  std::size_t dim = 0;
  std::vector<MonomialIndex> monomials;   // box monomials, fixed order
  ComplexMatrix coords;                   // dim x monomials.size()
  std::map<MonomialIndex, std::size_t> index_of;
  double gram_tol = kDefaultTol;

  CVector coord(const MonomialIndex& idx) const;  // throws IncompleteTable
};

struct PositivityReport {
  bool passed = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  // Minimizing coefficient vector over box monomials (violation certificate).
  std::vector<std::pair<MonomialIndex, cplx>> certificate;
};

struct ConditionBReport {
  bool passed = false;
  std::size_t j0 = 1;
  // For each j != j0 (1-based) the smallest constant with G_j <= C_j G on the
  // Gram range; infinity() when domination fails.
  std::vector<std::pair<std::size_t, double>> constants;
};

// One shift operator y_{m,n} -> y_{m+e,n} (or n-shift) with its largest
// in-box domain; `total` marks domains that fill the whole GNS space.
struct ShiftOperator {
  std::string name;
  Subspace domain;
  ComplexMatrix action;        // dim x domain.dim(), images of the domain basis
  bool total = false;
  ComplexMatrix total_matrix;  // dim x dim, only when total
};

struct AssembledOperators {
  std::vector<ShiftOperator> a;  // r power shifts
  std::vector<ShiftOperator> b;  // l frequency shifts
  Conjugation j;
  bool flat = false;             // inner-box coordinates already span the space
  CVector y00;                   // coordinates of y_{0,0}
};

struct SolutionReport {
  bool passed = false;
  double max_deviation = 0.0;
  MonomialIndex worst_index;
};

// s_{m,n} = sum_a w_a x_a^m e^{i n.phi_a} over the full required range.
MomentTable moments_from_measure(const AtomicMeasure& mu,
                                 const std::vector<int>& m_box,
                                 const std::vector<int>& n_box);

// Hermitian matrix over box monomials, entry[(m,n),(k,l)] = s_{m+k,n-l}.
ComplexMatrix gram_matrix(const MomentTable& s);

PositivityReport check_positivity(const MomentTable& s, double tol = kDefaultTol);

ConditionBReport check_condition_B(const MomentTable& s, std::size_t j0 = 1,
                                   double tol = kDefaultTol);

GnsSpace gns_construct(const MomentTable& s, double tol = kDefaultTol);

AssembledOperators assemble_operators(const GnsSpace& g, const MomentTable& s,
                                      double tol = kDefaultTol);

// Extension-problem instance: A_{j0} as the (possibly partial) distinguished
// operator, the other A_j total Hermitian, B_k total unitary, J, z0 = i.
// Throws NotFlat naming any operator that fails to close.
CommutingTupleInstance assemble_tuple(const GnsSpace& g, const MomentTable& s,
                                      std::size_t j0 = 1,
                                      double tol = kDefaultTol);

// Full pipeline: GNS construction, operator assembly, self-adjoint extension
// of A_{j0} when it is partial, joint diagonalization, atom extraction.
AtomicMeasure solve(const MomentTable& s, std::size_t j0 = 1,
                    double tol = kDefaultTol, std::uint64_t seed = 0x5eed0001u);

SolutionReport verify_solution(const AtomicMeasure& mu, const MomentTable& s,
                               double tol = kDefaultTol);

}  // namespace momext

#endif
