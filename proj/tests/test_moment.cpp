#include <doctest.h>

#include <cmath>

#include "momext/moment.hpp"
#include "test_helpers.hpp"

using namespace momext;
using namespace momext::testing;

namespace {

AtomicMeasure dirac_origin() {
  AtomicMeasure mu;
  mu.r = 1;
  mu.l = 1;
  mu.x = {{0.0}};
  mu.phi = {{0.0}};
  mu.weights = {1.0};
  return mu;
}

AtomicMeasure two_atom_oracle() {
  // mu = 1/2 delta_{(1, 0)} + 1/2 delta_{(-1, pi/2)}
  AtomicMeasure mu;
  mu.r = 1;
  mu.l = 1;
  mu.x = {{1.0}, {-1.0}};
  mu.phi = {{0.0}, {M_PI / 2}};
  mu.weights = {0.5, 0.5};
  return mu;
}

MomentTable zero_table_with_negative_mass() {
  MomentTable table({1}, {1});
  for (const auto& idx : table.required_indices()) table.set(idx, cplx(0, 0));
  table.set({{0}, {0}}, cplx(-1.0, 0.0));
  return table;
}

}  // namespace

TEST_CASE("moments of the Dirac measure at the origin") {
  MomentTable table = moments_from_measure(dirac_origin(), {1}, {1});
  for (const auto& idx : table.required_indices()) {
    const cplx expected = idx.m[0] == 0 ? cplx(1, 0) : cplx(0, 0);
    CHECK(std::abs(table.at(idx) - expected) < 1e-15);
  }
}

TEST_CASE("s_{0,0} is the total mass") {
  Rng rng(61);
  AtomicMeasure mu = random_measure(2, 1, 3, rng);
  MomentTable table = moments_from_measure(mu, {1, 1}, {1});
  MonomialIndex origin{{0, 0}, {0}};
  CHECK(table.at(origin).real() == doctest::Approx(mu.total_mass()));
}

TEST_CASE("two-atom direct summation oracle") {
  MomentTable table = moments_from_measure(two_atom_oracle(), {2}, {2});
  for (const auto& idx : table.required_indices()) {
    // s_{m,n} = (1 + (-1)^m i^n) / 2
    const cplx i_pow = std::exp(cplx(0, idx.n[0] * M_PI / 2));
    const double sign = idx.m[0] % 2 == 0 ? 1.0 : -1.0;
    const cplx expected = 0.5 * (cplx(1, 0) + sign * i_pow);
    CHECK(std::abs(table.at(idx) - expected) < 1e-12);
  }
}

TEST_CASE("gram matrix of the Dirac table has rank one") {
  MomentTable table = moments_from_measure(dirac_origin(), {1}, {1});
  ComplexMatrix g = gram_matrix(table);
  CHECK(hermitian_defect(g) <= 1e-12);
  RankDecomposition rk = rank_and_kernel(g);
  CHECK(rk.rank == 1);
}

TEST_CASE("gram rank equals the atom count when the box separates atoms") {
  Rng rng(62);
  AtomicMeasure mu = random_measure(1, 1, 3, rng);
  MomentTable table = moments_from_measure(mu, {2}, {2});
  ComplexMatrix g = gram_matrix(table);
  CHECK(rank_and_kernel(g).rank == 3);
}

TEST_CASE("check_positivity passes on measure tables (necessity)") {
  Rng rng(63);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t r = 1 + trial % 2;
    const std::size_t l = 1 + (trial / 2) % 2;
    AtomicMeasure mu = random_measure(r, l, 2 + trial % 3, rng);
    MomentTable table = moments_from_measure(mu, std::vector<int>(r, 2 - (r - 1)),
                                             std::vector<int>(l, 1));
    PositivityReport rep = check_positivity(table);
    CHECK(rep.passed);
  }
}

TEST_CASE("check_positivity fails with a certificate on negative mass") {
  PositivityReport rep = check_positivity(zero_table_with_negative_mass());
  CHECK(!rep.passed);
  CHECK(rep.min_eigenvalue == doctest::Approx(-1.0));
  REQUIRE(!rep.certificate.empty());
  CHECK(rep.certificate[0].first.m[0] == 0);
  CHECK(std::abs(rep.certificate[0].second) == doctest::Approx(1.0));
}

TEST_CASE("check_positivity on the Dirac table has min eigenvalue zero") {
  MomentTable table = moments_from_measure(dirac_origin(), {1}, {1});
  PositivityReport rep = check_positivity(table);
  CHECK(rep.passed);
  CHECK(std::abs(rep.min_eigenvalue) <= 1e-12);
}

TEST_CASE("condition (B) constant is the squared coordinate bound") {
  AtomicMeasure mu;
  mu.r = 2;
  mu.l = 0;
  mu.x = {{2.0, 3.0}};
  mu.phi = {{}};
  mu.weights = {1.0};
  MomentTable table = moments_from_measure(mu, {1, 1}, {});
  ConditionBReport rep = check_condition_B(table, 1);
  CHECK(rep.passed);
  REQUIRE(rep.constants.size() == 1);
  CHECK(rep.constants[0].first == 2);
  CHECK(rep.constants[0].second == doctest::Approx(9.0).epsilon(1e-8));
}

TEST_CASE("condition (B) with atoms inside the unit box") {
  Rng rng(64);
  AtomicMeasure mu;
  mu.r = 2;
  mu.l = 1;
  for (int a = 0; a < 3; ++a) {
    mu.x.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    mu.phi.push_back({rng.uniform(-M_PI, M_PI - 0.1)});
    mu.weights.push_back(rng.uniform(0.3, 1.0));
  }
  MomentTable table = moments_from_measure(mu, {1, 1}, {1});
  ConditionBReport rep = check_condition_B(table, 1);
  CHECK(rep.passed);
  for (const auto& [j, c] : rep.constants) CHECK(c <= 1.0 + 1e-8);
}

TEST_CASE("condition (B) is vacuous for r = 1") {
  MomentTable table = moments_from_measure(two_atom_oracle(), {2}, {2});
  ConditionBReport rep = check_condition_B(table, 1);
  CHECK(rep.passed);
  CHECK(rep.constants.empty());
}

TEST_CASE("gns_construct on the Dirac table") {
  MomentTable table = moments_from_measure(dirac_origin(), {1}, {1});
  GnsSpace g = gns_construct(table);
  CHECK(g.dim == 1);
  // all y_{0,n} coincide, y_{m>0,n} vanish
  const CVector base = g.coord({{0}, {0}});
  for (int n = -1; n <= 1; ++n) {
    const CVector c = g.coord({{0}, {n}});
    CHECK(std::abs(c[0] - base[0]) < 1e-10);
    const CVector zero = g.coord({{1}, {n}});
    CHECK(norm2(zero) < 1e-10);
  }
}

TEST_CASE("gns dimension equals the atom count") {
  Rng rng(65);
  AtomicMeasure mu = random_measure(1, 1, 4, rng);
  MomentTable table = moments_from_measure(mu, {4}, {4});
  GnsSpace g = gns_construct(table);
  CHECK(g.dim == 4);
}

TEST_CASE("gns coordinates reproduce the moment table (Gram identity)") {
  Rng rng(66);
  AtomicMeasure mu = random_measure(1, 1, 3, rng);
  MomentTable table = moments_from_measure(mu, {3}, {3});
  GnsSpace g = gns_construct(table);
  const double scale = table.at({{0}, {0}}).real();
  const auto monomials = table.box_monomials();
  for (int trial = 0; trial < 40; ++trial) {
    const auto& a = monomials[rng.next_u64() % monomials.size()];
    const auto& b = monomials[rng.next_u64() % monomials.size()];
    MonomialIndex sum{{a.m[0] + b.m[0]}, {a.n[0] - b.n[0]}};
    const cplx lhs = inner(g.coord(a), g.coord(b));
    CHECK(std::abs(lhs - table.at(sum)) <= 1e-9 * scale);
  }
}

TEST_CASE("assembled operators for a Dirac atom are the atom coordinates") {
  AtomicMeasure mu;
  mu.r = 1;
  mu.l = 1;
  mu.x = {{0.7}};
  mu.phi = {{-1.2}};
  mu.weights = {1.0};
  MomentTable table = moments_from_measure(mu, {1}, {1});
  GnsSpace g = gns_construct(table);
  AssembledOperators ops = assemble_operators(g, table);
  REQUIRE(g.dim == 1);
  CHECK(ops.flat);
  REQUIRE(ops.a[0].total);
  REQUIRE(ops.b[0].total);
  CHECK(ops.a[0].total_matrix(0, 0).real() == doctest::Approx(0.7));
  CHECK(std::abs(ops.b[0].total_matrix(0, 0) - std::exp(cplx(0, -1.2))) < 1e-10);
}

TEST_CASE("two-atom assembly commutes and respects the conjugation") {
  MomentTable table = moments_from_measure(two_atom_oracle(), {3}, {3});
  GnsSpace g = gns_construct(table);
  AssembledOperators ops = assemble_operators(g, table);
  REQUIRE(g.dim == 2);
  REQUIRE(ops.flat);
  ComplexMatrix a = ops.a[0].total_matrix;
  ComplexMatrix b = ops.b[0].total_matrix;
  CHECK(hermitian_defect(a) <= 1e-10);
  CHECK(unitary_defect(b) <= 1e-10);
  CHECK(commutator_norm(a, b) <= 1e-10);

  const ComplexMatrix& mj = ops.j.matrix();
  CHECK((a * mj - mj * a.conjugate()).frobenius_norm() <= 1e-10);
  CHECK((b * mj - mj * b.transpose()).frobenius_norm() <= 1e-10);
}

TEST_CASE("well-definedness: Gram-kernel coefficient vectors act as zero") {
  Rng rng(67);
  AtomicMeasure mu = random_measure(1, 1, 2, rng);
  MomentTable table = moments_from_measure(mu, {2}, {2});
  GnsSpace g = gns_construct(table);
  const double scale = std::max(1.0, table.at({{0}, {0}}).real());

  // domain columns of the A-shift and their shifted images
  std::vector<std::size_t> domain_cols, image_cols;
  for (std::size_t i = 0; i < g.monomials.size(); ++i) {
    if (g.monomials[i].m[0] + 1 > 2) continue;
    MonomialIndex shifted{{g.monomials[i].m[0] + 1}, g.monomials[i].n};
    domain_cols.push_back(i);
    image_cols.push_back(g.index_of.at(shifted));
  }
  ComplexMatrix d(g.dim, domain_cols.size());
  ComplexMatrix r(g.dim, domain_cols.size());
  for (std::size_t c = 0; c < domain_cols.size(); ++c) {
    d.set_column(c, g.coords.column(domain_cols[c]));
    r.set_column(c, g.coords.column(image_cols[c]));
  }
  RankDecomposition rk = rank_and_kernel(d.adjoint() * d, 1e-10);
  REQUIRE(rk.kernel.dim() > 0);
  for (std::size_t c = 0; c < rk.kernel.dim(); ++c) {
    CVector w = rk.kernel.basis.column(c);
    CHECK(norm2(d * w) <= 1e-9 * scale);  // same GNS element
    CHECK(norm2(r * w) <= 1e-9 * scale);  // therefore the same image
  }
}

TEST_CASE("operator words reproduce the GNS coordinates") {
  MomentTable table = moments_from_measure(two_atom_oracle(), {3}, {3});
  GnsSpace g = gns_construct(table);
  AssembledOperators ops = assemble_operators(g, table);
  ComplexMatrix a = ops.a[0].total_matrix;
  ComplexMatrix b = ops.b[0].total_matrix;
  const double scale = std::max(1.0, table.at({{0}, {0}}).real());
  for (const auto& idx : g.monomials) {
    CVector v = ops.y00;
    for (int p = 0; p < idx.m[0]; ++p) v = a * v;
    for (int p = 0; p < idx.n[0]; ++p) v = b * v;
    for (int p = 0; p > idx.n[0]; --p) v = b.adjoint() * v;
    const CVector expected = g.coord(idx);
    CVector diff(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - expected[i];
    CHECK(norm2(diff) <= 1e-9 * scale);
  }
}

TEST_CASE("solve on the Dirac table returns the single atom") {
  MomentTable table = moments_from_measure(dirac_origin(), {1}, {1});
  AtomicMeasure mu = solve(table);
  REQUIRE(mu.atom_count() == 1);
  CHECK(std::abs(mu.x[0][0]) <= 1e-10);
  CHECK(std::abs(mu.phi[0][0]) <= 1e-10);
  CHECK(mu.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("solve round trip on the two-atom oracle measure") {
  AtomicMeasure original = two_atom_oracle();
  MomentTable table = moments_from_measure(original, {3}, {3});
  AtomicMeasure recovered = solve(table);
  double weight_dist = 0.0;
  const double atom_dist = measure_match_distance(original, recovered, &weight_dist);
  CHECK(atom_dist <= 1e-8);
  CHECK(weight_dist <= 1e-8);
  SolutionReport rep = verify_solution(recovered, table, 1e-8);
  CHECK(rep.passed);
}

TEST_CASE("solve round trip battery over random flat instances") {
  Rng rng(68);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t r = 1 + trial % 2;
    const std::size_t l = 1 + (trial / 2) % 2;
    const std::size_t atoms = 2 + trial % 3;
    AtomicMeasure mu = random_measure(r, l, atoms, rng);
    const int mb = (r == 2 && l == 2) ? 2 : static_cast<int>(atoms);
    const int nb = (r == 2 && l == 2) ? 1 : static_cast<int>(atoms);
    MomentTable table = moments_from_measure(mu, std::vector<int>(r, mb),
                                             std::vector<int>(l, nb));
    AtomicMeasure recovered = solve(table);
    double weight_dist = 0.0;
    const double atom_dist = measure_match_distance(mu, recovered, &weight_dist);
    INFO("trial ", trial, " r=", r, " l=", l, " atoms=", atoms);
    CHECK(atom_dist <= 1e-7);
    CHECK(weight_dist <= 1e-8);
    CHECK(verify_solution(recovered, table, 1e-8).passed);
  }
}

TEST_CASE("solve raises NotPSD on a negative table") {
  CHECK_THROWS_AS(solve(zero_table_with_negative_mass()), MathError);
  try {
    solve(zero_table_with_negative_mass());
  } catch (const MathError& err) {
    CHECK(err.code() == ErrorCode::NotPSD);
  }
}

TEST_CASE("solve raises NotFlat when a frequency shift cannot close") {
  Rng rng(69);
  AtomicMeasure mu = random_measure(1, 1, 5, rng);
  MomentTable table = moments_from_measure(mu, {1}, {1});  // 6 monomials, rank 5
  CHECK_THROWS_AS(solve(table), MathError);
  try {
    solve(table);
  } catch (const MathError& err) {
    CHECK(err.code() == ErrorCode::NotFlat);
  }
}

TEST_CASE("pure trigonometric problem (r = 0) recovers atoms on the torus") {
  AtomicMeasure mu;
  mu.r = 0;
  mu.l = 1;
  mu.x = {{}, {}, {}};
  mu.phi = {{-2.0}, {0.4}, {2.5}};
  mu.weights = {0.3, 0.5, 0.2};
  MomentTable table = moments_from_measure(mu, {}, {3});
  AtomicMeasure recovered = solve(table);
  double weight_dist = 0.0;
  CHECK(measure_match_distance(mu, recovered, &weight_dist) <= 1e-8);
  CHECK(weight_dist <= 1e-8);
}

TEST_CASE("solve raises NotFlat when a power shift beside j0 cannot close") {
  Rng rng(70);
  AtomicMeasure mu = random_measure(2, 0, 3, rng);
  MomentTable table = moments_from_measure(mu, {1, 1}, {});
  CHECK(gram_matrix(table).rows() == 4);
  try {
    solve(table, 1);
    FAIL("expected NotFlat");
  } catch (const MathError& err) {
    CHECK(err.code() == ErrorCode::NotFlat);
    CHECK(std::string(err.what()).find("A[2]") != std::string::npos);
  }
}

TEST_CASE("non-flat power-moment problem engages the extension") {
  // r = 1, l = 0: three atoms truncated at m_box = 1; A1 is genuinely partial.
  AtomicMeasure mu;
  mu.r = 1;
  mu.l = 0;
  mu.x = {{-1.0}, {0.3}, {1.4}};
  mu.phi = {{}, {}, {}};
  mu.weights = {0.5, 0.3, 0.2};
  MomentTable table = moments_from_measure(mu, {1}, {});
  GnsSpace g = gns_construct(table);
  CHECK(g.dim == 2);
  AssembledOperators ops = assemble_operators(g, table);
  CHECK(!ops.flat);
  CHECK(!ops.a[0].total);

  AtomicMeasure recovered = solve(table);
  CHECK(recovered.atom_count() == 2);
  // the recovered quadrature matches every moment reachable inside the box
  MomentTable back = moments_from_measure(recovered, {1}, {});
  for (int m = 0; m <= 2; ++m) {
    MonomialIndex idx{{m}, {}};
    CHECK(std::abs(back.at(idx) - table.at(idx)) <= 1e-8);
  }
}

TEST_CASE("verify_solution measures deviations") {
  AtomicMeasure original = two_atom_oracle();
  MomentTable table = moments_from_measure(original, {2}, {2});

  AtomicMeasure perturbed = original;
  perturbed.weights[0] += 0.1;
  SolutionReport rep = verify_solution(perturbed, table, 1e-8);
  CHECK(!rep.passed);
  CHECK(rep.max_deviation >= doctest::Approx(0.1));

  AtomicMeasure empty;
  empty.r = 1;
  empty.l = 1;
  SolutionReport rep2 = verify_solution(empty, table, 1e-8);
  CHECK(rep2.max_deviation == doctest::Approx(1.0));
}

TEST_CASE("moment table validation catches missing and asymmetric entries") {
  MomentTable incomplete({0}, {0});
  incomplete.set({{0}, {0}}, cplx(1, 0));
  CHECK_THROWS_AS(gram_matrix(MomentTable({1}, {0})), MathError);

  MomentTable asymmetric({0}, {1});
  for (const auto& idx : asymmetric.required_indices()) asymmetric.set(idx, cplx(0, 0));
  asymmetric.set({{0}, {1}}, cplx(0, 1));
  asymmetric.set({{0}, {-1}}, cplx(0, 1));  // should be the conjugate
  CHECK_THROWS_AS(asymmetric.validate(), MathError);
}
