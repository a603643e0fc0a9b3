#include <doctest.h>

#include <cmath>

#include "momext/conjugation.hpp"
#include "test_helpers.hpp"

using namespace momext;
using namespace momext::testing;

TEST_CASE("plain conjugation conjugates entries") {
  Conjugation j = Conjugation::plain(2);
  CVector x = {cplx(1, 1), cplx(2, 0)};
  CVector y = j.apply(x);
  CHECK(y[0] == cplx(1, -1));
  CHECK(y[1] == cplx(2, 0));
}

TEST_CASE("J squared is the identity on a random battery") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 8;
    Conjugation j(random_conjugation_matrix(n, rng));
    CVector x = random_vector(n, rng);
    CVector back = j.apply(j.apply(x));
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(back[i] - x[i]));
    CHECK(err <= 1e-12 * std::max(1.0, norm2(x)));
  }
}

TEST_CASE("(Jx, Jy) = conj((x, y)) inner-product oracle, dim 8") {
  Rng rng(32);
  Conjugation j(random_conjugation_matrix(8, rng));
  CVector x = random_vector(8, rng);
  CVector y = random_vector(8, rng);
  const cplx lhs = inner(j.apply(x), j.apply(y));
  const cplx rhs = std::conj(inner(x, y));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("compose_JC of a conjugation with itself is the identity") {
  Rng rng(33);
  Conjugation j(random_conjugation_matrix(5, rng));
  ComplexMatrix u = compose_JC(j, j);
  CHECK((u - ComplexMatrix::identity(5)).frobenius_norm() < 1e-12);
}

TEST_CASE("compose_JC 1x1 algebra") {
  Conjugation j(ComplexMatrix(1, 1, {cplx(0.0, 1.0)}));  // M_J = e^{i pi/2}
  Conjugation c = Conjugation::plain(1);
  ComplexMatrix u = compose_JC(j, c);
  CHECK(u(0, 0) == cplx(0.0, 1.0));
}

TEST_CASE("compose_JC of a random pair is unitary") {
  Rng rng(34);
  Conjugation j(random_conjugation_matrix(8, rng));
  Conjugation c(random_conjugation_matrix(8, rng));
  ComplexMatrix u = compose_JC(j, c);
  CHECK(unitary_defect(u) <= 1e-12);
}

TEST_CASE("conjugate_by_unitary leaves J fixed under the identity") {
  Rng rng(35);
  Conjugation j(random_conjugation_matrix(4, rng));
  Conjugation moved = conjugate_by_unitary(j, ComplexMatrix::identity(4));
  CHECK((moved.matrix() - j.matrix()).frobenius_norm() < 1e-14);
}

TEST_CASE("conjugate_by_unitary of the plain conjugation gives V V^T") {
  Rng rng(36);
  ComplexMatrix v = random_unitary(6, rng);
  Conjugation moved = conjugate_by_unitary(Conjugation::plain(6), v);
  CHECK((moved.matrix() - v * v.transpose()).frobenius_norm() < 1e-12);
  ConjugationReport rep = validate(moved);
  CHECK(rep.passed);
}

TEST_CASE("conjugate_by_unitary pointwise oracle") {
  Rng rng(37);
  Conjugation j(random_conjugation_matrix(7, rng));
  ComplexMatrix v = random_unitary(7, rng);
  Conjugation moved = conjugate_by_unitary(j, v);
  CVector x = random_vector(7, rng);
  CVector lhs = moved.apply(x);
  CVector rhs = v * j.apply(v.adjoint() * x);
  double err = 0.0;
  for (std::size_t i = 0; i < 7; ++i) err = std::max(err, std::abs(lhs[i] - rhs[i]));
  CHECK(err <= 1e-12 * std::max(1.0, norm2(x)));
}

TEST_CASE("conjugate_by_unitary preserves defect scale") {
  Rng rng(38);
  Conjugation j(random_conjugation_matrix(6, rng));
  ComplexMatrix v = random_unitary(6, rng);
  ConjugationReport before = validate(j);
  ConjugationReport after = validate(conjugate_by_unitary(j, v));
  CHECK(after.unitary_defect <= 10.0 * std::max(before.unitary_defect, 1e-13));
  CHECK(after.symmetry_defect <= 10.0 * std::max(before.symmetry_defect, 1e-13));
}

TEST_CASE("conjugate_by_unitary rejects a non-unitary transform") {
  Conjugation j = Conjugation::plain(2);
  ComplexMatrix v(2, 2);
  v(0, 0) = 2.0;
  v(1, 1) = 1.0;
  CHECK_THROWS_AS(conjugate_by_unitary(j, v), MathError);
}

TEST_CASE("validate on the identity and a symmetric permutation") {
  ConjugationReport rep = validate(Conjugation::plain(3));
  CHECK(rep.passed);
  CHECK(rep.unitary_defect == doctest::Approx(0.0));

  ComplexMatrix swap(2, 2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  ConjugationReport rep2 = validate(Conjugation(swap));
  CHECK(rep2.passed);
}

TEST_CASE("validate fails on the antisymmetric counterexample") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  ConjugationReport rep = validate(Conjugation::unchecked(m));
  CHECK(!rep.passed);
  // ||M - M^T||_F of [[0,1],[-1,0]] is 2*sqrt(2)
  CHECK(rep.symmetry_defect == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(rep.unitary_defect == doctest::Approx(0.0));
}

TEST_CASE("constructor repairs medium defects and rejects large ones") {
  Rng rng(39);
  ComplexMatrix good = random_conjugation_matrix(5, rng);
  ComplexMatrix noisy = good;
  for (auto& v : noisy.data()) v += cplx(1e-8 * rng.normal(), 1e-8 * rng.normal());
  Conjugation repaired(noisy);
  CHECK(validate(repaired).passed);

  ComplexMatrix bad = good;
  bad(0, 0) += 1.0;
  CHECK_THROWS_AS(Conjugation{bad}, MathError);
}
