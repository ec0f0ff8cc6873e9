#include <doctest.h>

#include <cmath>

#include "quatkit/functors.hpp"
#include "quatkit/sampling.hpp"
#include "support.hpp"

using namespace quatkit;
using testing::diag;
using testing::dist;
using testing::error_kind;

namespace {

// Real 4x4 matrix of x -> q x on R^4 = H with coordinates (w, x, y, z).
RealMatrix left_mult_real(const Quaternion& q) {
  RealMatrix m(4, 4);
  const Quaternion units[4] = {kOne, kE1, kE2, kE3};
  for (int c = 0; c < 4; ++c) {
    const Quaternion image = q * units[c];
    m(0, c) = image.w;
    m(1, c) = image.x;
    m(2, c) = image.y;
    m(3, c) = image.z;
  }
  return m;
}

RealMatrix block_diagonal(const RealMatrix& b, int copies) {
  const Eigen::Index s = b.rows();
  RealMatrix m = RealMatrix::Zero(s * copies, s * copies);
  for (int c = 0; c < copies; ++c) m.block(c * s, c * s, s, s) = b;
  return m;
}

SplitSpace random_split(Rng& rng, std::size_t n, const Frame& f) {
  const QMatrix w = random_unitary(rng, n);
  return split_plus_minus(w * QMatrix::scalar(n, f.i().quaternion()) * adjoint(w), f);
}

}  // namespace

TEST_CASE("external extensions") {
  RealMatrix r(2, 2);
  r << 0, 1, -1, 0;
  const QMatrix q = extend_scalars_to_quaternion(r);
  CHECK(dist(q(0, 1), kOne) == 0.0);
  CHECK(dist(q(1, 0), Quaternion{-1.0}) == 0.0);
  const OperatorFlags flags = classify_operator(q);
  CHECK(flags.antiselfadjoint);
  CHECK(flags.unitary);
  CHECK(flags == classify_operator(r));
  CHECK(flags == classify_operator(extend_scalars(r)));

  CHECK(distance(extend_scalars_to_quaternion(RealMatrix::Identity(3, 3)), QMatrix::identity(3)) == 0.0);

  const ComplexMatrix ii = Complex(0, 1) * ComplexMatrix::Identity(2, 2);
  const QMatrix lifted = extend_scalars(ii, Frame::standard());
  CHECK(distance(lifted, diag({kE1, kE1})) == 0.0);
  const SplitSpace s = split_plus_minus(lifted, ImaginaryUnit::e1());
  CHECK((restrict_to_plus(lifted, s) - ii).norm() < 1e-14);
}

TEST_CASE("extension ledger") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const Frame f = random_frame(rng);
    const RealMatrix r = random_real_matrix(rng, 3, 3);
    // Composition is exact: real entries carry no imaginary part.
    CHECK(distance(extend_scalars(extend_scalars(r), f), extend_scalars_to_quaternion(r)) == 0.0);

    const ComplexMatrix c = random_complex_matrix(rng, 3);
    const QMatrix h = extend_scalars(c, f);
    const double nc = operator_norm(c);
    CHECK(std::abs(operator_norm(h, f) - nc) <= 1e-9 * nc);
    CHECK(std::abs(operator_norm(extend_scalars(r)) - operator_norm(r)) <= 1e-9 * operator_norm(r));
    CHECK(distance(adjoint(h), extend_scalars(ComplexMatrix(c.adjoint()), f)) < 1e-12);

    const ComplexMatrix sa = c + c.adjoint();
    CHECK(classify_operator(extend_scalars(sa, f)) == classify_operator(sa));
    const ComplexMatrix u = random_complex_unitary(rng, 3);
    CHECK(classify_operator(extend_scalars(u, f)) == classify_operator(u));
  }
}

TEST_CASE("plus/minus splitting") {
  const SplitSpace s = split_plus_minus(diag({kE1, kE1, kE1}), ImaginaryUnit::e1());
  REQUIRE(s.dimension() == 3);
  for (std::size_t m = 0; m < 3; ++m) CHECK(norm(s.plus_basis[m] - QVector::unit(3, m)) < 1e-15);

  Rng rng(22);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 10; ++t) {
      const Frame f = random_frame(rng);
      const QMatrix J = random_anti_unit(rng, n);
      const SplitSpace sp = split_plus_minus(J, f);
      REQUIRE(sp.dimension() == n);
      const Quaternion i = f.i().quaternion();
      const Quaternion j = f.j().quaternion();
      for (std::size_t a = 0; a < n; ++a) {
        const QVector& b = sp.plus_basis[a];
        CHECK(norm(J * b - b * i) < 1e-10);
        // b j lies in H-.
        CHECK(norm(J * (b * j) - (b * j) * (-1.0 * i)) < 1e-10);
        for (std::size_t c = 0; c < n; ++c)
          CHECK(dist(inner(sp.plus_basis[a], sp.plus_basis[c]), Quaternion{a == c ? 1.0 : 0.0}) < 1e-10);
      }
      // Conjugating J keeps the dimension.
      const QMatrix u = random_unitary(rng, n);
      CHECK(split_plus_minus(u * J * adjoint(u), f).dimension() == n);
    }

  CHECK(error_kind([] { split_plus_minus(QMatrix::identity(2), ImaginaryUnit::e1()); }) ==
        ErrorKind::Structure);
  CHECK(error_kind([] { split_plus_minus(diag({2.0 * kE1}), ImaginaryUnit::e1()); }) ==
        ErrorKind::Structure);
}

TEST_CASE("complex components") {
  Rng rng(23);
  const Frame f = random_frame(rng);
  const SplitSpace s = random_split(rng, 3, f);
  const auto c1 = components(s.plus_basis[0], s);
  CHECK(std::abs(c1.v1(0) - Complex(1, 0)) < 1e-12);
  CHECK(c1.v1.tail(2).norm() < 1e-12);
  CHECK(c1.v2.norm() < 1e-12);

  const auto c2 = components(s.plus_basis[0] * f.j().quaternion(), s);
  CHECK(c2.v1.norm() < 1e-12);
  CHECK(std::abs(c2.v2(0) - Complex(1, 0)) < 1e-12);
  CHECK(c2.v2.tail(2).norm() < 1e-12);

  for (int t = 0; t < 200; ++t) {
    const QVector v = random_qvector(rng, 3);
    CHECK(norm(from_components(components(v, s), s) - v) <= 1e-10 * (1 + norm(v)));
  }
}

TEST_CASE("restriction to H+ and extension back") {
  Rng rng(24);
  for (std::size_t n = 1; n <= 4; ++n) {
    const Frame f = random_frame(rng);
    const SplitSpace s = random_split(rng, n, f);
    const ComplexMatrix ii = Complex(0, 1) * ComplexMatrix::Identity(n, n);
    CHECK((restrict_to_plus(s.J, s) - ii).norm() < 1e-10);
    CHECK((restrict_to_plus(QMatrix::identity(n), s) - ComplexMatrix::Identity(n, n)).norm() < 1e-10);
    CHECK(distance(extend_from_plus(ii, s), s.J) < 1e-10);
    CHECK(distance(extend_from_plus(ComplexMatrix::Identity(n, n), s), QMatrix::identity(n)) < 1e-10);

    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix m = random_complex_matrix(rng, n);
      const QMatrix e = extend_from_plus(m, s);
      CHECK(frobenius_norm(commutator(e, s.J)) < 1e-10 * (1 + m.norm()));
      CHECK((restrict_to_plus(e, s) - m).norm() < 1e-10 * (1 + m.norm()));
      CHECK(std::abs(operator_norm(e) - operator_norm(m)) <= 1e-9 * operator_norm(m));

      const ComplexMatrix sa = m + m.adjoint();
      CHECK(classify_operator(extend_from_plus(sa, s)) == classify_operator(sa));
      const ComplexMatrix u = random_complex_unitary(rng, n);
      CHECK(classify_operator(extend_from_plus(u, s)) == classify_operator(u));
    }

    if (n > 1) {
      const QMatrix t = random_qmatrix(rng, n);
      const auto kind = error_kind([&] { restrict_to_plus(t, s); });
      CHECK(kind == ErrorKind::DoesNotCommute);
    }
  }
}

TEST_CASE("internal complexification") {
  RealMatrix J(2, 2);
  J << 0, -1, 1, 0;
  const double theta = 0.7;
  RealMatrix rot(2, 2);
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  const auto c = internal_complexify({rot}, J);
  CHECK(c.complex_dimension == 1);
  CHECK((c.basis.col(0).cwiseAbs() - RealVector::Unit(2, 0)).norm() < 1e-14);
  REQUIRE(c.operators.size() == 1);
  CHECK(std::abs(c.operators[0](0, 0) - std::polar(1.0, theta)) < 1e-14);

  const RealMatrix J4 = block_diagonal(J, 2);
  CHECK(internal_complexify({}, J4).complex_dimension == 2);

  Rng rng(25);
  const RealMatrix o = random_orthogonal(rng, 6);
  const RealMatrix J6 = o * block_diagonal(J, 3) * o.transpose();
  const auto c6 = internal_complexify({J6}, J6);
  CHECK(c6.complex_dimension == 3);
  // (v_m, J v_m) is a real orthonormal basis.
  RealMatrix full(6, 6);
  full << c6.basis, J6 * c6.basis;
  CHECK((full.transpose() * full - RealMatrix::Identity(6, 6)).norm() < 1e-10);
  for (int t = 0; t < 50; ++t) {
    const RealVector v = random_real_matrix(rng, 6, 1);
    CHECK(std::abs(v.dot(J6 * v)) < 1e-12 * v.squaredNorm());
    CHECK(std::abs(c6.inner(v, v).real() - v.squaredNorm()) < 1e-12 * v.squaredNorm());
    CHECK((c6.vector(c6.coordinates(v)) - v).norm() < 1e-12 * v.norm());
  }

  CHECK(error_kind([] { internal_complexify({}, RealMatrix::Identity(3, 3)); }) == ErrorKind::Dimension);
  RealMatrix not_commuting = RealMatrix::Zero(2, 2);
  not_commuting(0, 0) = 1.0;
  CHECK(error_kind([&] { internal_complexify({not_commuting}, J); }) == ErrorKind::DoesNotCommute);
}

TEST_CASE("internal quaternionification") {
  const Frame f = Frame::standard();
  const RealMatrix I = left_mult_real(kE1);
  const RealMatrix J = left_mult_real(kE2);
  const auto q = internal_quaternionify({}, I, J, f);
  CHECK(q.quaternionic_dimension == 1);
  RealMatrix tuple(4, 4);
  const RealVector v = q.basis.col(0);
  tuple << v, I * v, J * v, J * I * v;
  CHECK((tuple.transpose() * tuple - RealMatrix::Identity(4, 4)).norm() < 1e-12);

  const auto q8 = internal_quaternionify({}, block_diagonal(I, 2), block_diagonal(J, 2), f);
  CHECK(q8.quaternionic_dimension == 2);

  Rng rng(26);
  for (int t = 0; t < 50; ++t) {
    const RealVector x = random_real_matrix(rng, 8, 1);
    const Quaternion a = random_quaternion(rng);
    const Quaternion b = random_quaternion(rng);
    CHECK(std::abs(q8.inner(x, x).w - x.squaredNorm()) < 1e-12 * x.squaredNorm());
    CHECK((q8.right_multiply(q8.right_multiply(x, a), b) - q8.right_multiply(x, a * b)).norm() <
          1e-12 * (1 + x.norm() * abs(a) * abs(b)));
    CHECK((q8.vector(q8.coordinates(x)) - x).norm() < 1e-12 * x.norm());
  }

  CHECK(error_kind([] { internal_quaternionify({}, RealMatrix::Identity(6, 6), RealMatrix::Identity(6, 6),
                                                Frame::standard()); }) == ErrorKind::Dimension);
  CHECK(error_kind([&] { internal_quaternionify({}, I, I, f); }) == ErrorKind::Structure);
}

TEST_CASE("conjugations") {
  const Conjugation standard(ComplexMatrix::Identity(3, 3));
  ComplexVector v(3);
  v << Complex(1, 2), Complex(-3, 0.5), Complex(0, -1);
  CHECK((standard.apply(v) - v.conjugate()).norm() < 1e-15);

  Rng rng(27);
  const ComplexMatrix basis = random_complex_unitary(rng, 4);
  const Conjugation k = conjugation_from_basis(basis);
  for (int t = 0; t < 100; ++t) {
    ComplexVector x = random_complex_matrix(rng, 4).col(0);
    CHECK((k.apply(k.apply(x)) - x).norm() < 1e-11 * x.norm());
    CHECK(std::abs(k.apply(x).norm() - x.norm()) < 1e-12 * x.norm());
    // The fixed part is real in the basis.
    CHECK((basis.adjoint() * k.fixed_part(x)).imag().norm() < 1e-11 * x.norm());
  }

  const RealMatrix real_part = random_real_matrix(rng, 4, 4);
  const ComplexMatrix commuting = basis * real_part.cast<Complex>() * basis.adjoint();
  CHECK(k.commutation_residual(commuting) < 1e-10);
  CHECK(k.matrix_in_basis(commuting).imag().norm() < 1e-10);
  const ComplexMatrix generic = random_complex_matrix(rng, 4);
  CHECK(k.commutation_residual(generic) > 1e-3);
  CHECK(k.matrix_in_basis(generic).imag().norm() > 1e-3);

  ComplexMatrix skewed = ComplexMatrix::Identity(2, 2);
  skewed(0, 1) = 0.5;
  CHECK(error_kind([&] { conjugation_from_basis(skewed); }) == ErrorKind::Basis);
}

TEST_CASE("left multiplications") {
  const Frame f = Frame::standard();
  const LeftMultiplication one = real_subspace_and_left_mult(diag({kE1}), diag({kE2}), f);
  CHECK(one.dimension() == 1);
  Rng rng(28);
  for (int t = 0; t < 20; ++t) {
    const Quaternion a = random_quaternion(rng);
    CHECK(dist(one(a)(0, 0), a) < 1e-13 * (1 + abs(a)));
  }

  for (std::size_t n = 1; n <= 4; ++n) {
    const Frame g = random_frame(rng);
    const QMatrix w = random_unitary(rng, n);
    const QMatrix I = w * QMatrix::scalar(n, g.i().quaternion()) * adjoint(w);
    const QMatrix J = w * QMatrix::scalar(n, g.j().quaternion()) * adjoint(w);
    const LeftMultiplication m = real_subspace_and_left_mult(I, J, g);
    REQUIRE(m.dimension() == n);
    CHECK(distance(m(kOne), QMatrix::identity(n)) < 1e-10);
    CHECK(distance(m(g.i().quaternion()), I) < 1e-9);
    CHECK(distance(m(g.j().quaternion()), J) < 1e-9);
    CHECK(distance(m(g.k().quaternion()), I * J) < 1e-9);
    for (int t = 0; t < 10; ++t) {
      const Quaternion a = random_quaternion(rng);
      const Quaternion b = random_quaternion(rng);
      CHECK(distance(m(a) * m(b), m(a * b)) < 1e-10 * (1 + abs(a) * abs(b)));
      // Left multiplications are right-linear operators; same-plane ones commute.
      const QVector v = random_qvector(rng, n);
      CHECK(norm(m.apply(a, v * b) - m.apply(a, v) * b) < 1e-10 * (1 + abs(a) * abs(b) * norm(v)));
      const Quaternion c = g.embed(Complex(random_normal(rng), random_normal(rng)));
      const Quaternion d = g.embed(Complex(random_normal(rng), random_normal(rng)));
      CHECK(frobenius_norm(commutator(m(c), m(d))) < 1e-10 * (1 + abs(c) * abs(d)));
    }
  }

  CHECK(error_kind([&] { real_subspace_and_left_mult(diag({kE1}), diag({kE1}), f); }) ==
        ErrorKind::Structure);
}
