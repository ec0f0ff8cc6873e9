#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "quatkit/qlinalg.hpp"
#include "quatkit/sampling.hpp"

using namespace quatkit;

namespace {

double dist(const Quaternion& a, const Quaternion& b) { return abs(a - b); }

QMatrix diag(std::initializer_list<Quaternion> d) { return QMatrix::diagonal(d); }

// Real 4n x 4n matrix of v -> T v, built column by column from T acting on
// the real basis vectors delta_m * {1, e1, e2, e3}.
RealMatrix real_picture(const QMatrix& t) {
  const std::size_t n = t.size();
  const Quaternion units[4] = {kOne, kE1, kE2, kE3};
  RealMatrix m(4 * n, 4 * n);
  for (std::size_t c = 0; c < n; ++c)
    for (int u = 0; u < 4; ++u) {
      const QVector image = t * (QVector::unit(n, c) * units[u]);
      for (std::size_t r = 0; r < n; ++r) {
        const Eigen::Index col = static_cast<Eigen::Index>(4 * c + u);
        m(4 * r + 0, col) = image[r].w;
        m(4 * r + 1, col) = image[r].x;
        m(4 * r + 2, col) = image[r].y;
        m(4 * r + 3, col) = image[r].z;
      }
    }
  return m;
}

}  // namespace

TEST_CASE("inner product") {
  const QVector v{kOne, kE1};
  const QVector u{kE2, kOne};
  CHECK(dist(inner(v, u), kE2 - kE1) == 0.0);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(dist(inner(QVector::unit(3, m), QVector::unit(3, k)), Quaternion{m == k ? 1.0 : 0.0}) ==
            0.0);

  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const QVector x = random_qvector(rng, 3);
    const QVector y = random_qvector(rng, 3);
    const Quaternion a = random_quaternion(rng);
    const Quaternion b = random_quaternion(rng);
    CHECK(dist(inner(x * a, y * b), conj(a) * inner(x, y) * b) < 1e-12 * (1 + abs(a) * abs(b) * 20));
    const Quaternion xx = inner(x, x);
    CHECK(xx.w >= 0.0);
    CHECK(std::abs(xx.x) + std::abs(xx.y) + std::abs(xx.z) < 1e-14);
  }
  CHECK_THROWS_AS(inner(QVector(2), QVector(3)), Error);
}

TEST_CASE("adjoint") {
  const QMatrix t = diag({kE1, kE1});
  CHECK(distance(adjoint(t), -t) == 0.0);
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const QMatrix a = random_qmatrix(rng, 3);
    CHECK(distance(adjoint(adjoint(a)), a) == 0.0);
    const QVector v = random_qvector(rng, 3);
    const QVector u = random_qvector(rng, 3);
    CHECK(dist(inner(adjoint(a) * v, u), inner(v, a * u)) < 1e-12 * 50);
  }
}

TEST_CASE("right linearity of the matrix action") {
  Rng rng(13);
  for (int k = 0; k < 1000; ++k) {
    const QMatrix t = random_qmatrix(rng, 3);
    const QVector v = random_qvector(rng, 3);
    const Quaternion a = random_quaternion(rng);
    CHECK(frobenius_norm(t * (v * a) - (t * v) * a) <=
          1e-11 * (1 + frobenius_norm(t) * norm(v) * abs(a)));
  }
}

TEST_CASE("complex embedding") {
  const Frame f = Frame::standard();
  CHECK((complex_embed(QMatrix::identity(3), f) - ComplexMatrix::Identity(6, 6)).norm() == 0.0);

  QMatrix j(1);
  j(0, 0) = kE2;
  ComplexMatrix expected(2, 2);
  expected << 0, 1, -1, 0;
  CHECK((complex_embed(j, f) - expected).norm() == 0.0);
  CHECK(dist(complex_unembed(expected, f)(0, 0), kE2) == 0.0);

  ComplexMatrix bad(2, 2);
  bad << 1, 0, 0, 2;
  try {
    complex_unembed(bad, f);
    FAIL("expected NotInImage");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInImage);
    REQUIRE(e.residual().has_value());
    CHECK(*e.residual() > 0.1);
  }

  Rng rng(14);
  for (int k = 0; k < 200; ++k) {
    const Frame g = random_frame(rng);
    const QMatrix a = random_qmatrix(rng, 3);
    const QMatrix b = random_qmatrix(rng, 3);
    const ComplexMatrix ca = complex_embed(a, g);
    const ComplexMatrix cb = complex_embed(b, g);
    // Direct multiplication oracle.
    CHECK((complex_embed(a * b, g) - ca * cb).norm() <= 1e-11 * (1 + frobenius_norm(a) * frobenius_norm(b)));
    CHECK((complex_embed(adjoint(a), g) - ca.adjoint()).norm() <= 1e-11 * (1 + frobenius_norm(a)));
    CHECK(distance(complex_unembed(ca, g), a) <= 1e-13 * (1 + frobenius_norm(a)));
    const QVector v = random_qvector(rng, 3);
    CHECK(norm(unembed_vector(ca * embed_vector(v, g), g) - a * v) <= 1e-12 * (1 + frobenius_norm(a) * norm(v)));
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(QMatrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-14));
  const Quaternion q{1, 2, 2, 0};  // |q| = 3
  CHECK(operator_norm(diag({q, q})) == doctest::Approx(3.0).epsilon(1e-14));
  Rng rng(15);
  for (int k = 0; k < 50; ++k) {
    const QMatrix t = random_qmatrix(rng, 4);
    const double a = operator_norm(t, random_frame(rng));
    const double b = operator_norm(t, random_frame(rng));
    CHECK(std::abs(a - b) <= 1e-11 * a);
    // The norm of the 4n x 4n real picture is the same number.
    Eigen::JacobiSVD<RealMatrix> svd(real_picture(t));
    CHECK(std::abs(svd.singularValues()(0) - a) <= 1e-11 * a);
  }
}

TEST_CASE("eigenspheres") {
  const ImaginaryUnit e1 = ImaginaryUnit::e1();
  const auto id = s_eigenspheres(QMatrix::identity(3), e1);
  REQUIRE(id.size() == 1);
  CHECK(dist(id[0].representative, kOne) < 1e-14);
  CHECK(id[0].multiplicity == 3);

  const auto unit = s_eigenspheres(diag({kE1}), e1);
  REQUIRE(unit.size() == 1);
  CHECK(dist(unit[0].representative, kE1) < 1e-14);
  CHECK(unit[0].multiplicity == 1);

  RealMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  auto spheres = s_eigenspheres(QMatrix::from_real(swap), e1);
  REQUIRE(spheres.size() == 2);
  std::sort(spheres.begin(), spheres.end(),
            [](const EigenSphere& a, const EigenSphere& b) { return a.representative.w < b.representative.w; });
  CHECK(dist(spheres[0].representative, Quaternion{-1.0}) < 1e-14);
  CHECK(dist(spheres[1].representative, Quaternion{1.0}) < 1e-14);

  // Representatives lie in the closed upper half of C_i for the requested i.
  const ImaginaryUnit i = ImaginaryUnit::normalized({1, -2, 2});
  const auto rot = s_eigenspheres(diag({Quaternion{0.5, 0, 3, 4}, kE3}), i);
  for (const auto& s : rot) {
    const Vec3 v = s.representative.imag();
    CHECK(dot(v, i.direction()) >= 0.0);
    CHECK(length(v) == doctest::Approx(std::abs(dot(v, i.direction()))).epsilon(1e-12));
  }

  RealMatrix nilpotent = RealMatrix::Zero(2, 2);
  nilpotent(0, 1) = 1.0;
  CHECK_THROWS_AS(s_eigenspheres(QMatrix::from_real(nilpotent), e1), Error);

  // Selfadjoint spectra against the real symmetric oracle.
  Rng rng(16);
  for (int k = 0; k < 30; ++k) {
    const QMatrix t = random_selfadjoint(rng, 4);
    std::vector<double> got;
    for (const auto& s : s_eigenspheres(t, random_imaginary_unit(rng))) {
      CHECK(length(s.representative.imag()) < 1e-9);
      for (std::size_t m = 0; m < s.multiplicity; ++m) got.push_back(s.representative.w);
    }
    REQUIRE(got.size() == 4);
    std::sort(got.begin(), got.end());
    const RealVector oracle = Eigen::SelfAdjointEigenSolver<RealMatrix>(real_picture(t)).eigenvalues();
    for (std::size_t m = 0; m < 4; ++m)
      for (int c = 0; c < 4; ++c) CHECK(std::abs(oracle(static_cast<Eigen::Index>(4 * m + c)) - got[m]) < 1e-9);
  }
}

TEST_CASE("polar decomposition of anti-selfadjoint operators") {
  {
    const auto p = polar_antiselfadjoint(diag({2.0 * kE1, 3.0 * kE2}));
    CHECK(distance(p.M, diag({Quaternion{2.0}, Quaternion{3.0}})) < 1e-12);
    CHECK(distance(p.J, diag({kE1, kE2})) < 1e-12);
  }
  {
    const auto p = polar_antiselfadjoint(diag({kE1, Quaternion{}}));
    CHECK(distance(p.M, diag({kOne, Quaternion{}})) < 1e-12);
    CHECK(distance(p.J, diag({kE1, kE1})) < 1e-12);
    CHECK(distance(p.J * p.J, -1.0 * QMatrix::identity(2)) < 1e-12);
  }
  {
    // The kernel completion follows the frame's i.
    const Frame f(ImaginaryUnit::e3(), ImaginaryUnit::e1());
    const auto p = polar_antiselfadjoint(diag({kE1, Quaternion{}}), f);
    CHECK(distance(p.J, diag({kE1, kE3})) < 1e-12);
  }
  CHECK_THROWS_AS(polar_antiselfadjoint(QMatrix::identity(2)), Error);

  Rng rng(17);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int k = 0; k < 40; ++k) {
      const QMatrix b = random_qmatrix(rng, n);
      const QMatrix a = 0.5 * (b - adjoint(b));
      const auto p = polar_antiselfadjoint(a);
      const QMatrix id = QMatrix::identity(n);
      CHECK(distance(a, p.J * p.M) < 1e-9);
      CHECK(frobenius_norm(p.J + adjoint(p.J)) < 1e-9);
      CHECK(distance(p.J * p.J, -1.0 * id) < 1e-9);
      CHECK(distance(adjoint(p.J) * p.J, id) < 1e-9);
      CHECK(frobenius_norm(commutator(p.J, p.M)) < 1e-9);
      CHECK(distance(p.M, adjoint(p.M)) < 1e-12);
      // Invertible A: J = A M^-1.
      const QMatrix m_inv = complex_unembed(complex_embed(p.M, Frame::standard()).inverse(),
                                            Frame::standard(), 1e-8);
      CHECK(distance(p.J, a * m_inv) < 1e-8 * (1 + frobenius_norm(m_inv)));
    }
}

TEST_CASE("operator flags") {
  const OperatorFlags id = classify_operator(QMatrix::identity(3));
  CHECK(id.selfadjoint);
  CHECK_FALSE(id.antiselfadjoint);
  CHECK(id.unitary);
  CHECK(id.normal);
  CHECK(id.projection);

  const OperatorFlags rot = classify_operator(diag({kE1, kE1, kE1}));
  CHECK_FALSE(rot.selfadjoint);
  CHECK(rot.antiselfadjoint);
  CHECK(rot.unitary);
  CHECK(rot.normal);
  CHECK_FALSE(rot.projection);

  Rng rng(18);
  const QVector v = random_unit_qvector(rng, 3);
  const OperatorFlags proj = classify_operator(outer(v, v));
  CHECK(proj.selfadjoint);
  CHECK_FALSE(proj.antiselfadjoint);
  CHECK_FALSE(proj.unitary);
  CHECK(proj.normal);
  CHECK(proj.projection);

  const OperatorFlags general = classify_operator(random_qmatrix(rng, 3));
  CHECK(general == OperatorFlags{});
}

TEST_CASE("spectral decomposition") {
  Rng rng(19);
  const QMatrix t = random_selfadjoint(rng, 4);
  QMatrix sum(4);
  QMatrix rebuilt(4);
  for (const auto& c : spectral_decomposition(t)) {
    CHECK(distance(c.projection * c.projection, c.projection) < 1e-10);
    sum += c.projection;
    rebuilt += c.projection * c.eigenvalue;
  }
  CHECK(distance(sum, QMatrix::identity(4)) < 1e-10);
  CHECK(distance(rebuilt, t) < 1e-10);
  CHECK(quaternionic_rank(QMatrix::identity(3)) == 3);
  CHECK(quaternionic_rank(outer(QVector::unit(3, 1), QVector::unit(3, 1))) == 1);
}
