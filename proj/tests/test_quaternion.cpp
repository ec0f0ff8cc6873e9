#include <doctest.h>

#include <array>
#include <cmath>

#include "quatkit/quaternion.hpp"
#include "quatkit/sampling.hpp"

using namespace quatkit;

namespace {

// Hamilton product expanded from the unit table 1, e1, e2, e3 with
// e1 e2 = e3, e2 e3 = e1, e3 e1 = e2. Written independently of qmul.
Quaternion table_product(const Quaternion& p, const Quaternion& q) {
  // table[a][b] = (sign, index) of unit_a * unit_b
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int index[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const std::array<double, 4> a{p.w, p.x, p.y, p.z};
  const std::array<double, 4> b{q.w, q.x, q.y, q.z};
  std::array<double, 4> c{};
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) c[index[s][t]] += sign[s][t] * a[s] * b[t];
  return {c[0], c[1], c[2], c[3]};
}

double dist(const Quaternion& a, const Quaternion& b) { return abs(a - b); }

}  // namespace

TEST_CASE("unit products") {
  CHECK(dist(kE1 * kE2, kE3) == 0.0);
  CHECK(dist(kE2 * kE1, -1.0 * kE3) == 0.0);
  CHECK(dist(kE1 * kE1, Quaternion{-1.0}) == 0.0);
  CHECK(dist(kE2 * kE3, kE1) == 0.0);
  CHECK(dist(kE3 * kE1, kE2) == 0.0);
  CHECK(dist(kE3 * kE3, Quaternion{-1.0}) == 0.0);
}

TEST_CASE("product agrees with the unit table") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    CHECK(dist(qmul(p, q), table_product(p, q)) < 1e-14);
    CHECK(dist(kOne * q, q) == 0.0);
  }
}

TEST_CASE("conjugate and modulus") {
  CHECK(dist(qconj({1, 1, 0, 0}), {1, -1, 0, 0}) == 0.0);
  CHECK(qnorm({1, 1, 1, 1}) == doctest::Approx(2.0).epsilon(1e-15));
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    const Quaternion cq = qmul(qconj(q), q);
    CHECK(cq.w == doctest::Approx(norm2(q)).epsilon(1e-14));
    CHECK(std::abs(cq.x) + std::abs(cq.y) + std::abs(cq.z) < 1e-14);
    CHECK(dist(conj(p * q), conj(q) * conj(p)) < 1e-13);
    CHECK(std::abs(abs(p * q) - abs(p) * abs(q)) <= 1e-12 * abs(p) * abs(q));
    CHECK(dist(p * inverse(p), kOne) < 1e-14);
  }
}

TEST_CASE("associativity") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Quaternion a = random_quaternion(rng);
    const Quaternion b = random_quaternion(rng);
    const Quaternion c = random_quaternion(rng);
    CHECK(dist((a * b) * c, a * (b * c)) < 1e-13);
  }
}

TEST_CASE("imaginary units") {
  const ImaginaryUnit u = ImaginaryUnit::normalized({1.0, 1.0, 0.0});
  CHECK(dist(u.quaternion() * u.quaternion(), Quaternion{-1.0}) < 1e-15);
  CHECK_THROWS_AS(ImaginaryUnit({1.0, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(ImaginaryUnit::normalized({0.0, 0.0, 0.0}), Error);
}

TEST_CASE("frames") {
  const Frame f = Frame::standard();
  CHECK(dist(f.k().quaternion(), kE3) == 0.0);
  CHECK_THROWS_AS(Frame(ImaginaryUnit::e1(), ImaginaryUnit::e1()), Error);
  const Frame g(ImaginaryUnit::e2(), ImaginaryUnit::e3());
  CHECK(dist(g.k().quaternion(), kE1) == 0.0);
  const auto c = g.coordinates({1, 2, 3, 4});
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 3.0);
  CHECK(c[2] == 4.0);
  CHECK(c[3] == 2.0);
  CHECK(dist(g.compose(c), {1, 2, 3, 4}) < 1e-15);
}

TEST_CASE("symplectic split") {
  const Frame f = Frame::standard();
  const auto s = symplectic_split({1, 2, 3, 4}, f);
  CHECK(s.z1 == Complex(1, 2));
  CHECK(s.z2 == Complex(3, 4));
  // z1 + z2 e2 rebuilt with the unit table.
  const Quaternion rebuilt = Quaternion{1, 2, 0, 0} + table_product({3, 4, 0, 0}, kE2);
  CHECK(dist(rebuilt, {1, 2, 3, 4}) == 0.0);

  const auto real = symplectic_split({2.5, 0, 0, 0}, f);
  CHECK(real.z1 == Complex(2.5, 0));
  CHECK(real.z2 == Complex(0, 0));
  const auto j = symplectic_split(kE2, f);
  CHECK(j.z1 == Complex(0, 0));
  CHECK(j.z2 == Complex(1, 0));

  Rng rng(4);
  for (int t = 0; t < 2000; ++t) {
    const Frame r = random_frame(rng);
    const Quaternion q = random_quaternion(rng);
    CHECK(dist(symplectic_join(symplectic_split(q, r), r), q) <= 1e-14 * std::max(1.0, abs(q)));
  }
}

TEST_CASE("frame completion") {
  const Frame f = frame_complete(ImaginaryUnit::e1());
  CHECK(f.j() == ImaginaryUnit::e2());
  CHECK(f.k() == ImaginaryUnit::e3());
  const Frame g = frame_complete(ImaginaryUnit::e2());
  const Quaternion i = g.i().quaternion();
  const Quaternion j = g.j().quaternion();
  CHECK(dist(i * j, -1.0 * (j * i)) < 1e-15);

  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const ImaginaryUnit u = random_imaginary_unit(rng);
    const Frame h = frame_complete(u);
    CHECK(h.i() == u);
    CHECK(std::abs(dot(h.i().direction(), h.j().direction())) < 1e-14);
    const Quaternion a = h.i().quaternion();
    const Quaternion b = h.j().quaternion();
    CHECK(abs(a * b + b * a) < 1e-14);
    CHECK(dist(h.k().quaternion(), a * b) < 1e-15);
    // Same input, same frame.
    CHECK(frame_complete(u) == h);
  }
}

TEST_CASE("sphere representative") {
  const ImaginaryUnit e1 = ImaginaryUnit::e1();
  CHECK(dist(sphere_representative({2, 0, 3, 0}, e1), {2, 3, 0, 0}) < 1e-15);
  CHECK(dist(sphere_representative({-1.5, 0, 0, 0}, e1), {-1.5, 0, 0, 0}) == 0.0);
  CHECK(dist(sphere_representative({0, 1, 1, 1}, e1), {0, std::sqrt(3.0), 0, 0}) < 1e-15);

  Rng rng(6);
  for (int t = 0; t < 1000; ++t) {
    const Quaternion q = random_quaternion(rng);
    const Quaternion h = random_unit_quaternion(rng);
    const ImaginaryUnit i = random_imaginary_unit(rng);
    CHECK(dist(sphere_representative(h * q * inverse(h), i), sphere_representative(q, i)) <
          1e-12 * std::max(1.0, abs(q)));
  }
}

TEST_CASE("aligning imaginary units") {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    const ImaginaryUnit a = random_imaginary_unit(rng);
    const ImaginaryUnit b = random_imaginary_unit(rng);
    const Quaternion h = align_units(a, b);
    CHECK(abs(h) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dist(a.quaternion() * h, h * b.quaternion()) < 1e-13);
  }
  // Antipodal units use the completion fallback.
  const Quaternion h = align_units(ImaginaryUnit({0, 0, -1}), ImaginaryUnit::e3());
  CHECK(dist(-1.0 * kE3 * h, h * kE3) < 1e-14);
}
