#include "quatkit/sampling.hpp"

#include <cmath>

#include <Eigen/QR>

#include "quatkit/functors.hpp"

namespace quatkit {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t s = mix(master);
  s = mix(s ^ a);
  s = mix(s ^ b);
  return mix(s ^ c);
}

double random_normal(Rng& rng) {
  std::normal_distribution<double> dist;
  return dist(rng);
}

double random_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

Quaternion random_quaternion(Rng& rng) {
  const double w = random_normal(rng);
  const double x = random_normal(rng);
  const double y = random_normal(rng);
  const double z = random_normal(rng);
  return {w, x, y, z};
}

Quaternion random_unit_quaternion(Rng& rng) {
  Quaternion q = random_quaternion(rng);
  while (abs(q) < 1e-6) q = random_quaternion(rng);
  return q / abs(q);
}

ImaginaryUnit random_imaginary_unit(Rng& rng) {
  Vec3 v{};
  do {
    for (auto& c : v) c = random_normal(rng);
  } while (length(v) < 1e-6);
  return ImaginaryUnit::normalized(v);
}

Frame random_frame(Rng& rng) {
  const ImaginaryUnit i = random_imaginary_unit(rng);
  Vec3 v{};
  Vec3 j{};
  do {
    for (auto& c : v) c = random_normal(rng);
    j = v;
    // Two passes keep i.j at rounding level even for nearly parallel draws.
    for (int pass = 0; pass < 2; ++pass) {
      const double overlap = dot(j, i.direction());
      for (int a = 0; a < 3; ++a) j[a] -= overlap * i.direction()[a];
    }
  } while (length(j) < 1e-3 * length(v));
  return Frame(i, ImaginaryUnit::normalized(j));
}

QVector random_qvector(Rng& rng, std::size_t n) {
  QVector v(n);
  for (auto& q : v) q = random_quaternion(rng);
  return v;
}

QVector random_unit_qvector(Rng& rng, std::size_t n) {
  QVector v = random_qvector(rng, n);
  return v * (1.0 / norm(v));
}

QMatrix random_qmatrix(Rng& rng, std::size_t n) {
  QMatrix t(n);
  for (auto& q : t.entries()) q = random_quaternion(rng);
  return t;
}

QMatrix random_selfadjoint(Rng& rng, std::size_t n) {
  const QMatrix b = random_qmatrix(rng, n);
  return 0.5 * (b + adjoint(b));
}

QMatrix random_antiselfadjoint(Rng& rng, std::size_t n) {
  const QMatrix b = random_qmatrix(rng, n);
  return 0.5 * (b - adjoint(b));
}

QMatrix random_unitary(Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<QVector> cols;
    for (std::size_t c = 0; c < n; ++c) cols.push_back(random_qvector(rng, n));
    // Plain Gram-Schmidt in column order keeps the distribution rotation invariant.
    std::vector<QVector> basis;
    for (auto& v : cols) {
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) v -= b * inner(b, v);
      const double len = norm(v);
      if (len < 1e-8) break;
      basis.push_back(v * (1.0 / len));
    }
    if (basis.size() == n) return QMatrix::from_columns(basis);
  }
}

QMatrix random_anti_unit(Rng& rng, std::size_t n) {
  const QMatrix w = random_unitary(rng, n);
  const ImaginaryUnit u = random_imaginary_unit(rng);
  return w * QMatrix::scalar(n, u.quaternion()) * adjoint(w);
}

RealMatrix random_real_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  RealMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = random_normal(rng);
  return m;
}

RealMatrix random_orthogonal(Rng& rng, std::size_t n) {
  const RealMatrix a = random_real_matrix(rng, n, n);
  Eigen::HouseholderQR<RealMatrix> qr(a);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k)
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  return q;
}

ComplexMatrix random_complex_matrix(Rng& rng, std::size_t n) {
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double re = random_normal(rng);
      const double im = random_normal(rng);
      m(r, c) = Complex(re, im);
    }
  return m;
}

ComplexMatrix random_complex_unitary(Rng& rng, std::size_t n) {
  const ComplexMatrix a = random_complex_matrix(rng, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_antihermitian(Rng& rng, std::size_t n) {
  const ComplexMatrix a = random_complex_matrix(rng, n);
  return 0.5 * (a - a.adjoint());
}

PlantedAlgebra planted_full_algebra(Rng& rng, std::size_t n) {
  PlantedAlgebra p{{random_qmatrix(rng, n), random_qmatrix(rng, n)}, QMatrix::identity(n), {}, {}};
  return p;
}

PlantedAlgebra planted_complex_induced(Rng& rng, std::size_t n, const Frame& frame) {
  PlantedAlgebra p;
  p.W = random_unitary(rng, n);
  const QMatrix ws = adjoint(p.W);
  for (int g = 0; g < 2; ++g)
    p.generators.push_back(p.W * extend_scalars(random_complex_matrix(rng, n), frame) * ws);
  p.J = p.W * QMatrix::scalar(n, frame.i().quaternion()) * ws;
  return p;
}

PlantedAlgebra planted_real_induced(Rng& rng, std::size_t n, const Frame& frame) {
  PlantedAlgebra p;
  p.W = random_unitary(rng, n);
  const QMatrix ws = adjoint(p.W);
  for (int g = 0; g < 2; ++g)
    p.generators.push_back(p.W * QMatrix::from_real(random_real_matrix(rng, n, n)) * ws);
  p.I = p.W * QMatrix::scalar(n, frame.i().quaternion()) * ws;
  p.J = p.W * QMatrix::scalar(n, frame.j().quaternion()) * ws;
  return p;
}

}  // namespace quatkit
