#include "quatkit/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "quatkit/sampling.hpp"

namespace quatkit {

Hamiltonian::Hamiltonian(QMatrix h, Frame frame, double tolerance)
    : h_(std::move(h)), frame_(std::move(frame)) {
  const double residual = frobenius_norm(h_ + adjoint(h_));
  if (residual > tolerance * std::max(1.0, frobenius_norm(h_))) {
    throw Error(ErrorKind::Structure, "Hamiltonian must be anti-selfadjoint", residual);
  }
}

QMatrix propagator(const Hamiltonian& h, double t) {
  const ComplexMatrix generator = complex_embed(h.matrix(), h.frame()) * Complex(-t, 0.0);
  const ComplexMatrix u = generator.exp();
  return complex_unembed(u, h.frame(), 1e-8);
}

QVector evolve(const Hamiltonian& h, const QVector& v, double t) {
  if (v.size() != h.size()) throw Error(ErrorKind::Dimension, "evolve: size mismatch");
  return propagator(h, t) * v;
}

// ---------------------------------------------------------------- components

SymplecticWave symplectic_components(const QVector& v, const Frame& f,
                                     const LeftMultiplication& left) {
  if (!(left.frame() == f)) {
    throw Error(ErrorKind::Structure, "left multiplication was built for a different frame");
  }
  const auto n = static_cast<Eigen::Index>(left.dimension());
  SymplecticWave wave{ComplexVector(n), ComplexVector(n)};
  for (Eigen::Index l = 0; l < n; ++l) {
    const auto c = f.coordinates(inner(left.real_basis()[static_cast<std::size_t>(l)], v));
    wave.F1(l) = Complex(c[0], c[1]);
    wave.F2(l) = Complex(c[2], -c[3]);
  }
  return wave;
}

QVector reconstruct(const SymplecticWave& wave, const LeftMultiplication& left) {
  const Frame& f = left.frame();
  const Quaternion j = f.j().quaternion();
  const auto& basis = left.real_basis();
  QVector v(basis.empty() ? 0 : basis.front().size());
  for (std::size_t l = 0; l < basis.size(); ++l) {
    const auto idx = static_cast<Eigen::Index>(l);
    v += basis[l] * (f.embed(wave.F1(idx)) + j * f.embed(wave.F2(idx)));
  }
  return v;
}

// ---------------------------------------------------------------- Hamiltonian blocks

QMatrix assemble_hamiltonian(const HamiltonianComponents& c, const Frame& f) {
  const Eigen::Index n = c.H0.rows();
  for (const RealMatrix* m : {&c.H0, &c.H1, &c.H2, &c.H3}) {
    if (m->rows() != n || m->cols() != n) {
      throw Error(ErrorKind::Dimension, "Hamiltonian components must be equal square matrices");
    }
  }
  QMatrix h(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index col = 0; col < n; ++col)
      h(static_cast<std::size_t>(r), static_cast<std::size_t>(col)) =
          f.compose({c.H0(r, col), c.H1(r, col), c.H2(r, col), c.H3(r, col)});
  return h;
}

HamiltonianComponents disassemble_hamiltonian(const QMatrix& h, const Frame& f) {
  const auto n = static_cast<Eigen::Index>(h.size());
  HamiltonianComponents c{RealMatrix(n, n), RealMatrix(n, n), RealMatrix(n, n), RealMatrix(n, n)};
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index col = 0; col < n; ++col) {
      const auto a = f.coordinates(h(static_cast<std::size_t>(r), static_cast<std::size_t>(col)));
      c.H0(r, col) = a[0];
      c.H1(r, col) = a[1];
      c.H2(r, col) = a[2];
      c.H3(r, col) = a[3];
    }
  return c;
}

ComplexMatrix symplectic_block(const HamiltonianComponents& c) {
  const Eigen::Index n = c.H0.rows();
  const Complex i(0.0, 1.0);
  const ComplexMatrix a = c.H0.cast<Complex>() + i * c.H1.cast<Complex>();
  const ComplexMatrix b = c.H2.cast<Complex>() - i * c.H3.cast<Complex>();
  ComplexMatrix block(2 * n, 2 * n);
  block << a, -b.conjugate(), b, a.conjugate();
  return block;
}

ComplexMatrix hamiltonian_block(const HamiltonianComponents& c, const Frame& f,
                                double tolerance) {
  const QMatrix h = assemble_hamiltonian(c, f);
  const double residual = frobenius_norm(h + adjoint(h));
  if (residual > tolerance * std::max(1.0, frobenius_norm(h))) {
    throw Error(ErrorKind::Structure, "assembled Hamiltonian is not anti-selfadjoint", residual);
  }
  return symplectic_block(c);
}

SymplecticWave evolve_components(const ComplexMatrix& block, const SymplecticWave& wave,
                                 double t) {
  const Eigen::Index n = wave.F1.size();
  if (block.rows() != 2 * n || block.cols() != 2 * n || wave.F2.size() != n) {
    throw Error(ErrorKind::Dimension, "evolve_components: size mismatch");
  }
  ComplexVector state(2 * n);
  state << wave.F1, wave.F2;
  const ComplexMatrix u = (block * Complex(-t, 0.0)).exp();
  const ComplexVector out = u * state;
  return {out.head(n), out.tail(n)};
}

// ---------------------------------------------------------------- probabilities

TransitionProbabilities transition_probs(const QVector& v, const QVector& u, const Frame& f,
                                         double tolerance) {
  const double dv = std::abs(norm(v) - 1.0);
  const double du = std::abs(norm(u) - 1.0);
  if (dv > tolerance || du > tolerance) {
    throw Error(ErrorKind::Normalization, "transition probabilities need unit vectors",
                std::max(dv, du));
  }
  const Quaternion q = inner(v, u);
  const auto split = symplectic_split(q, f);
  return {std::norm(split.z1), std::norm(split.z2), norm2(q)};
}

std::vector<Quaternion> quaternionic_phase(const std::vector<Quaternion>& samples, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::Precondition, "time step must be positive");
  for (const auto& w : samples) {
    const double deviation = std::abs(abs(w) - 1.0);
    if (deviation > tol(1e-9)) {
      throw Error(ErrorKind::Normalization, "phase samples must be unit quaternions", deviation);
    }
  }
  std::vector<Quaternion> out;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const Quaternion step = samples[k + 1] - samples[k];
    if (abs(step) > 0.1) {
      throw Error(ErrorKind::Precondition, "consecutive phase samples are too far apart",
                  abs(step));
    }
    out.push_back(conj(samples[k]) * step / dt);
  }
  return out;
}

// ---------------------------------------------------------------- co-unitary

double CounitaryReport::max_counitary_residual() const {
  double worst = 0.0;
  for (const auto& c : cases)
    worst = std::max({worst, c.linearity_residual, c.inner_residual});
  return worst;
}

bool CounitaryReport::non_unique(double threshold) const {
  return std::any_of(pairs.begin(), pairs.end(), [threshold](const CounitaryPair& p) {
    return !p.same_symmetry && p.distance >= threshold;
  });
}

CounitaryReport counitary_demo(const Quaternion& h, const std::vector<QMatrix>& unitaries,
                               std::uint64_t seed, std::size_t samples) {
  const double deviation = std::abs(abs(h) - 1.0);
  if (deviation > tol(1e-10)) {
    throw Error(ErrorKind::Normalization, "automorphism quaternion must be a unit", deviation);
  }
  for (const auto& u : unitaries) {
    const double residual = frobenius_norm(adjoint(u) * u - QMatrix::identity(u.size()));
    if (residual > tol(1e-10) * std::max<double>(1.0, static_cast<double>(u.size()))) {
      throw Error(ErrorKind::Structure, "co-unitary demo needs unitary operators", residual);
    }
  }
  const Quaternion h_inv = inverse(h);
  auto phi = [&](const Quaternion& x) { return h * x * h_inv; };

  CounitaryReport report;
  report.h = h;
  for (std::size_t idx = 0; idx < unitaries.size(); ++idx) {
    const QMatrix& u = unitaries[idx];
    const std::size_t n = u.size();
    auto u_phi = [&](const QVector& v) { return (u * v) * h_inv; };
    Rng rng(derive_seed(seed, idx));
    CounitaryCase c;
    for (std::size_t s = 0; s < samples; ++s) {
      const QVector v = random_qvector(rng, n);
      const QVector w = random_qvector(rng, n);
      const Quaternion a = random_quaternion(rng);
      c.linearity_residual =
          std::max(c.linearity_residual, norm(u_phi(v * a) - u_phi(v) * phi(a)));
      c.inner_residual =
          std::max(c.inner_residual, abs(inner(u_phi(v), u_phi(w)) - phi(inner(v, w))));
    }
    // v -> U_phi(v) h collapses to v -> U v.
    c.candidate = u * h_inv * h;
    c.identity_action = distance(c.candidate, QMatrix::identity(n)) <= 1e-10;
    report.cases.push_back(std::move(c));
  }
  for (std::size_t a = 0; a < report.cases.size(); ++a)
    for (std::size_t b = a + 1; b < report.cases.size(); ++b) {
      const QMatrix& ua = report.cases[a].candidate;
      const QMatrix& ub = report.cases[b].candidate;
      if (ua.size() != ub.size()) throw Error(ErrorKind::Dimension, "unitaries differ in size");
      const QMatrix rel = ub * adjoint(ua);
      const double real_part = trace(rel).w / static_cast<double>(rel.size());
      const bool central = distance(rel, QMatrix::identity(rel.size()) * real_part) <= 1e-9;
      report.pairs.push_back({a, b, operator_norm(ua - ub), central});
    }
  return report;
}

}  // namespace quatkit
