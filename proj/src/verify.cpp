#include "quatkit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "quatkit/dynamics.hpp"

namespace quatkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double cnorm(const ComplexMatrix& m) { return m.norm(); }

// ---------------------------------------------------------------- real pictures

// 4x4 matrices of x -> p x and x -> x p on (w, x, y, z).
RealMatrix left_block(const Quaternion& p) {
  RealMatrix b(4, 4);
  const Quaternion basis[4] = {kOne, kE1, kE2, kE3};
  for (int c = 0; c < 4; ++c) {
    const Quaternion q = p * basis[c];
    b.col(c) << q.w, q.x, q.y, q.z;
  }
  return b;
}

RealMatrix right_block(const Quaternion& p) {
  RealMatrix b(4, 4);
  const Quaternion basis[4] = {kOne, kE1, kE2, kE3};
  for (int c = 0; c < 4; ++c) {
    const Quaternion q = basis[c] * p;
    b.col(c) << q.w, q.x, q.y, q.z;
  }
  return b;
}

// Real 4n x 4n matrix of v -> T v.
RealMatrix real_left(const QMatrix& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  RealMatrix m(4 * n, 4 * n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      m.block(4 * r, 4 * c, 4, 4) =
          left_block(t(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
  return m;
}

// Real 4n x 4n matrix of v -> v q.
RealMatrix real_right(std::size_t n, const Quaternion& q) {
  const auto ni = static_cast<Eigen::Index>(n);
  RealMatrix m = RealMatrix::Zero(4 * ni, 4 * ni);
  for (Eigen::Index r = 0; r < ni; ++r) m.block(4 * r, 4 * r, 4, 4) = right_block(q);
  return m;
}

// [[Re, -Im], [Im, Re]]
RealMatrix realify(const ComplexMatrix& c) {
  const Eigen::Index n = c.rows();
  RealMatrix m(2 * n, 2 * n);
  m << c.real(), -c.imag(), c.imag(), c.real();
  return m;
}

// ---------------------------------------------------------------- operator kinds

enum class Kind { General, SelfAdjoint, AntiSelfAdjoint, Unitary, Projection };
constexpr std::size_t kKinds = 5;

Kind kind_of(std::size_t trial) { return static_cast<Kind>(trial % kKinds); }

RealMatrix random_real_of_kind(Rng& rng, std::size_t n, Kind kind) {
  const auto ni = static_cast<Eigen::Index>(n);
  const RealMatrix a = random_real_matrix(rng, n, n);
  switch (kind) {
    case Kind::General: return a;
    case Kind::SelfAdjoint: return 0.5 * (a + a.transpose());
    case Kind::AntiSelfAdjoint: return 0.5 * (a - a.transpose());
    case Kind::Unitary: return random_orthogonal(rng, n);
    case Kind::Projection: {
      const RealMatrix o = random_orthogonal(rng, n);
      const Eigen::Index rank = static_cast<Eigen::Index>(rng() % (n + 1));
      return o.leftCols(rank) * o.leftCols(rank).transpose() + RealMatrix::Zero(ni, ni);
    }
  }
  return a;
}

ComplexMatrix random_complex_of_kind(Rng& rng, std::size_t n, Kind kind) {
  const ComplexMatrix a = random_complex_matrix(rng, n);
  switch (kind) {
    case Kind::General: return a;
    case Kind::SelfAdjoint: return 0.5 * (a + a.adjoint());
    case Kind::AntiSelfAdjoint: return 0.5 * (a - a.adjoint());
    case Kind::Unitary: return random_complex_unitary(rng, n);
    case Kind::Projection: {
      const ComplexMatrix u = random_complex_unitary(rng, n);
      const Eigen::Index rank = static_cast<Eigen::Index>(rng() % (n + 1));
      const auto ni = static_cast<Eigen::Index>(n);
      return u.leftCols(rank) * u.leftCols(rank).adjoint() + ComplexMatrix::Zero(ni, ni);
    }
  }
  return a;
}

double flag_mismatch(const OperatorFlags& a, const OperatorFlags& b) { return a == b ? 0.0 : 1.0; }

// J = W (i I) W* together with the split for the same i.
struct PlantedJ {
  QMatrix W;
  QMatrix J;
  Frame frame;
};

PlantedJ planted_j(Rng& rng, std::size_t n) {
  const Frame f = random_frame(rng);
  const QMatrix w = random_unitary(rng, n);
  return {w, w * QMatrix::scalar(n, f.i().quaternion()) * adjoint(w), f};
}

// ---------------------------------------------------------------- functor ledger

struct LedgerResidual {
  double norm = 0.0;
  double adjoint = 0.0;
  double flags = 0.0;
  double dimension = 0.0;

  void merge(const LedgerResidual& o) {
    norm = std::max(norm, o.norm);
    adjoint = std::max(adjoint, o.adjoint);
    flags = std::max(flags, o.flags);
    dimension = std::max(dimension, o.dimension);
  }
};

// One operator of each field pushed through every extension and through the
// H+ restriction of a commuting quaternionic operator.
LedgerResidual functor_ledger_trial(Rng& rng, std::size_t n, Kind kind) {
  LedgerResidual out;
  const Frame f = random_frame(rng);

  const RealMatrix r = random_real_of_kind(rng, n, kind);
  const ComplexMatrix rc = extend_scalars(r);
  const QMatrix rh = extend_scalars_to_quaternion(r);
  const double rn = operator_norm(r);
  const double scale_r = std::max(1.0, rn);
  out.norm = std::max({std::abs(operator_norm(rc) - rn), std::abs(operator_norm(rh, f) - rn)}) /
             scale_r;
  out.adjoint = std::max(cnorm(extend_scalars(RealMatrix(r.transpose())) - rc.adjoint()),
                         distance(extend_scalars_to_quaternion(r.transpose()), adjoint(rh))) /
                scale_r;
  const OperatorFlags fr = classify_operator(r);
  out.flags = std::max(flag_mismatch(fr, classify_operator(rc)),
                       flag_mismatch(fr, classify_operator(rh)));
  out.dimension = std::max(out.dimension, rc.rows() == r.rows() ? 0.0 : 1.0);
  out.dimension = std::max(out.dimension, rh.size() == n ? 0.0 : 1.0);

  const ComplexMatrix c = random_complex_of_kind(rng, n, kind);
  const QMatrix ch = extend_scalars(c, f);
  const double cn = operator_norm(c);
  const double scale_c = std::max(1.0, cn);
  out.norm = std::max(out.norm, std::abs(operator_norm(ch, f) - cn) / scale_c);
  out.adjoint = std::max(
      out.adjoint, distance(extend_scalars(ComplexMatrix(c.adjoint()), f), adjoint(ch)) / scale_c);
  out.flags = std::max(out.flags, flag_mismatch(classify_operator(c), classify_operator(ch)));

  // Quaternionic operator commuting with a planted J, restricted to H+.
  const PlantedJ p = planted_j(rng, n);
  const QMatrix t = p.W * extend_scalars(random_complex_of_kind(rng, n, kind), p.frame) *
                    adjoint(p.W);
  const SplitSpace s = split_plus_minus(p.J, p.frame);
  const ComplexMatrix tc = restrict_to_plus(t, s);
  const double tn = operator_norm(t);
  const double scale_t = std::max(1.0, tn);
  out.norm = std::max(out.norm, std::abs(operator_norm(tc) - tn) / scale_t);
  out.adjoint = std::max(out.adjoint, cnorm(restrict_to_plus(adjoint(t), s) - tc.adjoint()) / scale_t);
  out.adjoint = std::max(out.adjoint, distance(adjoint(extend_from_plus(tc, s)), adjoint(t)) / scale_t);
  out.flags = std::max(out.flags, flag_mismatch(classify_operator(t), classify_operator(tc)));
  out.dimension = std::max(out.dimension, s.dimension() == n ? 0.0 : 1.0);
  return out;
}

// ---------------------------------------------------------------- splitting

struct SplitResidual {
  double dimension = 0.0;
  double plus = 0.0;
  double minus = 0.0;
  double roundtrip = 0.0;
};

SplitResidual split_trial(Rng& rng, std::size_t n) {
  SplitResidual out;
  const QMatrix J = random_anti_unit(rng, n);
  const ImaginaryUnit i = random_imaginary_unit(rng);
  const SplitSpace s = split_plus_minus(J, i);
  const Quaternion iq = s.i().quaternion();
  const Quaternion jq = s.frame.j().quaternion();
  out.dimension = s.dimension() == n ? 0.0 : 1.0;
  for (const auto& b : s.plus_basis) {
    out.plus = std::max(out.plus, norm(J * b - b * iq));
    const QVector w = b * jq;
    out.minus = std::max(out.minus, norm(J * w + w * iq));
  }
  const ComplexMatrix m = random_complex_matrix(rng, n);
  out.roundtrip = cnorm(restrict_to_plus(extend_from_plus(m, s), s) - m) / std::max(1.0, cnorm(m));
  return out;
}

// ---------------------------------------------------------------- internal constructions

struct InternalResidual {
  double dimension = 0.0;
  double inner = 0.0;
  double roundtrip = 0.0;
  double operators = 0.0;
};

// Real dimension 2m with J = O J0 O^T and one commuting operator.
InternalResidual internal_complex_trial(Rng& rng, std::size_t m) {
  InternalResidual out;
  const RealMatrix o = random_orthogonal(rng, 2 * m);
  const auto mi = static_cast<Eigen::Index>(m);
  const RealMatrix J = o * realify(Complex(0.0, 1.0) * ComplexMatrix::Identity(mi, mi)) *
                       o.transpose();
  const RealMatrix t = o * realify(random_complex_matrix(rng, m)) * o.transpose();
  const auto ic = internal_complexify({t}, J);
  out.dimension = ic.complex_dimension == m ? 0.0 : 1.0;
  for (int s = 0; s < 4; ++s) {
    const RealVector v = random_real_matrix(rng, 2 * m, 1).col(0);
    const RealVector u = random_real_matrix(rng, 2 * m, 1).col(0);
    const double scale = 1.0 + v.norm() * u.norm();
    const Complex defining(v.dot(u), -v.dot(J * u));
    const Complex via_coordinates = ic.coordinates(v).dot(ic.coordinates(u));
    out.inner = std::max({out.inner, std::abs(via_coordinates - defining) / scale,
                          std::abs(ic.inner(v, u) - defining) / scale});
    out.roundtrip = std::max(out.roundtrip, (ic.vector(ic.coordinates(v)) - v).norm() /
                                                std::max(1.0, v.norm()));
    const ComplexVector lhs = ic.coordinates(t * v);
    const ComplexVector rhs = ic.operators[0] * ic.coordinates(v);
    out.operators = std::max(out.operators, (lhs - rhs).norm() / (1.0 + t.norm() * v.norm()));
  }
  return out;
}

// Real dimension 4m with I, J the right multiplications by i, j, rotated.
InternalResidual internal_quaternion_trial(Rng& rng, std::size_t m) {
  InternalResidual out;
  const Frame f = random_frame(rng);
  const RealMatrix o = random_orthogonal(rng, 4 * m);
  const RealMatrix I = o * real_right(m, kE1) * o.transpose();
  const RealMatrix J = o * real_right(m, kE2) * o.transpose();
  const RealMatrix t = o * real_left(random_qmatrix(rng, m)) * o.transpose();
  const auto iq = internal_quaternionify({t}, I, J, f);
  out.dimension = iq.quaternionic_dimension == m ? 0.0 : 1.0;
  for (int s = 0; s < 4; ++s) {
    const RealVector v = random_real_matrix(rng, 4 * m, 1).col(0);
    const RealVector u = random_real_matrix(rng, 4 * m, 1).col(0);
    const double scale = 1.0 + v.norm() * u.norm();
    const Quaternion defining =
        f.compose({v.dot(u), -v.dot(I * u), -v.dot(J * u), -v.dot(J * (I * u))});
    const Quaternion via_coordinates = inner(iq.coordinates(v), iq.coordinates(u));
    out.inner = std::max({out.inner, abs(via_coordinates - defining) / scale,
                          abs(iq.inner(v, u) - defining) / scale});
    out.roundtrip = std::max(out.roundtrip, (iq.vector(iq.coordinates(v)) - v).norm() /
                                                std::max(1.0, v.norm()));
    const Quaternion a = random_quaternion(rng);
    const QVector scaled = iq.coordinates(iq.right_multiply(v, a));
    out.roundtrip = std::max(out.roundtrip, frobenius_norm(scaled - iq.coordinates(v) * a) /
                                                (1.0 + v.norm() * abs(a)));
    const QVector lhs = iq.coordinates(t * v);
    const QVector rhs = iq.operators[0] * iq.coordinates(v);
    out.operators =
        std::max(out.operators, frobenius_norm(lhs - rhs) / (1.0 + t.norm() * v.norm()));
  }
  return out;
}

// ---------------------------------------------------------------- classification

struct PlantResidual {
  double kind = 0.0;     // 1 when the commutant dimension or kind is wrong
  double j_match = 0.0;  // min |J -+ J_planted|
  double relations = 0.0;
  double commutation = 0.0;
};

PlantResidual plant_and_recover(Rng& rng, std::size_t n, AlgebraKind branch) {
  PlantResidual out;
  const Frame f = random_frame(rng);
  PlantedAlgebra p;
  std::size_t expected = 1;
  switch (branch) {
    case AlgebraKind::ProperQuaternionic: p = planted_full_algebra(rng, n); break;
    case AlgebraKind::ComplexInduced:
      p = planted_complex_induced(rng, n, f);
      expected = 2;
      break;
    case AlgebraKind::RealInduced:
      p = planted_real_induced(rng, n, f);
      expected = 4;
      break;
  }
  const StarAlgebra a(n, p.generators);
  const Classification c = classify_irreducible(a);
  if (c.kind != branch || c.commutant_dim != expected) out.kind = 1.0;

  auto commutes = [&](const QMatrix& x) {
    double worst = 0.0;
    for (const auto& g : a.generators())
      worst = std::max(worst, frobenius_norm(commutator(x, g)) / std::max(1.0, frobenius_norm(g)));
    return worst;
  };
  auto structure = [&](const QMatrix& x) {
    return std::max(frobenius_norm(x + adjoint(x)),
                    frobenius_norm(x * x + QMatrix::identity(n)));
  };
  if (branch == AlgebraKind::ComplexInduced) {
    if (!c.J || !p.J) return {1.0, kNaN, kNaN, kNaN};
    out.j_match = std::min(distance(*c.J, *p.J), distance(*c.J, -*p.J));
    out.relations = structure(*c.J);
    out.commutation = commutes(*c.J);
  }
  if (branch == AlgebraKind::RealInduced) {
    if (!c.I || !c.J || !c.K) return {1.0, kNaN, kNaN, kNaN};
    out.relations = std::max({structure(*c.I), structure(*c.J), structure(*c.K),
                              frobenius_norm(anticommutator(*c.I, *c.J)),
                              frobenius_norm(anticommutator(*c.I, *c.K)),
                              frobenius_norm(anticommutator(*c.J, *c.K))});
    out.commutation = std::max({commutes(*c.I), commutes(*c.J), commutes(*c.K)});
  }
  return out;
}

double mutual_containment(const OperatorSpan& a, const OperatorSpan& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  return std::max(a.containment_residual(b), b.containment_residual(a));
}

double bicommutant_trial(Rng& rng, std::size_t n, AlgebraKind branch) {
  const Frame f = random_frame(rng);
  PlantedAlgebra p;
  switch (branch) {
    case AlgebraKind::ProperQuaternionic: p = planted_full_algebra(rng, n); break;
    case AlgebraKind::ComplexInduced: p = planted_complex_induced(rng, n, f); break;
    case AlgebraKind::RealInduced: p = planted_real_induced(rng, n, f); break;
  }
  const StarAlgebra a(n, p.generators);
  return mutual_containment(bicommutant(a), generated_algebra(a));
}

// ---------------------------------------------------------------- reduction

double reduction_trial(Rng& rng, std::size_t n, double tolerance, std::string* failed) {
  const Frame f = random_frame(rng);
  const PlantedAlgebra p = planted_complex_induced(rng, n, f);
  const StarAlgebra a(n, p.generators);
  const QMatrix h = p.W * extend_scalars(random_antihermitian(rng, n), f) * adjoint(p.W);
  const Hamiltonian ham(h, f);
  std::vector<QMatrix> evolution;
  for (double t : {0.3, 1.7}) evolution.push_back(propagator(ham, t));
  const ReducedSystem r = reduce_system(a, evolution, f.i(), tolerance);
  double worst = 0.0;
  for (const auto& c : r.certificates) {
    if (!c.pass() && failed && failed->empty()) *failed = c.name;
    // The rank certificate compares integers; its residual is 0 or >= 1.
    if (c.name == "projection_rank") {
      if (!c.pass()) worst = std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, c.residual);
  }
  return worst;
}

// ---------------------------------------------------------------- dynamics

QVector random_plus_vector(Rng& rng, const SplitSpace& s) {
  QVector v(s.J.size());
  for (const auto& b : s.plus_basis)
    v += b * s.frame.embed(Complex(random_normal(rng), random_normal(rng)));
  return v * (1.0 / norm(v));
}

struct AdlerResidual {
  double pair = 0.0;         // |pC| + |pS - 1| + |pH - 1| for (v, v j)
  double symplectic = 0.0;   // max pS on H+
  double equivalence = 0.0;  // max |pH - pC| on H+
};

AdlerResidual adler_trial(Rng& rng, std::size_t n, std::size_t pairs) {
  AdlerResidual out;
  const PlantedJ p = planted_j(rng, n);
  const QVector v = random_unit_qvector(rng, n);
  const auto tp = transition_probs(v, v * p.frame.j().quaternion(), p.frame);
  out.pair = std::abs(tp.complex_part) + std::abs(tp.symplectic_part - 1.0) +
             std::abs(tp.quaternionic - 1.0);
  const SplitSpace s = split_plus_minus(p.J, p.frame);
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto q = transition_probs(random_plus_vector(rng, s), random_plus_vector(rng, s), s.frame);
    out.symplectic = std::max(out.symplectic, q.symplectic_part);
    out.equivalence = std::max(out.equivalence, std::abs(q.quaternionic - q.complex_part));
  }
  return out;
}

struct PolarResidual {
  double product = 0.0;     // A - J M
  double anti = 0.0;        // J* + J
  double square = 0.0;      // J^2 + I
  double unitary = 0.0;     // J* J - I
  double commute = 0.0;     // [J, M]
  double positivity = 0.0;  // |M - M*| + max(0, -lambda_min(M))
};

PolarResidual polar_trial(Rng& rng, std::size_t n, bool with_kernel) {
  QMatrix a = random_antiselfadjoint(rng, n);
  if (with_kernel) {
    std::vector<Quaternion> d;
    for (std::size_t m = 0; m < n; ++m) {
      const Quaternion q = random_quaternion(rng);
      d.push_back(m + 1 == n ? Quaternion{} : Quaternion{0.0, q.x, q.y, q.z});
    }
    const QMatrix w = random_unitary(rng, n);
    a = w * QMatrix::diagonal(d) * adjoint(w);
  }
  const PolarFactors pf = polar_antiselfadjoint(a);
  const QMatrix id = QMatrix::identity(n);
  PolarResidual out;
  out.product = distance(a, pf.J * pf.M);
  out.anti = frobenius_norm(pf.J + adjoint(pf.J));
  out.square = frobenius_norm(pf.J * pf.J + id);
  out.unitary = frobenius_norm(adjoint(pf.J) * pf.J - id);
  out.commute = frobenius_norm(commutator(pf.J, pf.M));
  const auto spectrum = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(
                            complex_embed(0.5 * (pf.M + adjoint(pf.M)), Frame::standard()))
                            .eigenvalues();
  out.positivity = frobenius_norm(pf.M - adjoint(pf.M)) + std::max(0.0, -spectrum.minCoeff());
  return out;
}

double polar_worst(const PolarResidual& r) {
  return std::max({r.product, r.anti, r.square, r.unitary, r.commute, r.positivity});
}

struct CounitaryResidual {
  double identities = 0.0;
  double min_distance = std::numeric_limits<double>::infinity();
};

CounitaryResidual counitary_trial(Rng& rng, std::size_t n, std::size_t unitaries) {
  std::vector<QMatrix> us;
  for (std::size_t k = 0; k < unitaries; ++k) us.push_back(random_unitary(rng, n));
  const auto report = counitary_demo(random_unit_quaternion(rng), us, rng(), 8);
  CounitaryResidual out;
  out.identities = report.max_counitary_residual();
  for (const auto& p : report.pairs) out.min_distance = std::min(out.min_distance, p.distance);
  return out;
}

// ---------------------------------------------------------------- registry

template <class F>
double worst_of(std::size_t trials, F&& f) {
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double r = f(t);
    if (std::isnan(r)) return r;
    worst = std::max(worst, r);
  }
  return worst;
}

std::size_t heavy(std::size_t trials) { return std::min<std::size_t>(trials, 3 + trials / 10); }

std::vector<Property> build_registry() {
  std::vector<Property> reg;
  auto add = [&](std::string name, double tolerance,
                 std::function<double(Rng&, std::size_t, std::size_t)> f) {
    reg.push_back({std::move(name), tolerance, std::move(f)});
  };

  // quat_core
  add("quat.norm_multiplicative", 1e-12, [](Rng& rng, std::size_t, std::size_t trials) {
    return worst_of(trials * 50, [&](std::size_t) {
      const Quaternion p = random_quaternion(rng);
      const Quaternion q = random_quaternion(rng);
      return std::abs(abs(p * q) - abs(p) * abs(q)) / (abs(p) * abs(q));
    });
  });
  add("quat.symplectic_roundtrip", 1e-14, [](Rng& rng, std::size_t, std::size_t trials) {
    return worst_of(trials * 50, [&](std::size_t) {
      const Frame f = random_frame(rng);
      const Quaternion q = random_quaternion(rng);
      return abs(symplectic_join(symplectic_split(q, f), f) - q) / std::max(1.0, abs(q));
    });
  });
  add("quat.sphere_similarity", 1e-12, [](Rng& rng, std::size_t, std::size_t trials) {
    return worst_of(trials * 10, [&](std::size_t) {
      const Quaternion q = random_quaternion(rng);
      const Quaternion h = random_unit_quaternion(rng);
      const ImaginaryUnit i = random_imaginary_unit(rng);
      return abs(sphere_representative(h * q * inverse(h), i) - sphere_representative(q, i)) /
             std::max(1.0, abs(q));
    });
  });
  add("quat.frame_complete_anticommutes", 1e-14, [](Rng& rng, std::size_t, std::size_t trials) {
    return worst_of(trials * 10, [&](std::size_t) {
      const ImaginaryUnit i = random_imaginary_unit(rng);
      const Frame f = frame_complete(i);
      const Quaternion a = i.quaternion();
      const Quaternion b = f.j().quaternion();
      return abs(a * b + b * a);
    });
  });

  // qlinalg
  add("qlinalg.right_linearity", 1e-11, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const QMatrix t = random_qmatrix(rng, n);
      const QVector v = random_qvector(rng, n);
      const Quaternion a = random_quaternion(rng);
      return frobenius_norm(t * (v * a) - (t * v) * a) /
             (1.0 + frobenius_norm(t) * norm(v) * abs(a));
    });
  });
  add("qlinalg.embedding_homomorphism", 1e-11, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const Frame f = random_frame(rng);
      const QMatrix s = random_qmatrix(rng, n);
      const QMatrix t = random_qmatrix(rng, n);
      const double a = random_normal(rng);
      const double b = random_normal(rng);
      const ComplexMatrix cs = complex_embed(s, f);
      const ComplexMatrix ct = complex_embed(t, f);
      const double scale = 1.0 + frobenius_norm(s) * frobenius_norm(t);
      const auto two_n = static_cast<Eigen::Index>(2 * n);
      return std::max({cnorm(complex_embed(s * t, f) - cs * ct),
                       cnorm(complex_embed(adjoint(s), f) - cs.adjoint()),
                       cnorm(complex_embed(QMatrix::identity(n), f) -
                             ComplexMatrix::Identity(two_n, two_n)),
                       cnorm(complex_embed(a * s + b * t, f) - (a * cs + b * ct))}) /
             scale;
    });
  });
  add("qlinalg.embedding_roundtrip", 1e-12, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const Frame f = random_frame(rng);
      const QMatrix t = random_qmatrix(rng, n);
      const QVector v = random_qvector(rng, n);
      return std::max(distance(complex_unembed(complex_embed(t, f), f), t) /
                          std::max(1.0, frobenius_norm(t)),
                      norm(unembed_vector(embed_vector(v, f), f) - v) / std::max(1.0, norm(v)));
    });
  });
  add("qlinalg.selfadjoint_spectrum_oracle", 1e-9,
      [](Rng& rng, std::size_t n, std::size_t trials) {
        return worst_of(trials, [&](std::size_t) {
          const QMatrix t = random_selfadjoint(rng, n);
          const auto spheres = s_eigenspheres(t, random_imaginary_unit(rng));
          std::vector<double> got;
          double imag = 0.0;
          for (const auto& s : spheres) {
            imag = std::max(imag, abs(s.representative - Quaternion{s.representative.w}));
            for (std::size_t m = 0; m < s.multiplicity; ++m) got.push_back(s.representative.w);
          }
          if (got.size() != n) return std::numeric_limits<double>::infinity();
          std::sort(got.begin(), got.end());
          const RealVector oracle =
              Eigen::SelfAdjointEigenSolver<RealMatrix>(real_left(t)).eigenvalues();
          double worst = imag;
          for (std::size_t m = 0; m < n; ++m)
            for (int c = 0; c < 4; ++c)
              worst = std::max(worst,
                               std::abs(oracle(static_cast<Eigen::Index>(4 * m + c)) - got[m]));
          return worst / std::max(1.0, frobenius_norm(t));
        });
      });
  add("qlinalg.eigensphere_similarity", 1e-9, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      std::vector<Quaternion> d;
      for (std::size_t m = 0; m < n; ++m) d.push_back(random_quaternion(rng));
      const QMatrix w = random_unitary(rng, n);
      const ImaginaryUnit i = random_imaginary_unit(rng);
      const auto spheres = s_eigenspheres(w * QMatrix::diagonal(d) * adjoint(w), i);
      std::size_t total = 0;
      for (const auto& s : spheres) total += s.multiplicity;
      double worst = total == n ? 0.0 : std::numeric_limits<double>::infinity();
      for (const auto& q : d) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : spheres)
          best = std::min(best, abs(s.representative - sphere_representative(q, i)));
        worst = std::max(worst, best);
      }
      return worst;
    });
  });
  add("qlinalg.polar_postconditions", 1e-9, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t t) { return polar_worst(polar_trial(rng, n, t % 4 == 3)); });
  });

  // functors
  add("functors.dimension_ledger", 0.0, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(heavy(trials), [&](std::size_t t) {
      double r = functor_ledger_trial(rng, n, kind_of(t)).dimension;
      r = std::max(r, internal_complex_trial(rng, n).dimension);
      r = std::max(r, internal_quaternion_trial(rng, n).dimension);
      return r;
    });
  });
  add("functors.norm_ledger", 1e-9, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t t) { return functor_ledger_trial(rng, n, kind_of(t)).norm; });
  });
  add("functors.adjoint_ledger", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t t) { return functor_ledger_trial(rng, n, kind_of(t)).adjoint; });
  });
  add("functors.flag_ledger", 0.0, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t t) { return functor_ledger_trial(rng, n, kind_of(t)).flags; });
  });
  add("functors.composition", 0.0, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const RealMatrix r = random_real_matrix(rng, n, n);
      const Frame f = random_frame(rng);
      return distance(extend_scalars(extend_scalars(r), f), extend_scalars_to_quaternion(r));
    });
  });
  add("functors.restrict_extend", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) { return split_trial(rng, n).roundtrip; });
  });
  add("functors.extend_restrict", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const QMatrix J = random_anti_unit(rng, n);
      const SplitSpace s = split_plus_minus(J, random_imaginary_unit(rng));
      const QMatrix a = random_qmatrix(rng, n);
      const QMatrix t = 0.5 * (a - J * a * J);
      return distance(extend_from_plus(restrict_to_plus(t, s), s), t) /
             std::max(1.0, frobenius_norm(t));
    });
  });
  add("functors.split_plus_minus", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const auto r = split_trial(rng, n);
      return std::max({r.dimension, r.plus, r.minus});
    });
  });
  add("functors.internal_complexify", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const auto r = internal_complex_trial(rng, n);
      return std::max({r.dimension, r.inner, r.roundtrip, r.operators});
    });
  });
  add("functors.internal_quaternionify", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const auto r = internal_quaternion_trial(rng, n);
      return std::max({r.dimension, r.inner, r.roundtrip, r.operators});
    });
  });
  add("functors.left_multiplication", 1e-9, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const Frame f = random_frame(rng);
      const QMatrix w = random_unitary(rng, n);
      const QMatrix ws = adjoint(w);
      const QMatrix I = w * QMatrix::scalar(n, f.i().quaternion()) * ws;
      const QMatrix J = w * QMatrix::scalar(n, f.j().quaternion()) * ws;
      const LeftMultiplication left = real_subspace_and_left_mult(I, J, f);
      const Quaternion a = random_quaternion(rng);
      const Quaternion b = random_quaternion(rng);
      const QVector v = random_qvector(rng, n);
      return std::max({distance(left(a) * left(b), left(a * b)) / (1.0 + abs(a) * abs(b)),
                       distance(left(f.i().quaternion()), I), distance(left(f.j().quaternion()), J),
                       norm(left.apply(a, v) - left(a) * v) / (1.0 + abs(a) * norm(v))});
    });
  });

  // algebra
  add("algebra.commutant_idempotent", 1e-8, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(heavy(trials), [&](std::size_t t) {
      const Frame f = random_frame(rng);
      const PlantedAlgebra p = t % 2 == 0 ? planted_complex_induced(rng, n, f)
                                          : planted_real_induced(rng, n, f);
      const OperatorSpan c1 = commutant(StarAlgebra(n, p.generators));
      const OperatorSpan c2 = commutant_of(n, c1.basis());
      const OperatorSpan c3 = commutant_of(n, c2.basis());
      return mutual_containment(c1, c3);
    });
  });
  add("algebra.trichotomy", 0.0, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(heavy(trials), [&](std::size_t t) {
      const auto branch = static_cast<AlgebraKind>(t % 3);
      return plant_and_recover(rng, n, branch).kind;
    });
  });
  add("algebra.plant_recover", 1e-7, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(heavy(trials), [&](std::size_t t) {
      const auto r = plant_and_recover(
          rng, n, t % 2 == 0 ? AlgebraKind::ComplexInduced : AlgebraKind::RealInduced);
      return std::max({r.j_match, r.relations, r.commutation});
    });
  });
  add("algebra.anti_unit_structure", 1e-8, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      // a I + b J for a planted unit J.
      const QMatrix J = random_anti_unit(rng, n);
      const double a = random_normal(rng);
      const double b = random_normal(rng);
      const auto dec = extract_anti_unit(QMatrix::identity(n) * a + J * b);
      if (!dec.J) return std::numeric_limits<double>::infinity();
      const QMatrix& x = *dec.J;
      return std::max({frobenius_norm(x + adjoint(x)),
                       frobenius_norm(x * x + QMatrix::identity(n)),
                       std::min(distance(x, J), distance(x, -J))});
    });
  });
  add("algebra.bicommutant", 1e-8, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(heavy(trials), [&](std::size_t t) {
      return bicommutant_trial(rng, n, static_cast<AlgebraKind>(t % 3));
    });
  });
  add("algebra.irreducibility_witness", 1e-9, [](Rng& rng, std::size_t n, std::size_t trials) {
    // Direct sum of two planted algebras: reducible, and the witness is a
    // nontrivial projection commuting with the generators.
    return worst_of(heavy(trials), [&](std::size_t) {
      const std::size_t k = std::max<std::size_t>(1, n / 2);
      const std::size_t total = k + n;
      QMatrix g(total);
      const QMatrix a = random_qmatrix(rng, k);
      const QMatrix b = random_qmatrix(rng, n);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) g(r, c) = a(r, c);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g(k + r, k + c) = b(r, c);
      const QMatrix w = random_unitary(rng, total);
      const QMatrix gw = w * g * adjoint(w);
      const auto report = irreducibility(StarAlgebra(total, {gw}));
      if (report.irreducible || !report.witness) return std::numeric_limits<double>::infinity();
      const QMatrix& e = *report.witness;
      const double rank = static_cast<double>(quaternionic_rank(e, 1e-8));
      if (rank < 1.0 || rank > static_cast<double>(total - 1))
        return std::numeric_limits<double>::infinity();
      return std::max({distance(e * e, e), distance(e, adjoint(e)),
                       frobenius_norm(commutator(e, gw)) / std::max(1.0, frobenius_norm(gw))});
    });
  });
  add("algebra.state_additivity", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const StateFunctional mu(random_unit_qvector(rng, n));
      double total = 0.0;
      for (const auto& c : spectral_decomposition(random_selfadjoint(rng, n)))
        total += mu.probability(c.projection);
      double rank_one = 0.0;
      const QMatrix u = random_unitary(rng, n);
      for (std::size_t m = 0; m < n; ++m) rank_one += mu.probability(outer(u.column(m), u.column(m)));
      return std::max(std::abs(total - 1.0), std::abs(rank_one - 1.0));
    });
  });
  add("algebra.lueders_update", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const QVector v = random_unit_qvector(rng, n);
      const StateFunctional mu(v);
      const QMatrix u = random_unitary(rng, n);
      // F and E: coordinate projections in two unrelated bases.
      const QMatrix F = outer(u.column(0), u.column(0));
      const QMatrix w = random_unitary(rng, n);
      const QMatrix E = outer(w.column(0), w.column(0));
      const StateFunctional after = lueders_update(mu, F);
      const double expected = std::pow(norm(E * (F * v)), 2) / std::pow(norm(F * v), 2);
      return std::abs(after.probability(E) - expected);
    });
  });

  // dynamics
  add("dynamics.evolution_unitarity", 1e-9, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const Hamiltonian h(random_antiselfadjoint(rng, n), random_frame(rng));
      const QVector v = random_qvector(rng, n);
      const double t = random_uniform(rng, -10.0, 10.0);
      return std::abs(norm(evolve(h, v, t)) - norm(v)) / std::max(1.0, norm(v));
    });
  });
  add("dynamics.plus_invariance", 1e-8, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const PlantedJ p = planted_j(rng, n);
      const QMatrix h = p.W * extend_scalars(random_antihermitian(rng, n), p.frame) * adjoint(p.W);
      const SplitSpace s = split_plus_minus(p.J, p.frame);
      const QVector v = random_plus_vector(rng, s);
      const QVector ft = evolve(Hamiltonian(h, p.frame), v, random_uniform(rng, -10.0, 10.0));
      return norm(p.J * ft - ft * p.frame.i().quaternion());
    });
  });
  add("dynamics.plus_equivalence", 1e-12, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const auto r = adler_trial(rng, n, 4);
      return std::max(r.symplectic, r.equivalence);
    });
  });
  add("dynamics.adler_pair", 1e-12, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) { return adler_trial(rng, n, 0).pair; });
  });
  add("dynamics.block_consistency", 1e-8, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(trials, [&](std::size_t) {
      const Frame f = random_frame(rng);
      const QMatrix h = random_antiselfadjoint(rng, n);
      const LeftMultiplication left = standard_left_multiplication(n, f);
      const QVector v = random_qvector(rng, n);
      const double t = random_uniform(rng, -2.0, 2.0);
      const ComplexMatrix block = hamiltonian_block(disassemble_hamiltonian(h, f), f);
      const QVector via_block =
          reconstruct(evolve_components(block, symplectic_components(v, f, left), t), left);
      return norm(via_block - evolve(Hamiltonian(h, f), v, t)) / std::max(1.0, norm(v));
    });
  });
  add("dynamics.counitary_identities", 1e-10, [](Rng& rng, std::size_t n, std::size_t trials) {
    return worst_of(heavy(trials), [&](std::size_t) { return counitary_trial(rng, n, 2).identities; });
  });
  return reg;
}

}  // namespace

const std::vector<Property>& property_registry() {
  static const std::vector<Property> reg = build_registry();
  return reg;
}

Report run_verify(const VerifyOptions& options) {
  const auto& reg = property_registry();
  struct Task {
    std::size_t dim;
    std::size_t property;
  };
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < options.dims.size(); ++d)
    for (std::size_t p = 0; p < reg.size(); ++p) tasks.push_back({options.dims[d], p});

  std::vector<double> residuals(tasks.size(), 0.0);
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& task = tasks[k];
      Rng rng(derive_seed(options.seed, task.property, task.dim));
      try {
        residuals[k] = reg[task.property].run(rng, task.dim, options.trials);
      } catch (const std::exception& e) {
        residuals[k] = kNaN;
        errors[k] = e.what();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report report;
  report.command = "verify";
  io::json errs = io::json::array();
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const auto& prop = reg[tasks[k].property];
    std::string name = prop.name + "[n=" + std::to_string(tasks[k].dim) + "]";
    if (!errors[k].empty()) errs.push_back({{"check", name}, {"error", errors[k]}});
    report.add(std::move(name), residuals[k], tol(prop.tolerance));
  }
  report.artifacts = {{"seed", options.seed},
                      {"dims", options.dims},
                      {"trials", options.trials},
                      {"properties", reg.size()},
                      {"tolerance_scale", tolerance_scale()}};
  if (!errs.empty()) report.artifacts["errors"] = std::move(errs);
  return report;
}

// ---------------------------------------------------------------- acceptance

bool CriterionResult::pass() const {
  return std::isfinite(residual) && residual <= tolerance && seconds <= time_limit;
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

CriterionResult functor_ledger_criterion(std::uint64_t seed) {
  CriterionResult r{1, "functor ledger", 0.0, 1e-9, 0.0, 10.0, ""};
  LedgerResidual all;
  for (std::size_t n : {2, 3, 4}) {
    Rng rng(derive_seed(seed, 1, n));
    for (std::size_t t = 0; t < 200; ++t) all.merge(functor_ledger_trial(rng, n, kind_of(t)));
  }
  r.residual = std::max({all.norm, all.adjoint, all.flags, all.dimension});
  r.detail = "norm " + fmt(all.norm) + ", adjoint " + fmt(all.adjoint) + ", flag mismatches " +
             fmt(all.flags);
  return r;
}

CriterionResult splitting_criterion(std::uint64_t seed) {
  CriterionResult r{2, "H+/H- splitting", 0.0, 1e-10, 0.0, 5.0, ""};
  SplitResidual all;
  for (std::size_t n : {1, 2, 3, 4}) {
    Rng rng(derive_seed(seed, 2, n));
    for (int t = 0; t < 100; ++t) {
      const auto s = split_trial(rng, n);
      all.dimension = std::max(all.dimension, s.dimension);
      all.plus = std::max(all.plus, s.plus);
      all.minus = std::max(all.minus, s.minus);
      all.roundtrip = std::max(all.roundtrip, s.roundtrip);
    }
  }
  r.residual = std::max({all.dimension, all.plus, all.minus, all.roundtrip});
  r.detail = "H- landing " + fmt(all.minus) + ", restrict*extend " + fmt(all.roundtrip) +
             (all.dimension > 0 ? ", dimension mismatch" : "");
  return r;
}

CriterionResult internal_criterion(std::uint64_t seed) {
  CriterionResult r{3, "internal complexification/quaternionification", 0.0, 1e-10, 0.0, 5.0, ""};
  InternalResidual all;
  auto merge = [&](const InternalResidual& x) {
    all.dimension = std::max(all.dimension, x.dimension);
    all.inner = std::max(all.inner, x.inner);
    all.roundtrip = std::max(all.roundtrip, x.roundtrip);
    all.operators = std::max(all.operators, x.operators);
  };
  for (std::size_t real_dim : {4, 8}) {
    Rng rng(derive_seed(seed, 3, real_dim));
    for (int t = 0; t < 50; ++t) {
      merge(internal_complex_trial(rng, real_dim / 2));
      merge(internal_quaternion_trial(rng, real_dim / 4));
    }
  }
  r.residual = std::max({all.dimension, all.inner, all.roundtrip, all.operators});
  r.detail = "inner products " + fmt(all.inner) + ", coordinates " + fmt(all.roundtrip) +
             (all.dimension > 0 ? ", dimension mismatch" : "");
  return r;
}

CriterionResult trichotomy_criterion(std::uint64_t seed) {
  CriterionResult r{4, "commutant trichotomy", 0.0, 1e-7, 0.0, 60.0, ""};
  PlantResidual all;
  for (std::size_t n : {2, 3, 4})
    for (int b = 0; b < 3; ++b) {
      Rng rng(derive_seed(seed, 4, n, static_cast<std::uint64_t>(b)));
      for (int t = 0; t < 50; ++t) {
        const auto x = plant_and_recover(rng, n, static_cast<AlgebraKind>(b));
        all.kind = std::max(all.kind, x.kind);
        all.j_match = std::max(all.j_match, x.j_match);
        all.relations = std::max(all.relations, x.relations);
        all.commutation = std::max(all.commutation, x.commutation);
      }
    }
  // A wrong commutant dimension is a hard failure regardless of residuals.
  r.residual = all.kind > 0 ? std::numeric_limits<double>::infinity()
                            : std::max({all.j_match, all.relations, all.commutation});
  r.detail = "J vs planted " + fmt(all.j_match) + ", (I,J,K) relations " + fmt(all.relations) +
             (all.kind > 0 ? ", wrong commutant dimension" : "");
  return r;
}

CriterionResult bicommutant_criterion(std::uint64_t seed) {
  CriterionResult r{5, "bicommutant equals generated algebra", 0.0, 1e-8, 0.0, 20.0, ""};
  for (std::size_t n : {2, 3, 4})
    for (int b = 0; b < 3; ++b) {
      Rng rng(derive_seed(seed, 5, n, static_cast<std::uint64_t>(b)));
      for (int t = 0; t < 3; ++t)
        r.residual = std::max(r.residual, bicommutant_trial(rng, n, static_cast<AlgebraKind>(b)));
    }
  r.detail = "mutual membership " + fmt(r.residual);
  return r;
}

CriterionResult reduction_criterion(std::uint64_t seed) {
  CriterionResult r{6, "reduction certificates", 0.0, 1e-8, 0.0, 10.0, ""};
  std::string failed;
  for (std::size_t n : {2, 4}) {
    Rng rng(derive_seed(seed, 6, n));
    for (int t = 0; t < 10; ++t) r.residual = std::max(r.residual, reduction_trial(rng, n, 1e-8, &failed));
  }
  r.detail = "worst certificate " + fmt(r.residual) + (failed.empty() ? "" : ", failed " + failed);
  return r;
}

CriterionResult adler_criterion(std::uint64_t seed) {
  CriterionResult r{7, "Adler discrepancy and H+ resolution", 0.0, 1e-12, 0.0, 2.0, ""};
  AdlerResidual all;
  std::size_t pairs = 0;
  for (std::size_t n : {2, 3, 4, 4, 2}) {
    Rng rng(derive_seed(seed, 7, n, pairs));
    const auto x = adler_trial(rng, n, 200);
    pairs += 200;
    all.pair = std::max(all.pair, x.pair);
    all.symplectic = std::max(all.symplectic, x.symplectic);
    all.equivalence = std::max(all.equivalence, x.equivalence);
  }
  r.residual = std::max({all.pair, all.symplectic, all.equivalence});
  r.detail = "(v, vj) " + fmt(all.pair) + ", max pS on H+ " + fmt(all.symplectic) + " over " +
             std::to_string(pairs) + " pairs";
  return r;
}

CriterionResult polar_criterion(std::uint64_t seed) {
  CriterionResult r{8, "polar decomposition", 0.0, 1e-9, 0.0, 5.0, ""};
  for (std::size_t n = 1; n <= 8; ++n) {
    Rng rng(derive_seed(seed, 8, n));
    for (int t = 0; t < 100; ++t)
      r.residual = std::max(r.residual, polar_worst(polar_trial(rng, n, false)));
    // Singular inputs exercise the kernel completion.
    for (int t = 0; t < 20; ++t)
      r.residual = std::max(r.residual, polar_worst(polar_trial(rng, n, true)));
  }
  r.detail = "worst identity " + fmt(r.residual);
  return r;
}

CriterionResult counitary_criterion(std::uint64_t seed) {
  CriterionResult r{9, "co-unitary non-uniqueness", 0.0, 1e-10, 0.0, 2.0, ""};
  double identities = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t n : {2, 3, 4}) {
    Rng rng(derive_seed(seed, 9, n));
    for (int t = 0; t < 5; ++t) {
      const auto x = counitary_trial(rng, n, 3);
      identities = std::max(identities, x.identities);
      gap = std::min(gap, x.min_distance);
    }
  }
  // Both parts must hold: identities to 1e-10 and separation >= 0.1.
  r.residual = gap >= 0.1 ? identities : std::numeric_limits<double>::infinity();
  r.detail = "co-unitary identities " + fmt(identities) + ", min left-action distance " + fmt(gap);
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > 9) throw Error(ErrorKind::Precondition, "no criterion " + std::to_string(id));
  const Timer timer;
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = functor_ledger_criterion(seed); break;
      case 2: r = splitting_criterion(seed); break;
      case 3: r = internal_criterion(seed); break;
      case 4: r = trichotomy_criterion(seed); break;
      case 5: r = bicommutant_criterion(seed); break;
      case 6: r = reduction_criterion(seed); break;
      case 7: r = adler_criterion(seed); break;
      case 8: r = polar_criterion(seed); break;
      case 9: r = counitary_criterion(seed); break;
    }
  } catch (const std::exception& e) {
    r.id = id;
    r.residual = kNaN;
    r.time_limit = 0.0;
    r.detail = e.what();
  }
  r.seconds = timer.seconds();
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace quatkit
