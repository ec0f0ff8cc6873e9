#include "quatkit/functors.hpp"

#include <algorithm>
#include <cmath>

namespace quatkit {

namespace {

void require_unitary_antiselfadjoint(const QMatrix& j, double tolerance, const char* name) {
  const std::size_t n = j.size();
  const double scale = std::max(1.0, frobenius_norm(j));
  const double anti = frobenius_norm(j + adjoint(j));
  const double unit = frobenius_norm(adjoint(j) * j - QMatrix::identity(n));
  if (anti > tolerance * scale) {
    throw Error(ErrorKind::Structure, std::string(name) + " must be anti-selfadjoint", anti);
  }
  if (unit > tolerance * scale * scale) {
    throw Error(ErrorKind::Structure, std::string(name) + " must be unitary", unit);
  }
}

void require_unitary_antiselfadjoint(const RealMatrix& j, double tolerance, const char* name) {
  const double scale = std::max(1.0, j.norm());
  const double anti = (j + j.transpose()).norm();
  const double unit = (j.transpose() * j - RealMatrix::Identity(j.rows(), j.cols())).norm();
  if (anti > tolerance * scale) {
    throw Error(ErrorKind::Structure, std::string(name) + " must be anti-selfadjoint", anti);
  }
  if (unit > tolerance * scale * scale) {
    throw Error(ErrorKind::Structure, std::string(name) + " must be unitary", unit);
  }
}

void require_commutes(const RealMatrix& t, const RealMatrix& j, double tolerance) {
  const double residual = (t * j - j * t).norm();
  if (residual > tolerance * std::max(1.0, t.norm())) {
    throw Error(ErrorKind::DoesNotCommute, "operator does not commute with the structure",
                residual);
  }
}

void require_square(const RealMatrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::Dimension, std::string(name) + " must be square");
  }
}

}  // namespace

// ---------------------------------------------------------------- external

ComplexMatrix extend_scalars(const RealMatrix& t) { return t.cast<Complex>(); }

QMatrix extend_scalars_to_quaternion(const RealMatrix& t) { return QMatrix::from_real(t); }

QMatrix extend_scalars(const ComplexMatrix& t, const Frame& f) {
  if (t.rows() != t.cols()) throw Error(ErrorKind::Dimension, "extend_scalars needs a square matrix");
  QMatrix out(static_cast<std::size_t>(t.rows()));
  for (std::size_t r = 0; r < out.size(); ++r)
    for (std::size_t c = 0; c < out.size(); ++c)
      out(r, c) = f.embed(t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
  return out;
}

// ---------------------------------------------------------------- H+ / H-

SplitSpace split_plus_minus(const QMatrix& J, const ImaginaryUnit& i, double tolerance) {
  return split_plus_minus(J, frame_complete(i), tolerance);
}

SplitSpace split_plus_minus(const QMatrix& J, const Frame& f, double tolerance) {
  require_unitary_antiselfadjoint(J, tolerance, "J");
  const std::size_t n = J.size();
  const Quaternion i = f.i().quaternion();
  const Quaternion j = f.j().quaternion();

  // P+ v = (v - (J v) i) / 2, applied to a C_i-spanning set of H.
  std::vector<QVector> candidates;
  candidates.reserve(2 * n);
  for (std::size_t m = 0; m < n; ++m) {
    for (const Quaternion& u : {kOne, j}) {
      const QVector v = QVector::unit(n, m) * u;
      candidates.push_back((v - (J * v) * i) * 0.5);
    }
  }
  auto basis = orthonormalize(std::move(candidates), 1e-6, n);
  if (basis.size() != n) {
    throw Error(ErrorKind::Structure, "H+ has complex dimension " +
                                          std::to_string(basis.size()) + ", expected " +
                                          std::to_string(n));
  }
  return SplitSpace{J, f, std::move(basis)};
}

ComplexComponents components(const QVector& v, const SplitSpace& s) {
  const auto n = static_cast<Eigen::Index>(s.dimension());
  ComplexComponents out{ComplexVector(n), ComplexVector(n)};
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto split = symplectic_split(inner(s.plus_basis[static_cast<std::size_t>(m)], v), s.frame);
    out.v1(m) = split.z1;
    out.v2(m) = split.z2;
  }
  return out;
}

QVector from_components(const ComplexComponents& c, const SplitSpace& s) {
  const Quaternion j = s.frame.j().quaternion();
  QVector v(s.J.size());
  for (std::size_t m = 0; m < s.dimension(); ++m) {
    const auto idx = static_cast<Eigen::Index>(m);
    v += s.plus_basis[m] * (s.frame.embed(c.v1(idx)) + s.frame.embed(c.v2(idx)) * j);
  }
  return v;
}

ComplexMatrix restrict_to_plus(const QMatrix& t, const SplitSpace& s, double tolerance) {
  const double residual = frobenius_norm(commutator(t, s.J));
  if (residual > tolerance * std::max(frobenius_norm(t), 1e-300)) {
    throw Error(ErrorKind::DoesNotCommute, "operator does not leave H+ invariant", residual);
  }
  const std::size_t n = s.dimension();
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < n; ++c) {
    const QVector image = t * s.plus_basis[c];
    for (std::size_t r = 0; r < n; ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          s.frame.project(inner(s.plus_basis[r], image));
  }
  return m;
}

QMatrix extend_from_plus(const ComplexMatrix& m, const SplitSpace& s) {
  if (static_cast<std::size_t>(m.rows()) != s.dimension() || m.rows() != m.cols()) {
    throw Error(ErrorKind::Dimension, "extend_from_plus: matrix size does not match H+");
  }
  const QMatrix b = s.basis_matrix();
  return b * extend_scalars(m, s.frame) * adjoint(b);
}

// ---------------------------------------------------------------- internal C

Complex InternalComplexification::inner(const RealVector& v, const RealVector& u) const {
  return {v.dot(u), -v.dot(J * u)};
}

ComplexVector InternalComplexification::coordinates(const RealVector& v) const {
  ComplexVector c(basis.cols());
  const RealVector jv = J * v;
  for (Eigen::Index m = 0; m < basis.cols(); ++m)
    c(m) = Complex(basis.col(m).dot(v), -basis.col(m).dot(jv));
  return c;
}

RealVector InternalComplexification::vector(const ComplexVector& c) const {
  RealVector v = RealVector::Zero(basis.rows());
  for (Eigen::Index m = 0; m < basis.cols(); ++m)
    v += c(m).real() * basis.col(m) + c(m).imag() * (J * basis.col(m));
  return v;
}

namespace {

// Greedy real Gram-Schmidt over the standard basis, adding each accepted
// vector together with its images under `orbit` (which must map it to an
// orthonormal tuple).
RealMatrix orbit_basis(Eigen::Index dim, const std::vector<RealMatrix>& orbit,
                       Eigen::Index wanted) {
  RealMatrix chosen(dim, 0);
  RealMatrix spanned(dim, 0);
  for (Eigen::Index e = 0; e < dim && chosen.cols() < wanted; ++e) {
    RealVector v = RealVector::Unit(dim, e);
    for (int pass = 0; pass < 2; ++pass) v -= spanned * (spanned.transpose() * v);
    const double len = v.norm();
    if (len < 1e-6) continue;
    v /= len;
    chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
    chosen.col(chosen.cols() - 1) = v;
    for (const auto& op : orbit) {
      spanned.conservativeResize(Eigen::NoChange, spanned.cols() + 1);
      spanned.col(spanned.cols() - 1) = op * v;
    }
  }
  return chosen;
}

}  // namespace

InternalComplexification internal_complexify(const std::vector<RealMatrix>& operators,
                                             const RealMatrix& J, double tolerance) {
  require_square(J, "J");
  const Eigen::Index n = J.rows();
  if (n % 2 != 0) {
    throw Error(ErrorKind::Dimension, "internal complexification needs even real dimension");
  }
  require_unitary_antiselfadjoint(J, tolerance, "J");
  for (const auto& t : operators) {
    require_square(t, "operator");
    if (t.rows() != n) throw Error(ErrorKind::Dimension, "operator size does not match J");
    require_commutes(t, J, tolerance);
  }

  InternalComplexification out;
  out.J = J;
  out.basis = orbit_basis(n, {RealMatrix::Identity(n, n), J}, n / 2);
  out.complex_dimension = static_cast<std::size_t>(out.basis.cols());
  if (out.basis.cols() != n / 2) {
    throw Error(ErrorKind::InternalInconsistency, "complex basis extraction lost rank");
  }
  for (const auto& t : operators) {
    ComplexMatrix m(n / 2, n / 2);
    for (Eigen::Index c = 0; c < n / 2; ++c) m.col(c) = out.coordinates(t * out.basis.col(c));
    out.operators.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------- internal H

RealVector InternalQuaternionification::right_multiply(const RealVector& v,
                                                       const Quaternion& a) const {
  const auto c = frame.coordinates(a);
  const RealVector iv = I * v;
  return c[0] * v + c[1] * iv + c[2] * (J * v) + c[3] * (J * iv);
}

Quaternion InternalQuaternionification::inner(const RealVector& v, const RealVector& u) const {
  const RealVector iu = I * u;
  return frame.compose({v.dot(u), -v.dot(iu), -v.dot(J * u), -v.dot(J * iu)});
}

QVector InternalQuaternionification::coordinates(const RealVector& v) const {
  QVector c(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index m = 0; m < basis.cols(); ++m)
    c[static_cast<std::size_t>(m)] = inner(basis.col(m), v);
  return c;
}

RealVector InternalQuaternionification::vector(const QVector& c) const {
  RealVector v = RealVector::Zero(basis.rows());
  for (Eigen::Index m = 0; m < basis.cols(); ++m)
    v += right_multiply(basis.col(m), c[static_cast<std::size_t>(m)]);
  return v;
}

InternalQuaternionification internal_quaternionify(const std::vector<RealMatrix>& operators,
                                                   const RealMatrix& I, const RealMatrix& J,
                                                   const Frame& f, double tolerance) {
  require_square(I, "I");
  require_square(J, "J");
  const Eigen::Index n = I.rows();
  if (J.rows() != n) throw Error(ErrorKind::Dimension, "I and J sizes differ");
  if (n % 4 != 0) {
    throw Error(ErrorKind::Dimension,
                "internal quaternionification needs real dimension divisible by 4");
  }
  require_unitary_antiselfadjoint(I, tolerance, "I");
  require_unitary_antiselfadjoint(J, tolerance, "J");
  const double anti = (I * J + J * I).norm();
  if (anti > tolerance * std::max(1.0, I.norm() * J.norm())) {
    throw Error(ErrorKind::Structure, "I and J must anticommute", anti);
  }
  for (const auto& t : operators) {
    require_square(t, "operator");
    if (t.rows() != n) throw Error(ErrorKind::Dimension, "operator size does not match I, J");
    require_commutes(t, I, tolerance);
    require_commutes(t, J, tolerance);
  }

  InternalQuaternionification out{0, RealMatrix(), I, J, f, {}};
  out.basis = orbit_basis(n, {RealMatrix::Identity(n, n), I, J, J * I}, n / 4);
  out.quaternionic_dimension = static_cast<std::size_t>(out.basis.cols());
  if (out.basis.cols() != n / 4) {
    throw Error(ErrorKind::InternalInconsistency, "quaternionic basis extraction lost rank");
  }
  const std::size_t q = out.quaternionic_dimension;
  for (const auto& t : operators) {
    QMatrix m(q);
    for (std::size_t c = 0; c < q; ++c)
      m.set_column(c, out.coordinates(t * out.basis.col(static_cast<Eigen::Index>(c))));
    out.operators.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------- conjugation

Conjugation::Conjugation(ComplexMatrix basis, double tolerance) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols()) {
    throw Error(ErrorKind::Basis, "conjugation basis must be square (a full basis)");
  }
  const double residual =
      (basis_.adjoint() * basis_ - ComplexMatrix::Identity(basis_.cols(), basis_.cols())).norm();
  if (!(residual <= tolerance)) {
    throw Error(ErrorKind::Basis, "conjugation basis is not orthonormal", residual);
  }
}

ComplexVector Conjugation::apply(const ComplexVector& v) const {
  return basis_ * (basis_.adjoint() * v).conjugate();
}

ComplexVector Conjugation::fixed_part(const ComplexVector& v) const { return v + apply(v); }

double Conjugation::commutation_residual(const ComplexMatrix& t) const {
  double worst = 0.0;
  const Eigen::Index n = basis_.rows();
  for (Eigen::Index e = 0; e < n; ++e) {
    for (const Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
      const ComplexVector v = phase * ComplexVector::Unit(n, e);
      worst = std::max(worst, (t * apply(v) - apply(t * v)).norm());
    }
  }
  return worst;
}

ComplexMatrix Conjugation::matrix_in_basis(const ComplexMatrix& t) const {
  return basis_.adjoint() * t * basis_;
}

Conjugation conjugation_from_basis(const ComplexMatrix& basis, double tolerance) {
  return Conjugation(basis, tolerance);
}

// ---------------------------------------------------------------- left mult

LeftMultiplication::LeftMultiplication(std::vector<QVector> real_basis, Frame frame)
    : basis_(std::move(real_basis)),
      basis_matrix_(QMatrix::from_columns(basis_)),
      frame_(std::move(frame)) {}

QMatrix LeftMultiplication::operator()(const Quaternion& a) const {
  return basis_matrix_ * QMatrix::scalar(basis_.size(), a) * adjoint(basis_matrix_);
}

QVector LeftMultiplication::apply(const Quaternion& a, const QVector& v) const {
  QVector out(v.size());
  for (const auto& b : basis_) out += b * (a * inner(b, v));
  return out;
}

LeftMultiplication real_subspace_and_left_mult(const QMatrix& I, const QMatrix& J,
                                               const Frame& f, double tolerance) {
  if (I.size() != J.size()) throw Error(ErrorKind::Dimension, "I and J sizes differ");
  require_unitary_antiselfadjoint(I, tolerance, "I");
  require_unitary_antiselfadjoint(J, tolerance, "J");
  const double anti = frobenius_norm(anticommutator(I, J));
  if (anti > tolerance * std::max(1.0, frobenius_norm(I) * frobenius_norm(J))) {
    throw Error(ErrorKind::Structure, "I and J must anticommute", anti);
  }
  const std::size_t n = I.size();
  const Quaternion i = f.i().quaternion();
  const Quaternion j = f.j().quaternion();
  const Quaternion k = f.k().quaternion();

  // Project onto {I v = v i}, then onto {J v = v j} inside it.
  std::vector<QVector> candidates;
  for (std::size_t m = 0; m < n; ++m) {
    for (const Quaternion& u : {kOne, i, j, k}) {
      const QVector v = QVector::unit(n, m) * u;
      const QVector w = (v - (I * v) * i) * 0.5;
      candidates.push_back((w - (J * w) * j) * 0.5);
    }
  }
  auto basis = orthonormalize(std::move(candidates), 1e-6, n);
  if (basis.empty()) throw Error(ErrorKind::Structure, "real subspace H_R is empty");
  if (basis.size() != n) {
    throw Error(ErrorKind::Structure, "real subspace H_R has dimension " +
                                          std::to_string(basis.size()) + ", expected " +
                                          std::to_string(n));
  }
  LeftMultiplication left(std::move(basis), f);
  const double ri = frobenius_norm(left(i) - I);
  const double rj = frobenius_norm(left(j) - J);
  if (std::max(ri, rj) > 1e-9 * std::max(1.0, std::sqrt(static_cast<double>(n)))) {
    throw Error(ErrorKind::Structure, "left multiplication does not reproduce I and J",
                std::max(ri, rj));
  }
  return left;
}

LeftMultiplication standard_left_multiplication(std::size_t n, const Frame& f) {
  std::vector<QVector> basis;
  for (std::size_t m = 0; m < n; ++m) basis.push_back(QVector::unit(n, m));
  return LeftMultiplication(std::move(basis), f);
}

}  // namespace quatkit
