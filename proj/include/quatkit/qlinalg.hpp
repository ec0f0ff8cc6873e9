#pragma once

// Quaternionic vectors and right-linear operators.
//
// A QMatrix T acts on column vectors by (Tv)_m = sum_n T_mn * v_n with the
// matrix entry on the left, so T(v a) = (Tv) a for every quaternion a.
// The inner product is conjugate-linear in its first argument:
//   <v, u> = sum_m conj(v_m) u_m,   <v a, u b> = conj(a) <v, u> b.
// Spectra and norms are computed through the complex embedding chi of a
// frame, which maps T = T1 + T2 j (entrywise) to [[T1, T2], [-conj T2, conj T1]].

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "quatkit/error.hpp"
#include "quatkit/quaternion.hpp"

namespace quatkit {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

class QVector {
 public:
  QVector() = default;
  explicit QVector(std::size_t n) : data_(n) {}
  QVector(std::initializer_list<Quaternion> init) : data_(init) {}
  explicit QVector(std::vector<Quaternion> data) : data_(std::move(data)) {}

  // m-th standard basis vector of H^n.
  static QVector unit(std::size_t n, std::size_t m);

  std::size_t size() const { return data_.size(); }
  Quaternion& operator[](std::size_t m) { return data_[m]; }
  const Quaternion& operator[](std::size_t m) const { return data_[m]; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  QVector& operator+=(const QVector& o);
  QVector& operator-=(const QVector& o);
  QVector& operator*=(double s);

  const std::vector<Quaternion>& entries() const { return data_; }

 private:
  std::vector<Quaternion> data_;
};

QVector operator+(QVector a, const QVector& b);
QVector operator-(QVector a, const QVector& b);
QVector operator*(QVector v, double s);
// Right scalar multiplication (v a)_m = v_m a.
QVector operator*(const QVector& v, const Quaternion& a);

Quaternion inner(const QVector& v, const QVector& u);
double norm(const QVector& v);

class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static QMatrix zero(std::size_t n) { return QMatrix(n); }
  static QMatrix identity(std::size_t n);
  // q * I: left multiplication of every coordinate by q.
  static QMatrix scalar(std::size_t n, const Quaternion& q);
  static QMatrix diagonal(const std::vector<Quaternion>& d);
  static QMatrix from_columns(const std::vector<QVector>& columns);
  static QMatrix from_real(const RealMatrix& m);

  std::size_t size() const { return n_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  QVector column(std::size_t c) const;
  void set_column(std::size_t c, const QVector& v);

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

  const std::vector<Quaternion>& entries() const { return data_; }
  std::vector<Quaternion>& entries() { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<Quaternion> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& v);
// Entrywise q * T_mn, i.e. the operator (q I) T.
QMatrix operator*(const Quaternion& q, const QMatrix& t);
// Entrywise T_mn * q, i.e. T (q I).
QMatrix operator*(const QMatrix& t, const Quaternion& q);

QMatrix adjoint(const QMatrix& t);
QMatrix commutator(const QMatrix& a, const QMatrix& b);
QMatrix anticommutator(const QMatrix& a, const QMatrix& b);
// v u^*: the operator w -> v <u, w>.
QMatrix outer(const QVector& v, const QVector& u);
Quaternion trace(const QMatrix& t);
double frobenius_norm(const QMatrix& t);
double frobenius_norm(const QVector& v);
double distance(const QMatrix& a, const QMatrix& b);

ComplexMatrix complex_embed(const QMatrix& t, const Frame& f);
// Left inverse of complex_embed. Throws Error(NotInImage) when the block
// structure is violated by more than `tolerance` (max-abs entry residual).
QMatrix complex_unembed(const ComplexMatrix& m, const Frame& f, double tolerance = tol(1e-10));
// Coordinates (v1, -conj(v2)) of v = v1 + v2 j, so that
// complex_embed(T) * embed_vector(v) = embed_vector(T v).
ComplexVector embed_vector(const QVector& v, const Frame& f);
QVector unembed_vector(const ComplexVector& x, const Frame& f);

double operator_norm(const QMatrix& t, const Frame& f = Frame::standard());
double operator_norm(const ComplexMatrix& m);
double operator_norm(const RealMatrix& m);

// Real rank of the quaternionic operator (number of singular values above
// `relative_cutoff` times the largest).
std::size_t quaternionic_rank(const QMatrix& t, double relative_cutoff = 1e-9);

struct EigenSphere {
  Quaternion representative;  // in the closed upper half-plane of C_i
  std::size_t multiplicity = 0;
};

// Spectral spheres of a normal operator. Throws Error(NotNormal).
std::vector<EigenSphere> s_eigenspheres(const QMatrix& t, const ImaginaryUnit& i);

struct SpectralComponent {
  double eigenvalue = 0.0;
  QMatrix projection;
};

// Spectral decomposition of a selfadjoint operator; eigenvalues closer than
// `gap` (relative to max(1, |T|)) are merged into one component.
std::vector<SpectralComponent> spectral_decomposition(const QMatrix& t, double gap = 1e-7);

// Orthogonal projection onto the eigenspaces of a selfadjoint operator with
// eigenvalues in [lo, hi].
QMatrix spectral_projection(const QMatrix& t, double lo, double hi);

struct PolarFactors {
  QMatrix J;  // unitary, anti-selfadjoint
  QMatrix M;  // |A|
};

// A = J |A| for anti-selfadjoint A. On ker A, J is right multiplication by
// the frame's i in a deterministic orthonormal kernel basis.
PolarFactors polar_antiselfadjoint(const QMatrix& a, const Frame& f = Frame::standard(),
                                   double tolerance = tol(1e-10));

struct OperatorFlags {
  bool selfadjoint = false;
  bool antiselfadjoint = false;
  bool unitary = false;
  bool normal = false;
  bool projection = false;

  bool operator==(const OperatorFlags&) const = default;
};

OperatorFlags classify_operator(const QMatrix& t, double tolerance = tol(1e-10));
OperatorFlags classify_operator(const ComplexMatrix& t, double tolerance = tol(1e-10));
OperatorFlags classify_operator(const RealMatrix& t, double tolerance = tol(1e-10));

// Orthonormalise quaternionic vectors by Gram-Schmidt, always taking the
// remaining candidate with the largest residual next. Candidates whose
// residual falls below `cutoff` are dropped; at most `limit` are kept.
std::vector<QVector> orthonormalize(std::vector<QVector> candidates, double cutoff,
                                    std::size_t limit);

}  // namespace quatkit
