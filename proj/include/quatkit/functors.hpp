#pragma once

// Scalar extension and restriction between real, complex and quaternionic
// spaces: external extensions, the H+/H- splitting induced by a unitary
// anti-selfadjoint J, internal complexification and quaternionification of
// real spaces, conjugations, and left scalar multiplications.

#include <vector>

#include "quatkit/qlinalg.hpp"

namespace quatkit {

// External extensions: the same entries read in the larger field.
ComplexMatrix extend_scalars(const RealMatrix& t);
QMatrix extend_scalars_to_quaternion(const RealMatrix& t);
QMatrix extend_scalars(const ComplexMatrix& t, const Frame& f);

// H+ = {v : J v = v i}; H- = H+ j.
struct SplitSpace {
  QMatrix J;
  Frame frame;                   // i = frame.i(); j = frame.j() maps H+ onto H-
  std::vector<QVector> plus_basis;  // C_i-orthonormal basis of H+

  const ImaginaryUnit& i() const { return frame.i(); }
  std::size_t dimension() const { return plus_basis.size(); }
  // Quaternionic unitary whose columns are the plus basis.
  QMatrix basis_matrix() const { return QMatrix::from_columns(plus_basis); }
};

SplitSpace split_plus_minus(const QMatrix& J, const ImaginaryUnit& i,
                            double tolerance = tol(1e-10));
SplitSpace split_plus_minus(const QMatrix& J, const Frame& f, double tolerance = tol(1e-10));

struct ComplexComponents {
  ComplexVector v1;
  ComplexVector v2;
};

// v = sum_m b_m v1_m + sum_m b_m v2_m j.
ComplexComponents components(const QVector& v, const SplitSpace& s);
QVector from_components(const ComplexComponents& c, const SplitSpace& s);

// Matrix of T|H+ in the plus basis. Throws Error(DoesNotCommute) when
// |TJ - JT| exceeds tolerance * |T|.
ComplexMatrix restrict_to_plus(const QMatrix& t, const SplitSpace& s,
                               double tolerance = tol(1e-9));
// Unique right-linear extension of a C_i-linear operator on H+.
QMatrix extend_from_plus(const ComplexMatrix& m, const SplitSpace& s);

struct InternalComplexification {
  std::size_t complex_dimension = 0;
  RealMatrix basis;                      // columns v_m; (v_m, J v_m) is a real ONB
  RealMatrix J;
  std::vector<ComplexMatrix> operators;  // inputs in the basis (v_m)

  // <v, u>_J = <v, u> - sqrt(-1) <v, J u>
  Complex inner(const RealVector& v, const RealVector& u) const;
  ComplexVector coordinates(const RealVector& v) const;
  RealVector vector(const ComplexVector& c) const;
};

InternalComplexification internal_complexify(const std::vector<RealMatrix>& operators,
                                             const RealMatrix& J,
                                             double tolerance = tol(1e-10));

struct InternalQuaternionification {
  std::size_t quaternionic_dimension = 0;
  RealMatrix basis;  // columns v_m; (v_m, I v_m, J v_m, JI v_m) is a real ONB
  RealMatrix I;
  RealMatrix J;
  Frame frame;
  std::vector<QMatrix> operators;

  // v a = a0 v + a1 I v + a2 J v + a3 JI v  (a in frame coordinates)
  RealVector right_multiply(const RealVector& v, const Quaternion& a) const;
  // <v,u> - <v,Iu> i - <v,Ju> j - <v,JIu> k
  Quaternion inner(const RealVector& v, const RealVector& u) const;
  QVector coordinates(const RealVector& v) const;
  RealVector vector(const QVector& c) const;
};

InternalQuaternionification internal_quaternionify(const std::vector<RealMatrix>& operators,
                                                   const RealMatrix& I, const RealMatrix& J,
                                                   const Frame& f,
                                                   double tolerance = tol(1e-10));

// K v = sum_n conj(<b_n, v>) b_n on C^n.
class Conjugation {
 public:
  // Throws Error(Basis) unless the columns are orthonormal.
  explicit Conjugation(ComplexMatrix basis, double tolerance = tol(1e-10));

  ComplexVector apply(const ComplexVector& v) const;
  // (I + K) v; the image is the real span of the basis.
  ComplexVector fixed_part(const ComplexVector& v) const;
  // |T K - K T| measured on the standard basis and its i-multiples.
  double commutation_residual(const ComplexMatrix& t) const;
  // Matrix of T in the basis (real iff T commutes with K).
  ComplexMatrix matrix_in_basis(const ComplexMatrix& t) const;

  const ComplexMatrix& basis() const { return basis_; }

 private:
  ComplexMatrix basis_;
};

Conjugation conjugation_from_basis(const ComplexMatrix& basis, double tolerance = tol(1e-10));

// Left scalar multiplication a -> M_a, M_a v = sum_l b_l a <b_l, v>, built
// from a real orthonormal basis of H_R = {v : I v = v i, J v = v j}.
class LeftMultiplication {
 public:
  LeftMultiplication(std::vector<QVector> real_basis, Frame frame);

  QMatrix operator()(const Quaternion& a) const;
  QVector apply(const Quaternion& a, const QVector& v) const;

  const std::vector<QVector>& real_basis() const { return basis_; }
  const Frame& frame() const { return frame_; }
  std::size_t dimension() const { return basis_.size(); }

 private:
  std::vector<QVector> basis_;
  QMatrix basis_matrix_;
  Frame frame_;
};

LeftMultiplication real_subspace_and_left_mult(const QMatrix& I, const QMatrix& J,
                                               const Frame& f, double tolerance = tol(1e-10));

// Left multiplication of the standard basis: M_a = a * Id entrywise.
LeftMultiplication standard_left_multiplication(std::size_t n, const Frame& f);

}  // namespace quatkit
