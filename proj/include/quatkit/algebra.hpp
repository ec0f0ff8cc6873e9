#pragma once

// Finite-dimensional *-algebras of quaternionic operators.
//
// Operator spaces are handled as real subspaces of R^{4n^2} (each QMatrix
// entry contributes its four real coordinates). The commutant is the real
// nullspace of the stacked maps T -> T A - A T.

#include <optional>
#include <string>
#include <vector>

#include "quatkit/functors.hpp"
#include "quatkit/qlinalg.hpp"

namespace quatkit {

// Real coordinates of an operator: entry (r, c), component q in {w,x,y,z} is
// stored at index 4 (r n + c) + q.
RealVector vectorize(const QMatrix& t);
QMatrix devectorize(const RealVector& v, std::size_t n);

// A real subspace of B(H^n) with an orthonormal basis for the real trace
// form <S, T> = Re tr(S* T).
class OperatorSpan {
 public:
  OperatorSpan(std::size_t n, std::vector<QMatrix> basis);
  // Orthonormal basis of the span of arbitrary operators.
  static OperatorSpan spanned_by(std::size_t n, const std::vector<QMatrix>& operators,
                                 double relative_cutoff = 1e-9);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<QMatrix>& basis() const { return basis_; }

  // Distance from T to the span (least-squares residual, Frobenius).
  double membership_residual(const QMatrix& t) const;
  QMatrix project(const QMatrix& t) const;
  // Largest membership residual of the other span's basis in this one.
  double containment_residual(const OperatorSpan& other) const;
  // Largest residual of adjoints and pairwise products of basis elements.
  double closure_residual() const;

 private:
  std::size_t n_;
  std::vector<QMatrix> basis_;
};

using CommutantBasis = OperatorSpan;

// Unital *-algebra given by generators; the constructor appends adjoints of
// non-selfadjoint generators so the list is closed under * exactly.
class StarAlgebra {
 public:
  StarAlgebra(std::size_t n, std::vector<QMatrix> generators);

  std::size_t n() const { return n_; }
  const std::vector<QMatrix>& generators() const { return generators_; }

 private:
  std::size_t n_;
  std::vector<QMatrix> generators_;
};

// Commutant of an arbitrary operator family. Singular values below
// relative_cutoff times the largest count as zero. When I belongs to the
// result it is the first basis element (normalised).
OperatorSpan commutant_of(std::size_t n, const std::vector<QMatrix>& operators,
                          double relative_cutoff = 1e-9);

OperatorSpan commutant(const StarAlgebra& a, double relative_cutoff = 1e-9);
OperatorSpan bicommutant(const StarAlgebra& a, double relative_cutoff = 1e-9);
// Real span of all words in the generators (including I).
OperatorSpan generated_algebra(const StarAlgebra& a, double relative_cutoff = 1e-9);
// Z = A'' intersected with A': elements of the commutant that commute with
// the whole commutant.
OperatorSpan center(const StarAlgebra& a, double relative_cutoff = 1e-9);

struct IrreducibilityReport {
  bool irreducible = true;
  std::size_t commutant_dim = 0;
  // Nontrivial projection in the commutant when reducible.
  std::optional<QMatrix> witness;
};

IrreducibilityReport irreducibility(const StarAlgebra& a, double spread_cutoff = 1e-7);
bool is_irreducible(const StarAlgebra& a);

enum class AlgebraKind { ProperQuaternionic, ComplexInduced, RealInduced };
std::string to_string(AlgebraKind kind);
std::optional<AlgebraKind> algebra_kind_from_string(const std::string& s);

struct Classification {
  AlgebraKind kind = AlgebraKind::ProperQuaternionic;
  std::size_t commutant_dim = 0;
  std::optional<QMatrix> J;
  std::optional<QMatrix> I;
  std::optional<QMatrix> K;
};

Classification classify_irreducible(const StarAlgebra& a);

struct AntiUnitDecomposition {
  double a = 0.0;
  double b = 0.0;
  std::optional<QMatrix> J;
};

// T = a I + b J with J unitary anti-selfadjoint, for T in a commutant that is
// isomorphic to R or C.
AntiUnitDecomposition extract_anti_unit(const QMatrix& t);

// Sign convention for operators determined up to sign: the first coordinate
// of vectorize(J) above 1e-9 in magnitude is positive.
QMatrix canonical_sign(const QMatrix& j);

// U E U^-1 for unitary U and projection E.
QMatrix induce_symmetry(const QMatrix& u, const QMatrix& e);

// U' U^-1 belongs to the center of the algebra.
bool same_symmetry(const QMatrix& u, const QMatrix& u_prime, const StarAlgebra& a,
                   double tolerance = tol(1e-8));
double same_symmetry_residual(const QMatrix& u, const QMatrix& u_prime, const OperatorSpan& centre);

// State mu(E) = |E v|^2 for a unit vector v.
class StateFunctional {
 public:
  explicit StateFunctional(QVector v, double tolerance = tol(1e-10));

  double probability(const QMatrix& e) const;
  const QVector& vector() const { return v_; }

 private:
  QVector v_;
};

// Post-measurement state after proposition F: vector F v / |F v|.
StateFunctional lueders_update(const StateFunctional& mu, const QMatrix& f);

struct Certificate {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual <= tolerance; }
};

struct ReducedSystem {
  Classification classification;
  SplitSpace split;
  std::vector<ComplexMatrix> generators;
  std::vector<QMatrix> projections;            // quaternionic projection samples
  std::vector<ComplexMatrix> projections_plus;  // their restrictions
  std::vector<ComplexMatrix> evolution;
  std::vector<Certificate> certificates;

  bool all_pass() const;
};

// Restrict a complex-induced system to H+ of its J and certify the
// correspondence of projections, ranks, rays and evolution.
ReducedSystem reduce_system(const StarAlgebra& a, const std::vector<QMatrix>& evolution,
                            const ImaginaryUnit& i, double tolerance = tol(1e-9));

}  // namespace quatkit
