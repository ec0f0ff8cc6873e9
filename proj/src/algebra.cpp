#include "quatkit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace quatkit {

// ---------------------------------------------------------------- vectors

RealVector vectorize(const QMatrix& t) {
  RealVector v(static_cast<Eigen::Index>(4 * t.entries().size()));
  Eigen::Index k = 0;
  for (const auto& q : t.entries()) {
    v(k++) = q.w;
    v(k++) = q.x;
    v(k++) = q.y;
    v(k++) = q.z;
  }
  return v;
}

QMatrix devectorize(const RealVector& v, std::size_t n) {
  if (static_cast<std::size_t>(v.size()) != 4 * n * n) {
    throw Error(ErrorKind::Dimension, "devectorize: length does not match 4 n^2");
  }
  QMatrix t(n);
  Eigen::Index k = 0;
  for (auto& q : t.entries()) {
    q = Quaternion(v(k), v(k + 1), v(k + 2), v(k + 3));
    k += 4;
  }
  return t;
}

namespace {

using Block4 = Eigen::Matrix4d;

Block4 left_block(const Quaternion& p) {
  Block4 m;
  const Quaternion units[4] = {kOne, kE1, kE2, kE3};
  for (int c = 0; c < 4; ++c) {
    const Quaternion q = p * units[c];
    m.col(c) << q.w, q.x, q.y, q.z;
  }
  return m;
}

Block4 right_block(const Quaternion& p) {
  Block4 m;
  const Quaternion units[4] = {kOne, kE1, kE2, kE3};
  for (int c = 0; c < 4; ++c) {
    const Quaternion q = units[c] * p;
    m.col(c) << q.w, q.x, q.y, q.z;
  }
  return m;
}

// Real matrix of T -> T A - A T on R^{4n^2}.
RealMatrix commutator_map(const QMatrix& a) {
  const std::size_t n = a.size();
  const auto d = static_cast<Eigen::Index>(4 * n * n);
  RealMatrix c = RealMatrix::Zero(d, d);
  auto at = [n](std::size_t r, std::size_t col) { return static_cast<Eigen::Index>(4 * (r * n + col)); };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t k = 0; k < n; ++k) {
        // (T A)_{r col} += T_{r k} A_{k col}
        c.block<4, 4>(at(r, col), at(r, k)) += right_block(a(k, col));
        // (A T)_{r col} += A_{r k} T_{k col}
        c.block<4, 4>(at(r, col), at(k, col)) -= left_block(a(r, k));
      }
  return c;
}

// Orthonormal basis (columns) of the real nullspace of the stacked maps.
RealMatrix stacked_nullspace(std::size_t n, const std::vector<QMatrix>& operators,
                             double relative_cutoff) {
  const auto d = static_cast<Eigen::Index>(4 * n * n);
  RealMatrix stacked(0, d);
  auto compress = [&]() {
    if (stacked.rows() <= d) return;
    Eigen::HouseholderQR<RealMatrix> qr(stacked);
    stacked = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  };
  for (const auto& a : operators) {
    const RealMatrix c = commutator_map(a);
    stacked.conservativeResize(stacked.rows() + d, Eigen::NoChange);
    stacked.bottomRows(d) = c;
    if (stacked.rows() >= 4 * d) compress();
  }
  compress();
  if (stacked.rows() == 0) return RealMatrix::Identity(d, d);

  // JacobiSVD: BDCSVD in Eigen 3.4.0 returns inaccurate null vectors here.
  Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  // Scalar families give commutator maps that are pure rounding noise, so the
  // cutoff is also measured against the size of the operators themselves.
  double scale = s.size() > 0 ? s(0) : 0.0;
  for (const auto& a : operators) scale = std::max(scale, frobenius_norm(a));
  if (scale == 0.0) return RealMatrix::Identity(d, d);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > relative_cutoff * scale) ++rank;
  return svd.matrixV().rightCols(d - rank);
}

// Puts I/|I| first when it lies in the span of the orthonormal columns.
RealMatrix identity_first(std::size_t n, const RealMatrix& basis) {
  if (basis.cols() == 0) return basis;
  const RealVector u = vectorize(QMatrix::identity(n)) / std::sqrt(static_cast<double>(n));
  const RealVector coeff = basis.transpose() * u;
  if ((basis * coeff - u).norm() > 1e-6) return basis;
  const RealMatrix rest = basis - u * (u.transpose() * basis);
  Eigen::JacobiSVD<RealMatrix> svd(rest, Eigen::ComputeThinU);
  RealMatrix out(basis.rows(), basis.cols());
  out.col(0) = u;
  Eigen::Index filled = 1;
  for (Eigen::Index k = 0; k < svd.singularValues().size() && filled < basis.cols(); ++k) {
    if (svd.singularValues()(k) > 0.5) out.col(filled++) = svd.matrixU().col(k);
  }
  out.conservativeResize(Eigen::NoChange, filled);
  return out;
}

std::vector<QMatrix> to_operators(std::size_t n, const RealMatrix& columns) {
  std::vector<QMatrix> out;
  out.reserve(static_cast<std::size_t>(columns.cols()));
  for (Eigen::Index k = 0; k < columns.cols(); ++k) out.push_back(devectorize(columns.col(k), n));
  return out;
}

double max_commutator(const std::vector<QMatrix>& xs, const std::vector<QMatrix>& ys) {
  double worst = 0.0;
  for (const auto& y : ys) {
    const double scale = std::max(1.0, frobenius_norm(y));
    for (const auto& x : xs) worst = std::max(worst, frobenius_norm(commutator(x, y)) / scale);
  }
  return worst;
}

}  // namespace

// ---------------------------------------------------------------- OperatorSpan

OperatorSpan::OperatorSpan(std::size_t n, std::vector<QMatrix> basis)
    : n_(n), basis_(std::move(basis)) {}

OperatorSpan OperatorSpan::spanned_by(std::size_t n, const std::vector<QMatrix>& operators,
                                      double relative_cutoff) {
  if (operators.empty()) return OperatorSpan(n, {});
  RealMatrix cols(static_cast<Eigen::Index>(4 * n * n), static_cast<Eigen::Index>(operators.size()));
  for (std::size_t k = 0; k < operators.size(); ++k)
    cols.col(static_cast<Eigen::Index>(k)) = vectorize(operators[k]);
  Eigen::JacobiSVD<RealMatrix> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return OperatorSpan(n, {});
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > relative_cutoff * s(0)) ++rank;
  return OperatorSpan(n, to_operators(n, svd.matrixU().leftCols(rank)));
}

QMatrix OperatorSpan::project(const QMatrix& t) const {
  QMatrix out(n_);
  const RealVector v = vectorize(t);
  for (const auto& b : basis_) out += b * vectorize(b).dot(v);
  return out;
}

double OperatorSpan::membership_residual(const QMatrix& t) const {
  return distance(t, project(t));
}

double OperatorSpan::containment_residual(const OperatorSpan& other) const {
  double worst = 0.0;
  for (const auto& b : other.basis()) worst = std::max(worst, membership_residual(b));
  return worst;
}

double OperatorSpan::closure_residual() const {
  const std::size_t spot = std::min<std::size_t>(basis_.size(), 12);
  double worst = 0.0;
  for (std::size_t a = 0; a < spot; ++a) {
    worst = std::max(worst, membership_residual(adjoint(basis_[a])));
    for (std::size_t b = 0; b < spot; ++b)
      worst = std::max(worst, membership_residual(basis_[a] * basis_[b]));
  }
  return worst;
}

// ---------------------------------------------------------------- StarAlgebra

StarAlgebra::StarAlgebra(std::size_t n, std::vector<QMatrix> generators) : n_(n) {
  if (n == 0) throw Error(ErrorKind::Dimension, "algebra dimension must be positive");
  // Exact duplicates are skipped so that re-reading a serialised algebra
  // gives back the same list.
  const auto add = [this](QMatrix t) {
    for (const auto& g : generators_)
      if (g.entries() == t.entries()) return;
    generators_.push_back(std::move(t));
  };
  add(QMatrix::identity(n));
  for (auto& g : generators) {
    if (g.size() != n) throw Error(ErrorKind::Dimension, "generator size does not match n");
    QMatrix gs = adjoint(g);
    add(std::move(g));
    add(std::move(gs));
  }
}

// ---------------------------------------------------------------- commutants

OperatorSpan commutant_of(std::size_t n, const std::vector<QMatrix>& operators,
                          double relative_cutoff) {
  // Large families: the commutant of a few random combinations contains the
  // commutant of the family; accept it only if it commutes with every member.
  constexpr std::size_t kSketchThreshold = 24;
  if (operators.size() > kSketchThreshold) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ operators.size());
    std::normal_distribution<double> normal;
    std::vector<QMatrix> sketch;
    for (int s = 0; s < 4; ++s) {
      QMatrix combo(n);
      for (const auto& op : operators) combo += op * normal(rng);
      sketch.push_back(std::move(combo));
    }
    RealMatrix candidate = stacked_nullspace(n, sketch, relative_cutoff);
    auto ops = to_operators(n, candidate);
    if (max_commutator(ops, operators) <= 1e-8) {
      return OperatorSpan(n, to_operators(n, identity_first(n, candidate)));
    }
  }
  const RealMatrix basis = stacked_nullspace(n, operators, relative_cutoff);
  return OperatorSpan(n, to_operators(n, identity_first(n, basis)));
}

OperatorSpan commutant(const StarAlgebra& a, double relative_cutoff) {
  return commutant_of(a.n(), a.generators(), relative_cutoff);
}

OperatorSpan bicommutant(const StarAlgebra& a, double relative_cutoff) {
  const OperatorSpan first = commutant(a, relative_cutoff);
  return commutant_of(a.n(), first.basis(), relative_cutoff);
}

OperatorSpan generated_algebra(const StarAlgebra& a, double relative_cutoff) {
  const std::size_t n = a.n();
  const auto d = static_cast<Eigen::Index>(4 * n * n);
  RealMatrix q(d, 0);
  auto try_add = [&](const QMatrix& t) {
    RealVector v = vectorize(t);
    const double len = v.norm();
    if (len == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) v -= q * (q.transpose() * v);
    if (v.norm() <= relative_cutoff * len) return false;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v.normalized();
    return true;
  };
  try_add(QMatrix::identity(n));
  for (Eigen::Index next = 0; next < q.cols(); ++next) {
    const QMatrix x = devectorize(q.col(next), n);
    for (const auto& g : a.generators()) try_add(x * g);
  }
  return OperatorSpan(n, to_operators(n, identity_first(n, q)));
}

OperatorSpan center(const StarAlgebra& a, double relative_cutoff) {
  const OperatorSpan comm = commutant(a, relative_cutoff);
  std::vector<QMatrix> constraints = a.generators();
  constraints.insert(constraints.end(), comm.basis().begin(), comm.basis().end());
  return commutant_of(a.n(), constraints, relative_cutoff);
}

// ---------------------------------------------------------------- irreducibility

IrreducibilityReport irreducibility(const StarAlgebra& a, double spread_cutoff) {
  const OperatorSpan comm = commutant(a);
  IrreducibilityReport report;
  report.commutant_dim = comm.dim();
  // The commutant is *-closed, so it is scalar on its selfadjoint part iff
  // every basis element has a scalar selfadjoint part.
  for (const auto& b : comm.basis()) {
    const QMatrix s = 0.5 * (b + adjoint(b));
    const auto spectrum = spectral_decomposition(s, 1e-12);
    const double lo = spectrum.front().eigenvalue;
    const double hi = spectrum.back().eigenvalue;
    if (hi - lo > spread_cutoff * std::max(1.0, std::max(std::abs(lo), std::abs(hi)))) {
      report.irreducible = false;
      report.witness = spectral_projection(s, lo - 1.0, 0.5 * (lo + hi));
      return report;
    }
  }
  return report;
}

bool is_irreducible(const StarAlgebra& a) { return irreducibility(a).irreducible; }

// ---------------------------------------------------------------- classification

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::ProperQuaternionic: return "ProperQuaternionic";
    case AlgebraKind::ComplexInduced: return "ComplexInduced";
    case AlgebraKind::RealInduced: return "RealInduced";
  }
  return "Unknown";
}

std::optional<AlgebraKind> algebra_kind_from_string(const std::string& s) {
  for (auto k : {AlgebraKind::ProperQuaternionic, AlgebraKind::ComplexInduced,
                 AlgebraKind::RealInduced})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

AntiUnitDecomposition extract_anti_unit(const QMatrix& t) {
  const std::size_t n = t.size();
  const double dn = static_cast<double>(n);
  const QMatrix id = QMatrix::identity(n);
  const double scale = std::max(1.0, frobenius_norm(t));

  AntiUnitDecomposition out;
  out.a = trace(t).w / dn;
  const QMatrix sym = 0.5 * (t + adjoint(t));
  const double sym_residual = distance(sym, id * out.a);
  if (sym_residual > 1e-8 * scale) {
    throw Error(ErrorKind::NotInScalarCommutant, "selfadjoint part is not scalar", sym_residual);
  }
  const QMatrix skew = 0.5 * (t - adjoint(t));
  const QMatrix skew2 = skew * skew;
  const double c = trace(skew2).w / dn;
  const double sq_residual = distance(skew2, id * c);
  if (sq_residual > 1e-8 * scale * scale) {
    throw Error(ErrorKind::NotInScalarCommutant, "square of the skew part is not scalar",
                sq_residual);
  }
  if (std::abs(c) <= 1e-10 * scale * scale) return out;
  if (c > 0.0) {
    throw Error(ErrorKind::NotInScalarCommutant, "square of the skew part is positive", c);
  }
  out.b = std::sqrt(-c);
  out.J = skew * (1.0 / out.b);
  const double reconstruction = distance(t, id * out.a + *out.J * out.b);
  if (reconstruction > 1e-8 * scale) {
    throw Error(ErrorKind::NotInScalarCommutant, "T != a I + b J", reconstruction);
  }
  return out;
}

QMatrix canonical_sign(const QMatrix& j) {
  const RealVector v = vectorize(j);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > 1e-9) return v(k) < 0.0 ? -j : j;
  }
  return j;
}

namespace {

double structure_residual(const QMatrix& j) {
  const std::size_t n = j.size();
  return std::max(frobenius_norm(j + adjoint(j)),
                  frobenius_norm(j * j + QMatrix::identity(n)));
}

}  // namespace

Classification classify_irreducible(const StarAlgebra& a) {
  const IrreducibilityReport irr = irreducibility(a);
  if (!irr.irreducible) {
    throw Error(ErrorKind::Precondition, "classify_irreducible needs an irreducible algebra");
  }
  const OperatorSpan comm = commutant(a);
  const std::size_t n = a.n();
  Classification out;
  out.commutant_dim = comm.dim();
  const double scale = std::sqrt(static_cast<double>(n));
  const double identity_gap =
      comm.dim() > 0 ? distance(comm.basis()[0] * scale, QMatrix::identity(n)) : 1.0;
  if (identity_gap > 1e-6) {
    throw Error(ErrorKind::InternalInconsistency, "commutant does not contain the identity",
                identity_gap);
  }

  switch (comm.dim()) {
    case 1:
      out.kind = AlgebraKind::ProperQuaternionic;
      return out;
    case 2: {
      const auto dec = extract_anti_unit(comm.basis()[1]);
      if (!dec.J) {
        throw Error(ErrorKind::InternalInconsistency, "commutant has no anti-selfadjoint unit");
      }
      out.kind = AlgebraKind::ComplexInduced;
      out.J = canonical_sign(*dec.J);
      return out;
    }
    case 4: {
      const auto first = extract_anti_unit(comm.basis()[1]);
      const auto second = extract_anti_unit(comm.basis()[2]);
      if (!first.J || !second.J) {
        throw Error(ErrorKind::InternalInconsistency, "commutant has no anti-selfadjoint unit");
      }
      const QMatrix& i_op = *first.J;
      // {J, I} = -2 cos(angle) Id for units of a quaternion algebra.
      const double c = -0.5 * trace(anticommutator(*second.J, i_op)).w / static_cast<double>(n);
      const auto orthogonal = extract_anti_unit(*second.J - i_op * c);
      if (!orthogonal.J) {
        throw Error(ErrorKind::InternalInconsistency, "commutant units are parallel");
      }
      const QMatrix& j_op = *orthogonal.J;
      const QMatrix k_op = i_op * j_op;
      const double residual =
          std::max({structure_residual(i_op), structure_residual(j_op), structure_residual(k_op),
                    frobenius_norm(anticommutator(i_op, j_op))});
      if (residual > 1e-8 * scale) {
        throw Error(ErrorKind::InternalInconsistency, "recovered I, J, K violate the relations",
                    residual);
      }
      out.kind = AlgebraKind::RealInduced;
      out.I = i_op;
      out.J = j_op;
      out.K = k_op;
      return out;
    }
    default:
      throw Error(ErrorKind::InternalInconsistency,
                  "irreducible commutant has real dimension " + std::to_string(comm.dim()) +
                      ", expected 1, 2 or 4");
  }
}

// ---------------------------------------------------------------- symmetries

namespace {

void require_unitary(const QMatrix& u, double tolerance) {
  const double residual = frobenius_norm(adjoint(u) * u - QMatrix::identity(u.size()));
  if (residual > tolerance * std::max(1.0, static_cast<double>(u.size()))) {
    throw Error(ErrorKind::Structure, "operator is not unitary", residual);
  }
}

void require_projection(const QMatrix& e, double tolerance) {
  const double residual = frobenius_norm(e * e - e) + frobenius_norm(e - adjoint(e));
  if (residual > tolerance * std::max(1.0, frobenius_norm(e))) {
    throw Error(ErrorKind::Structure, "operator is not a projection", residual);
  }
}

}  // namespace

QMatrix induce_symmetry(const QMatrix& u, const QMatrix& e) {
  require_unitary(u, tol(1e-10));
  require_projection(e, tol(1e-10));
  if (u.size() != e.size()) throw Error(ErrorKind::Dimension, "induce_symmetry size mismatch");
  return u * e * adjoint(u);
}

double same_symmetry_residual(const QMatrix& u, const QMatrix& u_prime,
                              const OperatorSpan& centre) {
  const QMatrix x = u_prime * adjoint(u);
  return centre.membership_residual(x) / std::max(1.0, frobenius_norm(x));
}

bool same_symmetry(const QMatrix& u, const QMatrix& u_prime, const StarAlgebra& a,
                   double tolerance) {
  require_unitary(u, tol(1e-10));
  require_unitary(u_prime, tol(1e-10));
  return same_symmetry_residual(u, u_prime, center(a)) <= tolerance;
}

// ---------------------------------------------------------------- states

StateFunctional::StateFunctional(QVector v, double tolerance) : v_(std::move(v)) {
  const double deviation = std::abs(norm(v_) - 1.0);
  if (!(deviation <= tolerance)) {
    throw Error(ErrorKind::Normalization, "state vector must have unit norm", deviation);
  }
}

double StateFunctional::probability(const QMatrix& e) const {
  const double len = norm(e * v_);
  return len * len;
}

StateFunctional lueders_update(const StateFunctional& mu, const QMatrix& f) {
  const double residual = frobenius_norm(f * f - f) + frobenius_norm(f - adjoint(f));
  if (residual > tol(1e-10) * std::max(1.0, frobenius_norm(f))) {
    throw Error(ErrorKind::Precondition, "Lueders update needs a projection", residual);
  }
  const double p = mu.probability(f);
  if (!(p > 1e-12)) {
    throw Error(ErrorKind::ZeroProbability, "proposition has zero probability", p);
  }
  QVector w = f * mu.vector();
  w *= 1.0 / std::sqrt(p);
  return StateFunctional(std::move(w), 1e-9);
}

// ---------------------------------------------------------------- reduction

bool ReducedSystem::all_pass() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const Certificate& c) { return c.pass(); });
}

namespace {

std::size_t complex_rank(const ComplexMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > 1e-8 * std::max(1.0, s(0))) ++r;
  return r;
}

// Column of largest norm, normalised.
template <class Vec, class Mat>
Vec dominant_column(const Mat& m, Vec zero) {
  std::size_t best = 0;
  double best_norm = -1.0;
  const auto cols = static_cast<std::size_t>(zero.size());
  for (std::size_t c = 0; c < cols; ++c) {
    double nrm;
    if constexpr (std::is_same_v<Mat, QMatrix>) {
      nrm = norm(m.column(c));
    } else {
      nrm = m.col(static_cast<Eigen::Index>(c)).norm();
    }
    if (nrm > best_norm) {
      best = c;
      best_norm = nrm;
    }
  }
  if constexpr (std::is_same_v<Mat, QMatrix>) {
    return m.column(best) * (1.0 / best_norm);
  } else {
    return m.col(static_cast<Eigen::Index>(best)) / best_norm;
  }
}

}  // namespace

ReducedSystem reduce_system(const StarAlgebra& a, const std::vector<QMatrix>& evolution,
                            const ImaginaryUnit& i, double tolerance) {
  Classification cls = classify_irreducible(a);
  if (cls.kind != AlgebraKind::ComplexInduced || !cls.J) {
    throw Error(ErrorKind::NotComplexInduced,
                "reduction needs a complex-induced algebra, got " + to_string(cls.kind));
  }
  const QMatrix& J = *cls.J;
  for (const auto& u : evolution) {
    if (u.size() != a.n()) throw Error(ErrorKind::Dimension, "evolution operator size mismatch");
    const double residual = frobenius_norm(commutator(u, J));
    if (residual > tolerance * std::max(1.0, frobenius_norm(u))) {
      throw Error(ErrorKind::DoesNotCommute, "evolution does not commute with J", residual);
    }
  }

  ReducedSystem out{cls, split_plus_minus(J, i), {}, {}, {}, {}, {}};
  const SplitSpace& split = out.split;
  const std::size_t n = a.n();

  for (const auto& g : a.generators()) out.generators.push_back(restrict_to_plus(g, split));

  // Projection samples: I, projection generators, spectral projections of
  // the selfadjoint parts of the generators.
  out.projections.push_back(QMatrix::identity(n));
  for (const auto& g : a.generators()) {
    if (classify_operator(g).projection) out.projections.push_back(g);
    const QMatrix s = 0.5 * (g + adjoint(g));
    const auto spectrum = spectral_decomposition(s);
    if (spectrum.size() < 2) continue;
    for (const auto& component : spectrum) out.projections.push_back(component.projection);
  }

  double ext_residual = 0.0;
  double rank_residual = 0.0;
  double ray_residual = 0.0;
  const Quaternion iq = split.i().quaternion();
  for (const auto& e : out.projections) {
    const ComplexMatrix ec = restrict_to_plus(e, split);
    out.projections_plus.push_back(ec);
    ext_residual = std::max(ext_residual, distance(extend_from_plus(ec, split), e));
    const double rank_h = static_cast<double>(quaternionic_rank(e, 1e-8));
    const double rank_c = static_cast<double>(complex_rank(ec));
    rank_residual = std::max(rank_residual, std::abs(rank_h - rank_c));
    if (rank_c < 1.0) continue;

    // A rank-one subprojection, its ray through an arbitrary vector, and the
    // phase that rotates that vector into H+.
    const ComplexVector x = dominant_column(ec, ComplexVector(ec.cols()));
    const QMatrix ray = extend_from_plus(x * x.adjoint(), split);
    const QVector v = dominant_column(ray, QVector(n));
    const Quaternion lambda = inner(v, J * v);
    const double lambda_len = length(lambda.imag());
    ray_residual = std::max(ray_residual, std::abs(lambda.w) + std::abs(lambda_len - 1.0));
    const QVector w = v * align_units(ImaginaryUnit::normalized(lambda.imag()), split.i());
    ray_residual = std::max(ray_residual, norm(J * w - w * iq));
  }

  double unitary_residual = 0.0;
  double evo_ext_residual = 0.0;
  double invariance_residual = 0.0;
  for (const auto& u : evolution) {
    const ComplexMatrix uc = restrict_to_plus(u, split);
    out.evolution.push_back(uc);
    unitary_residual = std::max(
        unitary_residual, (uc.adjoint() * uc - ComplexMatrix::Identity(uc.rows(), uc.cols())).norm());
    evo_ext_residual = std::max(evo_ext_residual, distance(extend_from_plus(uc, split), u));
    for (const auto& b : split.plus_basis) {
      const QVector ub = u * b;
      invariance_residual = std::max(invariance_residual, norm(J * ub - ub * iq));
    }
  }

  out.certificates = {
      {"projection_extension", ext_residual, tolerance},
      {"projection_rank", rank_residual, 0.5},
      {"ray_representative", ray_residual, tolerance},
      {"evolution_unitary", unitary_residual, tolerance},
      {"evolution_extension", evo_ext_residual, tolerance},
      {"evolution_plus_invariance", invariance_residual, tolerance},
  };
  return out;
}

}  // namespace quatkit
