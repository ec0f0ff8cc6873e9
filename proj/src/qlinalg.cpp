#include "quatkit/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace quatkit {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::Dimension,
                std::string(what) + ": size mismatch " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

}  // namespace

// ---------------------------------------------------------------- QVector

QVector QVector::unit(std::size_t n, std::size_t m) {
  QVector v(n);
  v[m] = kOne;
  return v;
}

QVector& QVector::operator+=(const QVector& o) {
  require_same_size(size(), o.size(), "QVector +");
  for (std::size_t m = 0; m < size(); ++m) data_[m] += o.data_[m];
  return *this;
}

QVector& QVector::operator-=(const QVector& o) {
  require_same_size(size(), o.size(), "QVector -");
  for (std::size_t m = 0; m < size(); ++m) data_[m] -= o.data_[m];
  return *this;
}

QVector& QVector::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QVector operator+(QVector a, const QVector& b) { return a += b; }
QVector operator-(QVector a, const QVector& b) { return a -= b; }
QVector operator*(QVector v, double s) { return v *= s; }

QVector operator*(const QVector& v, const Quaternion& a) {
  QVector out(v.size());
  for (std::size_t m = 0; m < v.size(); ++m) out[m] = v[m] * a;
  return out;
}

Quaternion inner(const QVector& v, const QVector& u) {
  require_same_size(v.size(), u.size(), "inner");
  Quaternion acc;
  for (std::size_t m = 0; m < v.size(); ++m) acc += conj(v[m]) * u[m];
  return acc;
}

double norm(const QVector& v) { return frobenius_norm(v); }

double frobenius_norm(const QVector& v) {
  double acc = 0.0;
  for (const auto& q : v) acc += norm2(q);
  return std::sqrt(acc);
}

// ---------------------------------------------------------------- QMatrix

QMatrix QMatrix::identity(std::size_t n) { return scalar(n, kOne); }

QMatrix QMatrix::scalar(std::size_t n, const Quaternion& q) {
  QMatrix t(n);
  for (std::size_t m = 0; m < n; ++m) t(m, m) = q;
  return t;
}

QMatrix QMatrix::diagonal(const std::vector<Quaternion>& d) {
  QMatrix t(d.size());
  for (std::size_t m = 0; m < d.size(); ++m) t(m, m) = d[m];
  return t;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns) {
  QMatrix t(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) t.set_column(c, columns[c]);
  return t;
}

QMatrix QMatrix::from_real(const RealMatrix& m) {
  require_same_size(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
                    "QMatrix::from_real");
  QMatrix t(static_cast<std::size_t>(m.rows()));
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t.size(); ++c) t(r, c) = Quaternion(m(r, c));
  return t;
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(n_);
  for (std::size_t r = 0; r < n_; ++r) v[r] = (*this)(r, c);
  return v;
}

void QMatrix::set_column(std::size_t c, const QVector& v) {
  require_same_size(n_, v.size(), "QMatrix::set_column");
  for (std::size_t r = 0; r < n_; ++r) (*this)(r, c) = v[r];
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require_same_size(n_, o.n_, "QMatrix +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require_same_size(n_, o.n_, "QMatrix -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(QMatrix a) { return a *= -1.0; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  require_same_size(a.size(), b.size(), "QMatrix *");
  const std::size_t n = a.size();
  QMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Quaternion& ark = a(r, k);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  require_same_size(a.size(), v.size(), "QMatrix * QVector");
  QVector out(v.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) out[r] += a(r, c) * v[c];
  return out;
}

QMatrix operator*(const Quaternion& q, const QMatrix& t) {
  QMatrix out = t;
  for (auto& e : out.entries()) e = q * e;
  return out;
}

QMatrix operator*(const QMatrix& t, const Quaternion& q) {
  QMatrix out = t;
  for (auto& e : out.entries()) e = e * q;
  return out;
}

QMatrix adjoint(const QMatrix& t) {
  const std::size_t n = t.size();
  QMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = conj(t(c, r));
  return out;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }
QMatrix anticommutator(const QMatrix& a, const QMatrix& b) { return a * b + b * a; }

QMatrix outer(const QVector& v, const QVector& u) {
  require_same_size(v.size(), u.size(), "outer");
  QMatrix out(v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < u.size(); ++c) out(r, c) = v[r] * conj(u[c]);
  return out;
}

Quaternion trace(const QMatrix& t) {
  Quaternion acc;
  for (std::size_t m = 0; m < t.size(); ++m) acc += t(m, m);
  return acc;
}

double frobenius_norm(const QMatrix& t) {
  double acc = 0.0;
  for (const auto& q : t.entries()) acc += norm2(q);
  return std::sqrt(acc);
}

double distance(const QMatrix& a, const QMatrix& b) { return frobenius_norm(a - b); }

// ---------------------------------------------------------------- embedding

ComplexMatrix complex_embed(const QMatrix& t, const Frame& f) {
  const auto n = static_cast<Eigen::Index>(t.size());
  ComplexMatrix m(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto s = symplectic_split(t(r, c), f);
      m(r, c) = s.z1;
      m(r, n + c) = s.z2;
      m(n + r, c) = -std::conj(s.z2);
      m(n + r, n + c) = std::conj(s.z1);
    }
  return m;
}

QMatrix complex_unembed(const ComplexMatrix& m, const Frame& f, double tolerance) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw Error(ErrorKind::Dimension, "complex_unembed needs an even square matrix");
  }
  const Eigen::Index n = m.rows() / 2;
  QMatrix t(static_cast<std::size_t>(n));
  double residual = 0.0;
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex a = m(r, c);
      const Complex b = m(r, n + c);
      const Complex lower_left = m(n + r, c);
      const Complex lower_right = m(n + r, n + c);
      residual = std::max({residual, std::abs(lower_right - std::conj(a)),
                           std::abs(lower_left + std::conj(b))});
      const Complex z1 = 0.5 * (a + std::conj(lower_right));
      const Complex z2 = 0.5 * (b - std::conj(lower_left));
      t(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = symplectic_join({z1, z2}, f);
    }
  if (!(residual <= tolerance)) {
    throw Error(ErrorKind::NotInImage, "matrix is not in the image of the complex embedding",
                residual);
  }
  return t;
}

ComplexVector embed_vector(const QVector& v, const Frame& f) {
  const auto n = static_cast<Eigen::Index>(v.size());
  ComplexVector x(2 * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto s = symplectic_split(v[static_cast<std::size_t>(m)], f);
    x(m) = s.z1;
    x(n + m) = -std::conj(s.z2);
  }
  return x;
}

QVector unembed_vector(const ComplexVector& x, const Frame& f) {
  if (x.size() % 2 != 0) throw Error(ErrorKind::Dimension, "unembed_vector needs even length");
  const Eigen::Index n = x.size() / 2;
  QVector v(static_cast<std::size_t>(n));
  for (Eigen::Index m = 0; m < n; ++m)
    v[static_cast<std::size_t>(m)] = symplectic_join({x(m), -std::conj(x(n + m))}, f);
  return v;
}

// ---------------------------------------------------------------- norms

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double operator_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues()(0);
}

double operator_norm(const QMatrix& t, const Frame& f) {
  return operator_norm(complex_embed(t, f));
}

std::size_t quaternionic_rank(const QMatrix& t, double relative_cutoff) {
  if (t.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(complex_embed(t, Frame::standard()));
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  std::size_t count = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > relative_cutoff * s(0)) ++count;
  return (count + 1) / 2;
}

// ---------------------------------------------------------------- spectra

std::vector<EigenSphere> s_eigenspheres(const QMatrix& t, const ImaginaryUnit& i) {
  const QMatrix ts = adjoint(t);
  const double scale = operator_norm(t);
  const double normality = operator_norm(t * ts - ts * t);
  if (normality > tol(1e-9) * std::max(scale * scale, 1e-300)) {
    throw Error(ErrorKind::NotNormal, "s_eigenspheres requires a normal operator", normality);
  }
  const std::size_t n = t.size();
  if (n == 0) return {};

  const Frame f = frame_complete(i);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(complex_embed(t, f), false);
  std::vector<Complex> eig(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(eig.begin(), eig.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  // Pair each eigenvalue with its nearest unmatched conjugate.
  const double pair_tol = 1e-8 * std::max(1.0, scale);
  std::vector<bool> used(eig.size(), false);
  std::vector<Complex> reps;
  for (std::size_t a = 0; a < eig.size(); ++a) {
    if (used[a]) continue;
    used[a] = true;
    std::size_t best = eig.size();
    double best_dist = 0.0;
    for (std::size_t b = 0; b < eig.size(); ++b) {
      if (used[b]) continue;
      const double d = std::abs(eig[b] - std::conj(eig[a]));
      if (best == eig.size() || d < best_dist) {
        best = b;
        best_dist = d;
      }
    }
    if (best == eig.size() || best_dist > std::max(pair_tol, 1e-6 * std::max(1.0, scale))) {
      throw Error(ErrorKind::InternalInconsistency,
                  "complex embedding spectrum is not closed under conjugation", best_dist);
    }
    used[best] = true;
    const Complex mean = 0.5 * (eig[a] + std::conj(eig[best]));
    reps.emplace_back(mean.real(), std::abs(mean.imag()));
  }

  std::sort(reps.begin(), reps.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<EigenSphere> spheres;
  std::vector<Complex> sums;
  for (const Complex& z : reps) {
    bool merged = false;
    for (std::size_t s = 0; s < spheres.size(); ++s) {
      const Complex centre = sums[s] / static_cast<double>(spheres[s].multiplicity);
      if (std::abs(centre - z) <= pair_tol) {
        sums[s] += z;
        ++spheres[s].multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) {
      spheres.push_back({Quaternion{}, 1});
      sums.push_back(z);
    }
  }
  for (std::size_t s = 0; s < spheres.size(); ++s) {
    const Complex centre = sums[s] / static_cast<double>(spheres[s].multiplicity);
    spheres[s].representative = f.embed(Complex(centre.real(), std::abs(centre.imag())));
  }
  return spheres;
}

std::vector<SpectralComponent> spectral_decomposition(const QMatrix& t, double gap) {
  const std::size_t n = t.size();
  if (n == 0) return {};
  const Frame f = Frame::standard();
  ComplexMatrix x = complex_embed(t, f);
  x = 0.5 * (x + x.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x);
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  const double threshold = gap * std::max(1.0, values.cwiseAbs().maxCoeff());

  std::vector<SpectralComponent> out;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index stop = start + 1;
    while (stop < values.size() && values(stop) - values(stop - 1) <= threshold) ++stop;
    const auto block = vectors.middleCols(start, stop - start);
    const ComplexMatrix p = block * block.adjoint();
    out.push_back({values.segment(start, stop - start).mean(), complex_unembed(p, f, 1e-6)});
    start = stop;
  }
  return out;
}

QMatrix spectral_projection(const QMatrix& t, double lo, double hi) {
  const Frame f = Frame::standard();
  ComplexMatrix x = complex_embed(t, f);
  x = 0.5 * (x + x.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x);
  const auto& values = solver.eigenvalues();
  ComplexMatrix p = ComplexMatrix::Zero(x.rows(), x.cols());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) >= lo && values(k) <= hi) {
      const auto v = solver.eigenvectors().col(k);
      p += v * v.adjoint();
    }
  }
  return complex_unembed(p, f, 1e-6);
}

// ---------------------------------------------------------------- polar

std::vector<QVector> orthonormalize(std::vector<QVector> candidates, double cutoff,
                                    std::size_t limit) {
  std::vector<QVector> basis;
  while (basis.size() < limit && !candidates.empty()) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const double nrm = norm(candidates[c]);
      if (nrm > best_norm) {
        best = c;
        best_norm = nrm;
      }
    }
    if (best_norm <= cutoff) break;
    QVector b = candidates[best] * (1.0 / best_norm);
    // Second pass against the accepted basis keeps orthogonality at rounding level.
    for (const auto& prev : basis) b -= prev * inner(prev, b);
    b *= 1.0 / norm(b);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto& c : candidates) c -= b * inner(b, c);
    basis.push_back(std::move(b));
  }
  return basis;
}

PolarFactors polar_antiselfadjoint(const QMatrix& a, const Frame& f, double tolerance) {
  const double asym = frobenius_norm(a + adjoint(a));
  if (asym > tolerance * std::max(1.0, frobenius_norm(a))) {
    throw Error(ErrorKind::NotAntiSelfAdjoint, "polar_antiselfadjoint needs A* = -A", asym);
  }
  const std::size_t n = a.size();
  ComplexMatrix x = complex_embed(a, f);
  x = 0.5 * (x - x.adjoint()).eval();
  // i x is Hermitian with eigenvalues mu; then |x| = |mu| and on the range
  // the unitary factor is -i sign(mu). Working with mu directly avoids the
  // square roots of a Gram matrix, which blow rounding up to sqrt(eps).
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(Complex(0.0, 1.0) * x);
  const RealVector mu = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();
  const RealVector s = mu.cwiseAbs();
  const double cutoff = 1e-9 * std::max(1.0, s.maxCoeff());

  ComplexVector phase = ComplexVector::Zero(s.size());
  RealVector kernel_mask = RealVector::Zero(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) {
      phase(k) = Complex(0.0, mu(k) > 0.0 ? -1.0 : 1.0);
    } else {
      kernel_mask(k) = 1.0;
    }
  }
  const ComplexMatrix m_chi = v * s.asDiagonal() * v.adjoint();
  const ComplexMatrix j_chi = v * phase.asDiagonal() * v.adjoint();
  const ComplexMatrix kernel_chi = v * kernel_mask.asDiagonal() * v.adjoint();

  PolarFactors out{complex_unembed(j_chi, f, 1e-6), complex_unembed(m_chi, f, 1e-6)};
  out.M = 0.5 * (out.M + adjoint(out.M));

  const auto kernel_dim = static_cast<std::size_t>(std::lround(kernel_mask.sum() / 2.0));
  if (kernel_dim > 0) {
    const QMatrix p0 = complex_unembed(kernel_chi, f, 1e-6);
    std::vector<QVector> candidates;
    for (std::size_t m = 0; m < n; ++m) candidates.push_back(p0.column(m));
    const auto basis = orthonormalize(std::move(candidates), 1e-6, kernel_dim);
    if (basis.size() != kernel_dim) {
      throw Error(ErrorKind::InternalInconsistency, "kernel basis extraction lost rank");
    }
    const Quaternion i = f.i().quaternion();
    for (const auto& b : basis) out.J += outer(b * i, b);
  }
  return out;
}

// ---------------------------------------------------------------- flags

namespace {

template <class Matrix, class Adjoint, class Norm, class Identity>
OperatorFlags flags_from_residuals(const Matrix& t, Adjoint adj, Norm nrm, Identity id,
                                   double tolerance) {
  const Matrix ts = adj(t);
  const double scale = std::max(1.0, nrm(t));
  const double quad = scale * scale;
  OperatorFlags flags;
  flags.selfadjoint = nrm(t - ts) <= tolerance * scale;
  flags.antiselfadjoint = nrm(t + ts) <= tolerance * scale;
  flags.unitary = nrm(ts * t - id(t)) <= tolerance * quad;
  flags.normal = nrm(t * ts - ts * t) <= tolerance * quad;
  flags.projection = nrm(t * t - t) + nrm(t - ts) <= tolerance * quad;
  return flags;
}

}  // namespace

OperatorFlags classify_operator(const QMatrix& t, double tolerance) {
  return flags_from_residuals(
      t, [](const QMatrix& m) { return adjoint(m); },
      [](const QMatrix& m) { return frobenius_norm(m); },
      [](const QMatrix& m) { return QMatrix::identity(m.size()); }, tolerance);
}

OperatorFlags classify_operator(const ComplexMatrix& t, double tolerance) {
  return flags_from_residuals(
      t, [](const ComplexMatrix& m) -> ComplexMatrix { return m.adjoint(); },
      [](const ComplexMatrix& m) { return m.norm(); },
      [](const ComplexMatrix& m) -> ComplexMatrix {
        return ComplexMatrix::Identity(m.rows(), m.cols());
      },
      tolerance);
}

OperatorFlags classify_operator(const RealMatrix& t, double tolerance) {
  return flags_from_residuals(
      t, [](const RealMatrix& m) -> RealMatrix { return m.transpose(); },
      [](const RealMatrix& m) { return m.norm(); },
      [](const RealMatrix& m) -> RealMatrix { return RealMatrix::Identity(m.rows(), m.cols()); },
      tolerance);
}

}  // namespace quatkit
