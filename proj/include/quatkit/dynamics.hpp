#pragma once

// Schroedinger dynamics d/dt f = -H f for anti-selfadjoint H, the symplectic
// component picture f = F1 + j F2 (j acting from the left through a left
// multiplication), transition probabilities, quaternionic phases and the
// co-unitary construction.

#include <cstdint>
#include <vector>

#include "quatkit/functors.hpp"
#include "quatkit/qlinalg.hpp"

namespace quatkit {

class Hamiltonian {
 public:
  // Throws Error(Structure) unless H* = -H within `tolerance` (relative).
  Hamiltonian(QMatrix h, Frame frame = Frame::standard(), double tolerance = tol(1e-10));

  const QMatrix& matrix() const { return h_; }
  const Frame& frame() const { return frame_; }
  std::size_t size() const { return h_.size(); }

 private:
  QMatrix h_;
  Frame frame_;
};

// exp(-t H), computed on the complex embedding.
QMatrix propagator(const Hamiltonian& h, double t);
QVector evolve(const Hamiltonian& h, const QVector& v, double t);

struct SymplecticWave {
  ComplexVector F1;
  ComplexVector F2;
};

// v = f0 + M_i f1 + M_j f2 + M_k f3 over the real basis of L, then
// F1 = f0 + i f1 and F2 = f2 - i f3. Throws Error(Structure) when L was
// built for another frame.
SymplecticWave symplectic_components(const QVector& v, const Frame& f,
                                     const LeftMultiplication& left);
// f = F1 + j F2 with j acting through L.
QVector reconstruct(const SymplecticWave& wave, const LeftMultiplication& left);

// Real components of H = H0 + i H1 + j H2 + k H3 (entrywise, frame units).
struct HamiltonianComponents {
  RealMatrix H0;
  RealMatrix H1;
  RealMatrix H2;
  RealMatrix H3;
};

QMatrix assemble_hamiltonian(const HamiltonianComponents& c, const Frame& f);
HamiltonianComponents disassemble_hamiltonian(const QMatrix& h, const Frame& f);

// [[A, -conj B], [B, conj A]] with A = H0 + i H1, B = H2 - i H3: the matrix
// of H acting on (F1, F2). No structure check.
ComplexMatrix symplectic_block(const HamiltonianComponents& c);
// symplectic_block after checking that the assembled H is anti-selfadjoint.
ComplexMatrix hamiltonian_block(const HamiltonianComponents& c, const Frame& f,
                                double tolerance = tol(1e-9));
// (F1, F2)(t) = exp(-t block) (F1, F2)(0), the flow of d/dt f = -H f.
SymplecticWave evolve_components(const ComplexMatrix& block, const SymplecticWave& wave,
                                 double t);

struct TransitionProbabilities {
  double complex_part = 0.0;     // |<v,u>_C|^2
  double symplectic_part = 0.0;  // |<v,u>_S|^2
  double quaternionic = 0.0;     // |<v,u>|^2
};

TransitionProbabilities transition_probs(const QVector& v, const QVector& u, const Frame& f,
                                         double tolerance = tol(1e-10));

// h_k = conj(w_k) (w_{k+1} - w_k) / dt for consecutive unit samples.
std::vector<Quaternion> quaternionic_phase(const std::vector<Quaternion>& samples, double dt);

struct CounitaryCase {
  QMatrix candidate;           // v -> U_phi(v) h = U v
  double linearity_residual = 0.0;  // |U_phi(v a) - U_phi(v) phi(a)|
  double inner_residual = 0.0;      // |<U_phi v, U_phi u> - phi(<v, u>)|
  bool identity_action = false;     // candidate left action is v -> v
};

struct CounitaryPair {
  std::size_t first = 0;
  std::size_t second = 0;
  double distance = 0.0;      // operator norm of the candidate difference
  bool same_symmetry = false;  // U2 U1^-1 is a real multiple of I
};

struct CounitaryReport {
  Quaternion h;
  std::vector<CounitaryCase> cases;
  std::vector<CounitaryPair> pairs;

  double max_counitary_residual() const;
  // Two symmetries that differ by a non-central unitary give different
  // candidate left multiplications.
  bool non_unique(double threshold = 0.1) const;
};

// For phi(x) = h x h^-1 and U_phi(v) = (U v) h^-1, checks the co-unitary
// identities on `samples` random vectors and scalars drawn from `seed`.
CounitaryReport counitary_demo(const Quaternion& h, const std::vector<QMatrix>& unitaries,
                               std::uint64_t seed = 7, std::size_t samples = 8);

}  // namespace quatkit
