#pragma once

// Seeded random generators for operators, states and planted algebras.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "quatkit/qlinalg.hpp"

namespace quatkit {

using Rng = std::mt19937_64;

// Mixes a master seed with stream indices (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

double random_normal(Rng& rng);
double random_uniform(Rng& rng, double lo, double hi);
Quaternion random_quaternion(Rng& rng);
Quaternion random_unit_quaternion(Rng& rng);
ImaginaryUnit random_imaginary_unit(Rng& rng);
Frame random_frame(Rng& rng);

QVector random_qvector(Rng& rng, std::size_t n);
QVector random_unit_qvector(Rng& rng, std::size_t n);
QMatrix random_qmatrix(Rng& rng, std::size_t n);
QMatrix random_selfadjoint(Rng& rng, std::size_t n);
QMatrix random_antiselfadjoint(Rng& rng, std::size_t n);
QMatrix random_unitary(Rng& rng, std::size_t n);
// W (u I) W* for Haar-like W and random unit imaginary u.
QMatrix random_anti_unit(Rng& rng, std::size_t n);

RealMatrix random_real_matrix(Rng& rng, std::size_t rows, std::size_t cols);
RealMatrix random_orthogonal(Rng& rng, std::size_t n);
ComplexMatrix random_complex_matrix(Rng& rng, std::size_t n);
ComplexMatrix random_complex_unitary(Rng& rng, std::size_t n);
ComplexMatrix random_antihermitian(Rng& rng, std::size_t n);

// Planted irreducible algebras (generators only; StarAlgebra adds I and
// adjoints). `frame` is the hidden structure: the planted J is
// W (i I) W*, the planted (I, J) pair is (W (i I) W*, W (j I) W*).
struct PlantedAlgebra {
  std::vector<QMatrix> generators;
  QMatrix W;
  std::optional<QMatrix> J;
  std::optional<QMatrix> I;
};

PlantedAlgebra planted_full_algebra(Rng& rng, std::size_t n);
PlantedAlgebra planted_complex_induced(Rng& rng, std::size_t n, const Frame& frame);
PlantedAlgebra planted_real_induced(Rng& rng, std::size_t n, const Frame& frame);

}  // namespace quatkit
