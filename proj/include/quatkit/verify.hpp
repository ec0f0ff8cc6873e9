#pragma once

// Property suite behind `quatkit verify` and the acceptance criteria.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quatkit/report.hpp"
#include "quatkit/sampling.hpp"

namespace quatkit {

struct Property {
  std::string name;
  double tolerance;  // before tolerance_scale()
  // Largest residual over `trials` random instances at quaternionic dimension n.
  std::function<double(Rng&, std::size_t n, std::size_t trials)> run;
};

const std::vector<Property>& property_registry();

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::vector<std::size_t> dims = {2, 3};
  std::size_t trials = 20;
  std::size_t jobs = 1;
};

// One check per (property, dim), named "<property>[n=<dim>]", in registry
// order within each dim. Seeds are derived from (seed, property, dim), so the
// result does not depend on `jobs`.
Report run_verify(const VerifyOptions& options);

struct CriterionResult {
  int id = 0;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
  bool pass() const;
};

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20240917);
// Runs a single criterion (1..9).
CriterionResult run_criterion(int id, std::uint64_t seed = 20240917);

}  // namespace quatkit
