#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quatkit {

enum class ErrorKind {
  Dimension,
  NotInImage,
  NotNormal,
  NotAntiSelfAdjoint,
  Structure,
  DoesNotCommute,
  Basis,
  InternalInconsistency,
  Precondition,
  NotInScalarCommutant,
  ZeroProbability,
  NotComplexInduced,
  Normalization,
  Format,  // malformed input document
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. `residual` carries the measured
// violation when the error comes from a numerical check.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<double> residual = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  ErrorKind kind_;
  std::optional<double> residual_;
};

// Multiplier applied to every default tolerance in the library. Initialised
// from the QR_TOL_SCALE environment variable on first use.
double tolerance_scale();
void set_tolerance_scale(double scale);

// Default tolerance `base` after applying tolerance_scale().
inline double tol(double base) { return base * tolerance_scale(); }

}  // namespace quatkit
