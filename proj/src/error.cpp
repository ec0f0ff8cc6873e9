#include "quatkit/error.hpp"

#include <atomic>
#include <cstdlib>

namespace quatkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAntiSelfAdjoint: return "NotAntiSelfAdjoint";
    case ErrorKind::Structure: return "StructureError";
    case ErrorKind::DoesNotCommute: return "DoesNotCommute";
    case ErrorKind::Basis: return "BasisError";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::Precondition: return "PreconditionError";
    case ErrorKind::NotInScalarCommutant: return "NotInScalarCommutant";
    case ErrorKind::ZeroProbability: return "ZeroProbability";
    case ErrorKind::NotComplexInduced: return "NotComplexInduced";
    case ErrorKind::Normalization: return "NormalizationError";
    case ErrorKind::Format: return "FormatError";
  }
  return "UnknownError";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& what,
                           std::optional<double> residual) {
  std::string msg{to_string(kind)};
  msg += ": ";
  msg += what;
  if (residual) {
    msg += " (residual " + std::to_string(*residual) + ")";
  }
  return msg;
}

double scale_from_env() {
  const char* raw = std::getenv("QR_TOL_SCALE");
  if (raw == nullptr) return 1.0;
  char* end = nullptr;
  double value = std::strtod(raw, &end);
  if (end == raw || !(value > 0.0)) return 1.0;
  return value;
}

std::atomic<double>& scale_slot() {
  static std::atomic<double> slot{scale_from_env()};
  return slot;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& what,
             std::optional<double> residual)
    : std::runtime_error(format_message(kind, what, residual)),
      kind_(kind),
      residual_(residual) {}

double tolerance_scale() { return scale_slot().load(std::memory_order_relaxed); }

void set_tolerance_scale(double scale) {
  scale_slot().store(scale, std::memory_order_relaxed);
}

}  // namespace quatkit
