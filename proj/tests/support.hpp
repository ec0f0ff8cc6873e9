#pragma once

#include <optional>

#include "quatkit/error.hpp"
#include "quatkit/qlinalg.hpp"

namespace testing {

inline double dist(const quatkit::Quaternion& a, const quatkit::Quaternion& b) {
  return quatkit::abs(a - b);
}

inline quatkit::QMatrix diag(std::initializer_list<quatkit::Quaternion> d) {
  return quatkit::QMatrix::diagonal(d);
}

// Kind of the Error thrown by f, if any.
template <class F>
std::optional<quatkit::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const quatkit::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing
