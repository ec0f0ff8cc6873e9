#include "quatkit/report.hpp"

#include <cmath>
#include <sstream>

namespace quatkit {

bool Check::pass() const { return std::isfinite(residual) && residual <= tolerance; }

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "error";
}

void Report::add(std::string name, double residual, double tolerance) {
  checks.push_back({std::move(name), residual, tolerance});
}

void Report::add(const Certificate& c) { add(c.name, c.residual, c.tolerance); }

Status Report::status() const {
  if (error) return Status::Error;
  for (const auto& c : checks)
    if (!c.pass()) return Status::Fail;
  return Status::Pass;
}

io::json Report::to_json() const {
  io::json cs = io::json::array();
  for (const auto& c : checks) {
    // JSON has no NaN/inf; a non-finite residual is reported as null.
    io::json residual = std::isfinite(c.residual) ? io::json(c.residual) : io::json(nullptr);
    cs.push_back({{"name", c.name},
                  {"residual", residual},
                  {"tolerance", c.tolerance},
                  {"pass", c.pass()}});
  }
  io::json out = {{"command", command},
                  {"status", to_string(status())},
                  {"checks", std::move(cs)},
                  {"artifacts", artifacts}};
  if (error) out["error"] = *error;
  return out;
}

std::string Report::summary() const {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& c : checks) {
    if (c.pass()) {
      ++passed;
    } else {
      os << "FAIL " << c.name << " residual=" << c.residual << " tol=" << c.tolerance << '\n';
    }
  }
  if (error) os << "error: " << *error << '\n';
  os << command << ": " << to_string(status()) << " (" << passed << "/" << checks.size()
     << " checks passed)\n";
  return os.str();
}

int exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

}  // namespace quatkit
