#pragma once

// Machine-readable outcome of a CLI command.

#include <string>
#include <vector>

#include "quatkit/algebra.hpp"
#include "quatkit/io.hpp"

namespace quatkit {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  // Residuals that are NaN or infinite never pass.
  bool pass() const;
};

enum class Status { Pass, Fail, Error };
std::string to_string(Status s);

struct Report {
  std::string command;
  std::vector<Check> checks;
  io::json artifacts = io::json::object();
  // Set for commands that stop on a library error.
  std::optional<std::string> error;

  void add(std::string name, double residual, double tolerance);
  void add(const Certificate& c);

  Status status() const;
  io::json to_json() const;
  // One line per failing check plus a totals line.
  std::string summary() const;
};

// 0 pass, 1 fail, 2 error.
int exit_code(Status s);

}  // namespace quatkit
