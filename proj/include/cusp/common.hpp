#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cusp {

inline constexpr double kPi = 3.14159265358979323846;

/// Contract violation in a geometric evaluation (degenerate metric, graph
/// outside the chart, non-unit normal, ...). The message names the contract.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonlinear solve did not meet its convergence contract. Carries the
/// sup-norm residual history so divergence can be reported as data.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}

  const std::vector<double>& residual_history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Malformed run configuration; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

}  // namespace cusp
