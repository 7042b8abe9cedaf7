#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cusp/common.hpp"

namespace cusp {

/// One experiment configuration, mirroring the INI-style config file
/// documented in the README. Parsing is strict: unknown sections or keys are
/// errors carrying the offending line number.
struct RunConfig {
  // [slice]
  int n = 1;
  std::vector<double> periods{2.0 * kPi};
  std::vector<int> grid{64};

  // [perturbation]
  std::string family = "zero";
  double alpha = 5.0;
  double amplitude = 0.0;

  // [range]
  double r_min = 2.0;
  double r_max = 8.0;

  // [solver]
  std::string method = "picard";  // picard | newton | both
  double r0 = 4.0;
  double tol = 1e-10;
  int max_iter = 200;
  double eta = 0.1;

  // [study]
  double foliation_r_min = 3.0;
  double foliation_r_max = 7.0;
  int foliation_steps = 9;
  std::vector<double> v_grid{0.01, 0.05, 0.1, 0.3, 0.5};
  double disk_center = 4.0;
  std::uint64_t seed = 12345;

  // [output]
  std::string directory = "out";

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);  // adds the path to messages
std::string serialize_config(const RunConfig& cfg);

/// FNV-1a over the canonical serialization; stamped into CSV headers.
std::uint64_t config_hash(const RunConfig& cfg);

/// Shortest round-trippable decimal form of a double ("%.17g").
std::string g17(double v);

}  // namespace cusp
