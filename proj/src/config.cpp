#include "cusp/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cusp {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& s, int line) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, "expected a number, got '" + s + "'");
  }
}

long parse_long(const std::string& s, int line) {
  try {
    size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, "expected an integer, got '" + s + "'");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "slice" && section != "perturbation" && section != "range" &&
          section != "solver" && section != "study" && section != "output")
        throw ConfigError(line, "unknown section [" + section + "]");
      continue;
    }

    const size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty())
      throw ConfigError(line, "key '" + key + "' outside any section");

    if (section == "slice") {
      if (key == "n") {
        cfg.n = int(parse_long(value, line));
        if (cfg.n != 1 && cfg.n != 2)
          throw ConfigError(line, "slice dimension n must be 1 or 2");
      } else if (key == "periods") {
        cfg.periods.clear();
        for (const auto& item : split_list(value))
          cfg.periods.push_back(parse_double(item, line));
      } else if (key == "grid") {
        cfg.grid.clear();
        for (const auto& item : split_list(value))
          cfg.grid.push_back(int(parse_long(item, line)));
      } else {
        throw ConfigError(line, "unknown key '" + key + "' in [slice]");
      }
    } else if (section == "perturbation") {
      if (key == "family") {
        cfg.family = value;
      } else if (key == "alpha") {
        cfg.alpha = parse_double(value, line);
        if (!(cfg.alpha > 4.0))
          throw ConfigError(
              line, "alpha = " + value +
                        " is not admissible: the perturbation decay order must "
                        "exceed 4 for the near-boundary CMC construction");
      } else if (key == "amplitude") {
        cfg.amplitude = parse_double(value, line);
        if (cfg.amplitude < 0.0)
          throw ConfigError(line, "amplitude must be nonnegative");
      } else {
        throw ConfigError(line, "unknown key '" + key + "' in [perturbation]");
      }
    } else if (section == "range") {
      if (key == "r_min") {
        cfg.r_min = parse_double(value, line);
      } else if (key == "r_max") {
        cfg.r_max = parse_double(value, line);
      } else {
        throw ConfigError(line, "unknown key '" + key + "' in [range]");
      }
    } else if (section == "solver") {
      if (key == "method") {
        if (value != "picard" && value != "newton" && value != "both")
          throw ConfigError(line, "method must be picard, newton or both");
        cfg.method = value;
      } else if (key == "r0") {
        cfg.r0 = parse_double(value, line);
      } else if (key == "tol") {
        cfg.tol = parse_double(value, line);
        if (!(cfg.tol > 0.0)) throw ConfigError(line, "tol must be positive");
      } else if (key == "max_iter") {
        cfg.max_iter = int(parse_long(value, line));
        if (cfg.max_iter < 1) throw ConfigError(line, "max_iter must be >= 1");
      } else if (key == "eta") {
        cfg.eta = parse_double(value, line);
        if (!(cfg.eta > 0.0)) throw ConfigError(line, "eta must be positive");
      } else {
        throw ConfigError(line, "unknown key '" + key + "' in [solver]");
      }
    } else if (section == "study") {
      if (key == "foliation_r_min") {
        cfg.foliation_r_min = parse_double(value, line);
      } else if (key == "foliation_r_max") {
        cfg.foliation_r_max = parse_double(value, line);
      } else if (key == "foliation_steps") {
        cfg.foliation_steps = int(parse_long(value, line));
      } else if (key == "v_grid") {
        cfg.v_grid.clear();
        for (const auto& item : split_list(value))
          cfg.v_grid.push_back(parse_double(item, line));
      } else if (key == "disk_center") {
        cfg.disk_center = parse_double(value, line);
      } else if (key == "seed") {
        cfg.seed = std::uint64_t(parse_long(value, line));
      } else {
        throw ConfigError(line, "unknown key '" + key + "' in [study]");
      }
    } else if (section == "output") {
      if (key == "directory") {
        cfg.directory = value;
      } else {
        throw ConfigError(line, "unknown key '" + key + "' in [output]");
      }
    }
  }

  if (int(cfg.periods.size()) != cfg.n)
    throw ConfigError(0, "periods must list exactly n values");
  if (int(cfg.grid.size()) != cfg.n)
    throw ConfigError(0, "grid must list exactly n values");
  for (double p : cfg.periods)
    if (!(p > 0.0)) throw ConfigError(0, "periods must be positive");
  for (int gsz : cfg.grid)
    if (gsz < 8 || gsz % 2)
      throw ConfigError(0, "grid sizes must be even and at least 8");
  if (!(cfg.r_min > 0.0) || !(cfg.r_min < cfg.r_max))
    throw ConfigError(0, "range must satisfy 0 < r_min < r_max");
  if (!(cfg.foliation_r_min < cfg.foliation_r_max) || cfg.foliation_steps < 2)
    throw ConfigError(0, "foliation grid needs r_min < r_max and >= 2 steps");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    if (e.line() > 0)
      throw ConfigError(e.line(),
                        path + ":" + std::to_string(e.line()) + ": " + e.what());
    throw ConfigError(0, path + ": " + std::string(e.what()));
  }
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto list_d = [](const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + g17(v[i]);
    return s;
  };
  auto list_i = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
      s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  out << "[slice]\n"
      << "n = " << cfg.n << "\n"
      << "periods = " << list_d(cfg.periods) << "\n"
      << "grid = " << list_i(cfg.grid) << "\n\n"
      << "[perturbation]\n"
      << "family = " << cfg.family << "\n"
      << "alpha = " << g17(cfg.alpha) << "\n"
      << "amplitude = " << g17(cfg.amplitude) << "\n\n"
      << "[range]\n"
      << "r_min = " << g17(cfg.r_min) << "\n"
      << "r_max = " << g17(cfg.r_max) << "\n\n"
      << "[solver]\n"
      << "method = " << cfg.method << "\n"
      << "r0 = " << g17(cfg.r0) << "\n"
      << "tol = " << g17(cfg.tol) << "\n"
      << "max_iter = " << cfg.max_iter << "\n"
      << "eta = " << g17(cfg.eta) << "\n\n"
      << "[study]\n"
      << "foliation_r_min = " << g17(cfg.foliation_r_min) << "\n"
      << "foliation_r_max = " << g17(cfg.foliation_r_max) << "\n"
      << "foliation_steps = " << cfg.foliation_steps << "\n"
      << "v_grid = " << list_d(cfg.v_grid) << "\n"
      << "disk_center = " << g17(cfg.disk_center) << "\n"
      << "seed = " << cfg.seed << "\n\n"
      << "[output]\n"
      << "directory = " << cfg.directory << "\n";
  return out.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace cusp
