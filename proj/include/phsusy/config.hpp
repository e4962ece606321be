#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "phsusy/errors.hpp"
#include "phsusy/linalg.hpp"
#include "phsusy/model.hpp"
#include "phsusy/scs.hpp"

namespace phsusy {

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s = {"core",      "phermion", "susy",
                                             "grassmann", "scs",      "identity"};
  return s;
}

struct RunConfig {
  double omega = 2.0;
  double alpha = 1.0;
  double beta = 0.5;
  double z = 0.0;
  bool hermitian_limit = false;
  int n_max = 8;
  std::vector<cplx> amplitudes = {cplx(0.2, 0.0), cplx(0.1, 0.1)};
  QuadratureSpec quadrature;
  std::uint64_t seed = 12345;
  int samples = 25;  // random draws per identity in the sampled battery
  std::vector<std::string> suites = {"core", "phermion", "susy", "grassmann", "scs"};

  ModelParams params() const { return ModelParams{omega, alpha, beta, hermitian_limit}; }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key + "' is not a number: '" + v + "'");
  }
  if (used != v.size()) throw ConfigError("trailing characters in '" + key + "': '" + v + "'");
  return x;
}

inline long parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key + "' is not an integer: '" + v + "'");
  }
  if (used != v.size()) throw ConfigError("trailing characters in '" + key + "': '" + v + "'");
  return x;
}

}  // namespace detail

// Complex literal: "1.5", "2i", "1+0.5i", "0.3-2i" (no spaces inside).
inline cplx parse_complex(const std::string& raw) {
  const std::string s = detail::trim(raw);
  if (s.empty()) throw ConfigError("empty complex literal");
  if (s.back() == 'i' || s.back() == 'I') {
    const std::string body = s.substr(0, s.size() - 1);
    // find the sign that splits real and imaginary parts (skip a leading sign
    // and signs inside exponents)
    for (std::size_t k = body.size(); k-- > 1;) {
      const char c = body[k];
      if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        const double re = detail::parse_double("complex real part", body.substr(0, k));
        std::string im = body.substr(k);
        if (im == "+" || im == "-") im += "1";
        return cplx(re, detail::parse_double("complex imaginary part", im));
      }
    }
    std::string im = body.empty() ? "1" : body;
    if (im == "+" || im == "-") im += "1";
    return cplx(0.0, detail::parse_double("complex imaginary part", im));
  }
  return cplx(detail::parse_double("complex literal", s), 0.0);
}

inline void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "omega")
    cfg.omega = detail::parse_double(key, value);
  else if (key == "alpha")
    cfg.alpha = detail::parse_double(key, value);
  else if (key == "beta")
    cfg.beta = detail::parse_double(key, value);
  else if (key == "z")
    cfg.z = detail::parse_double(key, value);
  else if (key == "hermitian_limit")
    cfg.hermitian_limit = (value == "true" || value == "1" || value == "yes");
  else if (key == "n_max")
    cfg.n_max = int(detail::parse_int(key, value));
  else if (key == "seed")
    cfg.seed = std::uint64_t(detail::parse_int(key, value));
  else if (key == "samples")
    cfg.samples = int(detail::parse_int(key, value));
  else if (key == "quad_radius")
    cfg.quadrature.radius = detail::parse_double(key, value);
  else if (key == "quad_radial")
    cfg.quadrature.n_radial = int(detail::parse_int(key, value));
  else if (key == "quad_angular")
    cfg.quadrature.n_angular = int(detail::parse_int(key, value));
  else if (key == "amplitudes") {
    cfg.amplitudes.clear();
    for (const auto& tok : detail::split(value, ','))
      if (!tok.empty()) cfg.amplitudes.push_back(parse_complex(tok));
  } else if (key == "suites") {
    cfg.suites = detail::split(value, ',');
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

// key = value lines; '#' starts a comment; blank lines ignored.
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " is not key = value: '" +
                        line + "'");
    try {
      apply_config_entry(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

inline void validate_config(const RunConfig& cfg) {
  if (cfg.n_max < 2) throw ConfigError("n_max must be at least 2");
  if (cfg.n_max > 4096) throw ConfigError("n_max too large for dense construction");
  if (cfg.quadrature.radius <= 0.0) throw ConfigError("quad_radius must be positive");
  if (cfg.quadrature.n_radial < 2 || cfg.quadrature.n_angular < 2)
    throw ConfigError("quadrature needs at least 2 nodes per direction");
  if (cfg.samples < 1) throw ConfigError("samples must be positive");
  if (cfg.suites.empty()) throw ConfigError("no suites selected");
  for (const auto& s : cfg.suites)
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
      throw ConfigError("unknown suite '" + s + "'");
  // model validity / representability are checked where they are used, with
  // the offending values in the message
}

}  // namespace phsusy
