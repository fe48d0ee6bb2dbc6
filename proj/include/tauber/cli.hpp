#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tauber/io.hpp"

namespace tauber::cli {

struct RunConfig {
  std::string command;  // count | series | constants | moments | check | factorize
  int n = 4;
  std::int64_t x = 1000;
  double x_min = 1e3;
  double x_max = 1e7;
  double sigma = 0.5;
  double t_min = 100.0;
  double t_max = 800.0;
  double z = 1.0;
  int field = 1;  // moments of zeta_{Q(zeta_field)}
  double rel_tol = 1e-6;
  bool fit = false;
  int trunc = 0;  // 0 means 2a(G)
  std::string rule = "derived";
  std::string which = "all";
  std::string mode = "optimized";
  std::string params_path;
  std::string wild_path;
  std::string output;
  io::Format format = io::Format::csv;
  int threads = 0;

  void validate() const;
};

// Runs one command; returns 0 on success. Failures write one JSON line
// {"code": ..., "message": ...} to err and return nonzero.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv (flags > --config file > defaults) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tauber::cli
