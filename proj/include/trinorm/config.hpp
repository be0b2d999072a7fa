#pragma once

// Shared run configuration threaded from the CLI into solvers and reports.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trinorm {

enum class OutputFormat { text, structured };

struct RunConfig {
  std::uint64_t seed = 0;
  int restarts = 32;
  double tol = 1e-10;
  int n_grid = 2000;
  OutputFormat format = OutputFormat::text;

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("config: restarts must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
    if (n_grid < 100) throw std::invalid_argument("config: grid resolution must be >= 100");
  }
};

}  // namespace trinorm
