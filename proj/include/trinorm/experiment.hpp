#pragma once

// Gap-statistics experiment: draw `count` random tensors of a fixed shape,
// compare the best of the six slice lower bounds with an oracle reference,
// and tabulate the cumulative fraction of instances whose relative gap
// (reference - bound) / reference falls within fixed thresholds.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "trinorm/bounds.hpp"
#include "trinorm/config.hpp"
#include "trinorm/oracle.hpp"
#include "trinorm/rng.hpp"
#include "trinorm/tensor.hpp"

namespace trinorm {

inline const std::array<double, 12>& experiment_thresholds() {
  static const std::array<double, 12> t{1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3,
                                        1e-2, 2e-2, 5e-2, 0.1,  0.2,  0.5};
  return t;
}

struct ExperimentRow {
  double threshold = 0.0;
  int within = 0;
  double fraction = 0.0;
};

struct ExperimentResult {
  int d1 = 0, d2 = 0, d3 = 0;
  int count = 0;
  std::string distribution;
  std::string reference;
  std::vector<ExperimentRow> rows;
  double mean_gap = 0.0;
  double max_gap = 0.0;
};

inline ExperimentResult run_experiment(int d1, int d2, int d3, int count,
                                       const RunConfig& config = {}) {
  config.validate();
  if (d1 < 1 || d2 < 1 || d3 < 1)
    throw std::invalid_argument("experiment: dimensions must be positive");
  if (count < 1) throw std::invalid_argument("experiment: count must be >= 1");

  const bool exact = d1 == 2 && d2 == 2;
  const int n_entries = d1 * d2 * d3;

  // Instances are independent with per-instance derived seeds, so any worker
  // may take any index; results land in a preallocated slot per instance.
  std::vector<double> gaps(static_cast<std::size_t>(count), 0.0);
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&] {
    try {
      for (int i; (i = next.fetch_add(1)) < count;) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
        std::vector<double> entries(static_cast<std::size_t>(n_entries));
        for (double& v : entries) v = rng.normal();
        const Tensor3 A(d1, d2, d3, std::move(entries));
        double bound = 0.0;
        for (int axis = 1; axis <= 3; ++axis)
          bound = std::max({bound, lower_slice(A, axis, SliceMode::first),
                            lower_slice(A, axis, SliceMode::second)});
        const double ref =
            exact ? grid_oracle_2x2(A, config.n_grid).value
                  : multistart_oracle(A, std::max(config.restarts, 512),
                                      derive_seed(derive_seed(config.seed, i), 1))
                        .value;
        gaps[static_cast<std::size_t>(i)] =
            ref > 0.0 ? std::max(0.0, (ref - bound) / ref) : 0.0;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!first_error) first_error = std::current_exception();
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const int n_workers = static_cast<int>(std::clamp(hw, 1u, 8u));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  ExperimentResult res;
  res.d1 = d1;
  res.d2 = d2;
  res.d3 = d3;
  res.count = count;
  res.distribution = "standard normal";
  res.reference = exact ? "grid" : "multistart";
  for (double g : gaps) {
    res.mean_gap += g / count;
    res.max_gap = std::max(res.max_gap, g);
  }
  for (double t : experiment_thresholds()) {
    ExperimentRow row;
    row.threshold = t;
    for (double g : gaps)
      if (g <= t + 1e-15) ++row.within;
    row.fraction = static_cast<double>(row.within) / count;
    res.rows.push_back(row);
  }
  return res;
}

inline std::string render_experiment(const ExperimentResult& r) {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof(buf), "shape = %dx%dx%d\ncount = %d\n", r.d1, r.d2, r.d3, r.count);
  out += buf;
  out += "distribution = " + r.distribution + "\n";
  out +=
      "note = gap fractions depend on the entry distribution; tables produced with a different "
      "or unstated distribution are not directly comparable\n";
  out += "reference = " + r.reference + "\n";
  std::snprintf(buf, sizeof(buf), "mean_gap = %.6f\nmax_gap = %.6f\n", r.mean_gap, r.max_gap);
  out += buf;
  out += "threshold   within  fraction\n";
  for (const ExperimentRow& row : r.rows) {
    std::snprintf(buf, sizeof(buf), "%8.4f%%  %6d  %7.2f%%\n", row.threshold * 100.0, row.within,
                  row.fraction * 100.0);
    out += buf;
  }
  return out;
}

}  // namespace trinorm
