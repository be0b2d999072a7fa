#pragma once

// Closed-form upper and lower bounds on the tensor spectral norm, the
// slice/Gram sandwich chain, nuclear-norm brackets, and an auditable report
// that records every asserted inequality with its slack.

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trinorm/config.hpp"
#include "trinorm/eig.hpp"
#include "trinorm/io.hpp"
#include "trinorm/msolve.hpp"
#include "trinorm/tensor.hpp"
#include "trinorm/vec.hpp"

namespace trinorm {

// sqrt of the spectral radius of the flattened axis-k self-contraction; an
// upper bound on the spectral norm, tight for rank-one tensors.
inline double upper_flatten(const Tensor3& A, int axis) {
  const SymMatrix F = flatten_biquadratic(contract(A, axis));
  return std::sqrt(std::max(0.0, spectral_radius(F)));
}

// sqrt of the spectral radius of the axis-k Gram matrix; equals upper_flatten
// on the same axis because unfold*unfold' and unfold'*unfold share spectra.
inline double upper_gram(const Tensor3& A, int axis) {
  return std::sqrt(std::max(0.0, spectral_radius(gram(A, axis))));
}

namespace detail {

inline double peak_slice_radius(const Tensor3& A, int axis, SliceMode mode) {
  double peak = 0.0;
  for (const SymMatrix& S : slice_matrices(contract(A, axis), mode))
    peak = std::max(peak, spectral_radius(S));
  return peak;
}

}  // namespace detail

// sqrt of the largest spectral radius over one slice family of the axis-k
// self-contraction; a lower bound on the spectral norm. Six (axis, mode)
// combinations exist; several coincide because the slice families do.
inline double lower_slice(const Tensor3& A, int axis, SliceMode mode) {
  return std::sqrt(detail::peak_slice_radius(A, axis, mode));
}

struct Verdict {
  std::string name;
  bool pass = false;
  // For "lhs <= rhs" checks: the signed margin rhs - lhs. For equality
  // checks: the absolute difference. Pass thresholds are fixed in code.
  double slack = 0.0;
};

// The chain (1/d) rho(B) <= L <= estimate^2 <= rho(B) <= d L, where B is the
// axis Gram matrix, the matching slice family sums to B, L is its largest
// slice radius, and d is the family size.
struct SandwichRecord {
  int axis = 0;
  int d = 0;
  double rho_over_d = 0.0;
  double L = 0.0;
  double estimate_sq = 0.0;
  double rho = 0.0;
  double d_times_L = 0.0;
  std::array<bool, 4> link_ok{false, false, false, false};
  std::array<double, 4> link_slack{0.0, 0.0, 0.0, 0.0};
};

inline SandwichRecord sandwich(const Tensor3& A, int axis, double estimate) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("sandwich: axis must be 1, 2, or 3");
  // The slice family that sums to the axis Gram matrix: B^(1) is the sum of
  // the second-mode slices of the axis-3 contraction, B^(2) of its
  // first-mode slices, B^(3) of the first-mode slices of the axis-1
  // contraction. d is the number of summands.
  int contract_axis = 0, d = 0;
  SliceMode mode = SliceMode::first;
  if (axis == 1) {
    contract_axis = 3;
    mode = SliceMode::second;
    d = A.d2();
  } else if (axis == 2) {
    contract_axis = 3;
    mode = SliceMode::first;
    d = A.d1();
  } else {
    contract_axis = 1;
    mode = SliceMode::first;
    d = A.d2();
  }

  SandwichRecord r;
  r.axis = axis;
  r.d = d;
  r.rho = spectral_radius(gram(A, axis));
  r.L = detail::peak_slice_radius(A, contract_axis, mode);
  r.estimate_sq = estimate * estimate;
  r.rho_over_d = r.rho / d;
  r.d_times_L = d * r.L;

  const double closed = 1e-9;   // slack for links between closed-form values
  const double solver = 1e-6;   // slack where the solver estimate enters
  r.link_slack[0] = r.L - r.rho_over_d;
  r.link_ok[0] = r.link_slack[0] >= -closed * (1.0 + std::abs(r.L));
  r.link_slack[1] = r.estimate_sq - r.L;
  r.link_ok[1] = r.link_slack[1] >= -solver * (1.0 + r.estimate_sq);
  r.link_slack[2] = r.rho - r.estimate_sq;
  r.link_ok[2] = r.link_slack[2] >= -closed * (1.0 + r.rho);
  r.link_slack[3] = r.d_times_L - r.rho;
  r.link_ok[3] = r.link_slack[3] >= -closed * (1.0 + r.d_times_L);
  return r;
}

inline SandwichRecord sandwich(const Tensor3& A, int axis) {
  return sandwich(A, axis, spectral_norm(A).value);
}

struct NuclearAxisRecord {
  int axis = 0;
  double flatten_nuclear = 0.0;  // nuclear norm of the flattened contraction
  double gram_nuclear = 0.0;     // nuclear norm of the Gram matrix
  double unfold_nuclear = 0.0;   // sum of singular values of the unfolding
  double bracket_lo = 0.0;       // sqrt(gram_nuclear)
  double bracket_hi = 0.0;       // sqrt(min(other two dims) * gram_nuclear)
};

struct NuclearEstimate {
  double value = 0.0;   // certified upper bound: sum of |weights| plus tail
  double tail = 0.0;    // sqrt(d1 d2 d3) * Frobenius norm of the residual
  int terms = 0;
  bool converged = false;  // residual driven below 1e-10
};

struct NuclearRecord {
  std::array<NuclearAxisRecord, 3> per_axis;
  double best_lower = 0.0;
  double bracket_lo = 0.0;  // intersection of the per-axis brackets
  double bracket_hi = 0.0;
  NuclearEstimate upper;    // filled by build_report, zero otherwise
};

inline NuclearRecord nuclear_bounds(const Tensor3& A) {
  const std::array<int, 3> dims{A.d1(), A.d2(), A.d3()};
  NuclearRecord r;
  for (int k = 1; k <= 3; ++k) {
    NuclearAxisRecord& a = r.per_axis[k - 1];
    a.axis = k;
    a.flatten_nuclear = matrix_nuclear(flatten_biquadratic(contract(A, k)));
    a.gram_nuclear = matrix_nuclear(gram(A, k));
    a.unfold_nuclear = matrix_nuclear_rect(unfold(A, k));
    const int other_min = std::min(dims[k % 3], dims[(k + 1) % 3]);
    a.bracket_lo = std::sqrt(std::max(0.0, a.gram_nuclear));
    a.bracket_hi = std::sqrt(std::max(0.0, other_min * a.gram_nuclear));
    r.best_lower = std::max({r.best_lower, std::sqrt(std::max(0.0, a.flatten_nuclear)),
                             a.bracket_lo, a.unfold_nuclear});
    r.bracket_lo = std::max(r.bracket_lo, a.bracket_lo);
    r.bracket_hi = k == 1 ? a.bracket_hi : std::min(r.bracket_hi, a.bracket_hi);
  }
  return r;
}

// Greedy rank-one deflation: repeatedly subtract the best rank-one fit of the
// residual and accumulate the absolute weights. Adding sqrt(d1 d2 d3) times
// the final residual's Frobenius norm keeps the result a certified upper
// bound on the nuclear norm even when deflation stalls (the entrywise
// decomposition of the residual costs at most that much).
inline NuclearEstimate nuclear_upper_estimate(const Tensor3& A, int max_rank = 0,
                                              int restarts = 32, std::uint64_t seed = 0) {
  const int cap = max_rank > 0 ? max_rank : A.d1() * A.d2() * A.d3();
  const double scale = std::sqrt(static_cast<double>(A.d1()) * A.d2() * A.d3());

  NuclearEstimate e;
  std::vector<double> res(A.entries().begin(), A.entries().end());
  double res_norm = frobenius(A);
  for (int term = 0; term < cap; ++term) {
    if (res_norm < 1e-10) {
      e.converged = true;
      break;
    }
    const Tensor3 R(A.d1(), A.d2(), A.d3(), std::vector<double>(res));
    SingularTriple t;
    try {
      t = multistart_hopm(R, restarts, derive_seed(seed, static_cast<std::uint64_t>(term)));
    } catch (const ConvergenceError&) {
      break;
    }
    if (t.lambda < 1e-14) break;
    std::size_t idx = 0;
    for (int i = 0; i < A.d1(); ++i)
      for (int j = 0; j < A.d2(); ++j)
        for (int k = 0; k < A.d3(); ++k, ++idx) res[idx] -= t.lambda * t.x[i] * t.y[j] * t.z[k];
    e.value += t.lambda;
    ++e.terms;
    double next_norm = 0.0;
    for (double v : res) next_norm += v * v;
    next_norm = std::sqrt(next_norm);
    if (res_norm - next_norm < 1e-14) {
      res_norm = next_norm;
      break;
    }
    res_norm = next_norm;
  }
  if (res_norm < 1e-10) e.converged = true;
  e.tail = scale * res_norm;
  e.value += e.tail;
  return e;
}

struct LowerEntry {
  int axis = 0;
  SliceMode mode = SliceMode::first;
  double value = 0.0;
};

struct BoundsReport {
  double estimate = 0.0;
  double hopm_route = 0.0;
  double meig_route = 0.0;
  std::array<double, 3> upper_flatten{};   // indexed by axis - 1
  std::array<double, 3> upper_gram{};
  std::array<LowerEntry, 6> lower_slice{};
  std::array<SandwichRecord, 3> sandwiches{};
  NuclearRecord nuclear;
  std::vector<Verdict> verdicts;
  std::vector<std::string> footnotes;
  std::vector<std::string> errors;  // per-entry computation failures

  bool all_pass() const {
    for (const Verdict& v : verdicts)
      if (!v.pass) return false;
    return errors.empty();
  }
};

inline const char* slice_mode_name(SliceMode m) {
  return m == SliceMode::first ? "first" : "second";
}

inline BoundsReport build_report(const Tensor3& A, const RunConfig& config = {}) {
  config.validate();
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  BoundsReport r;

  // Independent bound computations fan out; each task is pure.
  auto est_fut = std::async(std::launch::async, [&] {
    return spectral_norm(A, config.restarts, config.seed, config.tol);
  });
  std::array<std::future<std::pair<double, double>>, 3> upper_futs;
  for (int k = 1; k <= 3; ++k)
    upper_futs[k - 1] = std::async(std::launch::async, [&A, k] {
      return std::make_pair(upper_flatten(A, k), upper_gram(A, k));
    });
  auto lower_fut = std::async(std::launch::async, [&A] {
    std::array<LowerEntry, 6> lo{};
    int n = 0;
    for (int axis = 1; axis <= 3; ++axis)
      for (SliceMode mode : {SliceMode::first, SliceMode::second})
        lo[n++] = LowerEntry{axis, mode, lower_slice(A, axis, mode)};
    return lo;
  });
  auto nuclear_fut = std::async(std::launch::async, [&A] { return nuclear_bounds(A); });
  auto nuclear_upper_fut = std::async(std::launch::async, [&A, &config] {
    return nuclear_upper_estimate(A, 0, config.restarts, derive_seed(config.seed, 3));
  });

  bool have_estimate = false;
  try {
    const SpectralEstimate est = est_fut.get();
    r.estimate = est.value;
    r.hopm_route = est.hopm_route;
    r.meig_route = est.meig_route;
    have_estimate = true;
  } catch (const std::exception& e) {
    r.estimate = r.hopm_route = r.meig_route = kNaN;
    r.errors.push_back(std::string("estimate: ") + e.what());
  }
  for (int k = 1; k <= 3; ++k) {
    try {
      const auto [uf, ug] = upper_futs[k - 1].get();
      r.upper_flatten[k - 1] = uf;
      r.upper_gram[k - 1] = ug;
    } catch (const std::exception& e) {
      r.upper_flatten[k - 1] = r.upper_gram[k - 1] = kNaN;
      r.errors.push_back("upper.axis" + std::to_string(k) + ": " + e.what());
    }
  }
  bool have_lower = false;
  try {
    r.lower_slice = lower_fut.get();
    have_lower = true;
  } catch (const std::exception& e) {
    r.errors.push_back(std::string("lower: ") + e.what());
  }
  bool have_nuclear = false;
  try {
    r.nuclear = nuclear_fut.get();
    have_nuclear = true;
  } catch (const std::exception& e) {
    r.errors.push_back(std::string("nuclear: ") + e.what());
  }
  try {
    r.nuclear.upper = nuclear_upper_fut.get();
  } catch (const std::exception& e) {
    r.errors.push_back(std::string("nuclear.upper: ") + e.what());
  }

  const double closed = 1e-9;
  const double solver = 1e-6;
  auto check_le = [&r](const std::string& name, double lhs, double rhs, double allowance) {
    const double margin = rhs - lhs;
    r.verdicts.push_back({name, std::isfinite(margin) && margin >= -allowance, margin});
  };
  auto check_eq = [&r](const std::string& name, double lhs, double rhs, double allowance) {
    const double diff = std::abs(lhs - rhs);
    r.verdicts.push_back({name, std::isfinite(diff) && diff <= allowance, diff});
  };

  if (have_estimate) {
    for (int k = 1; k <= 3; ++k) {
      const std::string ax = "axis" + std::to_string(k);
      check_le("upper.flatten." + ax + ".ge_estimate", r.estimate, r.upper_flatten[k - 1],
               closed * (1.0 + r.estimate));
      check_le("upper.gram." + ax + ".ge_estimate", r.estimate, r.upper_gram[k - 1],
               closed * (1.0 + r.estimate));
      check_eq("upper.flatten_eq_gram." + ax, r.upper_flatten[k - 1], r.upper_gram[k - 1],
               closed * (1.0 + std::abs(r.upper_flatten[k - 1])));
    }
    if (have_lower) {
      for (const LowerEntry& lo : r.lower_slice)
        check_le("lower.slice.axis" + std::to_string(lo.axis) + "." + slice_mode_name(lo.mode) +
                     ".le_estimate",
                 lo.value, r.estimate, solver * (1.0 + r.estimate));
    }
    for (int axis = 1; axis <= 3; ++axis) {
      try {
        SandwichRecord s = sandwich(A, axis, r.estimate);
        r.sandwiches[axis - 1] = s;
        static const char* kLink[4] = {"rho_over_d_le_L", "L_le_estimate_sq",
                                       "estimate_sq_le_rho", "rho_le_d_times_L"};
        for (int l = 0; l < 4; ++l)
          r.verdicts.push_back({"sandwich.axis" + std::to_string(axis) + "." + kLink[l],
                                s.link_ok[l], s.link_slack[l]});
      } catch (const std::exception& e) {
        r.errors.push_back("sandwich.axis" + std::to_string(axis) + ": " + e.what());
      }
    }
  }
  if (have_nuclear) {
    const double fro = frobenius(A);
    const std::array<int, 3> axis_dim{A.d1(), A.d2(), A.d3()};
    for (const NuclearAxisRecord& a : r.nuclear.per_axis) {
      const std::string ax = "axis" + std::to_string(a.axis);
      check_eq("nuclear.flatten_eq_gram." + ax, a.flatten_nuclear, a.gram_nuclear,
               closed * (1.0 + std::abs(a.gram_nuclear)));
      check_eq("nuclear.gram_trace." + ax, a.bracket_lo, fro, closed * (1.0 + fro));
      // Cauchy-Schwarz: the squared unfolding nuclear norm is at most the
      // unfolding rank (at most the axis dimension) times the trace.
      check_le("nuclear.scaled_unfold_le_flatten." + ax,
               a.unfold_nuclear * a.unfold_nuclear / axis_dim[a.axis - 1], a.flatten_nuclear,
               closed * (1.0 + a.flatten_nuclear));
      if (r.nuclear.upper.converged)
        check_le("nuclear.flatten_le_upper_sq." + ax, a.flatten_nuclear,
                 r.nuclear.upper.value * r.nuclear.upper.value,
                 closed * (1.0 + a.flatten_nuclear));
    }
    check_le("nuclear.bracket_nonempty", r.nuclear.bracket_lo, r.nuclear.bracket_hi,
             closed * (1.0 + r.nuclear.bracket_hi));
    check_le("nuclear.lower_le_upper", r.nuclear.best_lower, r.nuclear.upper.value,
             closed * (1.0 + r.nuclear.upper.value));
  }

  r.footnotes.push_back(
      "sandwich middle term: the slice bound L brackets the squared norm, so the chain is "
      "stated with estimate^2; an unsquared middle term would be dimensionally inconsistent.");
  r.footnotes.push_back(
      "unfold_nuclear^2 equals gram_nuclear only when the unfolding has rank one; the unfolding "
      "nuclear norms are reported informationally and are not verdicts.");
  r.footnotes.push_back(
      "bracket_hi scales the trace-based gram_nuclear, which understates the decomposition cost "
      "when an unfolding has rank above one; best_lower can then legitimately exceed bracket_hi, "
      "and nuclear.upper.value is the certified upper bound.");
  return r;
}

// Stable key/value serialization of a report; keys are documented in the
// README and consumed by both the text and structured CLI renderers.
inline std::vector<std::pair<std::string, std::string>> report_entries(const BoundsReport& r) {
  std::vector<std::pair<std::string, std::string>> out;
  auto put = [&out](const std::string& k, double v) { out.emplace_back(k, format_double(v)); };
  put("estimate", r.estimate);
  put("route.hopm", r.hopm_route);
  put("route.meig", r.meig_route);
  for (int k = 1; k <= 3; ++k) {
    put("upper.flatten.axis" + std::to_string(k), r.upper_flatten[k - 1]);
    put("upper.gram.axis" + std::to_string(k), r.upper_gram[k - 1]);
  }
  for (const LowerEntry& lo : r.lower_slice)
    put("lower.slice.axis" + std::to_string(lo.axis) + "." + slice_mode_name(lo.mode), lo.value);
  for (const SandwichRecord& s : r.sandwiches) {
    if (s.axis == 0) continue;
    const std::string p = "sandwich.axis" + std::to_string(s.axis) + ".";
    put(p + "rho_over_d", s.rho_over_d);
    put(p + "L", s.L);
    put(p + "estimate_sq", s.estimate_sq);
    put(p + "rho", s.rho);
    put(p + "d_times_L", s.d_times_L);
  }
  for (const NuclearAxisRecord& a : r.nuclear.per_axis) {
    const std::string p = "nuclear.axis" + std::to_string(a.axis) + ".";
    put(p + "flatten_nuclear", a.flatten_nuclear);
    put(p + "gram_nuclear", a.gram_nuclear);
    put(p + "unfold_nuclear", a.unfold_nuclear);
    put(p + "bracket_lo", a.bracket_lo);
    put(p + "bracket_hi", a.bracket_hi);
  }
  put("nuclear.best_lower", r.nuclear.best_lower);
  put("nuclear.bracket_lo", r.nuclear.bracket_lo);
  put("nuclear.bracket_hi", r.nuclear.bracket_hi);
  put("nuclear.upper.value", r.nuclear.upper.value);
  put("nuclear.upper.tail", r.nuclear.upper.tail);
  out.emplace_back("nuclear.upper.terms", std::to_string(r.nuclear.upper.terms));
  out.emplace_back("nuclear.upper.converged", r.nuclear.upper.converged ? "true" : "false");
  for (const Verdict& v : r.verdicts)
    out.emplace_back("verdict." + v.name,
                     std::string(v.pass ? "pass " : "fail ") + format_double(v.slack));
  for (std::size_t i = 0; i < r.footnotes.size(); ++i)
    out.emplace_back("footnote." + std::to_string(i + 1), r.footnotes[i]);
  for (std::size_t i = 0; i < r.errors.size(); ++i)
    out.emplace_back("error." + std::to_string(i + 1), r.errors[i]);
  return out;
}

inline std::string render_report(const BoundsReport& r) {
  std::string out;
  for (const auto& [k, v] : report_entries(r)) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace trinorm
