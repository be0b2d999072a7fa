#pragma once

// Alternating maximization solvers for the two variational problems: the
// best rank-one fit of a third-order tensor (higher-order power method) and
// the largest M-eigenvalue of a PSD biquadratic (two-block dominant
// eigenvector scheme). Both stop on objective stagnation AND small
// stationarity defects, carry their defect residuals in the result, and are
// driven through deterministic seeded multistart wrappers.

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trinorm/eig.hpp"
#include "trinorm/rng.hpp"
#include "trinorm/tensor.hpp"
#include "trinorm/vec.hpp"

namespace trinorm {

// Raised when an alternating step collapses onto a degenerate ray; the
// multistart driver treats it as "try another start", not a hard failure.
struct RestartSignal : std::runtime_error {
  RestartSignal() : std::runtime_error("degenerate ray: contracted vector norm below 1e-14") {}
};

struct ConvergenceError : std::runtime_error {
  double last_value;
  double max_residual;
  int iterations;
  ConvergenceError(const std::string& msg, double value, double residual, int iters)
      : std::runtime_error(msg), last_value(value), max_residual(residual), iterations(iters) {}
};

struct SingularTriple {
  double lambda = 0.0;
  Vec x, y, z;
  std::array<double, 3> residuals{0.0, 0.0, 0.0};
};

struct MEigPair {
  double mu = 0.0;
  Vec x, y;
  std::array<double, 2> residuals{0.0, 0.0};
};

// M(y)_ip = sum_jq t_ijpq y_j y_q; symmetric by pair symmetry.
inline SymMatrix collapse_y(const Biquadratic& T, const Vec& y) {
  const int d1 = T.d1(), d2 = T.d2();
  std::vector<double> m(static_cast<std::size_t>(d1) * d1, 0.0);
  for (int i = 0; i < d1; ++i) {
    for (int p = i; p < d1; ++p) {
      double acc = 0.0;
      for (int j = 0; j < d2; ++j)
        for (int q = 0; q < d2; ++q) acc += T(i, j, p, q) * y[j] * y[q];
      m[static_cast<std::size_t>(i) * d1 + p] = acc;
      m[static_cast<std::size_t>(p) * d1 + i] = acc;
    }
  }
  return SymMatrix(d1, std::move(m));
}

// N(x)_jq = sum_ip t_ijpq x_i x_p.
inline SymMatrix collapse_x(const Biquadratic& T, const Vec& x) {
  const int d1 = T.d1(), d2 = T.d2();
  std::vector<double> m(static_cast<std::size_t>(d2) * d2, 0.0);
  for (int j = 0; j < d2; ++j) {
    for (int q = j; q < d2; ++q) {
      double acc = 0.0;
      for (int i = 0; i < d1; ++i)
        for (int p = 0; p < d1; ++p) acc += T(i, j, p, q) * x[i] * x[p];
      m[static_cast<std::size_t>(j) * d2 + q] = acc;
      m[static_cast<std::size_t>(q) * d2 + j] = acc;
    }
  }
  return SymMatrix(d2, std::move(m));
}

// Defects of the three stationarity equations A(.,y,z) = lambda x,
// A(x,.,z) = lambda y, A(x,y,.) = lambda z, each as an infinity norm.
inline std::array<double, 3> singular_residual(const Tensor3& A, const SingularTriple& t) {
  std::array<double, 3> r{};
  for (int axis = 1; axis <= 3; ++axis) {
    const Vec* u = axis == 1 ? &t.x : (axis == 2 ? &t.y : &t.z);
    const Vec c = axis == 1   ? contract_except(A, 1, t.y, t.z)
                  : axis == 2 ? contract_except(A, 2, t.x, t.z)
                              : contract_except(A, 3, t.x, t.y);
    double m = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) m = std::max(m, std::abs(c[i] - t.lambda * (*u)[i]));
    r[axis - 1] = m;
  }
  return r;
}

// Defects of the two M-eigenvalue stationarity equations M(y) x = mu x and
// N(x) y = mu y, each as an infinity norm.
inline std::array<double, 2> m_residual(const Biquadratic& T, const MEigPair& p) {
  if (static_cast<int>(p.x.size()) != T.d1() || static_cast<int>(p.y.size()) != T.d2())
    throw std::invalid_argument("m_residual: dimension mismatch");
  const SymMatrix M = collapse_y(T, p.y);
  const SymMatrix N = collapse_x(T, p.x);
  double r1 = 0.0, r2 = 0.0;
  for (int i = 0; i < T.d1(); ++i) {
    double s = 0.0;
    for (int p2 = 0; p2 < T.d1(); ++p2) s += M(i, p2) * p.x[p2];
    r1 = std::max(r1, std::abs(s - p.mu * p.x[i]));
  }
  for (int j = 0; j < T.d2(); ++j) {
    double s = 0.0;
    for (int q = 0; q < T.d2(); ++q) s += N(j, q) * p.y[q];
    r2 = std::max(r2, std::abs(s - p.mu * p.y[j]));
  }
  return {r1, r2};
}

// Two-block power scheme for the largest M-eigenvalue of a PSD biquadratic.
// Each half-step maximizes a Rayleigh quotient, so the objective never
// decreases; convergence requires both objective stagnation below tol and
// stationarity defects below 10*tol*(1+|mu|).
inline MEigPair m_power_iteration(const Biquadratic& T, const Vec& x0, const Vec& y0,
                                  double tol = 1e-10, int max_iter = 2000,
                                  std::vector<double>* trace = nullptr) {
  if (static_cast<int>(x0.size()) != T.d1() || static_cast<int>(y0.size()) != T.d2())
    throw std::invalid_argument("m_power_iteration: start dimension mismatch");
  if (norm2(x0) == 0.0 || norm2(y0) == 0.0)
    throw std::invalid_argument("m_power_iteration: zero start vector");
  if (tol <= 0.0 || max_iter < 1)
    throw std::invalid_argument("m_power_iteration: tol must be positive, max_iter >= 1");

  MEigPair p;
  p.x = normalized(x0);
  p.y = normalized(y0);
  double mu_prev = biquadratic_form(T, p.x, p.y);
  double max_res = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    p.x = dominant_eigenvector(collapse_y(T, p.y), p.x);
    p.y = dominant_eigenvector(collapse_x(T, p.x), p.y);
    p.mu = biquadratic_form(T, p.x, p.y);
    if (!std::isfinite(p.mu))
      throw ConvergenceError("m_power_iteration: objective became non-finite", p.mu, 0.0, it);
    if (trace) trace->push_back(p.mu);
    assert(p.mu >= mu_prev - 1e-12 * (1.0 + std::abs(p.mu)));
    p.residuals = m_residual(T, p);
    max_res = std::max(p.residuals[0], p.residuals[1]);
    if (std::abs(p.mu - mu_prev) < tol && max_res <= 10.0 * tol * (1.0 + std::abs(p.mu))) return p;
    mu_prev = p.mu;
  }
  throw ConvergenceError("m_power_iteration: not converged after " + std::to_string(max_iter) +
                             " iterations",
                         mu_prev, max_res, max_iter);
}

inline MEigPair largest_m_eigenvalue(const Biquadratic& T, int restarts = 32,
                                     std::uint64_t seed = 0, double tol = 1e-10,
                                     int max_iter = 2000) {
  if (restarts < 1) throw std::invalid_argument("largest_m_eigenvalue: restarts must be >= 1");
  bool found = false;
  MEigPair best;
  int failures = 0;
  std::string last_error;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const Vec x0 = rng.unit_vector(T.d1());
    const Vec y0 = rng.unit_vector(T.d2());
    try {
      MEigPair p = m_power_iteration(T, x0, y0, tol, max_iter);
      if (!found || p.mu > best.mu) {
        best = std::move(p);
        found = true;
      }
    } catch (const ConvergenceError& e) {
      ++failures;
      last_error = e.what();
    }
  }
  if (!found)
    throw ConvergenceError("largest_m_eigenvalue: all " + std::to_string(restarts) +
                               " restarts failed; last: " + last_error,
                           0.0, 0.0, max_iter);
  return best;
}

// Higher-order power method. Each update replaces one factor with the
// normalized contraction against the other two, which cannot decrease the
// objective; after the z update lambda = ||A(x,y,.)|| >= 0 by construction.
inline SingularTriple hopm(const Tensor3& A, const Vec& x0, const Vec& y0, const Vec& z0,
                           double tol = 1e-10, int max_iter = 2000,
                           std::vector<double>* trace = nullptr) {
  if (static_cast<int>(x0.size()) != A.d1() || static_cast<int>(y0.size()) != A.d2() ||
      static_cast<int>(z0.size()) != A.d3())
    throw std::invalid_argument("hopm: start dimension mismatch");
  if (norm2(x0) == 0.0 || norm2(y0) == 0.0 || norm2(z0) == 0.0)
    throw std::invalid_argument("hopm: zero start vector");
  if (tol <= 0.0 || max_iter < 1)
    throw std::invalid_argument("hopm: tol must be positive, max_iter >= 1");

  SingularTriple t;
  t.x = normalized(x0);
  t.y = normalized(y0);
  t.z = normalized(z0);
  double lambda_prev = multilinear_form(A, t.x, t.y, t.z);
  double max_res = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    for (int axis = 1; axis <= 3; ++axis) {
      Vec c = axis == 1   ? contract_except(A, 1, t.y, t.z)
              : axis == 2 ? contract_except(A, 2, t.x, t.z)
                          : contract_except(A, 3, t.x, t.y);
      const double n = norm2(c);
      if (n < 1e-14) throw RestartSignal();
      for (double& v : c) v /= n;
      (axis == 1 ? t.x : (axis == 2 ? t.y : t.z)) = std::move(c);
    }
    t.lambda = multilinear_form(A, t.x, t.y, t.z);
    if (!std::isfinite(t.lambda))
      throw ConvergenceError("hopm: objective became non-finite", t.lambda, 0.0, it);
    if (trace) trace->push_back(t.lambda);
    assert(t.lambda >= lambda_prev - 1e-12 * (1.0 + std::abs(t.lambda)));
    t.residuals = singular_residual(A, t);
    max_res = std::max({t.residuals[0], t.residuals[1], t.residuals[2]});
    if (std::abs(t.lambda - lambda_prev) < tol && max_res <= 10.0 * tol * (1.0 + std::abs(t.lambda)))
      return t;
    lambda_prev = t.lambda;
  }
  throw ConvergenceError("hopm: not converged after " + std::to_string(max_iter) + " iterations",
                         lambda_prev, max_res, max_iter);
}

// Best triple over seeded random restarts. A zero tensor short-circuits to
// the exact triple (0, e1, e1, e1): every contraction ray is degenerate then.
inline SingularTriple multistart_hopm(const Tensor3& A, int restarts = 32, std::uint64_t seed = 0,
                                      double tol = 1e-10, int max_iter = 2000) {
  if (restarts < 1) throw std::invalid_argument("multistart_hopm: restarts must be >= 1");
  if (frobenius(A) == 0.0) {
    SingularTriple t;
    t.lambda = 0.0;
    t.x = basis_vector(A.d1(), 0);
    t.y = basis_vector(A.d2(), 0);
    t.z = basis_vector(A.d3(), 0);
    t.residuals = {0.0, 0.0, 0.0};
    return t;
  }
  bool found = false;
  SingularTriple best;
  std::string last_error = "degenerate ray";
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const Vec x0 = rng.unit_vector(A.d1());
    const Vec y0 = rng.unit_vector(A.d2());
    const Vec z0 = rng.unit_vector(A.d3());
    try {
      SingularTriple t = hopm(A, x0, y0, z0, tol, max_iter);
      if (!found || t.lambda > best.lambda) {
        best = std::move(t);
        found = true;
      }
    } catch (const RestartSignal& e) {
      last_error = e.what();
    } catch (const ConvergenceError& e) {
      last_error = e.what();
    }
  }
  if (!found)
    throw ConvergenceError("multistart_hopm: all " + std::to_string(restarts) +
                               " restarts failed; last: " + last_error,
                           0.0, 0.0, max_iter);
  return best;
}

// The two-route spectral norm estimate: a direct rank-one fit of A, and the
// square root of the largest M-eigenvalue of the axis-3 self-contraction.
// Both are certified lower bounds on the true norm; the estimate is their max.
struct SpectralEstimate {
  double value = 0.0;
  double hopm_route = 0.0;
  double meig_route = 0.0;
  SingularTriple triple;
  MEigPair pair;
};

inline SpectralEstimate spectral_norm(const Tensor3& A, int restarts = 32, std::uint64_t seed = 0,
                                      double tol = 1e-10, int max_iter = 2000) {
  SpectralEstimate e;
  e.triple = multistart_hopm(A, restarts, derive_seed(seed, 1), tol, max_iter);
  e.hopm_route = e.triple.lambda;
  const Biquadratic T3 = contract(A, 3);
  if (T3.frobenius() == 0.0) {
    e.pair.mu = 0.0;
    e.pair.x = basis_vector(T3.d1(), 0);
    e.pair.y = basis_vector(T3.d2(), 0);
    e.pair.residuals = {0.0, 0.0};
  } else {
    e.pair = largest_m_eigenvalue(T3, restarts, derive_seed(seed, 2), tol, max_iter);
  }
  e.meig_route = std::sqrt(std::max(e.pair.mu, 0.0));
  e.value = std::max(e.hopm_route, e.meig_route);
  return e;
}

// Maps a singular triple (lambda, x, y, z) to the M-eigenpair (lambda^2, x, y)
// of the axis-3 contraction; residuals are measured against T3.
inline MEigPair triple_to_m_pair(const Biquadratic& T3, const SingularTriple& t) {
  MEigPair p;
  p.mu = t.lambda * t.lambda;
  p.x = t.x;
  p.y = t.y;
  p.residuals = m_residual(T3, p);
  return p;
}

// Completes an M-eigenpair (mu, x, y), mu > 0, of the axis-3 contraction to a
// singular triple of A via z_k = (1/sqrt(mu)) sum_ij a_ijk x_i y_j. The
// returned z is not renormalized: its unit norm is part of what callers check.
inline SingularTriple m_pair_to_triple(const Tensor3& A, const MEigPair& p) {
  if (!(p.mu > 0.0)) throw std::invalid_argument("m_pair_to_triple: mu must be positive");
  SingularTriple t;
  t.lambda = std::sqrt(p.mu);
  t.x = p.x;
  t.y = p.y;
  t.z = contract_except(A, 3, p.x, p.y);
  for (double& v : t.z) v /= t.lambda;
  t.residuals = singular_residual(A, t);
  return t;
}

}  // namespace trinorm
