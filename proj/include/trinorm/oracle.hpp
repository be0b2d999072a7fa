#pragma once

// Ground-truth references used by tests and the `check` command: an angular
// grid search over the two unit circles that is exact up to a reported
// curvature slack for 2 x 2 x n tensors, and a heavy multistart power-method
// reference for every other shape.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trinorm/msolve.hpp"
#include "trinorm/tensor.hpp"
#include "trinorm/vec.hpp"

namespace trinorm {

struct OracleResult {
  double value = 0.0;
  Vec x, y, z;
  int resolution = 0;    // lattice points per angle when method == "grid"
  int restarts = 0;      // start count when method == "multistart"
  std::string method;
  double slack = 0.0;    // certified gap to the true maximum (grid only)
};

namespace detail {

// <T, u (x) v (x) w (x) t> for a 2x2x2x2 pair-symmetric tensor.
inline double bform2(const Biquadratic& T, const double* u, const double* v, const double* w,
                     const double* t) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) acc += T(i, j, p, q) * u[i] * v[j] * w[p] * t[q];
  return acc;
}

}  // namespace detail

// Exhaustive reference for d1 = d2 = 2. x and y are parametrized by angles on
// [0, pi) (signs are absorbed by z), the optimal z for fixed (x, y) is the
// normalized contraction, and the lattice maximum is polished by a damped
// Newton ascent on the squared objective. The reported slack bounds the
// distance to the true maximum via the curvature of the squared objective.
inline OracleResult grid_oracle_2x2(const Tensor3& A, int n_grid = 2000) {
  if (A.d1() != 2 || A.d2() != 2)
    throw std::invalid_argument("grid_oracle_2x2: requires d1 = d2 = 2");
  if (n_grid < 100) throw std::invalid_argument("grid_oracle_2x2: n_grid must be >= 100");

  const int d3 = A.d3();
  const int n = n_grid;
  const double step = M_PI / n;

  std::vector<double> ct(n), st(n);
  for (int a = 0; a < n; ++a) {
    ct[a] = std::cos(a * step);
    st[a] = std::sin(a * step);
  }

  // Per-slice coefficients: c_k(theta, phi) = ct*u_k(phi) + st*v_k(phi).
  std::vector<double> p(d3), q(d3), r(d3), s(d3);
  for (int k = 0; k < d3; ++k) {
    p[k] = A(0, 0, k);
    q[k] = A(0, 1, k);
    r[k] = A(1, 0, k);
    s[k] = A(1, 1, k);
  }

  std::vector<double> h(n);
  double best_h = -1.0;
  int best_a = 0, best_b = 0;
  for (int b = 0; b < n; ++b) {
    const double cp = ct[b], sp = st[b];
    std::fill(h.begin(), h.end(), 0.0);
    for (int k = 0; k < d3; ++k) {
      const double u = p[k] * cp + q[k] * sp;
      const double v = r[k] * cp + s[k] * sp;
      for (int a = 0; a < n; ++a) {
        const double c = ct[a] * u + st[a] * v;
        h[a] += c * c;
      }
    }
    for (int a = 0; a < n; ++a) {
      if (h[a] > best_h) {
        best_h = h[a];
        best_a = a;
        best_b = b;
      }
    }
  }

  const Biquadratic T3 = contract(A, 3);
  const double tf = T3.frobenius();

  // Damped Newton ascent on h(theta, phi) = <T3, x(x)y(x)x(x)y>; derivatives
  // follow from x'' = -x, y'' = -y and pair symmetry. Only uphill moves are
  // kept, so the polished value never falls below the lattice maximum.
  double theta = best_a * step, phi = best_b * step;
  double x[2] = {ct[best_a], st[best_a]}, y[2] = {ct[best_b], st[best_b]};
  double h_cur = best_h;
  for (int it = 0; it < 50; ++it) {
    const double xd[2] = {-x[1], x[0]};
    const double yd[2] = {-y[1], y[0]};
    const double gt = 2.0 * detail::bform2(T3, xd, y, x, y);
    const double gp = 2.0 * detail::bform2(T3, x, yd, x, y);
    const double htt = -2.0 * h_cur + 2.0 * detail::bform2(T3, xd, y, xd, y);
    const double hpp = -2.0 * h_cur + 2.0 * detail::bform2(T3, x, yd, x, yd);
    const double htp =
        2.0 * (detail::bform2(T3, xd, yd, x, y) + detail::bform2(T3, xd, y, x, yd));
    const double det = htt * hpp - htp * htp;

    double dt, dp;
    if (det > 0.0 && htt < 0.0) {
      dt = -(hpp * gt - htp * gp) / det;
      dp = -(htt * gp - htp * gt) / det;
    } else {
      const double gn = std::hypot(gt, gp);
      if (gn == 0.0) break;
      dt = gt / gn * step;
      dp = gp / gn * step;
    }
    const double dn = std::hypot(dt, dp);
    if (dn > step) {
      dt *= step / dn;
      dp *= step / dn;
    }

    bool improved = false;
    for (int half = 0; half < 10; ++half) {
      const double t2 = theta + dt, p2 = phi + dp;
      const double x2[2] = {std::cos(t2), std::sin(t2)};
      const double y2[2] = {std::cos(p2), std::sin(p2)};
      const double h2 = detail::bform2(T3, x2, y2, x2, y2);
      if (h2 > h_cur) {
        theta = t2;
        phi = p2;
        x[0] = x2[0];
        x[1] = x2[1];
        y[0] = y2[0];
        y[1] = y2[1];
        h_cur = h2;
        improved = true;
        break;
      }
      dt *= 0.5;
      dp *= 0.5;
    }
    if (!improved || std::hypot(dt, dp) < 1e-13) break;
  }

  OracleResult res;
  res.method = "grid";
  res.resolution = n;
  res.x = {x[0], x[1]};
  res.y = {y[0], y[1]};
  Vec c(d3, 0.0);
  for (int k = 0; k < d3; ++k)
    c[k] = p[k] * x[0] * y[0] + q[k] * x[0] * y[1] + r[k] * x[1] * y[0] + s[k] * x[1] * y[1];
  const double cn = norm2(c);
  if (cn > 0.0) {
    res.value = cn;
    res.z = c;
    for (double& v : res.z) v /= cn;
  } else {
    res.value = 0.0;
    res.z = basis_vector(d3, 0);
  }

  // |d^2 h| along any direction is at most 8 ||T3||_F on the torus, and the
  // true argmax lies within half a cell diagonal of some lattice point.
  const double slack_h = 2.0 * M_PI * M_PI * tf / (static_cast<double>(n) * n);
  res.slack = res.value > 0.0 ? slack_h / (2.0 * res.value) : std::sqrt(slack_h);
  return res;
}

// Heavy multistart reference for shapes beyond 2 x 2 x n: the best rank-one
// fit over many seeded starts, run tighter and longer than the everyday
// solver. A certified lower bound on the true norm.
inline OracleResult multistart_oracle(const Tensor3& A, int restarts = 512,
                                      std::uint64_t seed = 0, double tol = 1e-12,
                                      int max_iter = 50000) {
  const SingularTriple t = multistart_hopm(A, restarts, seed, tol, max_iter);
  OracleResult res;
  res.method = "multistart";
  res.restarts = restarts;
  res.value = t.lambda;
  res.x = t.x;
  res.y = t.y;
  res.z = t.z;
  return res;
}

}  // namespace trinorm
