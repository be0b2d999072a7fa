#pragma once

// Self-contained symmetric eigendecomposition (cyclic Jacobi rotations) and
// the matrix functionals built on it: spectral radius, nuclear norm, and
// singular-value sums for rectangular matrices. Deterministic: fixed sweep
// order, no pivot searching, so identical inputs give identical output.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "trinorm/tensor.hpp"
#include "trinorm/vec.hpp"

namespace trinorm {

struct EigError : std::runtime_error {
  double offdiag;  // off-diagonal Frobenius mass left when the cap was hit
  EigError(const std::string& msg, double off) : std::runtime_error(msg), offdiag(off) {}
};

struct EigenDecomposition {
  std::vector<double> values;  // sorted descending
  std::vector<Vec> vectors;    // vectors[a] is the unit eigenvector for values[a]
};

// Cyclic Jacobi. Converges when the off-diagonal Frobenius mass drops below
// tol * ||S||_F; a zero or diagonal input converges without rotating.
inline EigenDecomposition sym_eig(const SymMatrix& S, double tol = 1e-12) {
  const int n = S.size();
  std::vector<double> a = S.data();
  std::vector<double> V(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) V[static_cast<std::size_t>(i) * n + i] = 1.0;

  const double scale = S.frobenius();
  auto offdiag = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double v = a[static_cast<std::size_t>(p) * n + q];
        s += v * v;
      }
    return std::sqrt(2.0 * s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (scale > 0.0 && offdiag() >= tol * scale) {
    if (++sweep > kMaxSweeps) {
      throw EigError("sym_eig: not converged after 100 sweeps, off-diagonal mass " +
                         std::to_string(offdiag()),
                     offdiag());
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[static_cast<std::size_t>(p) * n + q];
        if (apq == 0.0) continue;
        const double theta =
            (a[static_cast<std::size_t>(q) * n + q] - a[static_cast<std::size_t>(p) * n + p]) /
            (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = ((theta >= 0.0) ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[static_cast<std::size_t>(p) * n + p] -= t * apq;
        a[static_cast<std::size_t>(q) * n + q] += t * apq;
        a[static_cast<std::size_t>(p) * n + q] = 0.0;
        a[static_cast<std::size_t>(q) * n + p] = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[static_cast<std::size_t>(r) * n + p];
          const double arq = a[static_cast<std::size_t>(r) * n + q];
          const double nrp = arp - s * (arq + tau * arp);
          const double nrq = arq + s * (arp - tau * arq);
          a[static_cast<std::size_t>(r) * n + p] = nrp;
          a[static_cast<std::size_t>(p) * n + r] = nrp;
          a[static_cast<std::size_t>(r) * n + q] = nrq;
          a[static_cast<std::size_t>(q) * n + r] = nrq;
        }
        for (int r = 0; r < n; ++r) {
          const double vrp = V[static_cast<std::size_t>(r) * n + p];
          const double vrq = V[static_cast<std::size_t>(r) * n + q];
          V[static_cast<std::size_t>(r) * n + p] = vrp - s * (vrq + tau * vrp);
          V[static_cast<std::size_t>(r) * n + q] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return a[static_cast<std::size_t>(lhs) * n + lhs] > a[static_cast<std::size_t>(rhs) * n + rhs];
  });

  EigenDecomposition out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (int idx : order) {
    out.values.push_back(a[static_cast<std::size_t>(idx) * n + idx]);
    Vec v(n);
    for (int r = 0; r < n; ++r) v[r] = V[static_cast<std::size_t>(r) * n + idx];
    out.vectors.push_back(std::move(v));
  }
  return out;
}

inline double spectral_radius(const SymMatrix& S) {
  const EigenDecomposition e = sym_eig(S);
  return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

inline double matrix_nuclear(const SymMatrix& S) {
  const EigenDecomposition e = sym_eig(S);
  double s = 0.0;
  for (double v : e.values) s += std::abs(v);
  return s;
}

// Sum of singular values, via the eigenvalues of the smaller-sided Gram
// matrix. Eigenvalues inside the PSD rounding band [-1e-10 * ||G||_inf, 0)
// are clamped to zero; anything below that band is a genuine failure.
inline double matrix_nuclear_rect(const RectMatrix& M) {
  const bool wide = M.rows() <= M.cols();
  const int n = wide ? M.rows() : M.cols();
  std::vector<double> g(static_cast<std::size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      double acc = 0.0;
      if (wide) {
        for (int c = 0; c < M.cols(); ++c) acc += M(a, c) * M(b, c);
      } else {
        for (int c = 0; c < M.rows(); ++c) acc += M(c, a) * M(c, b);
      }
      g[static_cast<std::size_t>(a) * n + b] = acc;
      g[static_cast<std::size_t>(b) * n + a] = acc;
    }
  }
  const SymMatrix G(n, std::move(g));
  const double clamp_floor = -1e-10 * G.max_abs();
  const EigenDecomposition e = sym_eig(G);
  // Eigenvalues at rounding scale relative to the top one are numerically
  // zero; taking their square roots would amplify noise of order eps into
  // sqrt(eps), so they are dropped rather than clamped.
  const double zero_band = 1e-12 * std::max(e.values.empty() ? 0.0 : e.values.front(), 0.0);
  double s = 0.0;
  for (double v : e.values) {
    if (v < clamp_floor) {
      throw std::domain_error("matrix_nuclear_rect: eigenvalue " + std::to_string(v) +
                              " below the PSD clamp threshold " + std::to_string(clamp_floor));
    }
    if (v > zero_band) s += std::sqrt(v);
  }
  return s;
}

// Unit eigenvector for the largest eigenvalue. When the top eigenvalue is
// (numerically) degenerate, `prev` is projected into the leading eigenspace
// so alternating solvers track one continuous branch instead of flickering
// between basis choices; the result is sign-aligned with prev.
inline Vec dominant_eigenvector(const SymMatrix& M, const Vec& prev) {
  const EigenDecomposition e = sym_eig(M);
  const double top = e.values.front();
  const double band = 1e-10 * (1.0 + std::abs(top));
  int group = 1;
  while (group < static_cast<int>(e.values.size()) && e.values[group] >= top - band) ++group;

  if (prev.size() == e.vectors.front().size() && group > 1) {
    Vec w(prev.size(), 0.0);
    for (int g = 0; g < group; ++g) {
      const double c = dot(e.vectors[g], prev);
      for (std::size_t r = 0; r < w.size(); ++r) w[r] += c * e.vectors[g][r];
    }
    const double nw = norm2(w);
    if (nw > 1e-8) {
      for (double& v : w) v /= nw;
      return w;
    }
  }
  Vec v = e.vectors.front();
  if (prev.size() == v.size() && dot(v, prev) < 0.0) {
    for (double& c : v) c = -c;
  }
  return v;
}

}  // namespace trinorm
