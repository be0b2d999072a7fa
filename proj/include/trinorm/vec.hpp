#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace trinorm {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

inline double inf_norm(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline Vec normalized(Vec a) {
  const double n = norm2(a);
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  for (double& v : a) v /= n;
  return a;
}

// e_i in R^n
inline Vec basis_vector(int n, int i) {
  Vec e(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}

}  // namespace trinorm
