#pragma once

// Dense third-order tensors over the reals, their self-contractions into
// pair-symmetric biquadratic tensors, and the matrix views everything
// downstream is built from: flattenings, unfoldings, Gram matrices, and
// slice families.
//
// Conventions: storage is zero-based lexicographic with the last index
// fastest; public `axis` arguments are 1-based. A pair of indices (i,j)
// flattens row-major to (i)*d2 + j. All types are immutable once built, so
// any operation is safe to call concurrently on shared data.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "trinorm/vec.hpp"

namespace trinorm {

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline void require_finite(const std::vector<double>& v, const char* who) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw std::invalid_argument(std::string(who) + ": non-finite entry at flat index " +
                                  std::to_string(i));
    }
  }
}

}  // namespace detail

class Tensor3 {
 public:
  Tensor3(int d1, int d2, int d3, std::vector<double> entries)
      : d1_(d1), d2_(d2), d3_(d3), a_(std::move(entries)) {
    detail::require(d1 > 0 && d2 > 0 && d3 > 0, "Tensor3: dimensions must be positive");
    detail::require(a_.size() == static_cast<std::size_t>(d1) * d2 * d3,
                    "Tensor3: entry count does not match dimensions");
    detail::require_finite(a_, "Tensor3");
  }

  static Tensor3 zeros(int d1, int d2, int d3) {
    return Tensor3(d1, d2, d3,
                   std::vector<double>(static_cast<std::size_t>(d1) * d2 * d3, 0.0));
  }

  int d1() const { return d1_; }
  int d2() const { return d2_; }
  int d3() const { return d3_; }
  std::array<int, 3> dims() const { return {d1_, d2_, d3_}; }
  int dim(int axis) const {
    detail::require(axis >= 1 && axis <= 3, "Tensor3::dim: axis must be 1, 2, or 3");
    return axis == 1 ? d1_ : (axis == 2 ? d2_ : d3_);
  }

  // zero-based
  double operator()(int i, int j, int k) const {
    return a_[(static_cast<std::size_t>(i) * d2_ + j) * d3_ + k];
  }

  const std::vector<double>& entries() const { return a_; }

 private:
  int d1_, d2_, d3_;
  std::vector<double> a_;
};

inline double frobenius(const Tensor3& A) {
  double s = 0.0;
  for (double v : A.entries()) s += v * v;
  return std::sqrt(s);
}

// Order-four tensor with paired index groups (i,j) and (p,q) satisfying the
// pair symmetry t_ijpq = t_pqij. This is the only symmetry a self-contraction
// guarantees; no per-index exchange symmetry is assumed or enforced.
class Biquadratic {
 public:
  Biquadratic(int d1, int d2, std::vector<double> entries)
      : d1_(d1), d2_(d2), t_(std::move(entries)) {
    detail::require(d1 > 0 && d2 > 0, "Biquadratic: dimensions must be positive");
    const std::size_t n = static_cast<std::size_t>(d1) * d2;
    detail::require(t_.size() == n * n, "Biquadratic: entry count does not match dimensions");
    detail::require_finite(t_, "Biquadratic");
    for (int i = 0; i < d1_; ++i)
      for (int j = 0; j < d2_; ++j)
        for (int p = 0; p < d1_; ++p)
          for (int q = 0; q < d2_; ++q)
            detail::require(t_[flat(i, j, p, q)] == t_[flat(p, q, i, j)],
                            "Biquadratic: pair symmetry t_ijpq = t_pqij violated");
  }

  int d1() const { return d1_; }
  int d2() const { return d2_; }

  // zero-based
  double operator()(int i, int j, int p, int q) const { return t_[flat(i, j, p, q)]; }

  const std::vector<double>& entries() const { return t_; }

  double frobenius() const {
    double s = 0.0;
    for (double v : t_) s += v * v;
    return std::sqrt(s);
  }

 private:
  std::size_t flat(int i, int j, int p, int q) const {
    return ((static_cast<std::size_t>(i) * d2_ + j) * d1_ + p) * d2_ + q;
  }

  int d1_, d2_;
  std::vector<double> t_;
};

// Full-storage symmetric matrix; construction mirrors the upper triangle so
// S(a,b) == S(b,a) holds exactly, not merely to rounding.
class SymMatrix {
 public:
  SymMatrix(int n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    detail::require(n > 0, "SymMatrix: dimension must be positive");
    detail::require(a_.size() == static_cast<std::size_t>(n) * n,
                    "SymMatrix: entry count does not match dimension");
    detail::require_finite(a_, "SymMatrix");
    for (int r = 0; r < n_; ++r)
      for (int s = r + 1; s < n_; ++s) a_[static_cast<std::size_t>(s) * n_ + r] = a_[static_cast<std::size_t>(r) * n_ + s];
  }

  static SymMatrix zeros(int n) {
    return SymMatrix(n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0));
  }

  int size() const { return n_; }

  double operator()(int r, int s) const { return a_[static_cast<std::size_t>(r) * n_ + s]; }

  const std::vector<double>& data() const { return a_; }

  double frobenius() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int n_;
  std::vector<double> a_;
};

class RectMatrix {
 public:
  RectMatrix(int rows, int cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    detail::require(rows > 0 && cols > 0, "RectMatrix: dimensions must be positive");
    detail::require(a_.size() == static_cast<std::size_t>(rows) * cols,
                    "RectMatrix: entry count does not match dimensions");
    detail::require_finite(a_, "RectMatrix");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<double>& data() const { return a_; }

 private:
  int rows_, cols_;
  std::vector<double> a_;
};

// Self-contraction over one axis. axis=3 gives t_ijpq = sum_k a_ijk a_pqk on
// index pairs from the first two axes; axis=2 and axis=1 contract the second
// and first index analogously. The mirrored halves are copied, not
// recomputed, so pair symmetry holds exactly.
inline Biquadratic contract(const Tensor3& A, int axis) {
  detail::require(axis >= 1 && axis <= 3, "contract: axis must be 1, 2, or 3");
  int m = 0, n = 0;
  if (axis == 3) {
    m = A.d1();
    n = A.d2();
  } else if (axis == 2) {
    m = A.d1();
    n = A.d3();
  } else {
    m = A.d2();
    n = A.d3();
  }
  const std::size_t mn = static_cast<std::size_t>(m) * n;
  std::vector<double> t(mn * mn, 0.0);
  auto entry = [&](int a, int b, int c) {
    // (a, b) are the kept pair coordinates, c runs over the contracted axis
    if (axis == 3) return A(a, b, c);
    if (axis == 2) return A(a, c, b);
    return A(c, a, b);
  };
  const int contracted = (axis == 3) ? A.d3() : (axis == 2 ? A.d2() : A.d1());
  for (std::size_t r = 0; r < mn; ++r) {
    const int i = static_cast<int>(r) / n, j = static_cast<int>(r) % n;
    for (std::size_t s = r; s < mn; ++s) {
      const int p = static_cast<int>(s) / n, q = static_cast<int>(s) % n;
      double acc = 0.0;
      for (int c = 0; c < contracted; ++c) acc += entry(i, j, c) * entry(p, q, c);
      t[(r * mn) + s] = acc;
      t[(s * mn) + r] = acc;
    }
  }
  // repack from (<ij>,<pq>) layout to the Biquadratic's (i,j,p,q) layout;
  // both are row-major over the same pairs, so the flat arrays coincide
  return Biquadratic(m, n, std::move(t));
}

// S[<ij>,<pq>] = t_ijpq with the row-major pairing <ij> = i*d2 + j.
inline SymMatrix flatten_biquadratic(const Biquadratic& T) {
  const int n = T.d1() * T.d2();
  std::vector<double> s(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < T.d1(); ++i)
    for (int j = 0; j < T.d2(); ++j)
      for (int p = 0; p < T.d1(); ++p)
        for (int q = 0; q < T.d2(); ++q)
          s[static_cast<std::size_t>(i * T.d2() + j) * n + (p * T.d2() + q)] = T(i, j, p, q);
  return SymMatrix(n, std::move(s));
}

// Inverse of flatten_biquadratic for a given pair shape.
inline Biquadratic unflatten_biquadratic(const SymMatrix& S, int d1, int d2) {
  detail::require(S.size() == d1 * d2, "unflatten_biquadratic: size must equal d1*d2");
  std::vector<double> t(static_cast<std::size_t>(d1) * d2 * d1 * d2);
  std::size_t idx = 0;
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j)
      for (int p = 0; p < d1; ++p)
        for (int q = 0; q < d2; ++q) t[idx++] = S(i * d2 + j, p * d2 + q);
  return Biquadratic(d1, d2, std::move(t));
}

// Mode-k unfolding: the kept axis indexes rows; the remaining two indexes
// flatten row-major in their original order (axis=1 columns are <jk> = j*d3+k).
inline RectMatrix unfold(const Tensor3& A, int axis) {
  detail::require(axis >= 1 && axis <= 3, "unfold: axis must be 1, 2, or 3");
  const int d1 = A.d1(), d2 = A.d2(), d3 = A.d3();
  if (axis == 1) {
    // storage order already is i slowest, (j,k) row-major: a pure reshape
    return RectMatrix(d1, d2 * d3, A.entries());
  }
  if (axis == 2) {
    std::vector<double> m(static_cast<std::size_t>(d2) * d1 * d3);
    for (int j = 0; j < d2; ++j)
      for (int i = 0; i < d1; ++i)
        for (int k = 0; k < d3; ++k)
          m[static_cast<std::size_t>(j) * (d1 * d3) + i * d3 + k] = A(i, j, k);
    return RectMatrix(d2, d1 * d3, std::move(m));
  }
  std::vector<double> m(static_cast<std::size_t>(d3) * d1 * d2);
  for (int k = 0; k < d3; ++k)
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d2; ++j)
        m[static_cast<std::size_t>(k) * (d1 * d2) + i * d2 + j] = A(i, j, k);
  return RectMatrix(d3, d1 * d2, std::move(m));
}

// Gram matrix of the mode-axis unfolding: axis=1 gives B_ij = sum_{k,l}
// a_ikl a_jkl, the contraction over the two non-kept indices.
inline SymMatrix gram(const Tensor3& A, int axis) {
  const RectMatrix U = unfold(A, axis);
  const int n = U.rows();
  std::vector<double> g(static_cast<std::size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      double acc = 0.0;
      for (int c = 0; c < U.cols(); ++c) acc += U(a, c) * U(b, c);
      g[static_cast<std::size_t>(a) * n + b] = acc;
      g[static_cast<std::size_t>(b) * n + a] = acc;
    }
  }
  return SymMatrix(n, std::move(g));
}

enum class SliceMode { first, second };

// Slice families of a biquadratic: fixing the second pair index j gives the
// d2 matrices (G_j)_ip = t_ijpj; fixing the first gives the d1 matrices
// (H_i)_jq = t_ijiq. Each slice is symmetric by pair symmetry.
inline std::vector<SymMatrix> slice_matrices(const Biquadratic& T, SliceMode mode) {
  std::vector<SymMatrix> out;
  if (mode == SliceMode::second) {
    out.reserve(T.d2());
    for (int j = 0; j < T.d2(); ++j) {
      std::vector<double> g(static_cast<std::size_t>(T.d1()) * T.d1());
      for (int i = 0; i < T.d1(); ++i)
        for (int p = 0; p < T.d1(); ++p) g[static_cast<std::size_t>(i) * T.d1() + p] = T(i, j, p, j);
      out.emplace_back(T.d1(), std::move(g));
    }
  } else {
    out.reserve(T.d1());
    for (int i = 0; i < T.d1(); ++i) {
      std::vector<double> h(static_cast<std::size_t>(T.d2()) * T.d2());
      for (int j = 0; j < T.d2(); ++j)
        for (int q = 0; q < T.d2(); ++q) h[static_cast<std::size_t>(j) * T.d2() + q] = T(i, j, i, q);
      out.emplace_back(T.d2(), std::move(h));
    }
  }
  return out;
}

inline Tensor3 rank_one(const Vec& u, const Vec& v, const Vec& w) {
  detail::require(!u.empty() && !v.empty() && !w.empty(), "rank_one: empty factor");
  std::vector<double> a;
  a.reserve(u.size() * v.size() * w.size());
  for (double ui : u)
    for (double vj : v)
      for (double wk : w) a.push_back(ui * vj * wk);
  return Tensor3(static_cast<int>(u.size()), static_cast<int>(v.size()),
                 static_cast<int>(w.size()), std::move(a));
}

inline double inner(const Tensor3& A, const Tensor3& B) {
  detail::require(A.dims() == B.dims(), "inner: dimension mismatch");
  double s = 0.0;
  const auto& a = A.entries();
  const auto& b = B.entries();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double multilinear_form(const Tensor3& A, const Vec& x, const Vec& y, const Vec& z) {
  detail::require(static_cast<int>(x.size()) == A.d1() && static_cast<int>(y.size()) == A.d2() &&
                      static_cast<int>(z.size()) == A.d3(),
                  "multilinear_form: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < A.d1(); ++i)
    for (int j = 0; j < A.d2(); ++j) {
      const double xy = x[i] * y[j];
      for (int k = 0; k < A.d3(); ++k) s += A(i, j, k) * xy * z[k];
    }
  return s;
}

// Contraction of A with vectors on the two axes other than `axis`; the
// vectors are passed in increasing axis order. contract_except(A, 3, x, y)_k
// = sum_ij a_ijk x_i y_j.
inline Vec contract_except(const Tensor3& A, int axis, const Vec& a, const Vec& b) {
  detail::require(axis >= 1 && axis <= 3, "contract_except: axis must be 1, 2, or 3");
  if (axis == 1) {
    detail::require(static_cast<int>(a.size()) == A.d2() && static_cast<int>(b.size()) == A.d3(),
                    "contract_except: dimension mismatch");
    Vec c(A.d1(), 0.0);
    for (int i = 0; i < A.d1(); ++i) {
      double s = 0.0;
      for (int j = 0; j < A.d2(); ++j)
        for (int k = 0; k < A.d3(); ++k) s += A(i, j, k) * a[j] * b[k];
      c[i] = s;
    }
    return c;
  }
  if (axis == 2) {
    detail::require(static_cast<int>(a.size()) == A.d1() && static_cast<int>(b.size()) == A.d3(),
                    "contract_except: dimension mismatch");
    Vec c(A.d2(), 0.0);
    for (int j = 0; j < A.d2(); ++j) {
      double s = 0.0;
      for (int i = 0; i < A.d1(); ++i)
        for (int k = 0; k < A.d3(); ++k) s += A(i, j, k) * a[i] * b[k];
      c[j] = s;
    }
    return c;
  }
  detail::require(static_cast<int>(a.size()) == A.d1() && static_cast<int>(b.size()) == A.d2(),
                  "contract_except: dimension mismatch");
  Vec c(A.d3(), 0.0);
  for (int k = 0; k < A.d3(); ++k) {
    double s = 0.0;
    for (int i = 0; i < A.d1(); ++i)
      for (int j = 0; j < A.d2(); ++j) s += A(i, j, k) * a[i] * b[j];
    c[k] = s;
  }
  return c;
}

// <T, x (x) y (x) x (x) y>, the quartic form a biquadratic induces.
inline double biquadratic_form(const Biquadratic& T, const Vec& x, const Vec& y) {
  detail::require(static_cast<int>(x.size()) == T.d1() && static_cast<int>(y.size()) == T.d2(),
                  "biquadratic_form: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < T.d1(); ++i)
    for (int j = 0; j < T.d2(); ++j) {
      const double xy = x[i] * y[j];
      for (int p = 0; p < T.d1(); ++p)
        for (int q = 0; q < T.d2(); ++q) s += T(i, j, p, q) * xy * x[p] * y[q];
    }
  return s;
}

}  // namespace trinorm
