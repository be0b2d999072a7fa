#pragma once

// Deterministic random inputs. Streams are keyed by (seed, index) through a
// splitmix64 hash, so concurrent restarts and experiment instances never
// share generator state and results do not depend on scheduling.
//
// The library distributions in <random> are deliberately avoided for output:
// their sequences are implementation-defined, while mt19937_64 itself is
// pinned by the standard.

#include <cmath>
#include <cstdint>
#include <random>

#include "trinorm/vec.hpp"

namespace trinorm {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double unit_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_real(); }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * unit_real() - 1.0;
      v = 2.0 * unit_real() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Uniform on the unit sphere in R^n.
  Vec unit_vector(int n) {
    Vec x(static_cast<std::size_t>(n));
    double nrm = 0.0;
    do {
      for (double& v : x) v = normal();
      nrm = norm2(x);
    } while (nrm < 1e-12);
    for (double& v : x) v /= nrm;
    return x;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace trinorm
