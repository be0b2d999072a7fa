#include "trinorm/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "trinorm/config.hpp"
#include "trinorm/msolve.hpp"
#include "trinorm/rng.hpp"
#include "trinorm/tensor.hpp"

namespace {

using namespace trinorm;

Tensor3 walkthrough() {
  return Tensor3(2, 2, 3, {4, 3, 2, 1, 2, -1, -1, -5, 3, 2, 1, 4});
}

Tensor3 random_tensor(int d1, int d2, int d3, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> a(static_cast<std::size_t>(d1) * d2 * d3);
  for (double& v : a) v = rng.normal();
  return Tensor3(d1, d2, d3, std::move(a));
}

TEST(Upper, WalkthroughValues) {
  const Tensor3 A = walkthrough();
  EXPECT_NEAR(upper_flatten(A, 3), 7.2937, 1e-3);
  EXPECT_NEAR(upper_gram(A, 1), 7.8874, 1e-3);
  EXPECT_NEAR(upper_gram(A, 2), 8.2529, 1e-3);
  EXPECT_NEAR(upper_gram(A, 3), 7.2937, 1e-3);
}

TEST(Upper, FlattenEqualsGramPerAxis) {
  const Tensor3 A = random_tensor(3, 4, 2, 11);
  for (int axis = 1; axis <= 3; ++axis) {
    const double f = upper_flatten(A, axis);
    const double g = upper_gram(A, axis);
    EXPECT_NEAR(f, g, 1e-9 * (1.0 + f));
  }
}

TEST(Lower, WalkthroughValues) {
  const Tensor3 A = walkthrough();
  // peak slice eigenvalues of the two axis-3 families
  EXPECT_NEAR(lower_slice(A, 3, SliceMode::second), 6.7336, 1e-3);
  EXPECT_NEAR(lower_slice(A, 3, SliceMode::first), 6.0500, 1e-3);
}

TEST(Lower, SliceFamilyCoincidences) {
  // the six slice bounds collapse to three distinct values
  const Tensor3 A = random_tensor(3, 4, 5, 21);
  const double tol = 1e-11;
  EXPECT_NEAR(lower_slice(A, 3, SliceMode::second), lower_slice(A, 1, SliceMode::first), tol);
  EXPECT_NEAR(lower_slice(A, 3, SliceMode::first), lower_slice(A, 2, SliceMode::first), tol);
  EXPECT_NEAR(lower_slice(A, 1, SliceMode::second), lower_slice(A, 2, SliceMode::second), tol);
}

TEST(Lower, NeverExceedsUpper) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Tensor3 A = random_tensor(2, 3, 4, 300 + seed);
    double best_lower = 0.0, best_upper = 1e300;
    for (int axis = 1; axis <= 3; ++axis) {
      best_lower = std::max(best_lower, lower_slice(A, axis, SliceMode::first));
      best_lower = std::max(best_lower, lower_slice(A, axis, SliceMode::second));
      best_upper = std::min(best_upper, upper_gram(A, axis));
    }
    EXPECT_LE(best_lower, best_upper + 1e-9 * (1.0 + best_upper));
  }
}

TEST(Sandwich, WalkthroughAxisOne) {
  const Tensor3 A = walkthrough();
  const SandwichRecord s = sandwich(A, 1);
  EXPECT_EQ(s.axis, 1);
  EXPECT_EQ(s.d, 2);
  EXPECT_NEAR(s.rho, 62.2107, 1e-3);
  EXPECT_NEAR(s.L, 45.3417, 1e-3);
  EXPECT_NEAR(s.rho_over_d, 31.1053, 1e-3);
  EXPECT_NEAR(s.d_times_L, 90.6833, 1e-3);
  EXPECT_NEAR(s.estimate_sq, 45.7959, 1e-3);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(s.link_ok[i]) << "link " << i;
}

TEST(Sandwich, HoldsOnRandomTensorsAllAxes) {
  const int shapes[3][3] = {{2, 3, 4}, {3, 3, 3}, {4, 2, 3}};
  for (int si = 0; si < 3; ++si) {
    const Tensor3 A =
        random_tensor(shapes[si][0], shapes[si][1], shapes[si][2], 400 + static_cast<unsigned>(si));
    const double est = spectral_norm(A, 16, 7).value;
    for (int axis = 1; axis <= 3; ++axis) {
      const SandwichRecord s = sandwich(A, axis, est);
      for (int i = 0; i < 4; ++i)
        EXPECT_TRUE(s.link_ok[i]) << "shape " << si << " axis " << axis << " link " << i;
      EXPECT_LE(s.rho_over_d, s.L + 1e-9 * (1.0 + s.L));
      EXPECT_LE(s.L, s.estimate_sq + 1e-6 * (1.0 + s.estimate_sq));
      EXPECT_LE(s.estimate_sq, s.rho + 1e-9 * (1.0 + s.rho));
      EXPECT_LE(s.rho, s.d_times_L + 1e-9 * (1.0 + s.d_times_L));
    }
  }
}

TEST(Sandwich, ZeroTensorCollapses) {
  const SandwichRecord s = sandwich(Tensor3::zeros(2, 2, 2), 1, 0.0);
  EXPECT_EQ(s.rho, 0.0);
  EXPECT_EQ(s.L, 0.0);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(s.link_ok[i]);
}

TEST(RankOne, UppersAreTight) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(900 + seed);
    const Vec u = rng.unit_vector(3), v = rng.unit_vector(2), w = rng.unit_vector(4);
    const double lam = 0.5 + 2.0 * rng.unit_real();
    Tensor3 A = rank_one(u, v, w);
    std::vector<double> e = A.entries();
    for (double& t : e) t *= lam;
    A = Tensor3(3, 2, 4, std::move(e));
    for (int axis = 1; axis <= 3; ++axis) {
      EXPECT_NEAR(upper_flatten(A, axis), lam, 1e-8 * (1.0 + lam));
      EXPECT_NEAR(upper_gram(A, axis), lam, 1e-8 * (1.0 + lam));
    }
  }
}

Tensor3 block_tensor(std::uint64_t seed) {
  // A(:,1,:) and A(:,2,:) live on disjoint k-blocks, so the axis-3
  // contraction is diagonal across the second index and the peak slice
  // eigenvalue equals the squared norm exactly.
  Rng rng(seed);
  std::vector<double> e(2 * 2 * 4, 0.0);
  auto at = [&e](int i, int j, int k) -> double& {
    return e[(static_cast<std::size_t>(i) * 2 + j) * 4 + k];
  };
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      at(i, 0, k) = rng.normal();
      at(i, 1, 2 + k) = rng.normal();
    }
  return Tensor3(2, 2, 4, std::move(e));
}

TEST(RankOne, DiagonalSliceAttainsTheNorm) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Tensor3 A = block_tensor(1000 + seed);
    const double est = spectral_norm(A, 32, seed).value;
    const double lo = lower_slice(A, 3, SliceMode::second);
    EXPECT_NEAR(lo, est, 1e-8 * (1.0 + est));
  }
}

TEST(Nuclear, TraceIdentities) {
  const Tensor3 A = random_tensor(3, 4, 2, 31);
  const double fro2 = frobenius(A) * frobenius(A);
  const NuclearRecord n = nuclear_bounds(A);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(n.per_axis[k].flatten_nuclear, fro2, 1e-9 * (1.0 + fro2));
    EXPECT_NEAR(n.per_axis[k].gram_nuclear, fro2, 1e-9 * (1.0 + fro2));
    EXPECT_LE(n.per_axis[k].bracket_lo, n.per_axis[k].bracket_hi + 1e-12);
    // squared unfolding nuclear norm dominates the trace; equality needs rank one
    EXPECT_LE(n.per_axis[k].gram_nuclear,
              n.per_axis[k].unfold_nuclear * n.per_axis[k].unfold_nuclear + 1e-9 * (1.0 + fro2));
  }
  EXPECT_NEAR(n.bracket_lo, frobenius(A), 1e-9 * (1.0 + frobenius(A)));
  EXPECT_LE(n.bracket_lo, n.bracket_hi + 1e-12);
  // the strongest lower bound is the largest unfolding nuclear norm, which
  // may legitimately exceed the trace-scaled bracket_hi
  for (int k = 0; k < 3; ++k) EXPECT_GE(n.best_lower, n.per_axis[k].unfold_nuclear - 1e-12);
  EXPECT_GE(n.best_lower, n.bracket_lo - 1e-12);
}

TEST(Nuclear, TraceStrictlyBelowSquaredNuclearWhenRankTwo) {
  // unfoldings of this tensor are orthogonal with two unit singular values:
  // trace = 2 while the squared unfolding nuclear norm is 4
  std::vector<double> e(8, 0.0);
  e[0] = 1.0;  // (0,0,0)
  e[7] = 1.0;  // (1,1,1)
  const Tensor3 A(2, 2, 2, std::move(e));
  const NuclearRecord n = nuclear_bounds(A);
  EXPECT_NEAR(n.per_axis[2].gram_nuclear, 2.0, 1e-9);
  EXPECT_NEAR(n.per_axis[2].unfold_nuclear, 2.0, 1e-9);
  EXPECT_LT(n.per_axis[2].gram_nuclear,
            n.per_axis[2].unfold_nuclear * n.per_axis[2].unfold_nuclear - 0.5);
}

TEST(Nuclear, GreedyUpperOnRankOne) {
  const Vec u{0.6, 0.8}, v{1.0, 0.0}, w{0.0, 0.6, 0.8};
  Tensor3 A = rank_one(u, v, w);
  std::vector<double> e = A.entries();
  for (double& t : e) t *= 2.5;
  A = Tensor3(2, 2, 3, std::move(e));
  const NuclearEstimate up = nuclear_upper_estimate(A, 8, 16, 0);
  EXPECT_TRUE(up.converged);
  EXPECT_NEAR(up.value, 2.5, 1e-8);
  EXPECT_EQ(up.terms, 1);
}

TEST(Nuclear, GreedyUpperOnOrthogonalPair) {
  std::vector<double> e(8, 0.0);
  e[0] = 3.0;  // (0,0,0)
  e[7] = 1.0;  // (1,1,1)
  const Tensor3 A(2, 2, 2, std::move(e));
  const NuclearEstimate up = nuclear_upper_estimate(A, 8, 16, 0);
  EXPECT_TRUE(up.converged);
  EXPECT_NEAR(up.value, 4.0, 1e-8);
  EXPECT_EQ(up.terms, 2);
  const NuclearRecord n = nuclear_bounds(A);
  // Frobenius bracket [sqrt(10), sqrt(2*10)] contains the decomposition value
  EXPECT_NEAR(n.bracket_lo, std::sqrt(10.0), 1e-9);
  EXPECT_NEAR(n.bracket_hi, std::sqrt(20.0), 1e-9);
  EXPECT_GE(up.value, n.bracket_lo - 1e-9);
  EXPECT_LE(up.value, n.bracket_hi + 1e-9);
}

TEST(Report, WalkthroughAllVerdictsPass) {
  RunConfig cfg;
  cfg.restarts = 16;
  const BoundsReport r = build_report(walkthrough(), cfg);
  EXPECT_NEAR(r.estimate, 6.7673, 1e-3);
  EXPECT_TRUE(r.errors.empty());
  EXPECT_TRUE(r.all_pass());
  for (const Verdict& v : r.verdicts) EXPECT_TRUE(v.pass) << v.name;
  EXPECT_FALSE(r.footnotes.empty());
}

TEST(Report, ZeroTensor) {
  RunConfig cfg;
  cfg.restarts = 4;
  const BoundsReport r = build_report(Tensor3::zeros(2, 2, 2), cfg);
  EXPECT_EQ(r.estimate, 0.0);
  EXPECT_TRUE(r.all_pass());
}

TEST(Report, RandomSweepHasNoVerdictFailures) {
  RunConfig cfg;
  cfg.restarts = 8;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    cfg.seed = seed;
    const Tensor3 A = random_tensor(3, 3, 3, 6000 + seed);
    const BoundsReport r = build_report(A, cfg);
    EXPECT_TRUE(r.errors.empty()) << "seed " << seed;
    EXPECT_TRUE(r.all_pass()) << "seed " << seed;
  }
}

TEST(Report, EntriesExposeStableKeys) {
  RunConfig cfg;
  cfg.restarts = 8;
  const BoundsReport r = build_report(walkthrough(), cfg);
  const auto entries = report_entries(r);
  auto has = [&](const std::string& key) {
    for (const auto& [k, v] : entries)
      if (k == key) return true;
    return false;
  };
  EXPECT_TRUE(has("estimate"));
  EXPECT_TRUE(has("route.hopm"));
  EXPECT_TRUE(has("route.meig"));
  EXPECT_TRUE(has("upper.flatten.axis1"));
  EXPECT_TRUE(has("upper.gram.axis3"));
  EXPECT_TRUE(has("lower.slice.axis3.second"));
  EXPECT_TRUE(has("sandwich.axis2.rho"));
  EXPECT_TRUE(has("nuclear.bracket_lo"));
  EXPECT_TRUE(has("nuclear.upper.value"));
  EXPECT_TRUE(has("verdict.upper.flatten.axis1.ge_estimate"));
}

TEST(Report, RendersWithoutThrowing) {
  RunConfig cfg;
  cfg.restarts = 8;
  const BoundsReport r = build_report(walkthrough(), cfg);
  const std::string text = render_report(r);
  EXPECT_NE(text.find("estimate"), std::string::npos);
  EXPECT_NE(text.find("pass"), std::string::npos);
}

TEST(Bounds, ValidatesAxis) {
  const Tensor3 A = random_tensor(2, 2, 2, 1);
  EXPECT_THROW(upper_flatten(A, 0), std::invalid_argument);
  EXPECT_THROW(upper_gram(A, 4), std::invalid_argument);
  EXPECT_THROW(lower_slice(A, -1, SliceMode::first), std::invalid_argument);
  EXPECT_THROW(sandwich(A, 5, 1.0), std::invalid_argument);
}

}  // namespace
