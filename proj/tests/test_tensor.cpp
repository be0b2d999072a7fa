#include "trinorm/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "trinorm/rng.hpp"

namespace {

using namespace trinorm;

// 2x2x3 walkthrough tensor with small integer entries (k fastest).
Tensor3 walkthrough() {
  return Tensor3(2, 2, 3, {4, 3, 2, 1, 2, -1, -1, -5, 3, 2, 1, 4});
}

Tensor3 random_tensor(int d1, int d2, int d3, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> a(static_cast<std::size_t>(d1) * d2 * d3);
  for (double& v : a) v = rng.normal();
  return Tensor3(d1, d2, d3, std::move(a));
}

TEST(Tensor3, RejectsBadConstruction) {
  EXPECT_THROW(Tensor3(0, 2, 2, {}), std::invalid_argument);
  EXPECT_THROW(Tensor3(2, -1, 2, {}), std::invalid_argument);
  EXPECT_THROW(Tensor3(2, 2, 2, std::vector<double>(7, 0.0)), std::invalid_argument);
  std::vector<double> bad(8, 0.0);
  bad[3] = std::nan("");
  EXPECT_THROW(Tensor3(2, 2, 2, std::move(bad)), std::invalid_argument);
}

TEST(Tensor3, IndexingIsKFastest) {
  std::vector<double> a(24);
  for (int i = 0; i < 24; ++i) a[static_cast<std::size_t>(i)] = i;
  const Tensor3 A(2, 3, 4, std::move(a));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 4; ++k) EXPECT_EQ(A(i, j, k), (i * 3 + j) * 4 + k);
  EXPECT_EQ(A.dim(1), 2);
  EXPECT_EQ(A.dim(2), 3);
  EXPECT_EQ(A.dim(3), 4);
  EXPECT_THROW(A.dim(0), std::invalid_argument);
}

TEST(Tensor3, FrobeniusMatchesEntrySquares) {
  const Tensor3 A = walkthrough();
  EXPECT_DOUBLE_EQ(frobenius(A), std::sqrt(4.0 * 4 + 9 + 4 + 1 + 4 + 1 + 1 + 25 + 9 + 4 + 1 + 16));
  EXPECT_DOUBLE_EQ(frobenius(Tensor3::zeros(3, 2, 5)), 0.0);
}

TEST(Contract, WalkthroughAxis3Entries) {
  const Biquadratic T = contract(walkthrough(), 3);
  ASSERT_EQ(T.d1(), 2);
  ASSERT_EQ(T.d2(), 2);
  EXPECT_DOUBLE_EQ(T(0, 0, 0, 0), 29.0);
  EXPECT_DOUBLE_EQ(T(0, 0, 0, 1), 8.0);
  EXPECT_DOUBLE_EQ(T(0, 1, 0, 0), 8.0);
  EXPECT_DOUBLE_EQ(T(0, 0, 1, 0), -13.0);
  EXPECT_DOUBLE_EQ(T(1, 0, 0, 0), -13.0);
  EXPECT_DOUBLE_EQ(T(0, 1, 0, 1), 6.0);
  EXPECT_DOUBLE_EQ(T(0, 1, 1, 0), -14.0);
  EXPECT_DOUBLE_EQ(T(1, 0, 0, 1), -14.0);
  EXPECT_DOUBLE_EQ(T(0, 0, 1, 1), 19.0);
  EXPECT_DOUBLE_EQ(T(1, 1, 0, 0), 19.0);
  EXPECT_DOUBLE_EQ(T(1, 0, 1, 0), 35.0);
  EXPECT_DOUBLE_EQ(T(0, 1, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(T(1, 1, 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(T(1, 0, 1, 1), 5.0);
  EXPECT_DOUBLE_EQ(T(1, 1, 1, 0), 5.0);
  EXPECT_DOUBLE_EQ(T(1, 1, 1, 1), 21.0);
  // the cross entries differ, so only pair symmetry may be assumed
  EXPECT_NE(T(0, 0, 1, 1), T(0, 1, 1, 0));
}

TEST(Contract, PairSymmetryHoldsExactly) {
  const Tensor3 A = random_tensor(3, 4, 5, 11);
  for (int axis = 1; axis <= 3; ++axis) {
    const Biquadratic T = contract(A, axis);
    for (int i = 0; i < T.d1(); ++i)
      for (int j = 0; j < T.d2(); ++j)
        for (int p = 0; p < T.d1(); ++p)
          for (int q = 0; q < T.d2(); ++q) EXPECT_EQ(T(i, j, p, q), T(p, q, i, j));
  }
}

TEST(Contract, ShapesFollowTheKeptAxes) {
  const Tensor3 A = random_tensor(2, 3, 4, 5);
  EXPECT_EQ(contract(A, 3).d1(), 2);
  EXPECT_EQ(contract(A, 3).d2(), 3);
  EXPECT_EQ(contract(A, 2).d1(), 2);
  EXPECT_EQ(contract(A, 2).d2(), 4);
  EXPECT_EQ(contract(A, 1).d1(), 3);
  EXPECT_EQ(contract(A, 1).d2(), 4);
  EXPECT_THROW(contract(A, 0), std::invalid_argument);
  EXPECT_THROW(contract(A, 4), std::invalid_argument);
}

TEST(Contract, TraceOfFlatteningIsSquaredFrobenius) {
  const Tensor3 A = random_tensor(3, 2, 4, 21);
  const double f2 = frobenius(A) * frobenius(A);
  for (int axis = 1; axis <= 3; ++axis) {
    const SymMatrix S = flatten_biquadratic(contract(A, axis));
    double tr = 0.0;
    for (int r = 0; r < S.size(); ++r) tr += S(r, r);
    EXPECT_NEAR(tr, f2, 1e-12 * (1.0 + f2));
  }
}

TEST(Flatten, WalkthroughMatrix) {
  const SymMatrix S = flatten_biquadratic(contract(walkthrough(), 3));
  const double expected[4][4] = {{29, 8, -13, 19}, {8, 6, -14, 0}, {-13, -14, 35, 5},
                                 {19, 0, 5, 21}};
  ASSERT_EQ(S.size(), 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_DOUBLE_EQ(S(r, c), expected[r][c]);
}

TEST(Flatten, UnflattenRoundTrip) {
  const Biquadratic T = contract(random_tensor(2, 3, 4, 33), 2);
  const Biquadratic back = unflatten_biquadratic(flatten_biquadratic(T), T.d1(), T.d2());
  EXPECT_EQ(back.entries(), T.entries());
}

TEST(Unfold, ShapesAndContent) {
  const Tensor3 A = random_tensor(2, 3, 4, 7);
  const RectMatrix U1 = unfold(A, 1);
  ASSERT_EQ(U1.rows(), 2);
  ASSERT_EQ(U1.cols(), 12);
  const RectMatrix U2 = unfold(A, 2);
  ASSERT_EQ(U2.rows(), 3);
  ASSERT_EQ(U2.cols(), 8);
  const RectMatrix U3 = unfold(A, 3);
  ASSERT_EQ(U3.rows(), 4);
  ASSERT_EQ(U3.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(U1(i, j * 4 + k), A(i, j, k));
        EXPECT_EQ(U2(j, i * 4 + k), A(i, j, k));
        EXPECT_EQ(U3(k, i * 3 + j), A(i, j, k));
      }
}

TEST(Gram, MatchesUnfoldTimesTranspose) {
  const Tensor3 A = random_tensor(3, 4, 2, 13);
  for (int axis = 1; axis <= 3; ++axis) {
    const SymMatrix B = gram(A, axis);
    const RectMatrix U = unfold(A, axis);
    ASSERT_EQ(B.size(), U.rows());
    for (int r = 0; r < B.size(); ++r)
      for (int c = 0; c < B.size(); ++c) {
        double acc = 0.0;
        for (int m = 0; m < U.cols(); ++m) acc += U(r, m) * U(c, m);
        EXPECT_NEAR(B(r, c), acc, 1e-14 * (1.0 + std::abs(acc)));
      }
  }
}

TEST(Gram, WalkthroughValues) {
  const Tensor3 A = walkthrough();
  const SymMatrix B1 = gram(A, 1);
  EXPECT_DOUBLE_EQ(B1(0, 0), 35.0);
  EXPECT_DOUBLE_EQ(B1(0, 1), -13.0);
  EXPECT_DOUBLE_EQ(B1(1, 1), 56.0);
  const SymMatrix B2 = gram(A, 2);
  EXPECT_DOUBLE_EQ(B2(0, 0), 64.0);
  EXPECT_DOUBLE_EQ(B2(0, 1), 13.0);
  EXPECT_DOUBLE_EQ(B2(1, 1), 27.0);
  const SymMatrix B3 = gram(A, 3);
  EXPECT_DOUBLE_EQ(B3(0, 0), 22.0);
  EXPECT_DOUBLE_EQ(B3(1, 1), 39.0);
  EXPECT_DOUBLE_EQ(B3(2, 2), 30.0);
  EXPECT_DOUBLE_EQ(B3(0, 1), 21.0);
  EXPECT_DOUBLE_EQ(B3(0, 2), 12.0);
  EXPECT_DOUBLE_EQ(B3(1, 2), -7.0);
}

TEST(Slices, WalkthroughFamilies) {
  const Biquadratic T = contract(walkthrough(), 3);
  const std::vector<SymMatrix> G = slice_matrices(T, SliceMode::second);
  ASSERT_EQ(G.size(), 2u);
  EXPECT_DOUBLE_EQ(G[0](0, 0), 29.0);
  EXPECT_DOUBLE_EQ(G[0](0, 1), -13.0);
  EXPECT_DOUBLE_EQ(G[0](1, 1), 35.0);
  EXPECT_DOUBLE_EQ(G[1](0, 0), 6.0);
  EXPECT_DOUBLE_EQ(G[1](0, 1), 0.0);
  EXPECT_DOUBLE_EQ(G[1](1, 1), 21.0);
  const std::vector<SymMatrix> H = slice_matrices(T, SliceMode::first);
  ASSERT_EQ(H.size(), 2u);
  EXPECT_DOUBLE_EQ(H[0](0, 0), 29.0);
  EXPECT_DOUBLE_EQ(H[0](0, 1), 8.0);
  EXPECT_DOUBLE_EQ(H[0](1, 1), 6.0);
  EXPECT_DOUBLE_EQ(H[1](0, 0), 35.0);
  EXPECT_DOUBLE_EQ(H[1](0, 1), 5.0);
  EXPECT_DOUBLE_EQ(H[1](1, 1), 21.0);
}

TEST(Biquadratic, RejectsPairAsymmetry) {
  std::vector<double> t(16, 0.0);
  t[1] = 1.0;  // t_0001 without the mirrored t_0100
  EXPECT_THROW(Biquadratic(2, 2, std::move(t)), std::invalid_argument);
}

TEST(RankOne, FormsFactorize) {
  const Vec u{0.6, 0.8}, v{1.0, 0.0, 0.0}, w{0.5, 0.5, 0.5, 0.5};
  const Tensor3 A = rank_one(u, v, w);
  Rng rng(3);
  const Vec x = rng.unit_vector(2), y = rng.unit_vector(3), z = rng.unit_vector(4);
  EXPECT_NEAR(multilinear_form(A, x, y, z), dot(u, x) * dot(v, y) * dot(w, z), 1e-14);
  const Vec c = contract_except(A, 3, x, y);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(c[k], dot(u, x) * dot(v, y) * w[k], 1e-14);
}

TEST(ContractExcept, MatchesDirectSums) {
  const Tensor3 A = random_tensor(2, 3, 4, 17);
  Rng rng(18);
  const Vec x = rng.unit_vector(2), y = rng.unit_vector(3), z = rng.unit_vector(4);
  const Vec c1 = contract_except(A, 1, y, z);
  const Vec c2 = contract_except(A, 2, x, z);
  const Vec c3 = contract_except(A, 3, x, y);
  EXPECT_NEAR(dot(c1, x), multilinear_form(A, x, y, z), 1e-13);
  EXPECT_NEAR(dot(c2, y), multilinear_form(A, x, y, z), 1e-13);
  EXPECT_NEAR(dot(c3, z), multilinear_form(A, x, y, z), 1e-13);
  EXPECT_THROW(contract_except(A, 3, z, y), std::invalid_argument);
}

TEST(BiquadraticForm, MatchesSquaredContraction) {
  const Tensor3 A = random_tensor(2, 2, 5, 23);
  const Biquadratic T = contract(A, 3);
  Rng rng(24);
  const Vec x = rng.unit_vector(2), y = rng.unit_vector(2);
  const Vec c = contract_except(A, 3, x, y);
  EXPECT_NEAR(biquadratic_form(T, x, y), dot(c, c), 1e-12);
  EXPECT_GE(biquadratic_form(T, x, y), 0.0);
}

TEST(Inner, DimensionChecked) {
  const Tensor3 A = random_tensor(2, 2, 2, 1);
  const Tensor3 B = random_tensor(2, 2, 3, 1);
  EXPECT_THROW(inner(A, B), std::invalid_argument);
  EXPECT_NEAR(inner(A, A), frobenius(A) * frobenius(A), 1e-13);
}

}  // namespace
