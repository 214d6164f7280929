#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "kcompound/errors.hpp"
#include "kcompound/signvar.hpp"
#include "test_support.hpp"

using namespace kcompound;

namespace {

std::size_t brute_s_plus(const Vector& x) {
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == 0.0) zeros.push_back(i);
  std::size_t best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << zeros.size()); ++mask) {
    Vector fill = x;
    for (std::size_t b = 0; b < zeros.size(); ++b) fill[zeros[b]] = (mask >> b & 1) ? 1.0 : -1.0;
    best = std::max(best, s_minus(fill));
  }
  return best;
}

std::vector<Vector> all_ternary(std::size_t n) {
  std::vector<Vector> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Vector x(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3) x[i] = static_cast<double>(c % 3) - 1.0;
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(SignVariations, PaperExample) {
  const Vector x{-1.0, 0.0, 0.0, 2.0, -3.0};
  EXPECT_EQ(s_minus(x), 2u);
  EXPECT_EQ(s_plus(x), 4u);
  const auto r = sign_variations(x);
  EXPECT_EQ(r.s_minus, 2u);
  EXPECT_EQ(r.s_plus, 4u);
}

TEST(SignVariations, PositiveAndZeroVectors) {
  EXPECT_EQ(s_minus(Vector{1, 2, 3}), 0u);
  EXPECT_EQ(s_plus(Vector{1, 2, 3}), 0u);
  EXPECT_EQ(s_minus(Vector(4, 0.0)), 0u);
  EXPECT_EQ(s_plus(Vector(4, 0.0)), 3u);
  EXPECT_THROW(s_minus(Vector{}), DomainError);
  EXPECT_THROW(s_plus(Vector{}), DomainError);
}

TEST(SignVariations, SPlusMatchesBruteForce) {
  for (const auto& x : all_ternary(5)) EXPECT_EQ(s_plus(x), brute_s_plus(x));
}

TEST(SignVariations, ChainAndInvariances) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pick(-1, 1);
  for (int trial = 0; trial < 500; ++trial) {
    Vector x(7);
    for (auto& v : x) v = pick(rng) * 0.5 * (1 + trial % 3);
    const std::size_t lo = s_minus(x), hi = s_plus(x);
    EXPECT_LE(lo, hi);
    EXPECT_LE(hi, x.size() - 1);
    Vector neg = x, scaled = x;
    for (auto& v : neg) v = -v;
    for (auto& v : scaled) v *= 3.7;
    EXPECT_EQ(s_minus(neg), lo);
    EXPECT_EQ(s_plus(neg), hi);
    EXPECT_EQ(s_minus(scaled), lo);
    EXPECT_EQ(s_plus(scaled), hi);
    if (std::none_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) EXPECT_EQ(lo, hi);
  }
}

TEST(SignVariations, ToleranceTreatsSmallEntriesAsZero) {
  const Vector x{1.0, -1e-12, 1.0};
  EXPECT_EQ(s_minus(x), 2u);
  EXPECT_EQ(s_minus(x, default_zero_tolerance(x)), 0u);
  EXPECT_EQ(s_plus(x, default_zero_tolerance(x)), 2u);
  EXPECT_DOUBLE_EQ(default_zero_tolerance(Vector{-4.0, 2.0}), 4e-9);
}

TEST(Cones, ExampleEightInitialState) {
  EXPECT_TRUE(in_cone(Vector{4, -21, -1}, 2, ConeVariant::Closed));
  EXPECT_FALSE(in_cone(Vector{4, -21, -1}, 1, ConeVariant::Closed));
}

TEST(Cones, FullOrderContainsEverything) {
  for (const auto& x : all_ternary(4)) {
    EXPECT_TRUE(in_cone(x, 4, ConeVariant::Closed));
    EXPECT_TRUE(in_cone(x, 4, ConeVariant::Open));
  }
}

TEST(Cones, OpenConeBoundaryAndNesting) {
  for (const auto& x : all_ternary(4)) {
    const std::size_t sp = s_plus(x);
    if (sp >= 1) {
      EXPECT_TRUE(in_cone(x, sp + 1, ConeVariant::Open));
      EXPECT_FALSE(in_cone(x, sp, ConeVariant::Open));
    }
    for (std::size_t k = 1; k < 4; ++k)
      for (auto v : {ConeVariant::Closed, ConeVariant::Open})
        if (in_cone(x, k, v)) EXPECT_TRUE(in_cone(x, k + 1, v));
  }
}

TEST(Cones, FirstClosedConeIsTheOrthants) {
  for (const auto& x : all_ternary(4)) {
    const bool nonneg = std::all_of(x.begin(), x.end(), [](double v) { return v >= 0; });
    const bool nonpos = std::all_of(x.begin(), x.end(), [](double v) { return v <= 0; });
    EXPECT_EQ(in_cone(x, 1, ConeVariant::Closed), nonneg || nonpos);
  }
}

TEST(SignRegularity, IdentityIsWeaklyNonNegative) {
  for (std::size_t k = 1; k <= 3; ++k) {
    EXPECT_EQ(sign_regular_order(DenseMatrix::identity(4), k, false), SignRegularity::NonNegative);
    EXPECT_EQ(sign_regular_order(DenseMatrix::identity(4), k, true), SignRegularity::NonNegative);
  }
  EXPECT_EQ(sign_regular_order(DenseMatrix::identity(4), 4, true), SignRegularity::Positive);
}

TEST(SignRegularity, ExponentialOfJacobiIsTotallyPositive) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix a = kcompound::testing::random_jacobi(4, rng);
    const DenseMatrix e = kcompound::testing::expm(a, 0.5);
    for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(sign_regular_order(e, k, true), SignRegularity::Positive);
  }
}

TEST(SignRegularity, MixedAndNegative) {
  EXPECT_EQ(sign_regular_order(DenseMatrix{{1, -1}, {1, 1}}, 1, false), SignRegularity::Mixed);
  EXPECT_EQ(sign_regular_order(DenseMatrix{{-1, -2}, {-3, -4}}, 1, true), SignRegularity::Negative);
  EXPECT_EQ(to_string(SignRegularity::Positive), "Positive");
}

TEST(SignRegularity, StrictOrderDiminishesVariation) {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix a = kcompound::testing::expm(kcompound::testing::random_jacobi(4, rng), 0.3);
    const std::size_t k = 2;
    ASSERT_EQ(sign_regular_order(a, k, true), SignRegularity::Positive);
    int tested = 0;
    while (tested < 1000) {
      Vector x(4);
      for (auto& v : x) v = g(rng);
      if (s_minus(x) > k - 1) continue;
      ++tested;
      EXPECT_LE(s_plus(a * std::span<const double>(x)), k - 1);
    }
  }
}
