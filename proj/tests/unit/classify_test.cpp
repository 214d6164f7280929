#include <gtest/gtest.h>

#include <cmath>

#include "kcompound/classify.hpp"
#include "kcompound/compound.hpp"
#include "kcompound/errors.hpp"
#include "kcompound/systems.hpp"
#include "test_support.hpp"

using namespace kcompound;
using kcompound::testing::random_matrix;

namespace {

/// Entries drawn from {-1, 0, +1} times a random magnitude, biased towards
/// patterns that satisfy one of the band rules so both verdicts occur.
DenseMatrix random_sign_pattern(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::uniform_int_distribution<int> sign(-1, 1);
  std::bernoulli_distribution keep(0.9);
  DenseMatrix a(n, n);
  const int corner = sign(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      int s = sign(rng);
      if (keep(rng)) {
        if (d == 1) s = std::abs(s);
        if (d > 1 && d < n - 1) s = 0;
        if (d == n - 1) s = corner * std::abs(s);
      }
      a(i, j) = s * mag(rng);
    }
  return a;
}

DenseMatrix cyclic_permutation(std::size_t n) {
  DenseMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, (i + 1) % n) = 1.0;
  return p;
}

}  // namespace

TEST(Metzler, ExampleEight) {
  const DenseMatrix a = example8_matrix();
  const MetzlerResult r = is_metzler(a);
  EXPECT_FALSE(r.metzler);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->row, 2u);
  EXPECT_EQ(r.witness->col, 0u);
  EXPECT_EQ(r.witness->value, -3.0);
  EXPECT_TRUE(is_metzler(add_compound(a, 2).matrix).metzler);
}

TEST(Metzler, NegativeIdentityAndTolerance) {
  EXPECT_TRUE(is_metzler(-1.0 * DenseMatrix::identity(3)).metzler);
  const DenseMatrix a{{1.0, -1e-15}, {0.0, 1.0}};
  EXPECT_TRUE(is_metzler(a).metzler);
  EXPECT_FALSE(is_metzler(a, 0.0).metzler);
}

TEST(Irreducible, Examples) {
  EXPECT_TRUE(is_irreducible(add_compound(example8_matrix(), 2).matrix));
  EXPECT_FALSE(is_irreducible(DenseMatrix{{1.0, 0.0}, {0.0, 2.0}}));
  EXPECT_TRUE(is_irreducible(cyclic_permutation(5)));
  EXPECT_FALSE(is_irreducible(DenseMatrix{{1.0, 1.0}, {0.0, 1.0}}));
  EXPECT_TRUE(is_irreducible(DenseMatrix{{0.0}}));
}

TEST(Pattern, ExampleEightAlternating) {
  const PatternVerdict v = metzler_compound_pattern(example8_matrix(), 2);
  EXPECT_TRUE(v.metzler);
  EXPECT_EQ(v.pattern, PatternCase::Alternating);
}

TEST(Pattern, TridiagonalOddBand) {
  std::mt19937_64 rng(41);
  DenseMatrix a = kcompound::testing::random_jacobi(5, rng);
  const PatternVerdict v = metzler_compound_pattern(a, 3);
  EXPECT_TRUE(v.metzler);
  EXPECT_EQ(v.pattern, PatternCase::OddBand);
  EXPECT_TRUE(is_metzler(add_compound(a, 3).matrix, 0.0).metzler);
}

TEST(Pattern, EquivalenceSweep) {
  std::mt19937_64 rng(42);
  std::size_t agree_true = 0, agree_false = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 4 + trial % 3;
    const DenseMatrix a = random_sign_pattern(n, rng);
    for (std::size_t k = 1; k < n; ++k) {
      const bool pattern = metzler_compound_pattern(a, k).metzler;
      const bool direct = is_metzler(add_compound(a, k).matrix, 0.0).metzler;
      EXPECT_EQ(pattern, direct) << "n=" << n << " k=" << k << "\n" << a;
      (pattern ? agree_true : agree_false)++;
    }
  }
  EXPECT_GT(agree_true, 50u);
  EXPECT_GT(agree_false, 50u);
}

TEST(Pattern, Errors) {
  EXPECT_THROW(metzler_compound_pattern(DenseMatrix::identity(2), 1), DomainError);
  EXPECT_THROW(metzler_compound_pattern(DenseMatrix::identity(4), 4), DomainError);
  EXPECT_EQ(to_string(PatternCase::EvenBand), "even-band");
}

TEST(Jacobi, Recognition) {
  EXPECT_TRUE(is_jacobi(DenseMatrix{{-1, 1, 0}, {1, -2, 1}, {0, 1, -1}}));
  EXPECT_FALSE(is_jacobi(example8_matrix()));
  EXPECT_FALSE(is_jacobi(DenseMatrix{{-1, 0, 0}, {1, -2, 1}, {0, 1, -1}}));
  EXPECT_TRUE(is_jacobi(DenseMatrix{{-1, 0, 0}, {1, -2, 1}, {0, 1, -1}}, false));
}

TEST(Jacobi, CompoundsMetzlerAndIrreducible) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const DenseMatrix a = kcompound::testing::random_jacobi(n, rng);
    for (std::size_t k = 1; k < n; ++k) {
      const DenseMatrix ak = add_compound(a, k).matrix;
      EXPECT_TRUE(is_metzler(ak, 0.0).metzler);
      EXPECT_TRUE(is_irreducible(ak));
    }
  }
}

TEST(CertifyPositive, ExampleEight) {
  const std::vector<MatrixSample> s{{example8_matrix(), 0.0, {}}};
  const CertReport ok = certify_k_positive(s, 2, false);
  EXPECT_EQ(ok.verdict, Verdict::Certified);
  EXPECT_EQ(ok.grid.kind, "single");
  const CertReport strong = certify_k_positive(s, 2, true);
  EXPECT_EQ(strong.verdict, Verdict::Certified);
  EXPECT_EQ(strong.irreducible_samples, 1u);
  const CertReport bad = certify_k_positive(s, 1, false);
  EXPECT_EQ(bad.verdict, Verdict::Refuted);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(*bad.witness->row, 0u);
  EXPECT_EQ(*bad.witness->col, 2u);
  EXPECT_EQ(bad.witness->value, -2.0);
}

TEST(CertifyPositive, RefutesAtFlippedSample) {
  auto a = [](double t) {
    DenseMatrix m = example8_matrix();
    m(1, 2) = 0.1 * std::cos(t);
    return m;
  };
  const auto times = uniform_times({0.0, 3.0}, 31);
  const CertReport r = certify_k_positive(sample_ltv(a, times), 2, false);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.witness->t, std::acos(0.0));
  EXPECT_LT(r.witness->t - 0.1, std::acos(0.0));
  EXPECT_EQ(r.grid.kind, "time");
  EXPECT_EQ(r.grid.count, 31u);
}

TEST(CertifyPositive, StrongRejectsReducible) {
  const std::vector<MatrixSample> s{{-1.0 * DenseMatrix::identity(3), 0.0, {}}};
  EXPECT_EQ(certify_k_positive(s, 1, false).verdict, Verdict::Certified);
  const CertReport r = certify_k_positive(s, 1, true);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_TRUE(r.witness.has_value());
}

TEST(CertifyPositive, Errors) {
  EXPECT_THROW(certify_k_positive({}, 1, false), DomainError);
  EXPECT_THROW(certify_k_positive({{DenseMatrix::identity(2), 0, {}}, {DenseMatrix::identity(3), 1, {}}}, 1, false),
               DomainError);
}

TEST(CertifyContracting, ExampleFiveTrace) {
  const SystemDef sys = example5_system();
  const auto samples = sample_ltv([&](double t) { return sys.system_matrix(t); },
                                  uniform_times({0.0, 2.0 * std::acos(-1.0)}, 101));
  for (auto kind : {MeasureKind::L1, MeasureKind::L2, MeasureKind::LInf}) {
    const CertReport r = certify_k_contracting(samples, 2.0, kind);
    EXPECT_EQ(r.verdict, Verdict::Certified);
    EXPECT_NEAR(r.margin, 1.0, 1e-15);
    EXPECT_EQ(r.property, Property::KContracting);
  }
}

TEST(CertifyContracting, ThomasFullOrder) {
  const SystemDef sys = thomas_system(0.1);
  const auto samples = sample_field([&](std::span<const double> x) { return sys.jacobian_at(0.0, x); },
                                    uniform_grid(*sys.state_space, 7));
  const CertReport r = certify_k_contracting(samples, 3.0, MeasureKind::L2);
  EXPECT_EQ(r.verdict, Verdict::Certified);
  EXPECT_NEAR(r.margin, 0.3, 1e-14);
  EXPECT_EQ(r.grid.kind, "state");
}

TEST(CertifyContracting, ThomasBelowThresholdRefuted) {
  const SystemDef sys = thomas_system(0.1);
  const auto samples = sample_field([&](std::span<const double> x) { return sys.jacobian_at(0.0, x); },
                                    uniform_grid(*sys.state_space, 11));
  const CertReport r = certify_k_contracting(samples, 2.7, MeasureKind::L1);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_EQ(r.property, Property::AlphaContracting);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(r.witness->value, 0.03, 1e-12);
}

TEST(CertifyContracting, FirstAndLastOrders) {
  std::mt19937_64 rng(44);
  const DenseMatrix a = random_matrix(4, 4, rng) - 3.0 * DenseMatrix::identity(4);
  const std::vector<MatrixSample> s{{a, 0.0, {}}};
  EXPECT_NEAR(certify_k_contracting(s, 1.0, MeasureKind::L1).margin, -measure(a, MeasureKind::L1), 1e-15);
  EXPECT_NEAR(certify_k_contracting(s, 4.0, MeasureKind::L1).margin, -a.trace(), 1e-14);
}

TEST(CertifyContracting, ZeroMeasureIsInconclusive) {
  const std::vector<MatrixSample> s{{DenseMatrix{{0.0, 1.0}, {-1.0, 0.0}}, 0.0, {}}};
  const CertReport r = certify_k_contracting(s, 1.0, MeasureKind::L2);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(CertifyContracting, ScalingKeepsVerdict) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix a = random_matrix(4, 4, rng, -2.0, 1.0);
    const std::vector<MatrixSample> s{{a, 0.0, {}}};
    const std::vector<MatrixSample> s3{{3.0 * a, 0.0, {}}};
    const CertReport r1 = certify_k_contracting(s, 2.0, MeasureKind::L1);
    const CertReport r3 = certify_k_contracting(s3, 2.0, MeasureKind::L1);
    EXPECT_NEAR(r3.margin, 3.0 * r1.margin, 1e-12);
    if (r1.verdict == Verdict::Refuted) EXPECT_EQ(r3.verdict, Verdict::Refuted);
  }
}

TEST(CertifyContracting, CoppelDecay) {
  std::mt19937_64 rng(46);
  int certified = 0;
  for (int trial = 0; trial < 30 && certified < 10; ++trial) {
    const DenseMatrix a = random_matrix(4, 4, rng) - 1.5 * DenseMatrix::identity(4);
    for (auto kind : {MeasureKind::L1, MeasureKind::L2, MeasureKind::LInf}) {
      const CertReport r = certify_k_contracting({{a, 0.0, {}}}, 2.0, kind);
      if (r.verdict != Verdict::Certified) continue;
      ++certified;
      for (double t = 0.0; t <= 5.0; t += 0.5) {
        const double norm = matrix_norm(kcompound::testing::expm(add_compound(a, 2).matrix, t), kind);
        EXPECT_LE(norm, std::exp(-r.margin * t) * (1.0 + 1e-6));
      }
    }
  }
  EXPECT_GT(certified, 0);
}

TEST(CertifyCooperative, CyclicSystems) {
  const SystemDef neg = cyclic_feedback_system(4, -1);
  const auto grid = uniform_grid(*neg.state_space, 5);
  auto jac = [](const SystemDef& s) {
    return [&s](std::span<const double> x) { return s.jacobian_at(0.0, x); };
  };
  EXPECT_EQ(certify_k_cooperative(jac(neg), grid, 2, true).verdict, Verdict::Certified);
  EXPECT_EQ(certify_k_cooperative(jac(neg), grid, 1, false).verdict, Verdict::Refuted);
  const SystemDef pos = cyclic_feedback_system(4, +1);
  const CertReport r = certify_k_cooperative(jac(pos), grid, 1, true);
  EXPECT_EQ(r.verdict, Verdict::Certified);
  EXPECT_EQ(r.property, Property::StronglyKCooperative);
  EXPECT_EQ(r.irreducible_samples, grid.size());
  EXPECT_THROW(certify_k_cooperative(jac(pos), {}, 1, true), DomainError);
}

TEST(CertifyCooperative, ThomasClosedLoopNotTwoCooperative) {
  const SystemDef sys = thomas_system(0.1, -0.9);
  const CertReport r = certify_k_cooperative([&](std::span<const double> x) { return sys.jacobian_at(0.0, x); },
                                             uniform_grid(*sys.state_space, 11), 2, false);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->x.size(), 3u);
}

TEST(DiagStability, NegativeIdentity) {
  const Vector d(3, 1.0);
  const DiagStabilityResult r = k_diag_stability_check(-1.0 * DenseMatrix::identity(3), 2, d);
  EXPECT_TRUE(r.negative_definite);
  EXPECT_NEAR(r.max_eigenvalue, -4.0, 1e-14);
}

TEST(DiagStability, AgreesWithL2Measure) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix a = random_matrix(4, 4, rng) - 1.2 * DenseMatrix::identity(4);
    for (std::size_t k = 1; k <= 3; ++k) {
      const Vector d(binomial(4, k), 1.0);
      const bool l2 = compound_measure(a, k, MeasureKind::L2) < 0.0;
      EXPECT_EQ(k_diag_stability_check(a, k, d).negative_definite, l2);
    }
  }
}

TEST(DiagStability, MatrixFormAndErrors) {
  const DenseMatrix a{{-1.0, 3.0}, {0.0, -1.0}};
  EXPECT_FALSE(k_diag_stability_check(a, 1, DenseMatrix::identity(2)).negative_definite);
  EXPECT_TRUE(k_diag_stability_check(a, 1, DenseMatrix{{1.0, 0.0}, {0.0, 4.0}}).negative_definite);
  EXPECT_THROW(k_diag_stability_check(a, 1, Vector{1.0}), DomainError);
  EXPECT_THROW(k_diag_stability_check(a, 1, Vector{1.0, -1.0}), DomainError);
  EXPECT_THROW(k_diag_stability_check(a, 1, DenseMatrix{{1.0, 0.5}, {0.0, 1.0}}), DomainError);
  const CertReport r = certify_k_diag_stable(a, 1, Vector{1.0, 1.0});
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_TRUE(r.witness.has_value());
}

TEST(Labels, Strings) {
  EXPECT_EQ(to_string(Property::KDiagStable), "k-diag-stable");
  EXPECT_EQ(to_string(Verdict::Inconclusive), "Inconclusive");
}
