#include <gtest/gtest.h>

#include "ngonstab/beta_certifier.hpp"
#include "ngonstab/linsys.hpp"
#include "oracles.hpp"

using namespace ngonstab;

TEST(BetaSystem, ZeroBetaCircularIsDoubledScalar) {
  const auto s = beta_monodromy(0, 0);
  const double big = std::exp(2 * oracle::pi / std::sqrt(2.0));
  EXPECT_NEAR(big, 85.020, 1e-3);
  EXPECT_LE(oracle::multiset_distance(s.eigenvalues, {big, big, 1 / big, 1 / big}), 1e-6);
  EXPECT_EQ(s.classification, SpectralClass::Hyperbolic);
}

TEST(BetaSystem, CheckpointHyperbolic) {
  EXPECT_EQ(beta_monodromy(1.36, 0.7).classification, SpectralClass::Hyperbolic);
}

TEST(BetaSystem, UpperEndpointHasUnitMultiplier) {
  // 3/2 - beta = 0 leaves a free direction; both paths see multiplier 1
  const auto s = beta_monodromy(1.5, 0);
  bool has_one = false;
  for (const auto& mu : s.eigenvalues) has_one |= std::abs(mu - 1.0) < 1e-5;
  EXPECT_TRUE(has_one);
  bool oracle_one = false;
  for (const auto& mu : oracle::eigenvalues(constant_oracle(beta_system(1.5, 0)))) oracle_one |= std::abs(mu - 1.0) < 1e-5;
  EXPECT_TRUE(oracle_one);
  EXPECT_NE(s.classification, SpectralClass::Hyperbolic);
}

TEST(BetaSystem, RejectsNegativeBeta) { EXPECT_THROW(beta_monodromy(-0.1, 0.2), std::invalid_argument); }

TEST(BetaSystem, FromMass) {
  EXPECT_EQ(beta_from_mass(9), 0.0);
  EXPECT_EQ(beta_from_mass(0), 1.5);
  EXPECT_NEAR(beta_from_mass(5), 1.0, 1e-15);
  EXPECT_THROW(beta_from_mass(-0.01), std::invalid_argument);
  EXPECT_THROW(beta_from_mass(9.01), std::invalid_argument);
  double prev = beta_from_mass(0);
  for (int i = 1; i <= 90; ++i) {
    const double v = beta_from_mass(i / 10.0);
    EXPECT_LT(v, prev);
    EXPECT_GE(v, 0.0);
    prev = v;
  }
}

TEST(EffectiveBeta, ReferenceValues) {
  const auto four = effective_beta(4, 2);
  EXPECT_NEAR(four.beta_eff, 0.7164, 5e-5);
  EXPECT_NEAR(four.mean_shift, 0.5, 1e-10);
  EXPECT_TRUE(four.reducible);
  EXPECT_EQ(four.route, CertificateRoute::Beta);
  const auto five = effective_beta(5, 2);
  EXPECT_NEAR(five.beta_eff, 1.145898, 5e-6);
  EXPECT_NEAR(five.mean_shift, 0.5, 1e-10);
  EXPECT_TRUE(five.reducible);
  EXPECT_NEAR(five.coupling, 0.262865, 5e-6);
}

TEST(EffectiveBeta, MatchesDirectSums) {
  for (auto [n, l] : {std::pair{4, 2}, {5, 2}, {7, 2}, {7, 3}, {9, 4}}) {
    const auto s = oracle::block_sums(n, l);
    const double lam = oracle::csc_lambda(n);
    const auto b = effective_beta(n, l);
    EXPECT_NEAR(b.beta_eff, 6 * s.Q / (2 * lam), 1e-12);
    EXPECT_NEAR(b.mean_shift, (2 * s.P - 2 * s.S) / (2 * lam), 1e-12);
  }
}

TEST(EffectiveBeta, TriangleScalarRoute) {
  const auto b = effective_beta(3, 1);
  EXPECT_EQ(b.route, CertificateRoute::Scalar);
  EXPECT_EQ(b.beta_eff, 0.0);
  EXPECT_NEAR(b.mean_shift, 0.5, 1e-12);
  EXPECT_NEAR(b.delta, 1.5, 1e-12);
}

TEST(Region, Bounds) {
  EXPECT_NEAR(forward_bound(1.36, 0.9, 0.95), 1.36 * 1.95 / 2.05, 1e-15);
  EXPECT_NEAR(backward_bound(1.36, 0.1, 0.05), 1.36 * 0.95 / 1.05, 1e-15);
  EXPECT_DOUBLE_EQ(forward_bound(1.36, 0.4, 0.4), 1.36);
  EXPECT_DOUBLE_EQ(backward_bound(1.36, 0.4, 0.4), 1.36);
}

TEST(Region, MembershipExamples) {
  const auto cert = default_certificate();
  auto a = region_membership(cert, 1.1459, 0.95);
  EXPECT_TRUE(a.member);
  ASSERT_TRUE(a.nearest);
  EXPECT_EQ(a.nearest->e0, 0.9);
  EXPECT_EQ(a.nearest->side, RegionSide::Forward);
  EXPECT_NEAR(a.nearest->bound, 1.2937, 1e-4);

  auto b = region_membership(cert, 1.30, 0.0);
  EXPECT_TRUE(b.member);
  EXPECT_EQ(b.nearest->e0, 0.0);
  EXPECT_EQ(b.nearest->bound, 1.36);

  auto c = region_membership(cert, 1.36, 0.05);
  EXPECT_FALSE(c.member);
  ASSERT_TRUE(c.nearest);
  EXPECT_NEAR(c.nearest->bound, 1.36 * 1.05 / 1.15, 1e-12);
  // every checkpoint bound is below 1.36 at e = 0.05
  for (const auto& k : cert.checkpoints) {
    if (0.05 >= k.e0) {
      EXPECT_LT(forward_bound(k.beta0, k.e0, 0.05), 1.36);
    }
    if (0.05 <= k.e0) {
      EXPECT_LT(backward_bound(k.beta0, k.e0, 0.05), 1.36);
    }
  }
}

TEST(Region, StrictBoundaryAndDomain) {
  const auto cert = default_certificate();
  EXPECT_FALSE(region_membership(cert, 1.36, 0.0).member);
  EXPECT_FALSE(region_membership(cert, -0.1, 0.3).member);
  EXPECT_FALSE(region_membership(cert, 0.5, 1.0).member);
  // pure arithmetic, so e beyond the integration cap is fine
  EXPECT_TRUE(region_membership(cert, 1.0, 0.999).member);
}

TEST(Region, DefaultClearance) {
  const auto cert = default_certificate();
  EXPECT_EQ(cert.checkpoints.size(), 10u);
  EXPECT_NEAR(cert.clearance, 1.36 * 10 / 11, 1e-9);
  EXPECT_NEAR(segment_clearance(cert), 1.2363636, 1e-7);
}

// Brute-force infimum of the max-over-checkpoints bound on a fine grid.
TEST(Region, ClearanceMatchesDenseSampling) {
  for (const RegionCertificate& cert :
       {default_certificate(), RegionCertificate{{{1.2, 0.0, {}}, {1.2, 0.25, {}}, {1.2, 0.6, {}}}, 0}}) {
    double inf = INFINITY;
    for (int i = 0; i < 200000; ++i) {
      const double e = i / 200000.0;
      double best = 0;
      for (const auto& k : cert.checkpoints) {
        if (e >= k.e0) best = std::max(best, forward_bound(k.beta0, k.e0, e));
        if (e <= k.e0) best = std::max(best, backward_bound(k.beta0, k.e0, e));
      }
      inf = std::min(inf, best);
    }
    const double c = segment_clearance(cert);
    EXPECT_LE(c, inf + 1e-12);
    EXPECT_NEAR(c, inf, 1e-5);
  }
}

TEST(Region, SingleCheckpointClearance) {
  RegionCertificate cert{{{1.36, 0.0, {}}}, 0};
  EXPECT_NEAR(segment_clearance(cert), 0.68, 1e-15);
}

TEST(Region, ClearanceRejectsBadLadders) {
  EXPECT_THROW(segment_clearance(RegionCertificate{}), std::invalid_argument);
  EXPECT_THROW(segment_clearance(RegionCertificate{{{1.36, 0.0, {}}, {1.3, 0.1, {}}}, 0}), std::invalid_argument);
  EXPECT_THROW(segment_clearance(RegionCertificate{{{1.36, 0.1, {}}}, 0}), std::invalid_argument);
  EXPECT_THROW(segment_clearance(RegionCertificate{{{1.36, 0.0, {}}, {1.36, 0.0, {}}}, 0}), std::invalid_argument);
  EXPECT_THROW(segment_clearance(RegionCertificate{{{0.0, 0.0, {}}}, 0}), std::invalid_argument);
}

TEST(Certify, DefaultCheckpointsVerify) {
  auto cert = default_certificate();
  const auto margins = verify_checkpoints(cert);
  ASSERT_EQ(margins.size(), 10u);
  for (std::size_t i = 0; i < margins.size(); ++i) {
    EXPECT_GT(margins[i], 0);
    ASSERT_TRUE(cert.checkpoints[i].margin);
    EXPECT_EQ(*cert.checkpoints[i].margin, margins[i]);
  }
}

TEST(Certify, NearSingularCheckpointRefused) {
  auto cert = default_certificate();
  cert.checkpoints.push_back({1.36, 0.999, {}});
  EXPECT_THROW(verify_checkpoints(cert), NearSingularError);
}

TEST(Certify, NonHyperbolicCheckpointFails) {
  RegionCertificate cert{{{0.5, 0.0, {}}, {1.5, 0.0, {}}}, 0};
  try {
    verify_checkpoints(cert);
    FAIL() << "expected CertificationFailure";
  } catch (const CertificationFailure& f) {
    EXPECT_EQ(f.beta0(), 1.5);
    EXPECT_EQ(f.e0(), 0.0);
  }
}

TEST(Certify, LowBetaCheckpoint) {
  RegionCertificate cert{{{0.5, 0.0, {}}}, 0};
  EXPECT_GT(verify_checkpoints(cert).at(0), 0);
}

TEST(Certify, ChainForSmallPolygons) {
  const auto cert = default_certificate();
  const auto chain = certification_chain({3, 4, 5}, cert.clearance);
  ASSERT_EQ(chain.size(), 5u);  // (3,1) (4,1) (4,2) (5,1) (5,2)
  for (const auto& c : chain) EXPECT_TRUE(c.covered) << c.block.n << "," << c.block.l;
  EXPECT_LT(effective_beta(4, 2).beta_eff, cert.clearance);
  EXPECT_LT(effective_beta(5, 2).beta_eff, cert.clearance);
  // a clearance below 1.1459 no longer covers the pentagon
  const auto tight = certification_chain({5}, 1.0);
  EXPECT_FALSE(tight.back().covered);
}
