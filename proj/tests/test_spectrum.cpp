#include <gtest/gtest.h>

#include "ngonstab/eigen_qr.hpp"
#include "ngonstab/linsys.hpp"
#include "ngonstab/spectrum.hpp"
#include "oracles.hpp"

using namespace ngonstab;

namespace {

Matrix plane_rotation_pair(double angle) {
  Matrix m = Matrix::Zero(4, 4);
  const double c = std::cos(angle), s = std::sin(angle);
  // rotation in the (q1, p1) and (q2, p2) planes is symplectic for [[0,-I],[I,0]]
  m(0, 0) = c;
  m(0, 2) = -s;
  m(2, 0) = s;
  m(2, 2) = c;
  m(1, 1) = c;
  m(1, 3) = -s;
  m(3, 1) = s;
  m(3, 3) = c;
  return m;
}

}  // namespace

TEST(EigenQr, MatchesEigenSolverOnRandomMatrices) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = u(rng);
    EXPECT_LE(oracle::multiset_distance(qr_eigenvalues(m), oracle::eigenvalues(m)), 1e-9) << trial;
  }
}

TEST(EigenQr, HessenbergFactorization) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix m(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) m(i, j) = u(rng);
  Matrix h, q;
  hessenberg_reduce(m, h, q);
  EXPECT_LE((q * h * q.transpose() - m).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LE((q.transpose() * q - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-14);
  for (int i = 2; i < 7; ++i)
    for (int j = 0; j < i - 1; ++j) EXPECT_EQ(h(i, j), 0.0);
}

TEST(EigenQr, PolishResidual) {
  Matrix m(3, 3);
  m << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  for (const auto& mu : qr_eigenvalues(m)) {
    const auto p = polish_eigenpair(m, mu);
    EXPECT_LE(p.residual, 1e-12);
    EXPECT_NEAR(p.vector.norm(), 1.0, 1e-14);
  }
}

TEST(Spectrum, DiagonalExample) {
  Matrix m = Eigen::Vector2d(2, 0.5).asDiagonal();
  auto s = symplectic_eigenvalues(m);
  std::vector<Complex> expect{2.0, 0.5};
  EXPECT_LE(oracle::multiset_distance(s.eigenvalues, expect), 1e-15);
}

TEST(Spectrum, RotationPairExample) {
  const Matrix m = plane_rotation_pair(oracle::pi / 3);
  const auto s = symplectic_eigenvalues(m);
  const Complex w = std::polar(1.0, oracle::pi / 3);
  EXPECT_LE(oracle::multiset_distance(s.eigenvalues, {w, std::conj(w), w, std::conj(w)}), 1e-12);
  const auto c = classify(m);
  EXPECT_EQ(c.classification, SpectralClass::Elliptic);
}

TEST(Spectrum, RejectsBadShapes) {
  EXPECT_THROW(symplectic_eigenvalues(Matrix::Identity(3, 3)), std::invalid_argument);
  EXPECT_THROW(symplectic_eigenvalues(Matrix::Zero(2, 4)), std::invalid_argument);
}

TEST(Spectrum, ScalarMonodromyIsHyperbolic) {
  const Matrix m = fundamental_solution(scalar_system(2.0, 0)).monodromy;
  const auto c = classify(m);
  EXPECT_EQ(c.classification, SpectralClass::Hyperbolic);
  const double big = std::exp(2 * oracle::pi);
  std::vector<Complex> expect{big, 1 / big};
  EXPECT_LE(oracle::multiset_distance(c.eigenvalues, expect), 1e-9);
  EXPECT_NEAR(c.eigenvalues[0].real() * c.eigenvalues[1].real(), 1.0, 1e-12);
  // unit_margin is the smallest distance to the circle
  EXPECT_NEAR(c.unit_margin, 1 - 1 / big, 1e-9);
  for (double r : c.residuals) EXPECT_LE(r, 1e-8 * inf_norm(m));
}

TEST(Spectrum, TranslationIsDegenerate) {
  const auto c = classify(fundamental_solution(translation_system(0)).monodromy);
  EXPECT_EQ(c.classification, SpectralClass::Degenerate);
  ASSERT_FALSE(c.clusters.empty());
  bool has_jordan_one = false;
  for (const auto& cl : c.clusters)
    if (std::abs(cl.center - 1.0) < 1e-6 && !cl.semisimple) has_jordan_one = true;
  EXPECT_TRUE(has_jordan_one);
}

TEST(Spectrum, CheckpointIsHyperbolic) {
  EXPECT_EQ(classify(fundamental_solution(beta_system(1.36, 0.5)).monodromy).classification,
            SpectralClass::Hyperbolic);
  EXPECT_EQ(classify(fundamental_solution(beta_system(0, 0.3)).monodromy).classification,
            SpectralClass::Hyperbolic);
}

TEST(Spectrum, InconclusiveBand) {
  // a margin of 3e-6 sits inside (1e-6, 1e-5]
  Matrix m = Eigen::Vector2d(1 + 3e-6, 1 / (1 + 3e-6)).asDiagonal();
  EXPECT_EQ(classify(m).classification, SpectralClass::Inconclusive);
  Matrix far = Eigen::Vector2d(1.01, 1 / 1.01).asDiagonal();
  EXPECT_EQ(classify(far).classification, SpectralClass::Hyperbolic);
}

TEST(Spectrum, MixedSpectrum) {
  Matrix m = Matrix::Zero(4, 4);
  // hyperbolic pair in (q1, p1), rotation in (q2, p2)
  m(0, 0) = 3;
  m(2, 2) = 1.0 / 3;
  m(1, 1) = std::cos(1.0);
  m(1, 3) = -std::sin(1.0);
  m(3, 1) = std::sin(1.0);
  m(3, 3) = std::cos(1.0);
  EXPECT_EQ(classify(m).classification, SpectralClass::Mixed);
}

TEST(Spectrum, MinusOneJordanBlockIsDegenerate) {
  Matrix m(2, 2);
  m << -1, 1, 0, -1;
  EXPECT_EQ(classify(m).classification, SpectralClass::Degenerate);
  EXPECT_EQ(classify(-Matrix::Identity(2, 2)).classification, SpectralClass::Elliptic);
}

TEST(Spectrum, PairingHelpers) {
  std::vector<Complex> ev{2.0, 0.5, std::polar(1.0, 0.3), std::polar(1.0, -0.3)};
  EXPECT_LE(reciprocal_conjugate_defect(ev), 1e-15);
  EXPECT_NEAR(std::abs(eigenvalue_product(ev) - 1.0), 0.0, 1e-15);
  ev[1] = 0.6;
  EXPECT_GT(reciprocal_conjugate_defect(ev), 0.1);
}

TEST(Spectrum, VerdictRules) {
  auto block = [](int l, const Matrix& m) { return BlockSpectrum{l, classify(m), 0.0}; };
  const Matrix hyp = Eigen::Vector2d(2, 0.5).asDiagonal();
  Matrix ell(2, 2);
  ell << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0);
  const Matrix band = Eigen::Vector2d(1 + 3e-6, 1 / (1 + 3e-6)).asDiagonal();
  EXPECT_EQ(stability_verdict({block(1, hyp), block(2, hyp)}, kUnitCircleEps), StabilityVerdict::Hyperbolic);
  EXPECT_EQ(stability_verdict({block(1, hyp), block(2, ell)}, kUnitCircleEps), StabilityVerdict::Mixed);
  EXPECT_EQ(stability_verdict({block(1, hyp), block(2, band)}, kUnitCircleEps),
            StabilityVerdict::SpectrallyUnstable);
  EXPECT_EQ(stability_verdict({block(1, ell)}, kUnitCircleEps), StabilityVerdict::Inconclusive);
}

TEST(Spectrum, NgonVerdicts) {
  EXPECT_EQ(classify_ngon(3, 0.5).verdict, StabilityVerdict::Hyperbolic);
  EXPECT_EQ(classify_ngon(5, 0.8).verdict, StabilityVerdict::Hyperbolic);
  const auto six = classify_ngon(6, 0);
  EXPECT_EQ(six.verdict, StabilityVerdict::Mixed);
  ASSERT_EQ(six.per_block.size(), 3u);
  EXPECT_EQ(six.per_block[0].spectrum.classification, SpectralClass::Hyperbolic);
  // no block is wholly elliptic at e = 0; the higher blocks carry one
  // elliptic degree of freedom next to a hyperbolic one
  bool some_on_circle = false;
  for (const auto& b : six.per_block) some_on_circle |= b.spectrum.has_on_circle(kUnitCircleEps);
  EXPECT_TRUE(some_on_circle);
  EXPECT_EQ(six.per_block[2].spectrum.classification, SpectralClass::Mixed);
  EXPECT_THROW(classify_ngon(5, 0.995), NearSingularError);
}
