#pragma once

#include <string>
#include <vector>

#include "ngonstab/linsys.hpp"
#include "ngonstab/types.hpp"

namespace ngonstab {

enum class SpectralClass { Hyperbolic, Elliptic, Mixed, Degenerate, Inconclusive };

std::string to_string(SpectralClass c);

struct EigenCluster {
  Complex center;
  int size = 0;
  bool semisimple = true;
};

struct SymplecticSpectrum {
  std::vector<Complex> eigenvalues;  // paired: inside partners set to 1/mu
  std::vector<double> residuals;     // ||M v - mu v||_2 with |v| = 1
  double raw_pairing_defect = 0;     // before pairing, max relative |nu - 1/mu|
  double input_symplectic_defect = 0;
  bool symplectic_warning = false;   // input defect > 1e-6
};

struct MonodromySpectrum {
  std::vector<Complex> eigenvalues;
  std::vector<double> residuals;
  double unit_margin = 0;  // min_i ||mu_i| - 1|
  SpectralClass classification = SpectralClass::Inconclusive;
  std::vector<EigenCluster> clusters;
  double raw_pairing_defect = 0;
  bool symplectic_warning = false;

  bool has_off_circle(double eps_uc) const;
  bool has_on_circle(double eps_uc) const;
};

inline constexpr double kUnitCircleEps = 1e-6;

// Eigenvalues of a real symplectic matrix (even dimension, at most 16 is the
// intended range). Conjugate pairs are exact; each eigenvalue outside the unit
// circle is matched with its nearest inside partner, which is replaced by 1/mu.
// Throws std::invalid_argument for non-square or odd-dimensional input.
SymplecticSpectrum symplectic_eigenvalues(const Matrix& m);

// Precedence: any margin in (eps, 10 eps] -> Inconclusive; all margins > 10 eps
// -> Hyperbolic; a non-semisimple cluster within eps of +-1 -> Degenerate;
// all margins <= eps and semisimple -> Elliptic; otherwise Mixed.
MonodromySpectrum classify(const Matrix& m, double eps_uc = kUnitCircleEps);

// Max over the multiset of the distance to the closest 1/mu and conj(mu)
// partner, relative to |partner|.
double reciprocal_conjugate_defect(const std::vector<Complex>& eigenvalues);

// Product of all eigenvalues.
Complex eigenvalue_product(const std::vector<Complex>& eigenvalues);

enum class StabilityVerdict { SpectrallyUnstable, Hyperbolic, Mixed, Inconclusive };

std::string to_string(StabilityVerdict v);

struct BlockSpectrum {
  int l = 0;
  MonodromySpectrum spectrum;
  double symplectic_defect = 0;  // from the integration
};

struct StabilityReport {
  int n = 0;
  double e = 0;
  std::vector<BlockSpectrum> per_block;  // l = 1..n/2
  StabilityVerdict verdict = StabilityVerdict::Inconclusive;
};

// Hyperbolic when every block is; Mixed when some eigenvalue is off the circle
// and every block is otherwise decided with some eigenvalue on it;
// SpectrallyUnstable when off-circle eigenvalues exist but some block is
// Inconclusive; Inconclusive when nothing is off the circle.
StabilityVerdict stability_verdict(const std::vector<BlockSpectrum>& blocks, double eps_uc);

// Integrates every essential block of the regular n-gon at eccentricity e
// concurrently. n >= 3 and e in [0, 0.99]; integration errors propagate.
StabilityReport classify_ngon(int n, double e, double tol = kDefaultTol,
                              double eps_uc = kUnitCircleEps);

}  // namespace ngonstab
