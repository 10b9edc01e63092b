#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ngonstab/linsys.hpp"
#include "ngonstab/spectrum.hpp"

namespace ngonstab {

// Monodromy spectrum of the beta-system with potential
// R_beta = diag(3/2 - beta, 3/2 + beta). Requires beta >= 0 and e in [0, 0.99].
MonodromySpectrum beta_monodromy(double beta, double e, double tol = kDefaultTol,
                                 double eps_uc = kUnitCircleEps);

// beta = sqrt(9 - beta_L) / 2 for the Lagrange mass parameter beta_L in [0, 9].
double beta_from_mass(double beta_l);

enum class CertificateRoute {
  Scalar,        // block is a multiple of I_2; hyperbolic iff delta = 1 + z/lambda > 1
  Beta,          // block is equivalent or comparable to a beta-system
  NotReducible,  // mean shift differs from 1/2
};

std::string to_string(CertificateRoute r);

struct EffectiveBeta {
  int n = 0;
  int l = 0;
  double mean_shift = 0;  // (a + b - 2S) / (2 lambda); z/lambda for l = 1
  double beta_eff = 0;    // (b - a) / (2 lambda); 0 for l = 1
  double coupling = 0;    // S_l, must be >= 0 for the comparison argument
  double delta = 0;       // 1 + z/lambda on the scalar route, else 0
  bool reducible = false; // |mean_shift - 1/2| <= 1e-9
  CertificateRoute route = CertificateRoute::NotReducible;
};

// Requires n >= 3 and 1 <= l <= n/2.
EffectiveBeta effective_beta(int n, int l);

struct Checkpoint {
  double beta0 = 0;
  double e0 = 0;
  std::optional<double> margin;  // populated by verify_checkpoints
};

struct RegionCertificate {
  std::vector<Checkpoint> checkpoints;
  double clearance = 0;
};

// {(1.36, k/10) : k = 0..9} with its clearance filled in.
RegionCertificate default_certificate();

enum class RegionSide { Forward, Backward };  // e >= e0 side, e <= e0 side

std::string to_string(RegionSide s);

struct RegionWitness {
  std::size_t index = 0;
  double beta0 = 0;
  double e0 = 0;
  RegionSide side = RegionSide::Forward;
  double bound = 0;
};

struct RegionMembership {
  bool member = false;
  // Largest applicable bound over all checkpoints; the witness when member.
  std::optional<RegionWitness> nearest;
};

// Forward bound beta0 (1 + e) / (1 + 3e - 2 e0), valid for e >= e0.
double forward_bound(double beta0, double e0, double e);
// Backward bound beta0 (1 - e) / (1 - 3e + 2 e0), valid for e <= e0.
double backward_bound(double beta0, double e0, double e);

// Strict inequalities; boundary points are not members. Pure arithmetic, any
// e in [0, 1). Out-of-domain input is reported as not a member.
RegionMembership region_membership(const RegionCertificate& cert, double beta, double e);

// Infimum over e in [0, 1) of the best bound, in closed form per interval.
// Throws std::invalid_argument unless the checkpoints share one beta0 > 0 and
// their e0 values are distinct, start at 0 and stay below 1.
double segment_clearance(const RegionCertificate& cert);

// Integrates every checkpoint concurrently and stores its margin. Throws
// CertificationFailure for the first non-hyperbolic checkpoint and
// NearSingularError for e0 > 0.99.
std::vector<double> verify_checkpoints(RegionCertificate& cert, double tol = kDefaultTol);

struct ChainEntry {
  EffectiveBeta block;
  bool covered = false;
};

// Coverage of every essential block of each n by the scalar route or by the
// certified beta-region with the given clearance (beta route requires
// reducible, coupling >= 0 and beta_eff <= 3/2).
std::vector<ChainEntry> certification_chain(const std::vector<int>& ns, double clearance);

}  // namespace ngonstab
