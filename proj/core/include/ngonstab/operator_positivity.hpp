#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ngonstab/types.hpp"

namespace ngonstab {

namespace galerkin {
// -d^2 - 1 + delta / (1 + e cos)
struct Scalar {
  double delta = 1.5;
};
// -d^2 I - 2 J d + R_beta / (1 + e cos)
struct Planar {
  double beta = 0;
};
// -d^2 I - 2 J d + (I + U_l) / (1 + e cos) for the n-gon essential block l
struct Block {
  int n = 3;
  int l = 1;
};
}  // namespace galerkin

using OperatorKind = std::variant<galerkin::Scalar, galerkin::Planar, galerkin::Block>;

std::string operator_name(const OperatorKind& kind);

// Cosine coefficients c_0..c_M of 1/(1 + e cos theta) = c_0 + 2 sum c_m cos(m theta),
// by a discrete transform on at least 8M samples (more when e is close to 1,
// so that aliasing stays below rounding). Throws std::invalid_argument for e
// outside [0, 0.99] or M < 1.
std::vector<double> inverse_radius_fourier(double e, int M);

// Max over the sample grid of |f - truncated series| for the given coefficients.
double fourier_reconstruction_error(double e, const std::vector<double>& coefficients,
                                    int samples = 256);

struct GalerkinOperator {
  OperatorKind kind;
  double e = 0;
  double phi = 0;  // omega = exp(2 pi i phi)
  int N = 0;       // modes k = -N..N
  int components = 1;
  Eigen::MatrixXcd matrix;  // index = (k + N) * components + component
};

inline constexpr int kMinTruncation = 8;
inline constexpr int kMaxTruncation = 512;

// Requires e in [0, 0.99], phi in [0, 1), N >= 8; Block needs a valid (n, l).
GalerkinOperator galerkin_assemble(const OperatorKind& kind, double e, double phi, int N);

// Smallest eigenvalue of the Hermitian Galerkin matrix.
double min_eigenvalue(const GalerkinOperator& op);
double min_eigenvalue(const Eigen::MatrixXcd& hermitian);

struct PositivityReport {
  OperatorKind kind;
  double e = 0;
  int N = 0;
  int omega_count = 0;
  double min_eig = 0;          // at truncation N, minimum over the phase grid
  double worst_phi = 0;
  double refined_min_eig = 0;  // at the converged truncation, worst_phi
  int refined_N = 0;
  bool converged = false;
  // A finite phase grid cannot quantify over every omega on the unit circle.
  std::string evidence = "numerical evidence: finite omega grid, not a proof over all omega";
};

// Minimum over phi in {j / omega_count} of min_eigenvalue, using the
// phi <-> 1 - phi symmetry to halve the grid. At the worst phase N is doubled
// until two successive values agree to 1e-8 max(1, |min|) or N would exceed
// 512, in which case converged = false.
PositivityReport positivity_scan(const OperatorKind& kind, double e, int omega_count = 64,
                                 int N = 64);

struct ComparisonResult {
  double beta_eff = 0;
  double block_min = 0;       // min eigenvalue of the coupled block operator
  double comparison_min = 0;  // min eigenvalue of the decoupled beta_eff operator
};

// Compares an interior essential block (4 components) with the decoupled
// operator F(e, beta_eff) (+) F(e, beta_eff). Throws std::invalid_argument
// unless S_l > 0 and the block's mean shift is 1/2.
ComparisonResult block_comparison(int n, int l, double e, double phi, int N);

}  // namespace ngonstab
