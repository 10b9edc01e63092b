#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ngonstab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Integration refused because the eccentricity is outside the validated
// envelope of the integrator (coefficients grow like 1/(1-e)).
class NearSingularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A checkpoint that was supposed to be hyperbolic is not.
class CertificationFailure : public std::runtime_error {
 public:
  CertificationFailure(const std::string& what, double beta0, double e0)
      : std::runtime_error(what), beta0_(beta0), e0_(e0) {}

  double beta0() const { return beta0_; }
  double e0() const { return e0_; }

 private:
  double beta0_;
  double e0_;
};

// Block-diagonal 2x2 symplectic rotation generator diag(J2, ..., J2) of size 2k.
Matrix block_rotation_generator(int k);

// Induced infinity norm, max_i sum_j |m_ij|.
double inf_norm(const Matrix& m);

// Standard symplectic matrix [[0, -I_k], [I_k, 0]] of size 2k.
Matrix standard_symplectic(int k);

}  // namespace ngonstab
