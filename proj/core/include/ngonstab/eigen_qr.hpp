#pragma once

#include <vector>

#include "ngonstab/types.hpp"

namespace ngonstab {

// Eigenvalues of a small dense real matrix: radix-2 balancing, Householder
// reduction to upper Hessenberg form, then Francis double-shift QR.
// Complex eigenvalues come out as exact conjugate pairs. Throws
// std::runtime_error if QR fails to converge.
std::vector<Complex> qr_eigenvalues(const Matrix& m);

// Upper Hessenberg H and orthogonal Q with m = Q H Q^T.
void hessenberg_reduce(const Matrix& m, Matrix& h, Matrix& q);

struct PolishedEigenpair {
  Complex value;
  Eigen::VectorXcd vector;  // unit 2-norm
  double residual = 0;      // ||M v - mu v||_2
};

// Inverse iteration from the estimate mu, followed by a Rayleigh quotient
// update that is kept only if it lowers the residual. With
// rayleigh_update = false the value stays mu and only the vector and the
// residual at mu are computed.
PolishedEigenpair polish_eigenpair(const Matrix& m, Complex mu, bool rayleigh_update = true);

}  // namespace ngonstab
