#pragma once

#include "ngonstab/types.hpp"

namespace ngonstab {

// Planar configuration of point masses. Positions are stacked as
// a = (x_1^T, ..., x_n^T)^T.
struct NGonConfiguration {
  int n = 0;
  Vector positions;   // length 2n
  Vector masses;      // length n
  Matrix distances;   // n x n, d_ij
  double lambda = 0;  // U(a) / I(a)
  double moment = 0;  // I(a) = sum m_i |x_i|^2
};

struct PotentialDerivatives {
  double value = 0;  // U(a)
  Vector gradient;   // length 2n
  Matrix hessian;    // 2n x 2n, grid of 2x2 blocks U_ij
};

// Regular n-gon with unit masses on the unit circle; vertex k sits at angle
// 2 pi k / n for k = 1..n, so vertex n is (1, 0). Throws std::invalid_argument
// for n < 3, and std::logic_error if lambda from U/I disagrees with the
// cosecant closed form.
NGonConfiguration build_ngon(int n);

// Arbitrary planar configuration; distances are taken from the coordinates and
// lambda = U/I. Used for perturbed or unequal-mass controls.
NGonConfiguration make_configuration(const Vector& positions, const Vector& masses);

// lambda = (1/4) sum_{j=1}^{n-1} csc(pi j / n).
double ngon_lambda_closed_form(int n);

// d_{n,j} = 2 |sin(pi j / n)|, the distance from vertex n to vertex j.
double ngon_distance(int n, int j);

PotentialDerivatives potential_derivatives(const NGonConfiguration& config);

// Off-diagonal Hessian block of the regular n-gon in rotation form
// (1/d^3)(-I/2 + 3/2 R(theta_{j-i}) Rhat(2 theta_i)). Vertices are 1-based.
Eigen::Matrix2d ngon_hessian_block_rotation_form(int n, int i, int j);

// || grad U(a) + lambda M a ||_inf.
double central_config_residual(const NGonConfiguration& config);

}  // namespace ngonstab
