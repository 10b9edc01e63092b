#include "ngonstab/configuration.hpp"

#include <cmath>
#include <numbers>

namespace ngonstab {

namespace {

constexpr double kLambdaAgreement = 1e-12;

Eigen::Matrix2d rotation(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

Eigen::Matrix2d reflection(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), std::sin(angle), std::sin(angle), -std::cos(angle);
  return r;
}

double potential_value(const NGonConfiguration& c) {
  double u = 0;
  for (int i = 0; i < c.n; ++i) {
    for (int j = i + 1; j < c.n; ++j) {
      u += c.masses(i) * c.masses(j) / c.distances(i, j);
    }
  }
  return u;
}

double moment_of_inertia(const Vector& positions, const Vector& masses) {
  double moment = 0;
  for (Eigen::Index k = 0; k < masses.size(); ++k) {
    moment += masses(k) * positions.segment<2>(2 * k).squaredNorm();
  }
  return moment;
}

}  // namespace

double ngon_lambda_closed_form(int n) {
  double sum = 0;
  for (int j = 1; j < n; ++j) {
    sum += 1.0 / std::sin(std::numbers::pi * j / n);
  }
  return 0.25 * sum;
}

double ngon_distance(int n, int j) {
  return 2.0 * std::abs(std::sin(std::numbers::pi * j / n));
}

NGonConfiguration build_ngon(int n) {
  if (n < 3) {
    throw std::invalid_argument("build_ngon: n must be >= 3, got " + std::to_string(n));
  }
  NGonConfiguration c;
  c.n = n;
  c.positions.resize(2 * n);
  c.masses = Vector::Ones(n);
  c.distances = Matrix::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    c.positions(2 * (k - 1)) = std::cos(theta);
    c.positions(2 * (k - 1) + 1) = std::sin(theta);
  }
  // Closed form avoids cancellation in x_j - x_i for large n.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) c.distances(i, j) = ngon_distance(n, j - i);
    }
  }
  c.moment = static_cast<double>(n);
  c.lambda = potential_value(c) / c.moment;

  const double closed = ngon_lambda_closed_form(n);
  if (std::abs(c.lambda - closed) > kLambdaAgreement * std::max(1.0, closed)) {
    throw std::logic_error("build_ngon: lambda from U/I disagrees with cosecant sum");
  }
  return c;
}

NGonConfiguration make_configuration(const Vector& positions, const Vector& masses) {
  const auto n = static_cast<int>(masses.size());
  if (n < 2 || positions.size() != 2 * masses.size()) {
    throw std::invalid_argument("make_configuration: need 2n coordinates for n >= 2 masses");
  }
  NGonConfiguration c;
  c.n = n;
  c.positions = positions;
  c.masses = masses;
  c.distances = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      c.distances(i, j) = (positions.segment<2>(2 * j) - positions.segment<2>(2 * i)).norm();
      if (c.distances(i, j) == 0) {
        throw std::invalid_argument("make_configuration: collision between bodies");
      }
    }
  }
  c.moment = moment_of_inertia(positions, masses);
  c.lambda = potential_value(c) / c.moment;
  return c;
}

PotentialDerivatives potential_derivatives(const NGonConfiguration& c) {
  const int n = c.n;
  PotentialDerivatives d;
  d.value = potential_value(c);
  d.gradient = Vector::Zero(2 * n);
  d.hessian = Matrix::Zero(2 * n, 2 * n);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dij = c.distances(i, j);
      const double mm = c.masses(i) * c.masses(j);
      const Eigen::Vector2d u =
          (c.positions.segment<2>(2 * j) - c.positions.segment<2>(2 * i)) / dij;
      d.gradient.segment<2>(2 * i) += mm * u / (dij * dij);
      d.hessian.block<2, 2>(2 * i, 2 * j) =
          mm / (dij * dij * dij) * (Eigen::Matrix2d::Identity() - 3.0 * u * u.transpose());
    }
  }
  // U_jj = -sum_{i != j} U_ij
  for (int j = 0; j < n; ++j) {
    Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
    for (int i = 0; i < n; ++i) {
      if (i != j) diag -= d.hessian.block<2, 2>(2 * i, 2 * j);
    }
    d.hessian.block<2, 2>(2 * j, 2 * j) = diag;
  }
  return d;
}

Eigen::Matrix2d ngon_hessian_block_rotation_form(int n, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > n || j > n) {
    throw std::invalid_argument("ngon_hessian_block_rotation_form: need 1 <= i != j <= n");
  }
  const double step = 2.0 * std::numbers::pi / n;
  const double d = ngon_distance(n, j - i);
  return (-0.5 * Eigen::Matrix2d::Identity() +
          1.5 * rotation(step * (j - i)) * reflection(2.0 * step * i)) /
         (d * d * d);
}

double central_config_residual(const NGonConfiguration& c) {
  const PotentialDerivatives d = potential_derivatives(c);
  Vector mass_weighted(2 * c.n);
  for (int k = 0; k < c.n; ++k) {
    mass_weighted.segment<2>(2 * k) = c.masses(k) * c.positions.segment<2>(2 * k);
  }
  return (d.gradient + c.lambda * mass_weighted).lpNorm<Eigen::Infinity>();
}

}  // namespace ngonstab
