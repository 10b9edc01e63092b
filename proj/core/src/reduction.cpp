#include "ngonstab/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ngonstab {

namespace {

void check_mode(int n, int l) {
  if (n < 3) {
    throw std::invalid_argument("n must be >= 3, got " + std::to_string(n));
  }
  if (l < 1 || l > n / 2) {
    throw std::invalid_argument("mode l = " + std::to_string(l) + " outside 1.." +
                                std::to_string(n / 2) + " for n = " + std::to_string(n));
  }
}

bool is_half_mode(int n, int l) { return n % 2 == 0 && l == n / 2; }

// Stacked vector with per-vertex 2-vectors produced by f(k, theta_k), k = 1..n.
template <typename F>
Vector per_vertex(int n, F&& f) {
  Vector v(2 * n);
  for (int k = 1; k <= n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    v.segment<2>(2 * (k - 1)) = f(k, theta);
  }
  return v;
}

Vector mass_diagonal(const NGonConfiguration& c) {
  Vector m(2 * c.n);
  for (int k = 0; k < c.n; ++k) m.segment<2>(2 * k).setConstant(c.masses(k));
  return m;
}

}  // namespace

std::string BlockLabel::name() const {
  switch (kind) {
    case BlockKind::Center:
      return "Cen";
    case BlockKind::Dilation:
      return "Dil";
    case BlockKind::Mode:
      return "L(" + std::to_string(l) + ")";
    case BlockKind::Half:
      return "Half";
  }
  return "?";
}

const ColumnRange& SymmetryBasis::essential(int l) const {
  for (const auto& r : blocks) {
    if ((r.label.kind == BlockKind::Mode || r.label.kind == BlockKind::Half) && r.label.l == l) {
      return r;
    }
  }
  throw std::invalid_argument("no essential block for mode l = " + std::to_string(l));
}

const ReducedBlock& ReducedBlocks::essential(int l) const {
  for (const auto& b : blocks) {
    if ((b.label.kind == BlockKind::Mode || b.label.kind == BlockKind::Half) && b.label.l == l) {
      return b;
    }
  }
  throw std::invalid_argument("no essential block for mode l = " + std::to_string(l));
}

double SymmetryResiduals::max() const {
  return std::max({translation_x, translation_y, rotation, dilation});
}

int essential_block_width(int n, int l) {
  check_mode(n, l);
  return (l == 1 || is_half_mode(n, l)) ? 2 : 4;
}

SymmetryBasis build_basis(const NGonConfiguration& config) {
  const int n = config.n;
  if (n < 3 || config.positions.size() != 2 * n) {
    throw std::invalid_argument("build_basis: malformed configuration");
  }
  const Matrix jn = block_rotation_generator(n);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  const double sqrt_2_over_n = std::sqrt(2.0 / n);

  SymmetryBasis basis;
  basis.A = Matrix::Zero(2 * n, 2 * n);
  int col = 0;
  auto push_pair = [&](const Vector& v, double scale) {
    basis.A.col(col) = scale * v;
    basis.A.col(col + 1) = scale * (jn * v);
    col += 2;
  };

  const Vector e1 = per_vertex(n, [](int, double) { return Eigen::Vector2d(1.0, 0.0); });
  basis.blocks.push_back({{BlockKind::Center, 0}, col, 2});
  push_pair(e1, inv_sqrt_n);

  basis.blocks.push_back({{BlockKind::Dilation, 0}, col, 2});
  push_pair(config.positions, inv_sqrt_n);

  const Vector v1 = per_vertex(n, [](int, double t) {
    return Eigen::Vector2d(std::cos(2 * t), std::sin(2 * t));
  });
  basis.blocks.push_back({{BlockKind::Mode, 1}, col, 2});
  push_pair(v1, inv_sqrt_n);

  for (int l = 2; l <= (n - 1) / 2; ++l) {
    const Vector v = per_vertex(n, [&](int k, double t) {
      const double tkl = 2.0 * std::numbers::pi * k * l / n;
      return Eigen::Vector2d(std::cos(tkl) * std::cos(t), std::cos(tkl) * std::sin(t));
    });
    const Vector w = per_vertex(n, [&](int k, double t) {
      const double tkl = 2.0 * std::numbers::pi * k * l / n;
      return Eigen::Vector2d(std::sin(tkl) * std::cos(t), std::sin(tkl) * std::sin(t));
    });
    basis.blocks.push_back({{BlockKind::Mode, l}, col, 4});
    push_pair(v, sqrt_2_over_n);
    push_pair(w, sqrt_2_over_n);
  }

  if (n % 2 == 0) {
    // cos(pi k) = +-1, so |v(n/2)|^2 = n and the normalization is 1/sqrt(n).
    const Vector v = per_vertex(n, [](int k, double t) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      return Eigen::Vector2d(sign * std::cos(t), sign * std::sin(t));
    });
    basis.blocks.push_back({{BlockKind::Half, n / 2}, col, 2});
    push_pair(v, inv_sqrt_n);
  }

  const Vector m = mass_diagonal(config);
  basis.ortho_residual =
      (basis.A.transpose() * m.asDiagonal() * basis.A - Matrix::Identity(2 * n, 2 * n))
          .lpNorm<Eigen::Infinity>();
  basis.commute_residual = (jn * basis.A - basis.A * jn).lpNorm<Eigen::Infinity>();
  return basis;
}

BlockParameters block_parameters(int n, int l) {
  check_mode(n, l);
  BlockParameters p;
  p.n = n;
  p.l = l;
  double z = 0;
  for (int j = 1; j < n; ++j) {
    const double tj = 2.0 * std::numbers::pi * j / n;
    const double tjl = 2.0 * std::numbers::pi * ((static_cast<long>(j) * l) % n) / n;
    const double d = ngon_distance(n, j);
    const double w = 1.0 / (2.0 * d * d * d);
    p.P += w * (1.0 - std::cos(tjl) * std::cos(tj));
    p.S += w * std::sin(tjl) * std::sin(tj);
    p.Q += w * (std::cos(tj) - std::cos(tjl));
    z += w * (1.0 - std::cos(2.0 * tj));
  }
  // w(n/2) vanishes identically, so the coupling collapses.
  if (is_half_mode(n, l)) p.S = 0;
  if (l == 1) p.z = z;
  p.a = p.P - 3.0 * p.Q;
  p.b = p.P + 3.0 * p.Q;
  p.lambda = ngon_lambda_closed_form(n);
  return p;
}

Matrix closed_form_block(const BlockParameters& p) {
  if (p.l == 1) {
    return (*p.z / p.lambda) * Matrix::Identity(2, 2);
  }
  if (is_half_mode(p.n, p.l)) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = p.a / p.lambda;
    m(1, 1) = p.b / p.lambda;
    return m;
  }
  Matrix m(4, 4);
  m << p.a, 0, 0, p.S,
       0, p.b, -p.S, 0,
       0, -p.S, p.a, 0,
       p.S, 0, 0, p.b;
  return m / p.lambda;
}

Matrix reduced_hessian_matrix(const NGonConfiguration& config, const SymmetryBasis& basis) {
  const int dim = 2 * config.n;
  if (basis.A.rows() != dim || basis.A.cols() != dim) {
    throw std::invalid_argument("reduce_hessian: basis dimension " +
                                std::to_string(basis.A.rows()) + " does not match 2n = " +
                                std::to_string(dim));
  }
  const PotentialDerivatives d = potential_derivatives(config);
  // A^{-1} (1/lambda) M^{-1} D^2U A = (1/lambda) A^T D^2U A since A^{-1} = A^T M.
  Matrix k = basis.A.transpose() * d.hessian * basis.A / config.lambda;
  return k;
}

ReducedBlocks reduce_hessian(const NGonConfiguration& config, const SymmetryBasis& basis) {
  const Matrix k = reduced_hessian_matrix(config, basis);
  const int dim = 2 * config.n;

  ReducedBlocks out;
  out.n = config.n;
  out.lambda = config.lambda;

  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> inside =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(dim, dim, false);
  for (const auto& range : basis.blocks) {
    inside.block(range.offset, range.offset, range.width, range.width).setConstant(true);

    ReducedBlock block;
    block.label = range.label;
    block.matrix = k.block(range.offset, range.offset, range.width, range.width);

    Matrix expected;
    switch (range.label.kind) {
      case BlockKind::Center:
        expected = Matrix::Zero(2, 2);
        break;
      case BlockKind::Dilation:
        expected = Matrix::Zero(2, 2);
        expected(0, 0) = 2.0;
        expected(1, 1) = -1.0;
        break;
      case BlockKind::Mode:
      case BlockKind::Half:
        expected = closed_form_block(block_parameters(config.n, range.label.l));
        break;
    }
    block.closed_form_residual = (block.matrix - expected).cwiseAbs().maxCoeff();
    out.blocks.push_back(std::move(block));
  }

  double off = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (!inside(i, j)) off = std::max(off, std::abs(k(i, j)));
    }
  }
  out.offblock_residual = off;
  return out;
}

SymmetryResiduals symmetry_checks(const NGonConfiguration& config) {
  const int n = config.n;
  const PotentialDerivatives d = potential_derivatives(config);
  const Matrix jn = block_rotation_generator(n);
  const Vector m_inv = mass_diagonal(config).cwiseInverse();

  Vector e1 = Vector::Zero(2 * n);
  for (int k = 0; k < n; ++k) e1(2 * k) = 1.0;
  const Vector& a = config.positions;
  const Vector ja = jn * a;

  SymmetryResiduals r;
  r.translation_x = (d.hessian * e1).lpNorm<Eigen::Infinity>();
  r.translation_y = (d.hessian * (jn * e1)).lpNorm<Eigen::Infinity>();
  r.rotation =
      (m_inv.asDiagonal() * (d.hessian * ja) / config.lambda + ja).lpNorm<Eigen::Infinity>();
  r.dilation =
      (m_inv.asDiagonal() * (d.hessian * a) / config.lambda - 2.0 * a).lpNorm<Eigen::Infinity>();
  return r;
}

}  // namespace ngonstab
