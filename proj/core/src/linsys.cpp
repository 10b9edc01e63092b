#include "ngonstab/linsys.hpp"

#include <cmath>
#include <numbers>

#include "ngonstab/configuration.hpp"
#include "ngonstab/dop853.hpp"
#include "ngonstab/reduction.hpp"

namespace ngonstab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kStepCeiling = 0.125;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_eccentricity(double e) {
  if (!(e >= 0.0 && e < 1.0)) {
    throw std::invalid_argument("eccentricity must lie in [0, 1), got " + std::to_string(e));
  }
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

int SystemKind::dimension() const {
  return std::visit(overloaded{
                        [](const kinds::Full& f) { return 4 * f.n; },
                        [](const kinds::Translation&) { return 4; },
                        [](const kinds::KeplerBlock&) { return 4; },
                        [](const kinds::Essential& s) { return 2 * essential_block_width(s.n, s.l); },
                        [](const kinds::Scalar&) { return 2; },
                        [](const kinds::Beta&) { return 4; },
                    },
                    tag);
}

std::string SystemKind::name() const {
  return std::visit(
      overloaded{
          [](const kinds::Full& f) { return "Full(" + std::to_string(f.n) + ")"; },
          [](const kinds::Translation&) { return std::string("Translation"); },
          [](const kinds::KeplerBlock&) { return std::string("KeplerBlock"); },
          [](const kinds::Essential& s) {
            return "Essential(" + std::to_string(s.n) + "," + std::to_string(s.l) + ")";
          },
          [](const kinds::Scalar& s) { return "Scalar(" + std::to_string(s.delta) + ")"; },
          [](const kinds::Beta& b) { return "Beta(" + std::to_string(b.beta) + ")"; },
      },
      tag);
}

SystemData system_data(const SystemKind& kind) {
  check_eccentricity(kind.e);
  SystemData d;
  std::visit(overloaded{
                 [&](const kinds::Full& f) {
                   const NGonConfiguration config = build_ngon(f.n);
                   const SymmetryBasis basis = build_basis(config);
                   d.half = 2 * f.n;
                   d.rotation = block_rotation_generator(f.n);
                   d.potential = Matrix::Identity(d.half, d.half) +
                                 symmetrized(reduced_hessian_matrix(config, basis));
                 },
                 [&](const kinds::Translation&) {
                   d.half = 2;
                   d.rotation = block_rotation_generator(1);
                   d.potential = Matrix::Identity(2, 2);
                 },
                 [&](const kinds::KeplerBlock&) {
                   d.half = 2;
                   d.rotation = block_rotation_generator(1);
                   d.potential = Eigen::Vector2d(3.0, 0.0).asDiagonal();
                 },
                 [&](const kinds::Essential& s) {
                   const int width = essential_block_width(s.n, s.l);
                   const NGonConfiguration config = build_ngon(s.n);
                   const ReducedBlocks blocks = reduce_hessian(config, build_basis(config));
                   d.half = width;
                   d.rotation = block_rotation_generator(width / 2);
                   d.potential = Matrix::Identity(width, width) +
                                 symmetrized(blocks.essential(s.l).matrix);
                 },
                 [&](const kinds::Scalar& s) {
                   if (!std::isfinite(s.delta)) throw std::invalid_argument("delta must be finite");
                   d.half = 1;
                   d.rotation = Matrix::Zero(1, 1);
                   d.potential = Matrix::Constant(1, 1, s.delta);
                 },
                 [&](const kinds::Beta& b) {
                   if (!std::isfinite(b.beta)) throw std::invalid_argument("beta must be finite");
                   d.half = 2;
                   d.rotation = block_rotation_generator(1);
                   d.potential = Eigen::Vector2d(1.5 - b.beta, 1.5 + b.beta).asDiagonal();
                 },
             },
             kind.tag);
  return d;
}

Matrix coefficient_matrix(const SystemData& data, double e, double theta) {
  check_eccentricity(e);
  const int k = data.half;
  const Matrix id = Matrix::Identity(k, k);
  Matrix b(2 * k, 2 * k);
  b.topLeftCorner(k, k) = id;
  b.topRightCorner(k, k) = -data.rotation;
  b.bottomLeftCorner(k, k) = data.rotation;
  b.bottomRightCorner(k, k) = id - data.potential / (1.0 + e * std::cos(theta));
  return b;
}

Matrix coefficient_matrix(const SystemKind& kind, double theta) {
  return coefficient_matrix(system_data(kind), kind.e, theta);
}

double symplectic_defect(const Matrix& z) {
  const Matrix j = standard_symplectic(static_cast<int>(z.rows() / 2));
  return inf_norm(z.transpose() * j * z - j);
}

FundamentalSolution fundamental_solution(const SystemKind& kind, double tol) {
  if (kind.e > kMaxIntegrationEccentricity) {
    throw NearSingularError("near-singular: eccentricity " + std::to_string(kind.e) +
                            " exceeds the integration cap 0.99");
  }
  if (!(tol >= 1e-14 && tol <= 1e-6)) {
    throw std::invalid_argument("tol must lie in [1e-14, 1e-6], got " + std::to_string(tol));
  }
  const SystemData data = system_data(kind);
  const int k = data.half;
  const double e = kind.e;

  // Extended precision keeps the rounding floor of Z^T J Z - J, which grows
  // like eps * |Z|^2, well below the defect budget for large monodromies.
  using Ext = long double;
  using ExtMatrix = MatrixT<Ext>;
  const ExtMatrix jr = data.rotation.cast<Ext>();
  const ExtMatrix p = data.potential.cast<Ext>();

  // With zeta = [Z; W]: J B zeta = [-(J Z + W - P W / r); Z - J W].
  MatrixRhsT<Ext> rhs = [&](double theta, const ExtMatrix& y, ExtMatrix& dy) {
    const auto z = y.topRows(k);
    const auto w = y.bottomRows(k);
    const Ext inv_r = 1.0L / (1.0L + static_cast<Ext>(e) * std::cos(static_cast<Ext>(theta)));
    dy.topRows(k).noalias() = -(jr * z);
    dy.topRows(k) -= w;
    dy.topRows(k).noalias() += inv_r * (p * w);
    dy.bottomRows(k) = z;
    dy.bottomRows(k).noalias() -= jr * w;
  };

  Dop853Options options;
  options.rtol = tol;
  options.atol = tol;
  options.max_step = kStepCeiling * (1.0 - e) / (1.0 + e);

  const ExtMatrix jstd = standard_symplectic(k).cast<Ext>();
  auto defect = [&jstd](const ExtMatrix& z) {
    return static_cast<double>((z.transpose() * jstd * z - jstd).cwiseAbs().rowwise().sum().maxCoeff());
  };

  FundamentalSolution out;
  out.tol = tol;
  ExtMatrix y = ExtMatrix::Identity(2 * k, 2 * k);
  for (int q = 0; q < 4; ++q) {
    const Dop853Stats stats =
        integrate_dop853<Ext>(rhs, kTwoPi * q / 4.0, kTwoPi * (q + 1) / 4.0, y, options);
    out.steps += stats.accepted;
    out.quarter_defects[q] = defect(y);
  }
  out.monodromy = y.cast<double>();
  out.symplectic_defect = out.quarter_defects[3];
  return out;
}

Matrix constant_oracle(const SystemKind& kind) {
  if (kind.e != 0.0) {
    throw std::invalid_argument("constant_oracle requires e = 0, got " + std::to_string(kind.e));
  }
  const Matrix b = coefficient_matrix(kind, 0.0);
  const Matrix a = kTwoPi * standard_symplectic(static_cast<int>(b.rows() / 2)) * b;

  // Scale so that the Taylor series converges fast, then square back.
  const double norm = a.lpNorm<1>();
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  const Eigen::Index dim = a.rows();
  Matrix result = Matrix::Identity(dim, dim);
  Matrix term = Matrix::Identity(dim, dim);
  for (int m = 1; m <= 30; ++m) {
    term = term * scaled / m;
    result += term;
    if (term.lpNorm<1>() < 1e-18 * result.lpNorm<1>()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace ngonstab
