#include "ngonstab/operator_positivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ngonstab/linsys.hpp"
#include "ngonstab/parallel.hpp"
#include "ngonstab/reduction.hpp"

namespace ngonstab {

namespace {

constexpr double kMaxEccentricity = 0.99;
constexpr double kConvergenceTolerance = 1e-8;
constexpr double kReducibleTolerance = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_eccentricity(double e) {
  if (!(e >= 0.0 && e <= kMaxEccentricity)) {
    throw std::invalid_argument("eccentricity must lie in [0, 0.99], got " + std::to_string(e));
  }
}

struct OperatorData {
  int components = 1;
  Matrix rotation;   // J, zero for Scalar
  Matrix potential;  // multiplies 1/(1 + e cos)
  double shift = 0;  // constant added to the diagonal (-1 for Scalar)
};

OperatorData operator_data(const OperatorKind& kind) {
  return std::visit(overloaded{
                        [](const galerkin::Scalar& s) {
                          if (!std::isfinite(s.delta)) throw std::invalid_argument("delta must be finite");
                          return OperatorData{1, Matrix::Zero(1, 1), Matrix::Constant(1, 1, s.delta), -1.0};
                        },
                        [](const galerkin::Planar& p) {
                          const SystemData d = system_data(beta_system(p.beta, 0.0));
                          return OperatorData{2, d.rotation, d.potential, 0.0};
                        },
                        [](const galerkin::Block& b) {
                          const SystemData d = system_data(essential_system(b.n, b.l, 0.0));
                          return OperatorData{d.half, d.rotation, d.potential, 0.0};
                        },
                    },
                    kind);
}

}  // namespace

std::string operator_name(const OperatorKind& kind) {
  return std::visit(overloaded{
                        [](const galerkin::Scalar& s) { return "scalar(delta=" + std::to_string(s.delta) + ")"; },
                        [](const galerkin::Planar& p) { return "planar(beta=" + std::to_string(p.beta) + ")"; },
                        [](const galerkin::Block& b) {
                          return "block(n=" + std::to_string(b.n) + ",l=" + std::to_string(b.l) + ")";
                        },
                    },
                    kind);
}

std::vector<double> inverse_radius_fourier(double e, int M) {
  check_eccentricity(e);
  if (M < 1) throw std::invalid_argument("inverse_radius_fourier: M must be >= 1");

  // The coefficients decay like r^m with r = (1 - sqrt(1 - e^2)) / e; the
  // aliased tail r^L must sit below rounding.
  int samples = 8 * M;
  if (e > 0) {
    const double r = (1.0 - std::sqrt(1.0 - e * e)) / e;
    samples = std::max(samples, static_cast<int>(std::ceil(-40.0 / std::log(r))));
  }
  std::vector<double> f(samples);
  std::vector<double> cosines(samples);
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    f[j] = 1.0 / (1.0 + e * std::cos(theta));
    cosines[j] = std::cos(theta);
  }
  std::vector<double> c(M + 1, 0.0);
  for (int m = 0; m <= M; ++m) {
    double sum = 0;
    long idx = 0;
    for (int j = 0; j < samples; ++j) {
      sum += f[j] * cosines[idx];
      idx += m;
      if (idx >= samples) idx %= samples;
    }
    c[m] = sum / samples;
  }
  return c;
}

double fourier_reconstruction_error(double e, const std::vector<double>& coefficients, int samples) {
  double worst = 0;
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    double s = coefficients.empty() ? 0.0 : coefficients[0];
    for (std::size_t m = 1; m < coefficients.size(); ++m) {
      s += 2.0 * coefficients[m] * std::cos(static_cast<double>(m) * theta);
    }
    worst = std::max(worst, std::abs(s - 1.0 / (1.0 + e * std::cos(theta))));
  }
  return worst;
}

GalerkinOperator galerkin_assemble(const OperatorKind& kind, double e, double phi, int N) {
  check_eccentricity(e);
  if (!(phi >= 0.0 && phi < 1.0)) throw std::invalid_argument("phi must lie in [0, 1)");
  if (N < kMinTruncation) throw std::invalid_argument("truncation N must be >= 8");

  const OperatorData data = operator_data(kind);
  const int c = data.components;
  const std::vector<double> coeff = inverse_radius_fourier(e, 2 * N);
  const int modes = 2 * N + 1;

  GalerkinOperator op;
  op.kind = kind;
  op.e = e;
  op.phi = phi;
  op.N = N;
  op.components = c;
  op.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(modes) * c, static_cast<Eigen::Index>(modes) * c);

  const Eigen::MatrixXcd rotation = data.rotation.cast<Complex>();
  const Eigen::MatrixXcd potential = data.potential.cast<Complex>();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(c, c);
  for (int a = 0; a < modes; ++a) {
    const double s = (a - N) + phi;
    op.matrix.block(a * c, a * c, c, c) =
        (s * s + data.shift) * id - Complex(0.0, 2.0 * s) * rotation;
    for (int b = 0; b < modes; ++b) {
      op.matrix.block(a * c, b * c, c, c) += coeff[std::abs(a - b)] * potential;
    }
  }
  return op;
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: solver failed");
  return solver.eigenvalues().minCoeff();
}

double min_eigenvalue(const GalerkinOperator& op) { return min_eigenvalue(op.matrix); }

PositivityReport positivity_scan(const OperatorKind& kind, double e, int omega_count, int N) {
  if (omega_count < 1) throw std::invalid_argument("omega_count must be >= 1");
  check_eccentricity(e);
  if (N < kMinTruncation || N > kMaxTruncation) {
    throw std::invalid_argument("truncation N must lie in [8, 512]");
  }

  // Complex conjugation maps the phi operator onto the 1 - phi one, so only
  // half of the grid is evaluated.
  const int half = omega_count / 2;
  const std::vector<double> mins = parallel_map(static_cast<std::size_t>(half + 1), [&](std::size_t j) {
    return min_eigenvalue(galerkin_assemble(kind, e, static_cast<double>(j) / omega_count, N));
  });
  const auto worst = std::min_element(mins.begin(), mins.end());

  PositivityReport report;
  report.kind = kind;
  report.e = e;
  report.N = N;
  report.omega_count = omega_count;
  report.min_eig = *worst;
  report.worst_phi = static_cast<double>(worst - mins.begin()) / omega_count;

  double previous = report.min_eig;
  report.refined_min_eig = previous;
  report.refined_N = N;
  for (int n2 = 2 * N; n2 <= kMaxTruncation; n2 *= 2) {
    const double value = min_eigenvalue(galerkin_assemble(kind, e, report.worst_phi, n2));
    report.refined_min_eig = value;
    report.refined_N = n2;
    if (std::abs(value - previous) <= kConvergenceTolerance * std::max(1.0, std::abs(value))) {
      report.converged = true;
      break;
    }
    previous = value;
  }
  return report;
}

ComparisonResult block_comparison(int n, int l, double e, double phi, int N) {
  const BlockParameters p = block_parameters(n, l);
  if (essential_block_width(n, l) != 4) {
    throw std::invalid_argument("block_comparison needs an interior mode with a 4x4 block");
  }
  if (!(p.S > 0)) throw std::invalid_argument("block_comparison requires S_l > 0");
  const double mean = (p.a + p.b - 2.0 * p.S) / (2.0 * p.lambda);
  if (std::abs(mean - 0.5) > kReducibleTolerance) {
    throw std::invalid_argument("block_comparison requires mean shift 1/2");
  }

  ComparisonResult out;
  out.beta_eff = (p.b - p.a) / (2.0 * p.lambda);
  out.block_min = min_eigenvalue(galerkin_assemble(galerkin::Block{n, l}, e, phi, N));
  // The decoupled operator is two copies of F(e, beta_eff); its spectrum is
  // that of one copy.
  out.comparison_min = min_eigenvalue(galerkin_assemble(galerkin::Planar{out.beta_eff}, e, phi, N));
  return out;
}

}  // namespace ngonstab
