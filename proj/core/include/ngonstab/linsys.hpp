#pragma once

#include <array>
#include <string>
#include <variant>

#include "ngonstab/types.hpp"

namespace ngonstab {

namespace kinds {
struct Full {
  int n = 3;
};
struct Translation {};
struct KeplerBlock {};
struct Essential {
  int n = 3;
  int l = 1;
};
struct Scalar {
  double delta = 1.5;
};
struct Beta {
  double beta = 0;
};
}  // namespace kinds

using SystemTag = std::variant<kinds::Full, kinds::Translation, kinds::KeplerBlock,
                               kinds::Essential, kinds::Scalar, kinds::Beta>;

struct SystemKind {
  SystemTag tag;
  double e = 0;

  int dimension() const;
  std::string name() const;
};

inline SystemKind full_system(int n, double e) { return {kinds::Full{n}, e}; }
inline SystemKind translation_system(double e) { return {kinds::Translation{}, e}; }
inline SystemKind kepler_system(double e) { return {kinds::KeplerBlock{}, e}; }
inline SystemKind essential_system(int n, int l, double e) { return {kinds::Essential{n, l}, e}; }
inline SystemKind scalar_system(double delta, double e) { return {kinds::Scalar{delta}, e}; }
inline SystemKind beta_system(double beta, double e) { return {kinds::Beta{beta}, e}; }

// Constant parts of B(theta) = [[I, -J], [J, I - P / (1 + e cos theta)]].
// Scalar kinds have no J coupling: B = diag(1, 1 - delta / (1 + e cos theta)).
struct SystemData {
  int half = 0;      // k, B is 2k x 2k
  Matrix rotation;   // J (k x k), zero for Scalar
  Matrix potential;  // P (k x k)
};

// Throws std::invalid_argument if e is outside [0, 1) or the tag parameters
// are invalid.
SystemData system_data(const SystemKind& kind);

Matrix coefficient_matrix(const SystemKind& kind, double theta);
Matrix coefficient_matrix(const SystemData& data, double e, double theta);

struct FundamentalSolution {
  Matrix monodromy;
  double symplectic_defect = 0;                // at 2 pi
  std::array<double, 4> quarter_defects{};     // at pi/2, pi, 3pi/2, 2pi
  long steps = 0;
  double tol = 0;
};

inline constexpr double kMaxIntegrationEccentricity = 0.99;
inline constexpr double kDefaultTol = 1e-12;

// Integrates zeta' = J B(theta) zeta, zeta(0) = I over [0, 2 pi].
// e > 0.99 throws NearSingularError; tol outside [1e-14, 1e-6] throws
// std::invalid_argument.
FundamentalSolution fundamental_solution(const SystemKind& kind, double tol = kDefaultTol);

// exp(2 pi J B) for e = 0 by Taylor scaling and squaring. Throws
// std::invalid_argument when e != 0.
Matrix constant_oracle(const SystemKind& kind);

// || Z^T J Z - J ||_inf
double symplectic_defect(const Matrix& z);

}  // namespace ngonstab
