#pragma once

#include <functional>

#include "ngonstab/types.hpp"

namespace ngonstab {

// Dormand-Prince 8(5,3) embedded pair with Hairer's combined error estimate.
// The state is a dense matrix so fundamental solutions integrate directly.
struct Dop853Options {
  double rtol = 1e-12;
  double atol = 1e-12;
  double max_step = 0.5;
  double initial_step = 0;  // 0 selects a heuristic start
  long max_steps = 2'000'000;
};

struct Dop853Stats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

template <typename T>
using MatrixT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <typename T>
using MatrixRhsT = std::function<void(double t, const MatrixT<T>& y, MatrixT<T>& dy)>;

// Advances y from t0 to t1 (t1 > t0) in place. Instantiated for double and
// long double; the tableau is stored to long double precision. Throws
// std::runtime_error when the step size underflows or max_steps is exceeded.
template <typename T>
Dop853Stats integrate_dop853(const MatrixRhsT<T>& rhs, double t0, double t1, MatrixT<T>& y,
                             const Dop853Options& options);

}  // namespace ngonstab
