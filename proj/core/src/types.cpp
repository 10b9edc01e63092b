#include "ngonstab/types.hpp"

namespace ngonstab {

Matrix block_rotation_generator(int k) {
  Matrix j = Matrix::Zero(2 * k, 2 * k);
  for (int b = 0; b < k; ++b) {
    j(2 * b, 2 * b + 1) = -1;
    j(2 * b + 1, 2 * b) = 1;
  }
  return j;
}

double inf_norm(const Matrix& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

Matrix standard_symplectic(int k) {
  Matrix j = Matrix::Zero(2 * k, 2 * k);
  j.topRightCorner(k, k) = -Matrix::Identity(k, k);
  j.bottomLeftCorner(k, k) = Matrix::Identity(k, k);
  return j;
}

}  // namespace ngonstab
