#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ngonstab/configuration.hpp"
#include "ngonstab/types.hpp"

namespace ngonstab {

enum class BlockKind {
  Center,    // translation, O_2
  Dilation,  // dilation and rotation, U_0 = diag(2, -1)
  Mode,      // essential mode l, 2 columns for l = 1, 4 columns for 2 <= l <= (n-1)/2
  Half,      // essential mode l = n/2 for even n, 2 columns
};

struct BlockLabel {
  BlockKind kind = BlockKind::Center;
  int l = 0;  // essential mode index; 0 for Center and Dilation

  // "Cen", "Dil", "L(1)", "L(2)", ..., "Half".
  std::string name() const;
  friend bool operator==(const BlockLabel&, const BlockLabel&) = default;
};

struct ColumnRange {
  BlockLabel label;
  int offset = 0;
  int width = 0;
};

// Symmetry-adapted basis with J_n A = A J_n and A^T M A = I.
struct SymmetryBasis {
  Matrix A;
  std::vector<ColumnRange> blocks;  // in column order, covering all 2n columns
  double ortho_residual = 0;        // ||A^T M A - I||_inf
  double commute_residual = 0;      // ||J_n A - A J_n||_inf

  // Range of the essential block for mode l (1 <= l <= n/2).
  const ColumnRange& essential(int l) const;
};

struct BlockParameters {
  int n = 0;
  int l = 0;
  double P = 0;
  double Q = 0;
  double S = 0;
  double a = 0;  // P - 3Q
  double b = 0;  // P + 3Q
  std::optional<double> z;  // only for l = 1
  double lambda = 0;
};

struct ReducedBlock {
  BlockLabel label;
  Matrix matrix;
  double closed_form_residual = 0;  // max |entry - closed form|
};

struct ReducedBlocks {
  int n = 0;
  double lambda = 0;
  std::vector<ReducedBlock> blocks;
  double offblock_residual = 0;

  const ReducedBlock& essential(int l) const;
};

struct SymmetryResiduals {
  double translation_x = 0;  // ||D^2U(a) e_1||
  double translation_y = 0;  // ||D^2U(a) J e_1||
  double rotation = 0;       // ||(1/lambda) M^-1 D^2U(a) J a + J a||
  double dilation = 0;       // ||(1/lambda) M^-1 D^2U(a) a - 2 a||

  double max() const;
};

SymmetryBasis build_basis(const NGonConfiguration& config);

// Closed-form per-mode sums for the regular n-gon; theta_{jl} = 2 pi j l / n.
// Throws std::invalid_argument unless n >= 3 and 1 <= l <= n/2.
BlockParameters block_parameters(int n, int l);

// Expected reduced block from the closed forms: (z/lambda) I_2 for l = 1,
// the 4x4 (a, b, +-S)/lambda pattern for interior modes, diag(a, b)/lambda
// for l = n/2.
Matrix closed_form_block(const BlockParameters& p);

// Congruence A^T M (1/lambda) M^-1 D^2U(a) A, using A^{-1} = A^T M.
ReducedBlocks reduce_hessian(const NGonConfiguration& config, const SymmetryBasis& basis);

// Full reduced matrix (1/lambda) A^{-1} M^{-1} D^2U(a) A, 2n x 2n.
Matrix reduced_hessian_matrix(const NGonConfiguration& config, const SymmetryBasis& basis);

SymmetryResiduals symmetry_checks(const NGonConfiguration& config);

// Number of essential modes, floor(n/2).
inline int essential_mode_count(int n) { return n / 2; }

// Width of the essential block for mode l: 2 if l == 1 or l == n/2, else 4.
int essential_block_width(int n, int l);

}  // namespace ngonstab
