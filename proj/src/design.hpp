#pragma once

// Column-wise assembly of P * L for a stacked P = [R_1^T (x) A_1; R_2^T (x) A_2; ..]
// and a sparse lift L (J Q or J~ Q~). P itself is never formed: each nonzero
// of a column of L selects one column of P, which is the vectorized outer
// product of a column of A_t with a row of R_t.

#include <span>

#include "rbq/linalg_kernel.hpp"
#include "rbq/rr_solver.hpp"
#include "rbq/structure_maps.hpp"

namespace rbq::detail {

struct DesignTerm {
  const Matrix& left_row;  ///< m x w (A_r^R)
  const Matrix& right_rep; ///< w x v (B^R)
};

Matrix assemble_columns(std::span<const DesignTerm> terms, const StructureMatrix& lift);

/// J Q and J~ Q~.
StructureMatrix rbq_lift(Eigen::Index n);
StructureMatrix complex_lift(Eigen::Index n);

struct PackedSolution {
  Vector packed;
  Eigen::Index rank = 0;
  bool consistent = false;
  bool unique = false;
};

/// Min-norm (y empty) or family solution of ds.coeff p = ds.rhs.
PackedSolution solve_design(const DesignSystem& ds, const SolveOptions& opts,
                            const Vector* y = nullptr);

} // namespace rbq::detail
