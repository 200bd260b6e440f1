#pragma once

// Partially described inverse eigenvalue problem: find a complex Hermitian M
// with M u_i = lambda_i u_i for k prescribed real eigenvalues and vectors.
// Solved as the single complex equation I_n M Phi = Phi Lambda over Hermitian M.

#include <optional>

#include "rbq/rbq_core.hpp"

namespace rbq {

struct EigenpairData {
  Eigen::Index n = 0;
  Vector lambdas;    ///< k real eigenvalues
  ComplexMatrix phi; ///< n x k, columns u_1..u_k

  Eigen::Index k() const { return lambdas.size(); }
  /// Throws InputError when k > n or a column of phi vanishes, ShapeError on
  /// mismatched sizes.
  void validate() const;
};

struct PdiepReport {
  ComplexMatrix matrix; ///< Hermitian reconstruction
  Vector residuals;     ///< ||M u_i - lambda_i u_i||_2
  bool solvable = false;
  Eigen::Index rank = 0; ///< rank of the design N
};

/// Relative singular-value cut used by the solvability test.
inline constexpr double kSolvableRankTol = 1e-10;

/// Min-norm reconstruction (y empty) or the family member for y of length n^2.
PdiepReport reconstruct(const EigenpairData& data, const std::optional<Vector>& y = std::nullopt);

/// rank(N) == rank([N, t]) with singular values below kSolvableRankTol * sigma_max
/// of [N, t] treated as zero.
bool check_solvable(const EigenpairData& data);

/// ||M u_i - lambda_i u_i||_2 for every pair.
Vector eigen_residuals(const ComplexMatrix& m, const EigenpairData& data);

} // namespace rbq
