#pragma once

// Complex-representation (CR) baseline for the Hermitian RBQ problem.
//
// With A = A1 + A2 j, the equation pair becomes [M; N] U x = vec(Psi_E, Psi_F),
//   M = h((B1^T (x) A1 + B2^T (x) A2) + (B1^T (x) A2 + B2^T (x) A1) j),
//   U = [ K_S  iK_A  0    0   ]
//       [ 0    0     K_A  iK_A ],
//   x = [vec_s(Re X1); vec_a(Im X1); vec_a(Re X2); vec_a(Im X2)],
// and is solved as the real stacked system [Q1; Q2] x = e with Q1 = Re(Q),
// Q2 = Im(Q), Q = [M; N] U. The stacked pseudoinverse is evaluated through
// the partitioned (Cline-type) formulas
//   [Q1; Q2]^+ = [Q1^+ - H^T Q2 Q1^+, H^T],
//   R = (I - Q1^+ Q1) Q2^T,
//   H = R^+ + (I - R^+ R) Z Q2 Q1^+ Q1^{+T} (I - Q2^T R^+),
//   Z = (I + (I - R^+ R) Q2 Q1^+ Q1^{+T} Q2^T (I - R^+ R))^{-1}.
// Here Q and R are the baseline's own matrices (q_cr / r_cr), not the
// selection matrices of structure_maps.hpp.

#include <optional>

#include "rbq/rr_solver.hpp"
#include "rbq/structure_maps.hpp"

namespace rbq {

/// h(A) = [[A1, A2], [A2, A1]], 2m x 2n complex.
ComplexMatrix complex_rep(const RbqMatrix& a);

/// Complex 0/1/i selection matrix stored as real and imaginary sparse parts.
struct ComplexStructure {
  StructureMatrix re;
  StructureMatrix im;
  ComplexMatrix to_dense() const;
};

/// U = [K_S, iK_A, 0, 0; 0, 0, K_A, iK_A], 2n^2 x (2n^2 - n).
ComplexStructure build_u(Eigen::Index n);

struct CrSystem {
  ComplexMatrix m;    ///< 2ms x 2n^2
  ComplexMatrix n;    ///< 2ms x 2n^2
  ComplexStructure u;
  ComplexMatrix q_cr; ///< 4ms x (2n^2 - n)
  Matrix q1;          ///< Re(q_cr)
  Matrix q2;          ///< Im(q_cr)
  Vector e;           ///< Re then Im of vec(E1), vec(E2), vec(F1), vec(F2)
  Eigen::Index order = 0;
};

CrSystem build_cr_system(const RbmeProblem& p);

struct StackedPinvParts {
  Matrix q1_pinv;   ///< Q1^+
  Matrix r_cr;      ///< (I - Q1^+ Q1) Q2^T
  Matrix r_cr_pinv; ///< R^+
  Matrix z;
  Matrix h;
  Matrix pinv;      ///< [Q1^+ - H^T Q2 Q1^+, H^T]
  Matrix q1_proj;   ///< Q1^+ Q1
  Matrix r_proj;    ///< R R^+
  Eigen::Index rank = 0; ///< rank(Q1) + rank(R) = rank([Q1; Q2])
};

/// Throws NumericalError if the Z system cannot be factored.
StackedPinvParts stacked_pinv(const Matrix& q1, const Matrix& q2,
                              std::optional<double> rank_tol = std::nullopt);

/// Min-norm member when y is absent, otherwise the family member
/// x = [Q1; Q2]^+ e + (I - Q1^+ Q1 - R R^+) y.
SolveReport cr_solve_hermitian(const RbmeProblem& p, const std::optional<Vector>& y = std::nullopt,
                               const SolveOptions& opts = {});

bool cr_check_consistency(const RbmeProblem& p, const SolveOptions& opts = {});
bool cr_check_uniqueness(const RbmeProblem& p, const SolveOptions& opts = {});

/// CR packing -> RBQ components: X0 = Re X1, X1 = Im X1, X2 = Re X2, X3 = Im X2.
RbqMatrix cr_unpack(const Vector& x, Eigen::Index n);

} // namespace rbq
