#pragma once

// Real-representation (RR) method for least-squares Hermitian solutions of
// the RBQ matrix equation pair (A X B, C X D) = (E, F), and its specialization
// to complex matrices.
//
// The constrained problem is rewritten as the unconstrained real system
//   (P J Q) p = [vec(E_r^R); vec(F_r^R)],
//   P = [ (B^R)^T (x) A_r^R ; (D^R)^T (x) C_r^R ],
// over the 2n^2 - n packed Hermitian parameters p, whose minimum-norm
// least-squares solution is mapped back to X through R = diag(K_S, K_A, K_A, K_A).

#include <chrono>
#include <optional>
#include <string_view>
#include <utility>

#include "rbq/linalg_kernel.hpp"
#include "rbq/rbq_core.hpp"

namespace rbq {

enum class Method { RR, CR };
std::string_view method_name(Method m);

/// A, C: m x n; B, D: n x s; E, F: m x s.
struct RbmeProblem {
  RbqMatrix a, b, c, d, e, f;

  /// Throws ShapeError naming the first offending pair.
  void validate() const;
  Eigen::Index m() const { return a.rows(); }
  Eigen::Index n() const { return a.cols(); }
  Eigen::Index s() const { return b.cols(); }
};

/// Same shapes as RbmeProblem, over the complex field.
struct ComplexProblem {
  ComplexMatrix a, b, c, d, e, f;

  void validate() const;
  Eigen::Index m() const { return a.rows(); }
  Eigen::Index n() const { return a.cols(); }
  Eigen::Index s() const { return b.cols(); }
};

/// coeff p = rhs. coeff is 8ms x (2n^2 - n) for RBQ problems and
/// 4ms x n^2 for complex ones.
struct DesignSystem {
  Matrix coeff;
  Vector rhs;
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  Eigen::Index s = 0;
};

struct SolveOptions {
  std::optional<double> rank_tol;           ///< default max(rows, cols) * eps * sigma_max
  double consistency_tol = kConsistencyTol; ///< relative to max(1, ||rhs||)
};

template <class Solution>
struct BasicSolveReport {
  Solution solution;
  Vector packed;          ///< free parameters in the method's own packing
  double residual = 0.0;  ///< ||(AXB - E, CXD - F)||_F recomputed in matrix space
  bool consistent = false;
  bool unique = false;
  Eigen::Index rank = 0;
  std::chrono::duration<double, std::milli> elapsed{0};
  Method method = Method::RR;
};

using SolveReport = BasicSolveReport<RbqMatrix>;
using ComplexSolveReport = BasicSolveReport<ComplexMatrix>;

// --- RBQ field --------------------------------------------------------------

DesignSystem assemble_design(const RbmeProblem& p);

/// [vec(E_r^R); vec(F_r^R)]
Vector design_rhs(const RbqMatrix& e, const RbqMatrix& f);
/// Inverse of design_rhs for m x s blocks.
std::pair<RbqMatrix, RbqMatrix> split_rhs(const Vector& rhs, Eigen::Index m, Eigen::Index s);

/// sqrt(||AXB - E||_F^2 + ||CXD - F||_F^2)
double rbq_residual(const RbmeProblem& p, const RbqMatrix& x);

SolveReport solve_min_norm(const RbmeProblem& p, const SolveOptions& opts = {});
/// Family member R (PJQ)^+ rhs + R (I - (PJQ)^+ PJQ) y, y of length 2n^2 - n.
SolveReport solve_family(const RbmeProblem& p, const Vector& y, const SolveOptions& opts = {});

bool check_consistency(const RbmeProblem& p, const SolveOptions& opts = {});
bool check_uniqueness(const RbmeProblem& p, const SolveOptions& opts = {});
bool check_consistency(const DesignSystem& ds, const SolveOptions& opts = {});
bool check_uniqueness(const DesignSystem& ds, const SolveOptions& opts = {});

// --- complex field ------------------------------------------------------------

DesignSystem assemble_complex_design(const ComplexProblem& p);
Vector complex_design_rhs(const ComplexMatrix& e, const ComplexMatrix& f);
double complex_residual(const ComplexProblem& p, const ComplexMatrix& x);

ComplexSolveReport solve_complex_min_norm(const ComplexProblem& p, const SolveOptions& opts = {});
ComplexSolveReport solve_complex_family(const ComplexProblem& p, const Vector& y,
                                        const SolveOptions& opts = {});
bool check_complex_consistency(const ComplexProblem& p, const SolveOptions& opts = {});
bool check_complex_uniqueness(const ComplexProblem& p, const SolveOptions& opts = {});

} // namespace rbq
