#pragma once

// Dense real linear algebra: Kronecker products, SVD-based Moore-Penrose
// pseudoinverse with a hard singular-value threshold, numerical rank and the
// least-squares solution family x = A^+ b + (I - A^+ A) y.

#include <optional>

#include "rbq/rbq_core.hpp"

namespace rbq {

Matrix kron(const Matrix& a, const Matrix& b);

/// Thin SVD of A with the numerical rank decided by `tol`
/// (default max(m, n) * eps * sigma_max).
struct Svd {
  Matrix u;     ///< m x r, r = min(m, n)
  Vector sigma; ///< descending
  Matrix v;     ///< n x r
  Eigen::Index rank = 0;
  double tol = 0.0;

  Eigen::Index rows() const { return u.rows(); }
  Eigen::Index cols() const { return v.rows(); }

  /// A^+ b
  Vector solve(const Vector& b) const;
  /// A A^+ b: orthogonal projection onto range(A).
  Vector project_range(const Vector& b) const;
  /// (I - A^+ A) y: projection onto null(A).
  Vector project_null(const Vector& y) const;
  Matrix pinv() const;
};

double default_rank_tol(Eigen::Index rows, Eigen::Index cols, double sigma_max);

/// Throws NumericalError on non-finite input or SVD failure.
Svd thin_svd(const Matrix& a, std::optional<double> tol = std::nullopt);

struct PinvResult {
  Matrix pinv;
  Eigen::Index rank = 0;
  Vector singular_values;
  double tol_used = 0.0;
};

PinvResult pinv(const Matrix& a, std::optional<double> tol = std::nullopt);
Eigen::Index numerical_rank(const Matrix& a, std::optional<double> tol = std::nullopt);

inline constexpr double kConsistencyTol = 1e-8;

struct LsSolutionFamily {
  Vector particular; ///< A^+ b
  Matrix projector;  ///< I - A^+ A
  bool consistent = false;
  double residual_norm = 0.0; ///< ||A A^+ b - b||
  Eigen::Index rank = 0;
};

/// consistent iff ||A A^+ b - b|| <= consistency_tol * max(1, ||b||).
LsSolutionFamily ls_family(const Matrix& a, const Vector& b,
                           double consistency_tol = kConsistencyTol,
                           std::optional<double> rank_tol = std::nullopt);

/// particular + projector * y
Vector sample_family(const LsSolutionFamily& fam, const Vector& y);

} // namespace rbq
