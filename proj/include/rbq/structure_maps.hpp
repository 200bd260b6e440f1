#pragma once

// Vectorization operators and the sparse 0/+-1 selection matrices that map
// packed free parameters of structured (symmetric / antisymmetric / Hermitian)
// matrices onto full column-stacked vectors.
//
// Packing order for vec_s / vec_a is column-wise over the lower triangle:
// vec_s(X) = [x11 x21 .. xn1, x22 .. xn2, .., xnn]
// vec_a(X) = [x21 x31 .. xn1, x32 .. xn2, .., xn(n-1)]
//
// The symbols Q and R are used twice in the literature this library follows:
// q_sel / r_sel here are the selection matrices, while the matrices of the
// complex-representation baseline live in cr_solver.hpp.

#include <cstdint>
#include <span>
#include <vector>

#include "rbq/rbq_core.hpp"

namespace rbq {

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

inline Eigen::Index packed_sym_size(Eigen::Index n) { return n * (n + 1) / 2; }
inline Eigen::Index packed_asym_size(Eigen::Index n) { return n * (n - 1) / 2; }
/// Free real parameters of an n x n Hermitian RBQ matrix.
inline Eigen::Index hermitian_rbq_params(Eigen::Index n) { return 2 * n * n - n; }
/// Free real parameters of an n x n complex Hermitian matrix.
inline Eigen::Index hermitian_complex_params(Eigen::Index n) { return n * n; }

/// Packed index of (i, j), i >= j, within vec_s.
Eigen::Index sym_index(Eigen::Index n, Eigen::Index i, Eigen::Index j);
/// Packed index of (i, j), i > j, within vec_a.
Eigen::Index asym_index(Eigen::Index n, Eigen::Index i, Eigen::Index j);

inline constexpr double kStructureTol = 1e-10;

/// Throws StructureError when X is not symmetric within tol * max(1, ||X||_F).
Vector vec_s(const Matrix& x, double tol = kStructureTol);
Matrix unvec_s(const Vector& packed, Eigen::Index n);
/// Throws StructureError when X is not antisymmetric within tolerance.
Vector vec_a(const Matrix& x, double tol = kStructureTol);
Matrix unvec_a(const Vector& packed, Eigen::Index n);

/// Sparse selection matrix in compressed-column form. Values are small
/// integers (0/+-1 for every builder here).
class StructureMatrix {
public:
  struct Entry {
    Eigen::Index row;
    int value;
  };

  StructureMatrix() = default;
  StructureMatrix(Eigen::Index rows, Eigen::Index cols);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }

  /// Entries of column c in increasing row order.
  std::span<const Entry> column(Eigen::Index c) const;

  /// y = S x
  Vector apply(const Vector& x) const;
  /// y = S^T x
  Vector apply_transpose(const Vector& x) const;
  Matrix to_dense() const;

  StructureMatrix operator-() const;

  /// Builder: append columns left to right.
  void push_column(std::vector<Entry> entries);

  friend bool operator==(const StructureMatrix&, const StructureMatrix&);

private:
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::size_t> col_start_{0};
};

/// Sparse product a * b.
StructureMatrix multiply(const StructureMatrix& a, const StructureMatrix& b);
/// Block-diagonal assembly.
StructureMatrix block_diag(std::span<const StructureMatrix> blocks);

/// n^2 x n(n+1)/2, vec(X) = K_S vec_s(X) for symmetric X.
StructureMatrix build_k_s(Eigen::Index n);
/// n^2 x n(n-1)/2, vec(X) = K_A vec_a(X) for antisymmetric X.
StructureMatrix build_k_a(Eigen::Index n);
/// 16n^2 x 4n^2, vec(real_rep(X)) = J vec(real_rep_row(X)).
StructureMatrix build_j(Eigen::Index n);
/// diag(K_S, -K_A, K_A, -K_A): vec(real_rep_row(X)) = Q [vec_s(X0); vec_a(X1); vec_a(X2); vec_a(X3)].
StructureMatrix build_q(Eigen::Index n);
/// diag(K_S, K_A, K_A, K_A): [vec X0; .. vec X3] = R [packed].
StructureMatrix build_r(Eigen::Index n);

/// 4n^2 x 2n^2, vec(complex_real_rep(X)) = J~ vec(complex_real_rep_row(X)).
StructureMatrix build_j_tilde(Eigen::Index n);
/// diag(K_S, -K_A)
StructureMatrix build_q_tilde(Eigen::Index n);
/// diag(K_S, K_A)
StructureMatrix build_r_tilde(Eigen::Index n);

/// Packed free parameters [vec_s(X0); vec_a(X1); vec_a(X2); vec_a(X3)] of a
/// Hermitian RBQ matrix, and the inverse map.
Vector pack_hermitian(const RbqMatrix& x, double tol = kStructureTol);
RbqMatrix unpack_hermitian(const Vector& packed, Eigen::Index n);
Vector pack_hermitian(const ComplexMatrix& x, double tol = kStructureTol);
ComplexMatrix unpack_hermitian_complex(const Vector& packed, Eigen::Index n);

} // namespace rbq
