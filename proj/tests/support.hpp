#pragma once

// Test-only generators and brute-force oracles. Nothing here calls the
// design-assembly or selection-matrix code it is used to check.

#include <vector>

#include <Eigen/Dense>

#include "rbq/rbq_core.hpp"
#include "rbq/rng.hpp"
#include "rbq/rr_solver.hpp"

namespace rbq::test {

inline Matrix int_matrix(Rng& rng, Eigen::Index r, Eigen::Index c, int lo = -5, int hi = 5) {
  Matrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i)
      m(i, j) = lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  return m;
}

inline Matrix sym_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  return 2.0 * rng.uniform_matrix(r, c) - Matrix::Ones(r, c);
}

inline RbqMatrix int_rbq(Rng& rng, Eigen::Index r, Eigen::Index c) {
  return {int_matrix(rng, r, c), int_matrix(rng, r, c), int_matrix(rng, r, c), int_matrix(rng, r, c)};
}

inline RbqMatrix rand_rbq(Rng& rng, Eigen::Index r, Eigen::Index c) {
  return {sym_matrix(rng, r, c), sym_matrix(rng, r, c), sym_matrix(rng, r, c), sym_matrix(rng, r, c)};
}

inline RbqMatrix hermitian_from(const Matrix& s0, const Matrix& s1, const Matrix& s2, const Matrix& s3) {
  return {s0 + s0.transpose(), s1 - s1.transpose(), s2 - s2.transpose(), s3 - s3.transpose()};
}

inline RbqMatrix rand_hermitian(Rng& rng, Eigen::Index n) {
  return hermitian_from(sym_matrix(rng, n, n), sym_matrix(rng, n, n), sym_matrix(rng, n, n),
                        sym_matrix(rng, n, n));
}

inline RbqMatrix int_hermitian(Rng& rng, Eigen::Index n) {
  return hermitian_from(int_matrix(rng, n, n), int_matrix(rng, n, n), int_matrix(rng, n, n),
                        int_matrix(rng, n, n));
}

inline ComplexMatrix rand_complex(Rng& rng, Eigen::Index r, Eigen::Index c) {
  return {sym_matrix(rng, r, c), sym_matrix(rng, r, c)};
}

inline ComplexMatrix rand_complex_hermitian(Rng& rng, Eigen::Index n) {
  const Matrix a = sym_matrix(rng, n, n), b = sym_matrix(rng, n, n);
  return {a + a.transpose(), b - b.transpose()};
}

/// Product of random factors with inner dimension r.
inline Matrix low_rank(Rng& rng, Eigen::Index m, Eigen::Index n, Eigen::Index r) {
  return sym_matrix(rng, m, r) * sym_matrix(rng, r, n);
}

struct Consistent {
  RbmeProblem p;
  RbqMatrix x;
};

inline Consistent consistent_problem(Rng& rng, Eigen::Index m, Eigen::Index n, Eigen::Index s) {
  Consistent c;
  c.p.a = rand_rbq(rng, m, n);
  c.p.b = rand_rbq(rng, n, s);
  c.p.c = rand_rbq(rng, m, n);
  c.p.d = rand_rbq(rng, n, s);
  c.x = rand_hermitian(rng, n);
  c.p.e = c.p.a * c.x * c.p.b;
  c.p.f = c.p.c * c.x * c.p.d;
  return c;
}

/// Hermitian basis in packed order: symmetric X0 units over the lower
/// triangle (column-wise, diagonal included), then antisymmetric units for
/// X1, X2, X3 over the strict lower triangle.
inline std::vector<RbqMatrix> hermitian_basis(Eigen::Index n) {
  std::vector<RbqMatrix> out;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      RbqMatrix b(n, n);
      b.comp(0)(i, j) = 1.0;
      b.comp(0)(j, i) = 1.0;
      out.push_back(b);
    }
  }
  for (std::size_t t = 1; t < 4; ++t) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = j + 1; i < n; ++i) {
        RbqMatrix b(n, n);
        b.comp(t)(i, j) = 1.0;
        b.comp(t)(j, i) = -1.0;
        out.push_back(b);
      }
    }
  }
  return out;
}

inline Vector colstack(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

/// Design matrix built by pushing every basis matrix through the equations:
/// column c = [vec(row_rep(A X_c B)); vec(row_rep(C X_c D))].
inline Matrix brute_design(const RbmeProblem& p) {
  const auto basis = hermitian_basis(p.n());
  const Eigen::Index rows = 8 * p.m() * p.s();
  Matrix out(rows, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const Matrix top = real_rep_row(p.a * basis[c] * p.b);
    const Matrix bot = real_rep_row(p.c * basis[c] * p.d);
    out.col(static_cast<Eigen::Index>(c)) << colstack(top), colstack(bot);
  }
  return out;
}

inline RbqMatrix from_basis(const Vector& coeffs, Eigen::Index n) {
  const auto basis = hermitian_basis(n);
  RbqMatrix x(n, n);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    RbqMatrix term = basis[c];
    term *= coeffs(static_cast<Eigen::Index>(c));
    x += term;
  }
  return x;
}

/// Min-norm least-squares solution via complete orthogonal decomposition.
inline Vector cod_min_norm(const Matrix& a, const Vector& b) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  return cod.solve(b);
}

/// Pseudoinverse via Jacobi SVD.
inline Matrix jacobi_pinv(const Matrix& a, double rel_tol = 1e-12) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  Vector inv = Vector::Zero(s.size());
  const double cut = s.size() ? rel_tol * s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

/// Largest component-plane distance, for exact-equality style checks.
inline double max_abs_diff(const RbqMatrix& a, const RbqMatrix& b) {
  double d = 0.0;
  for (std::size_t t = 0; t < 4; ++t) d = std::max(d, (a.comp(t) - b.comp(t)).cwiseAbs().maxCoeff());
  return d;
}

} // namespace rbq::test
