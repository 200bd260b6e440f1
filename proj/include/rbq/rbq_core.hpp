#pragma once

// Reduced biquaternion (RBQ) scalars and matrices.
//
// a = a0 + a1 i + a2 j + a3 k with i^2 = k^2 = -1, j^2 = 1, ij = ji = k,
// jk = kj = i, ki = ik = -j. Multiplication is commutative.

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "rbq/errors.hpp"

namespace rbq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct RbqScalar {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  static RbqScalar one() { return {1.0, 0.0, 0.0, 0.0}; }
  static RbqScalar i() { return {0.0, 1.0, 0.0, 0.0}; }
  static RbqScalar j() { return {0.0, 0.0, 1.0, 0.0}; }
  static RbqScalar k() { return {0.0, 0.0, 0.0, 1.0}; }

  double norm() const;
  friend bool operator==(const RbqScalar&, const RbqScalar&) = default;
};

RbqScalar rbq_mul(const RbqScalar& a, const RbqScalar& b);
RbqScalar operator+(const RbqScalar& a, const RbqScalar& b);
inline RbqScalar operator*(const RbqScalar& a, const RbqScalar& b) { return rbq_mul(a, b); }

/// m x n RBQ matrix stored as four real component planes X0..X3.
class RbqMatrix {
public:
  RbqMatrix() = default;
  RbqMatrix(Eigen::Index rows, Eigen::Index cols);
  RbqMatrix(Matrix x0, Matrix x1, Matrix x2, Matrix x3);

  static RbqMatrix zero(Eigen::Index rows, Eigen::Index cols);
  static RbqMatrix identity(Eigen::Index n);
  /// Real matrix embedded as the X0 plane.
  static RbqMatrix real(const Matrix& x0);
  /// Every entry multiplied by the scalar `a` (a real matrix lifted to RBQ).
  static RbqMatrix scaled(const Matrix& m, const RbqScalar& a);

  Eigen::Index rows() const { return comp_[0].rows(); }
  Eigen::Index cols() const { return comp_[0].cols(); }

  const Matrix& comp(std::size_t t) const { return comp_[t]; }
  Matrix& comp(std::size_t t) { return comp_[t]; }

  RbqScalar at(Eigen::Index r, Eigen::Index c) const;
  void set(Eigen::Index r, Eigen::Index c, const RbqScalar& a);

  RbqMatrix transpose() const;

  RbqMatrix& operator+=(const RbqMatrix& o);
  RbqMatrix& operator-=(const RbqMatrix& o);
  RbqMatrix& operator*=(double alpha);

  friend bool operator==(const RbqMatrix& a, const RbqMatrix& b);

private:
  std::array<Matrix, 4> comp_;
};

RbqMatrix operator+(RbqMatrix a, const RbqMatrix& b);
RbqMatrix operator-(RbqMatrix a, const RbqMatrix& b);
RbqMatrix operator*(double alpha, RbqMatrix a);

/// Matrix product via the component expansion of the commutative table.
RbqMatrix mat_mul(const RbqMatrix& a, const RbqMatrix& c);
inline RbqMatrix operator*(const RbqMatrix& a, const RbqMatrix& c) { return mat_mul(a, c); }

/// 4m x 4n real representation
///   [ A0 -A1  A2 -A3 ]
///   [ A1  A0  A3  A2 ]
///   [ A2 -A3  A0 -A1 ]
///   [ A3  A2  A1  A0 ]
Matrix real_rep(const RbqMatrix& a);

/// First block row of real_rep: [A0, -A1, A2, -A3], m x 4n.
Matrix real_rep_row(const RbqMatrix& a);

/// Block layout of real_rep: component index and sign of block (r, c).
struct RepBlock {
  int comp;
  int sign;
};
RepBlock real_rep_block(int block_row, int block_col);

double frobenius(const RbqMatrix& a);

/// Hermitian iff X0 symmetric and X1, X2, X3 antisymmetric, each within
/// tol * max(1, ||X||_F).
inline constexpr double kHermitianTol = 1e-10;
bool is_hermitian(const RbqMatrix& x, double tol = kHermitianTol);

// ---------------------------------------------------------------------------
// Complex matrices, stored as a (real, imaginary) pair of real planes.

struct ComplexMatrix {
  Matrix re;
  Matrix im;

  ComplexMatrix() = default;
  ComplexMatrix(Matrix r, Matrix i);
  static ComplexMatrix zero(Eigen::Index rows, Eigen::Index cols);
  static ComplexMatrix identity(Eigen::Index n);

  Eigen::Index rows() const { return re.rows(); }
  Eigen::Index cols() const { return re.cols(); }

  ComplexMatrix transpose() const;
  ComplexMatrix adjoint() const;

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& x, double tol = kHermitianTol);

/// Complex Kronecker product, plain (non-conjugating) layout.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// 2m x 2n real representation [[X0, -X1], [X1, X0]] of X0 + X1 i.
Matrix complex_real_rep(const ComplexMatrix& a);
/// First block row [X0, -X1].
Matrix complex_real_rep_row(const ComplexMatrix& a);

/// A = A1 + A2 j with A1 = X0 + X1 i and A2 = X2 + X3 i.
struct ComplexPairRep {
  ComplexMatrix c1;
  ComplexMatrix c2;
};

ComplexPairRep complex_pair(const RbqMatrix& a);
RbqMatrix from_complex_pair(const ComplexPairRep& p);

/// Complex matrix X0 + X1 i viewed as an RBQ matrix with zero j, k planes.
RbqMatrix to_rbq(const ComplexMatrix& c);

} // namespace rbq
