#include "rbq/rbq_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbq/simd/kernels.hpp"

namespace rbq {

std::string shape_string(long rows, long cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

namespace {

double plane_sum_squares(const Matrix& m) {
  return simd::sum_squares({m.data(), static_cast<std::size_t>(m.size())});
}

void require_same_shape(const RbqMatrix& a, const RbqMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": operand shapes " + shape_string(a.rows(), a.cols()) +
                     " and " + shape_string(b.rows(), b.cols()) + " differ");
  }
}

} // namespace

double RbqScalar::norm() const { return std::sqrt(a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3); }

RbqScalar rbq_mul(const RbqScalar& a, const RbqScalar& b) {
  return {a.a0 * b.a0 - a.a1 * b.a1 + a.a2 * b.a2 - a.a3 * b.a3,
          a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 + a.a3 * b.a2,
          a.a0 * b.a2 + a.a2 * b.a0 - a.a1 * b.a3 - a.a3 * b.a1,
          a.a0 * b.a3 + a.a3 * b.a0 + a.a1 * b.a2 + a.a2 * b.a1};
}

RbqScalar operator+(const RbqScalar& a, const RbqScalar& b) {
  return {a.a0 + b.a0, a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3};
}

// ---------------------------------------------------------------------------

RbqMatrix::RbqMatrix(Eigen::Index rows, Eigen::Index cols) {
  for (auto& c : comp_) c = Matrix::Zero(rows, cols);
}

RbqMatrix::RbqMatrix(Matrix x0, Matrix x1, Matrix x2, Matrix x3)
    : comp_{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {
  for (std::size_t t = 1; t < 4; ++t) {
    if (comp_[t].rows() != comp_[0].rows() || comp_[t].cols() != comp_[0].cols()) {
      throw ShapeError("RbqMatrix: component " + std::to_string(t) + " is " +
                       shape_string(comp_[t].rows(), comp_[t].cols()) + ", component 0 is " +
                       shape_string(comp_[0].rows(), comp_[0].cols()));
    }
  }
}

RbqMatrix RbqMatrix::zero(Eigen::Index rows, Eigen::Index cols) { return RbqMatrix(rows, cols); }

RbqMatrix RbqMatrix::identity(Eigen::Index n) {
  RbqMatrix m(n, n);
  m.comp_[0].setIdentity();
  return m;
}

RbqMatrix RbqMatrix::real(const Matrix& x0) {
  RbqMatrix m(x0.rows(), x0.cols());
  m.comp_[0] = x0;
  return m;
}

RbqMatrix RbqMatrix::scaled(const Matrix& m, const RbqScalar& a) {
  return {a.a0 * m, a.a1 * m, a.a2 * m, a.a3 * m};
}

RbqScalar RbqMatrix::at(Eigen::Index r, Eigen::Index c) const {
  return {comp_[0](r, c), comp_[1](r, c), comp_[2](r, c), comp_[3](r, c)};
}

void RbqMatrix::set(Eigen::Index r, Eigen::Index c, const RbqScalar& a) {
  comp_[0](r, c) = a.a0;
  comp_[1](r, c) = a.a1;
  comp_[2](r, c) = a.a2;
  comp_[3](r, c) = a.a3;
}

RbqMatrix RbqMatrix::transpose() const {
  return {comp_[0].transpose(), comp_[1].transpose(), comp_[2].transpose(), comp_[3].transpose()};
}

RbqMatrix& RbqMatrix::operator+=(const RbqMatrix& o) {
  require_same_shape(*this, o, "add");
  for (std::size_t t = 0; t < 4; ++t) comp_[t] += o.comp_[t];
  return *this;
}

RbqMatrix& RbqMatrix::operator-=(const RbqMatrix& o) {
  require_same_shape(*this, o, "subtract");
  for (std::size_t t = 0; t < 4; ++t) comp_[t] -= o.comp_[t];
  return *this;
}

RbqMatrix& RbqMatrix::operator*=(double alpha) {
  for (auto& c : comp_) c *= alpha;
  return *this;
}

bool operator==(const RbqMatrix& a, const RbqMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t t = 0; t < 4; ++t) {
    if (a.comp_[t] != b.comp_[t]) return false;
  }
  return true;
}

RbqMatrix operator+(RbqMatrix a, const RbqMatrix& b) { return a += b; }
RbqMatrix operator-(RbqMatrix a, const RbqMatrix& b) { return a -= b; }
RbqMatrix operator*(double alpha, RbqMatrix a) { return a *= alpha; }

RbqMatrix mat_mul(const RbqMatrix& a, const RbqMatrix& c) {
  if (a.cols() != c.rows()) {
    throw ShapeError("mat_mul: cannot multiply " + shape_string(a.rows(), a.cols()) + " by " +
                     shape_string(c.rows(), c.cols()));
  }
  const Matrix &a0 = a.comp(0), &a1 = a.comp(1), &a2 = a.comp(2), &a3 = a.comp(3);
  const Matrix &c0 = c.comp(0), &c1 = c.comp(1), &c2 = c.comp(2), &c3 = c.comp(3);
  Matrix p0 = a0 * c0;
  p0.noalias() -= a1 * c1;
  p0.noalias() += a2 * c2;
  p0.noalias() -= a3 * c3;
  Matrix p1 = a0 * c1;
  p1.noalias() += a1 * c0;
  p1.noalias() += a2 * c3;
  p1.noalias() += a3 * c2;
  Matrix p2 = a0 * c2;
  p2.noalias() += a2 * c0;
  p2.noalias() -= a1 * c3;
  p2.noalias() -= a3 * c1;
  Matrix p3 = a0 * c3;
  p3.noalias() += a3 * c0;
  p3.noalias() += a1 * c2;
  p3.noalias() += a2 * c1;
  return {std::move(p0), std::move(p1), std::move(p2), std::move(p3)};
}

RepBlock real_rep_block(int block_row, int block_col) {
  static constexpr RepBlock kTable[4][4] = {
      {{0, +1}, {1, -1}, {2, +1}, {3, -1}},
      {{1, +1}, {0, +1}, {3, +1}, {2, +1}},
      {{2, +1}, {3, -1}, {0, +1}, {1, -1}},
      {{3, +1}, {2, +1}, {1, +1}, {0, +1}},
  };
  return kTable[block_row][block_col];
}

Matrix real_rep(const RbqMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Matrix out(4 * m, 4 * n);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const RepBlock b = real_rep_block(r, c);
      out.block(r * m, c * n, m, n) = b.sign * a.comp(static_cast<std::size_t>(b.comp));
    }
  }
  return out;
}

Matrix real_rep_row(const RbqMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Matrix out(m, 4 * n);
  out.block(0, 0, m, n) = a.comp(0);
  out.block(0, n, m, n) = -a.comp(1);
  out.block(0, 2 * n, m, n) = a.comp(2);
  out.block(0, 3 * n, m, n) = -a.comp(3);
  return out;
}

double frobenius(const RbqMatrix& a) {
  double s = 0.0;
  for (std::size_t t = 0; t < 4; ++t) s += plane_sum_squares(a.comp(t));
  return std::sqrt(s);
}

bool is_hermitian(const RbqMatrix& x, double tol) {
  if (x.rows() != x.cols()) {
    throw ShapeError("is_hermitian: matrix is " + shape_string(x.rows(), x.cols()) +
                     ", expected square");
  }
  const double bound = tol * std::max(1.0, frobenius(x));
  if ((x.comp(0) - x.comp(0).transpose()).norm() > bound) return false;
  for (std::size_t t = 1; t < 4; ++t) {
    if ((x.comp(t) + x.comp(t).transpose()).norm() > bound) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ComplexMatrix::ComplexMatrix(Matrix r, Matrix i) : re(std::move(r)), im(std::move(i)) {
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw ShapeError("ComplexMatrix: real part " + shape_string(re.rows(), re.cols()) +
                     " and imaginary part " + shape_string(im.rows(), im.cols()) + " differ");
  }
}

ComplexMatrix ComplexMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
  return {Matrix::Zero(rows, cols), Matrix::Zero(rows, cols)};
}

ComplexMatrix ComplexMatrix::identity(Eigen::Index n) {
  return {Matrix::Identity(n, n), Matrix::Zero(n, n)};
}

ComplexMatrix ComplexMatrix::transpose() const { return {re.transpose(), im.transpose()}; }
ComplexMatrix ComplexMatrix::adjoint() const { return {re.transpose(), -im.transpose()}; }

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.re == b.re && a.im == b.im;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("complex multiply: cannot multiply " + shape_string(a.rows(), a.cols()) +
                     " by " + shape_string(b.rows(), b.cols()));
  }
  Matrix re = a.re * b.re;
  re.noalias() -= a.im * b.im;
  Matrix im = a.re * b.im;
  im.noalias() += a.im * b.re;
  return {std::move(re), std::move(im)};
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("complex add: shapes " + shape_string(a.rows(), a.cols()) + " and " +
                     shape_string(b.rows(), b.cols()) + " differ");
  }
  return {a.re + b.re, a.im + b.im};
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("complex subtract: shapes " + shape_string(a.rows(), a.cols()) + " and " +
                     shape_string(b.rows(), b.cols()) + " differ");
  }
  return {a.re - b.re, a.im - b.im};
}

double frobenius(const ComplexMatrix& a) {
  return std::sqrt(plane_sum_squares(a.re) + plane_sum_squares(a.im));
}

bool is_hermitian(const ComplexMatrix& x, double tol) {
  return is_hermitian(to_rbq(x), tol);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index p = a.rows(), q = a.cols(), r = b.rows(), s = b.cols();
  ComplexMatrix out = ComplexMatrix::zero(p * r, q * s);
  for (Eigen::Index j = 0; j < q; ++j) {
    for (Eigen::Index i = 0; i < p; ++i) {
      const double ar = a.re(i, j), ai = a.im(i, j);
      out.re.block(i * r, j * s, r, s) = ar * b.re - ai * b.im;
      out.im.block(i * r, j * s, r, s) = ar * b.im + ai * b.re;
    }
  }
  return out;
}

Matrix complex_real_rep(const ComplexMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Matrix out(2 * m, 2 * n);
  out.block(0, 0, m, n) = a.re;
  out.block(0, n, m, n) = -a.im;
  out.block(m, 0, m, n) = a.im;
  out.block(m, n, m, n) = a.re;
  return out;
}

Matrix complex_real_rep_row(const ComplexMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Matrix out(m, 2 * n);
  out.block(0, 0, m, n) = a.re;
  out.block(0, n, m, n) = -a.im;
  return out;
}

ComplexPairRep complex_pair(const RbqMatrix& a) {
  return {{a.comp(0), a.comp(1)}, {a.comp(2), a.comp(3)}};
}

RbqMatrix from_complex_pair(const ComplexPairRep& p) {
  if (p.c1.rows() != p.c2.rows() || p.c1.cols() != p.c2.cols()) {
    throw ShapeError("from_complex_pair: parts " + shape_string(p.c1.rows(), p.c1.cols()) +
                     " and " + shape_string(p.c2.rows(), p.c2.cols()) + " differ");
  }
  return {p.c1.re, p.c1.im, p.c2.re, p.c2.im};
}

RbqMatrix to_rbq(const ComplexMatrix& c) {
  return {c.re, c.im, Matrix::Zero(c.rows(), c.cols()), Matrix::Zero(c.rows(), c.cols())};
}

} // namespace rbq
