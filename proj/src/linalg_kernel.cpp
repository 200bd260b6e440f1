#include "rbq/linalg_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <lapacke.h>

namespace rbq {

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index p = a.rows(), q = a.cols(), r = b.rows(), s = b.cols();
  constexpr auto kMax = std::numeric_limits<Eigen::Index>::max();
  if ((r != 0 && p > kMax / r) || (s != 0 && q > kMax / s) ||
      (p * r != 0 && q * s > kMax / (p * r))) {
    throw ShapeError("kron: result of " + shape_string(p, q) + " (x) " + shape_string(r, s) +
                     " is too large");
  }
  Matrix out(p * r, q * s);
  for (Eigen::Index j = 0; j < q; ++j) {
    for (Eigen::Index i = 0; i < p; ++i) out.block(i * r, j * s, r, s) = a(i, j) * b;
  }
  return out;
}

double default_rank_tol(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() *
         sigma_max;
}

Svd thin_svd(const Matrix& a, std::optional<double> tol) {
  if (!a.allFinite()) throw NumericalError("thin_svd: matrix has non-finite entries");
  Svd out;
  if (a.size() == 0) {
    out.u = Matrix::Zero(a.rows(), 0);
    out.v = Matrix::Zero(a.cols(), 0);
    out.sigma = Vector::Zero(0);
    return out;
  }
  constexpr auto kIntMax = std::numeric_limits<lapack_int>::max();
  if (a.rows() > kIntMax || a.cols() > kIntMax) {
    throw ShapeError("thin_svd: " + shape_string(a.rows(), a.cols()) + " exceeds LAPACK index range");
  }
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  const lapack_int r = std::min(m, n);
  Matrix work = a; // dgesdd overwrites its input
  Matrix vt(r, n);
  out.u.resize(m, r);
  out.sigma.resize(r);
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m,
                                         out.sigma.data(), out.u.data(), m, vt.data(), r);
  if (info != 0) {
    throw NumericalError("thin_svd: dgesdd on " + shape_string(a.rows(), a.cols()) +
                         " matrix failed (info " + std::to_string(info) + ")");
  }
  out.v = vt.transpose();
  if (!out.sigma.allFinite()) {
    throw NumericalError("thin_svd: non-finite singular values for " +
                         shape_string(a.rows(), a.cols()) + " matrix");
  }
  const double smax = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  out.tol = tol ? *tol : default_rank_tol(a.rows(), a.cols(), smax);
  out.rank = 0;
  for (Eigen::Index i = 0; i < out.sigma.size(); ++i) {
    if (out.sigma(i) > out.tol) ++out.rank;
  }
  return out;
}

Vector Svd::solve(const Vector& b) const {
  if (b.size() != rows()) {
    throw ShapeError("pinv solve: right-hand side has length " + std::to_string(b.size()) +
                     ", expected " + std::to_string(rows()));
  }
  const auto ur = u.leftCols(rank);
  const auto vr = v.leftCols(rank);
  Vector c = ur.transpose() * b;
  c.array() /= sigma.head(rank).array();
  return vr * c;
}

Vector Svd::project_range(const Vector& b) const {
  const auto ur = u.leftCols(rank);
  return ur * (ur.transpose() * b);
}

Vector Svd::project_null(const Vector& y) const {
  if (y.size() != cols()) {
    throw ShapeError("null-space projection: vector has length " + std::to_string(y.size()) +
                     ", expected " + std::to_string(cols()));
  }
  const auto vr = v.leftCols(rank);
  return y - vr * (vr.transpose() * y);
}

Matrix Svd::pinv() const {
  const auto ur = u.leftCols(rank);
  const auto vr = v.leftCols(rank);
  return vr * sigma.head(rank).cwiseInverse().asDiagonal() * ur.transpose();
}

PinvResult pinv(const Matrix& a, std::optional<double> tol) {
  const Svd svd = thin_svd(a, tol);
  PinvResult r;
  r.pinv = a.size() == 0 ? Matrix::Zero(a.cols(), a.rows()) : svd.pinv();
  r.rank = svd.rank;
  r.singular_values = svd.sigma;
  r.tol_used = svd.tol;
  return r;
}

Eigen::Index numerical_rank(const Matrix& a, std::optional<double> tol) {
  return thin_svd(a, tol).rank;
}

LsSolutionFamily ls_family(const Matrix& a, const Vector& b, double consistency_tol,
                           std::optional<double> rank_tol) {
  if (a.rows() != b.size()) {
    throw ShapeError("ls_family: matrix is " + shape_string(a.rows(), a.cols()) +
                     " but right-hand side has length " + std::to_string(b.size()));
  }
  const Svd svd = thin_svd(a, rank_tol);
  LsSolutionFamily fam;
  fam.rank = svd.rank;
  if (a.size() == 0) {
    fam.particular = Vector::Zero(a.cols());
    fam.projector = Matrix::Identity(a.cols(), a.cols());
  } else {
    fam.particular = svd.solve(b);
    const auto vr = svd.v.leftCols(svd.rank);
    fam.projector = Matrix::Identity(a.cols(), a.cols()) - vr * vr.transpose();
  }
  fam.residual_norm = (a.size() == 0 ? b : Vector(svd.project_range(b) - b)).norm();
  fam.consistent = fam.residual_norm <= consistency_tol * std::max(1.0, b.norm());
  return fam;
}

Vector sample_family(const LsSolutionFamily& fam, const Vector& y) {
  if (y.size() != fam.particular.size()) {
    throw ShapeError("sample_family: y has length " + std::to_string(y.size()) + ", expected " +
                     std::to_string(fam.particular.size()));
  }
  return fam.particular + fam.projector * y;
}

} // namespace rbq
