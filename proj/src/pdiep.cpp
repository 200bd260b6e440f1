#include "rbq/pdiep.hpp"

#include <array>
#include <cmath>
#include <string>

#include "design.hpp"
#include "rbq/linalg_kernel.hpp"
#include "rbq/structure_maps.hpp"

namespace rbq {

void EigenpairData::validate() const {
  if (n <= 0) throw InputError("eigenpairs: n must be positive, got " + std::to_string(n));
  if (phi.rows() != n || phi.cols() != k()) {
    throw ShapeError("eigenpairs: phi is " + shape_string(phi.rows(), phi.cols()) +
                     ", expected " + shape_string(n, k()));
  }
  if (k() > n) {
    throw InputError("eigenpairs: k = " + std::to_string(k()) + " exceeds n = " +
                     std::to_string(n));
  }
  for (Eigen::Index c = 0; c < k(); ++c) {
    if (phi.re.col(c).squaredNorm() + phi.im.col(c).squaredNorm() == 0.0) {
      throw InputError("eigenpairs: eigenvector " + std::to_string(c + 1) + " is zero");
    }
  }
  if (!lambdas.allFinite() || !phi.re.allFinite() || !phi.im.allFinite()) {
    throw InputError("eigenpairs: non-finite entries");
  }
}

namespace {

ComplexMatrix phi_lambda(const EigenpairData& d) {
  return {d.phi.re * d.lambdas.asDiagonal(), d.phi.im * d.lambdas.asDiagonal()};
}

DesignSystem pdiep_design(const EigenpairData& d) {
  d.validate();
  const Matrix a_row = complex_real_rep_row(ComplexMatrix::identity(d.n));
  const Matrix b_rep = complex_real_rep(d.phi);
  const std::array terms{detail::DesignTerm{a_row, b_rep}};
  DesignSystem ds;
  ds.m = d.n;
  ds.n = d.n;
  ds.s = d.k();
  ds.coeff = detail::assemble_columns(terms, detail::complex_lift(d.n));
  ds.rhs = vec(complex_real_rep_row(phi_lambda(d)));
  return ds;
}

} // namespace

Vector eigen_residuals(const ComplexMatrix& m, const EigenpairData& data) {
  const ComplexMatrix diff = m * data.phi - phi_lambda(data);
  Vector out(data.k());
  for (Eigen::Index c = 0; c < data.k(); ++c) {
    out(c) = std::sqrt(diff.re.col(c).squaredNorm() + diff.im.col(c).squaredNorm());
  }
  return out;
}

PdiepReport reconstruct(const EigenpairData& data, const std::optional<Vector>& y) {
  const DesignSystem ds = pdiep_design(data);
  if (y && y->size() != hermitian_complex_params(data.n)) {
    throw ShapeError("pdiep: y has length " + std::to_string(y->size()) + ", expected " +
                     std::to_string(hermitian_complex_params(data.n)));
  }
  const detail::PackedSolution sol = detail::solve_design(ds, {}, y ? &*y : nullptr);
  PdiepReport r;
  r.matrix = unpack_hermitian_complex(sol.packed, data.n);
  r.residuals = eigen_residuals(r.matrix, data);
  r.rank = sol.rank;
  r.solvable = check_solvable(data);
  return r;
}

bool check_solvable(const EigenpairData& data) {
  const DesignSystem ds = pdiep_design(data);
  Matrix aug(ds.coeff.rows(), ds.coeff.cols() + 1);
  aug << ds.coeff, ds.rhs;
  const Svd full = thin_svd(aug);
  const double smax = full.sigma.size() > 0 ? full.sigma(0) : 0.0;
  const double tol = kSolvableRankTol * smax;
  return numerical_rank(ds.coeff, tol) == numerical_rank(aug, tol);
}

} // namespace rbq
