#include "rbq/rr_solver.hpp"

#include <array>
#include <cmath>
#include <string>

#include "design.hpp"
#include "rbq/structure_maps.hpp"

namespace rbq {

std::string_view method_name(Method m) { return m == Method::RR ? "RR" : "CR"; }

namespace {

using Clock = std::chrono::steady_clock;

template <class M>
void require_shape(const M& x, Eigen::Index rows, Eigen::Index cols, const char* name,
                   const char* ref) {
  if (x.rows() != rows || x.cols() != cols) {
    throw ShapeError(std::string("problem: ") + name + " is " + shape_string(x.rows(), x.cols()) +
                     " but " + ref + " requires " + shape_string(rows, cols));
  }
}

template <class P>
void validate_shapes(const P& p) {
  const Eigen::Index m = p.a.rows(), n = p.a.cols(), s = p.b.cols();
  require_shape(p.b, n, s, "B", "A (columns)");
  require_shape(p.c, m, n, "C", "A");
  require_shape(p.d, n, s, "D", "B");
  require_shape(p.e, m, s, "E", "A (rows) and B (columns)");
  require_shape(p.f, m, s, "F", "C (rows) and D (columns)");
}

} // namespace

void RbmeProblem::validate() const { validate_shapes(*this); }
void ComplexProblem::validate() const { validate_shapes(*this); }

// --- RBQ field --------------------------------------------------------------

Vector design_rhs(const RbqMatrix& e, const RbqMatrix& f) {
  const Vector ve = vec(real_rep_row(e));
  const Vector vf = vec(real_rep_row(f));
  Vector rhs(ve.size() + vf.size());
  rhs << ve, vf;
  return rhs;
}

std::pair<RbqMatrix, RbqMatrix> split_rhs(const Vector& rhs, Eigen::Index m, Eigen::Index s) {
  const Eigen::Index block = 4 * m * s;
  if (rhs.size() != 2 * block) {
    throw ShapeError("split_rhs: expected length " + std::to_string(2 * block) + ", got " +
                     std::to_string(rhs.size()));
  }
  auto unpack = [&](Eigen::Index offset) {
    const Matrix row = unvec(rhs.segment(offset, block), m, 4 * s);
    return RbqMatrix(row.leftCols(s), -row.middleCols(s, s), row.middleCols(2 * s, s),
                     -row.rightCols(s));
  };
  return {unpack(0), unpack(block)};
}

DesignSystem assemble_design(const RbmeProblem& p) {
  p.validate();
  const Matrix a_row = real_rep_row(p.a);
  const Matrix b_rep = real_rep(p.b);
  const Matrix c_row = real_rep_row(p.c);
  const Matrix d_rep = real_rep(p.d);
  const std::array terms{detail::DesignTerm{a_row, b_rep}, detail::DesignTerm{c_row, d_rep}};
  DesignSystem ds;
  ds.m = p.m();
  ds.n = p.n();
  ds.s = p.s();
  ds.coeff = detail::assemble_columns(terms, detail::rbq_lift(p.n()));
  ds.rhs = design_rhs(p.e, p.f);
  return ds;
}

double rbq_residual(const RbmeProblem& p, const RbqMatrix& x) {
  const double r1 = frobenius(p.a * x * p.b - p.e);
  const double r2 = frobenius(p.c * x * p.d - p.f);
  return std::sqrt(r1 * r1 + r2 * r2);
}

namespace {

SolveReport solve_rbq(const RbmeProblem& p, const SolveOptions& opts, const Vector* y) {
  const auto start = Clock::now();
  if (y && y->size() != hermitian_rbq_params(p.n())) {
    throw ShapeError("solve_family: y has length " + std::to_string(y->size()) + ", expected " +
                     std::to_string(hermitian_rbq_params(p.n())));
  }
  const DesignSystem ds = assemble_design(p);
  detail::PackedSolution sol = detail::solve_design(ds, opts, y);
  SolveReport r;
  r.solution = unpack_hermitian(sol.packed, p.n());
  r.elapsed = Clock::now() - start;
  r.packed = std::move(sol.packed);
  r.rank = sol.rank;
  r.consistent = sol.consistent;
  r.unique = sol.unique;
  r.method = Method::RR;
  r.residual = rbq_residual(p, r.solution);
  return r;
}

} // namespace

SolveReport solve_min_norm(const RbmeProblem& p, const SolveOptions& opts) {
  return solve_rbq(p, opts, nullptr);
}

SolveReport solve_family(const RbmeProblem& p, const Vector& y, const SolveOptions& opts) {
  return solve_rbq(p, opts, &y);
}

bool check_consistency(const DesignSystem& ds, const SolveOptions& opts) {
  const Svd svd = thin_svd(ds.coeff, opts.rank_tol);
  const double gap = (ds.rhs - svd.project_range(ds.rhs)).norm();
  return gap <= opts.consistency_tol * std::max(1.0, ds.rhs.norm());
}

bool check_uniqueness(const DesignSystem& ds, const SolveOptions& opts) {
  return numerical_rank(ds.coeff, opts.rank_tol) == ds.coeff.cols();
}

bool check_consistency(const RbmeProblem& p, const SolveOptions& opts) {
  return check_consistency(assemble_design(p), opts);
}

bool check_uniqueness(const RbmeProblem& p, const SolveOptions& opts) {
  return check_uniqueness(assemble_design(p), opts);
}

// --- complex field ------------------------------------------------------------

Vector complex_design_rhs(const ComplexMatrix& e, const ComplexMatrix& f) {
  const Vector ve = vec(complex_real_rep_row(e));
  const Vector vf = vec(complex_real_rep_row(f));
  Vector rhs(ve.size() + vf.size());
  rhs << ve, vf;
  return rhs;
}

DesignSystem assemble_complex_design(const ComplexProblem& p) {
  p.validate();
  const Matrix a_row = complex_real_rep_row(p.a);
  const Matrix b_rep = complex_real_rep(p.b);
  const Matrix c_row = complex_real_rep_row(p.c);
  const Matrix d_rep = complex_real_rep(p.d);
  const std::array terms{detail::DesignTerm{a_row, b_rep}, detail::DesignTerm{c_row, d_rep}};
  DesignSystem ds;
  ds.m = p.m();
  ds.n = p.n();
  ds.s = p.s();
  ds.coeff = detail::assemble_columns(terms, detail::complex_lift(p.n()));
  ds.rhs = complex_design_rhs(p.e, p.f);
  return ds;
}

double complex_residual(const ComplexProblem& p, const ComplexMatrix& x) {
  const double r1 = frobenius(p.a * x * p.b - p.e);
  const double r2 = frobenius(p.c * x * p.d - p.f);
  return std::sqrt(r1 * r1 + r2 * r2);
}

namespace {

ComplexSolveReport solve_complex(const ComplexProblem& p, const SolveOptions& opts,
                                 const Vector* y) {
  const auto start = Clock::now();
  if (y && y->size() != hermitian_complex_params(p.n())) {
    throw ShapeError("solve_complex_family: y has length " + std::to_string(y->size()) +
                     ", expected " + std::to_string(hermitian_complex_params(p.n())));
  }
  const DesignSystem ds = assemble_complex_design(p);
  detail::PackedSolution sol = detail::solve_design(ds, opts, y);
  ComplexSolveReport r;
  r.solution = unpack_hermitian_complex(sol.packed, p.n());
  r.elapsed = Clock::now() - start;
  r.packed = std::move(sol.packed);
  r.rank = sol.rank;
  r.consistent = sol.consistent;
  r.unique = sol.unique;
  r.method = Method::RR;
  r.residual = complex_residual(p, r.solution);
  return r;
}

} // namespace

ComplexSolveReport solve_complex_min_norm(const ComplexProblem& p, const SolveOptions& opts) {
  return solve_complex(p, opts, nullptr);
}

ComplexSolveReport solve_complex_family(const ComplexProblem& p, const Vector& y,
                                        const SolveOptions& opts) {
  return solve_complex(p, opts, &y);
}

bool check_complex_consistency(const ComplexProblem& p, const SolveOptions& opts) {
  return check_consistency(assemble_complex_design(p), opts);
}

bool check_complex_uniqueness(const ComplexProblem& p, const SolveOptions& opts) {
  return check_uniqueness(assemble_complex_design(p), opts);
}

} // namespace rbq
