#include "design.hpp"

#include <algorithm>

#include "rbq/simd/kernels.hpp"

namespace rbq::detail {

Matrix assemble_columns(std::span<const DesignTerm> terms, const StructureMatrix& lift) {
  Eigen::Index total_rows = 0;
  for (const DesignTerm& t : terms) total_rows += t.left_row.rows() * t.right_rep.cols();
  Matrix out = Matrix::Zero(total_rows, lift.cols());

  for (Eigen::Index c = 0; c < lift.cols(); ++c) {
    double* col = out.col(c).data();
    Eigen::Index offset = 0;
    for (const DesignTerm& t : terms) {
      const Eigen::Index m = t.left_row.rows();
      const Eigen::Index w = t.left_row.cols();
      const Eigen::Index v = t.right_rep.cols();
      for (const auto& e : lift.column(c)) {
        // vec index e.row <-> lifted entry (e.row % w, e.row / w)
        const Eigen::Index b = e.row % w;
        const Eigen::Index a = e.row / w;
        const std::span<const double> left(t.left_row.col(b).data(), static_cast<std::size_t>(m));
        for (Eigen::Index p = 0; p < v; ++p) {
          const double scale = e.value * t.right_rep(a, p);
          if (scale == 0.0) continue;
          simd::axpy(scale, left, {col + offset + p * m, static_cast<std::size_t>(m)});
        }
      }
      offset += m * v;
    }
  }
  return out;
}

StructureMatrix rbq_lift(Eigen::Index n) { return multiply(build_j(n), build_q(n)); }

StructureMatrix complex_lift(Eigen::Index n) {
  return multiply(build_j_tilde(n), build_q_tilde(n));
}

PackedSolution solve_design(const DesignSystem& ds, const SolveOptions& opts, const Vector* y) {
  const Svd svd = thin_svd(ds.coeff, opts.rank_tol);
  PackedSolution out;
  out.rank = svd.rank;
  out.unique = svd.rank == ds.coeff.cols();
  out.packed = svd.solve(ds.rhs);
  if (y) out.packed += svd.project_null(*y);
  const double gap = (ds.rhs - svd.project_range(ds.rhs)).norm();
  out.consistent = gap <= opts.consistency_tol * std::max(1.0, ds.rhs.norm());
  return out;
}

} // namespace rbq::detail
