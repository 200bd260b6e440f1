#include "rbq/cr_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <chrono>
#include <string>

#include "rbq/simd/kernels.hpp"

namespace rbq {

namespace {

using Clock = std::chrono::steady_clock;

ComplexMatrix h_block(const ComplexMatrix& k1, const ComplexMatrix& k2) {
  const Eigen::Index r = k1.rows(), c = k1.cols();
  ComplexMatrix out = ComplexMatrix::zero(2 * r, 2 * c);
  out.re.topLeftCorner(r, c) = k1.re;
  out.im.topLeftCorner(r, c) = k1.im;
  out.re.topRightCorner(r, c) = k2.re;
  out.im.topRightCorner(r, c) = k2.im;
  out.re.bottomLeftCorner(r, c) = k2.re;
  out.im.bottomLeftCorner(r, c) = k2.im;
  out.re.bottomRightCorner(r, c) = k1.re;
  out.im.bottomRightCorner(r, c) = k1.im;
  return out;
}

/// h((R1^T (x) L1 + R2^T (x) L2) + (R1^T (x) L2 + R2^T (x) L1) j) for L = L1 + L2 j, R = R1 + R2 j.
ComplexMatrix operator_rep(const RbqMatrix& left, const RbqMatrix& right) {
  const ComplexPairRep l = complex_pair(left);
  const ComplexPairRep r = complex_pair(right);
  const ComplexMatrix r1t = r.c1.transpose();
  const ComplexMatrix r2t = r.c2.transpose();
  const ComplexMatrix k1 = kron(r1t, l.c1) + kron(r2t, l.c2);
  const ComplexMatrix k2 = kron(r1t, l.c2) + kron(r2t, l.c1);
  return h_block(k1, k2);
}

void axpy_col(double alpha, const Matrix& src, Eigen::Index src_col, Matrix& dst,
              Eigen::Index dst_col, Eigen::Index row_offset) {
  const auto len = static_cast<std::size_t>(src.rows());
  simd::axpy(alpha, {src.col(src_col).data(), len}, {dst.col(dst_col).data() + row_offset, len});
}

/// Q = [M; N] U with U applied column-by-column from its sparse parts.
ComplexMatrix apply_u(const ComplexMatrix& m, const ComplexMatrix& n, const ComplexStructure& u) {
  const Eigen::Index rows = m.rows() + n.rows();
  ComplexMatrix q = ComplexMatrix::zero(rows, u.re.cols());
  const std::array<const ComplexMatrix*, 2> blocks{&m, &n};
  for (Eigen::Index c = 0; c < u.re.cols(); ++c) {
    Eigen::Index offset = 0;
    for (const ComplexMatrix* b : blocks) {
      for (const auto& e : u.re.column(c)) {
        axpy_col(e.value, b->re, e.row, q.re, c, offset);
        axpy_col(e.value, b->im, e.row, q.im, c, offset);
      }
      // (x + iy) * (i v) = -v y + i v x
      for (const auto& e : u.im.column(c)) {
        axpy_col(-e.value, b->im, e.row, q.re, c, offset);
        axpy_col(e.value, b->re, e.row, q.im, c, offset);
      }
      offset += b->rows();
    }
  }
  return q;
}

} // namespace

ComplexMatrix complex_rep(const RbqMatrix& a) {
  const ComplexPairRep p = complex_pair(a);
  return h_block(p.c1, p.c2);
}

ComplexMatrix ComplexStructure::to_dense() const { return {re.to_dense(), im.to_dense()}; }

ComplexStructure build_u(Eigen::Index n) {
  const StructureMatrix ks = build_k_s(n), ka = build_k_a(n);
  const StructureMatrix zs(n * n, ks.cols()), za(n * n, ka.cols());
  // Column blocks: [vec_s(Re X1) | vec_a(Im X1) | vec_a(Re X2) | vec_a(Im X2)],
  // row blocks: [vec X1; vec X2].
  auto assemble = [&](const std::array<const StructureMatrix*, 4>& top,
                      const std::array<const StructureMatrix*, 4>& bottom) {
    StructureMatrix out(2 * n * n, 0);
    for (std::size_t blk = 0; blk < 4; ++blk) {
      for (Eigen::Index c = 0; c < top[blk]->cols(); ++c) {
        std::vector<StructureMatrix::Entry> col;
        for (const auto& e : top[blk]->column(c)) col.push_back(e);
        for (const auto& e : bottom[blk]->column(c)) col.push_back({e.row + n * n, e.value});
        out.push_column(std::move(col));
      }
    }
    return out;
  };
  return {assemble({&ks, &za, &za, &za}, {&zs, &za, &ka, &za}),
          assemble({&zs, &ka, &za, &za}, {&zs, &za, &za, &ka})};
}

CrSystem build_cr_system(const RbmeProblem& p) {
  p.validate();
  CrSystem sys;
  sys.order = p.n();
  sys.m = operator_rep(p.a, p.b);
  sys.n = operator_rep(p.c, p.d);
  sys.u = build_u(p.n());
  sys.q_cr = apply_u(sys.m, sys.n, sys.u);
  sys.q1 = sys.q_cr.re;
  sys.q2 = sys.q_cr.im;

  const ComplexPairRep e = complex_pair(p.e);
  const ComplexPairRep f = complex_pair(p.f);
  const std::array<const Matrix*, 8> parts{&e.c1.re, &e.c2.re, &f.c1.re, &f.c2.re,
                                           &e.c1.im, &e.c2.im, &f.c1.im, &f.c2.im};
  const Eigen::Index block = p.m() * p.s();
  sys.e.resize(8 * block);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    sys.e.segment(static_cast<Eigen::Index>(i) * block, block) = vec(*parts[i]);
  }
  return sys;
}

StackedPinvParts stacked_pinv(const Matrix& q1, const Matrix& q2, std::optional<double> rank_tol) {
  if (q1.rows() != q2.rows() || q1.cols() != q2.cols()) {
    throw ShapeError("stacked_pinv: Q1 is " + shape_string(q1.rows(), q1.cols()) + ", Q2 is " +
                     shape_string(q2.rows(), q2.cols()));
  }
  const Eigen::Index q = q1.rows();
  const Eigen::Index p = q1.cols();
  StackedPinvParts out;

  const PinvResult q1p = pinv(q1, rank_tol);
  out.q1_pinv = q1p.pinv;
  out.q1_proj = out.q1_pinv * q1;
  out.r_cr = q2.transpose() - out.q1_proj * q2.transpose();
  // R is a residual of Q2 after removing range(Q1^T); its own sigma_max can be
  // pure rounding noise, of size ~ eps * cond(Q1) * ||Q2||. The default
  // threshold is scaled by the stacked matrix and by cond(Q1).
  std::optional<double> r_tol = rank_tol;
  if (!r_tol) {
    const Vector& sv = q1p.singular_values;
    const double s1 = sv.size() > 0 ? sv(0) : 0.0;
    const double cond = q1p.rank > 0 ? s1 / sv(q1p.rank - 1) : 1.0;
    r_tol = default_rank_tol(q, p, std::max(s1, q2.norm())) * cond;
  }
  const PinvResult rp = pinv(out.r_cr, r_tol);
  out.r_cr_pinv = rp.pinv;
  out.r_proj = out.r_cr * out.r_cr_pinv;
  out.rank = q1p.rank + rp.rank;

  // I - R^+ R (q x q)
  Matrix r_null = -(out.r_cr_pinv * out.r_cr);
  r_null.diagonal().array() += 1.0;

  // Q2 Q1^+ Q1^{+T}, q x p
  const Matrix t = q2 * out.q1_pinv;
  const Matrix tq = t * out.q1_pinv.transpose();

  Matrix zinv = Matrix::Identity(q, q);
  {
    const Matrix w = r_null * t; // (I - R^+R) Q2 Q1^+
    zinv.noalias() += w * w.transpose();
  }
  Eigen::LLT<Matrix> llt(zinv);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("stacked_pinv: Z system of order " + std::to_string(q) +
                         " is not positive definite");
  }
  out.z = llt.solve(Matrix::Identity(q, q));
  if (!out.z.allFinite()) throw NumericalError("stacked_pinv: Z has non-finite entries");

  // I - Q2^T R^+ (p x p)
  Matrix right = -(q2.transpose() * out.r_cr_pinv);
  right.diagonal().array() += 1.0;

  out.h = out.r_cr_pinv + r_null * out.z * tq * right;

  out.pinv.resize(p, 2 * q);
  out.pinv.leftCols(q) = out.q1_pinv - out.h.transpose() * t;
  out.pinv.rightCols(q) = out.h.transpose();
  return out;
}

RbqMatrix cr_unpack(const Vector& x, Eigen::Index n) {
  if (x.size() != hermitian_rbq_params(n)) {
    throw ShapeError("cr_unpack: expected " + std::to_string(hermitian_rbq_params(n)) +
                     " parameters for n=" + std::to_string(n) + ", got " +
                     std::to_string(x.size()));
  }
  const Vector full = build_r(n).apply(x);
  const Eigen::Index nn = n * n;
  // [vec Re X1; vec Im X1; vec Re X2; vec Im X2]
  const Matrix re_x1 = unvec(full.segment(0, nn), n, n);
  const Matrix im_x1 = unvec(full.segment(nn, nn), n, n);
  const Matrix re_x2 = unvec(full.segment(2 * nn, nn), n, n);
  const Matrix im_x2 = unvec(full.segment(3 * nn, nn), n, n);
  return from_complex_pair({{re_x1, im_x1}, {re_x2, im_x2}});
}

namespace {

struct CrSolution {
  StackedPinvParts parts;
  Vector x;
  bool consistent = false;
};

CrSolution cr_core(const RbmeProblem& p, const std::optional<Vector>& y, const SolveOptions& opts) {
  const CrSystem sys = build_cr_system(p);
  const Eigen::Index params = hermitian_rbq_params(p.n());
  if (y && y->size() != params) {
    throw ShapeError("cr_solve_hermitian: y has length " + std::to_string(y->size()) +
                     ", expected " + std::to_string(params));
  }
  CrSolution s;
  s.parts = stacked_pinv(sys.q1, sys.q2, opts.rank_tol);
  s.x = s.parts.pinv * sys.e;
  const Eigen::Index q = sys.q1.rows();
  const Vector fitted_re = sys.q1 * s.x;
  const Vector fitted_im = sys.q2 * s.x;
  const double gap = std::sqrt((sys.e.head(q) - fitted_re).squaredNorm() +
                               (sys.e.tail(q) - fitted_im).squaredNorm());
  s.consistent = gap <= opts.consistency_tol * std::max(1.0, sys.e.norm());
  if (y) s.x += *y - s.parts.q1_proj * *y - s.parts.r_proj * *y;
  return s;
}

} // namespace

SolveReport cr_solve_hermitian(const RbmeProblem& p, const std::optional<Vector>& y,
                               const SolveOptions& opts) {
  const auto start = Clock::now();
  CrSolution s = cr_core(p, y, opts);
  SolveReport r;
  r.solution = cr_unpack(s.x, p.n());
  r.elapsed = Clock::now() - start;
  r.packed = std::move(s.x);
  r.rank = s.parts.rank;
  r.unique = s.parts.rank == hermitian_rbq_params(p.n());
  r.consistent = s.consistent;
  r.method = Method::CR;
  r.residual = rbq_residual(p, r.solution);
  return r;
}

bool cr_check_consistency(const RbmeProblem& p, const SolveOptions& opts) {
  return cr_core(p, std::nullopt, opts).consistent;
}

bool cr_check_uniqueness(const RbmeProblem& p, const SolveOptions& opts) {
  const CrSystem sys = build_cr_system(p);
  return stacked_pinv(sys.q1, sys.q2, opts.rank_tol).rank == hermitian_rbq_params(p.n());
}

} // namespace rbq
