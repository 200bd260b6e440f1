#include <catch_amalgamated.hpp>

#include "rbq/rr_solver.hpp"
#include "rbq/structure_maps.hpp"
#include "support.hpp"

using namespace rbq;

namespace {

RbmeProblem identity_problem(const RbqMatrix& x) {
  const Eigen::Index n = x.rows();
  const RbqMatrix i = RbqMatrix::identity(n);
  return {i, i, i, i, x, x};
}

/// Unit vector orthogonal to range(a), taken from the full left singular basis.
Vector left_null_direction(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU);
  const Eigen::Index r = (svd.singularValues().array() > 1e-10 * svd.singularValues()(0)).count();
  REQUIRE(r < a.rows());
  return svd.matrixU().col(r);
}

RbmeProblem perturbed(const RbmeProblem& p, const Vector& dir) {
  RbmeProblem q = p;
  const auto [de, df] = split_rhs(dir, p.m(), p.s());
  q.e += de;
  q.f += df;
  return q;
}

} // namespace

TEST_CASE("scalar problem") {
  const RbqMatrix one = RbqMatrix::identity(1);
  const RbqMatrix e = RbqMatrix::real(Matrix::Constant(1, 1, 2.5));
  const RbmeProblem p{one, one, one, one, e, e};
  const DesignSystem ds = assemble_design(p);
  CHECK(ds.coeff.rows() == 8);
  CHECK(ds.coeff.cols() == 1);
  const SolveReport r = solve_min_norm(p);
  CHECK(std::abs(r.solution.comp(0)(0, 0) - 2.5) < 1e-14);
  CHECK(r.consistent);
  CHECK(r.unique);
  CHECK(r.method == Method::RR);
}

TEST_CASE("shape validation names the offending matrix") {
  Rng rng(1);
  auto c = test::consistent_problem(rng, 3, 2, 2);
  c.p.d = RbqMatrix(3, 2);
  try {
    solve_min_norm(c.p);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    CHECK(std::string(e.what()).find("D is 3x2") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_family(test::consistent_problem(rng, 2, 2, 2).p, Vector::Zero(5)), ShapeError);
}

TEST_CASE("design matches the brute-force basis construction") {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const Eigen::Index m = 1 + t % 3, n = 1 + t % 4, s = 1 + (t + 1) % 3;
    const auto c = test::consistent_problem(rng, m, n, s);
    const DesignSystem ds = assemble_design(c.p);
    REQUIRE(ds.coeff.cols() == 2 * n * n - n);
    REQUIRE(ds.coeff.rows() == 8 * m * s);
    const Matrix brute = test::brute_design(c.p);
    CHECK((ds.coeff - brute).norm() <= 1e-12 * std::max(1.0, brute.norm()));
    CHECK(ds.rhs == (Vector(8 * m * s) << test::colstack(real_rep_row(c.p.e)),
                     test::colstack(real_rep_row(c.p.f))).finished());
    const Vector packed = pack_hermitian(c.x);
    CHECK((ds.coeff * packed - ds.rhs).norm() <= 1e-12 * std::max(1.0, ds.rhs.norm()));
  }
}

TEST_CASE("identity operators recover the Hermitian right-hand side") {
  Rng rng(3);
  for (Eigen::Index n : {1, 2, 4}) {
    const RbqMatrix x = test::rand_hermitian(rng, n);
    const SolveReport r = solve_min_norm(identity_problem(x));
    CHECK(test::max_abs_diff(r.solution, x) < 1e-12);
    CHECK(r.unique);
    CHECK(r.consistent);
  }
}

TEST_CASE("constructed-consistent problems are recovered") {
  Rng rng(4);
  for (int k = 1; k <= 3; ++k) {
    const auto c = test::consistent_problem(rng, 2 * k, 2 * k, k);
    const SolveReport r = solve_min_norm(c.p);
    CHECK(r.consistent);
    CHECK(r.unique);
    CHECK(is_hermitian(r.solution));
    CHECK(frobenius(r.solution - c.x) < 1e-9);
    CHECK(r.residual <= 1e-8 * std::max(1.0, assemble_design(c.p).rhs.norm()));
  }
}

TEST_CASE("residual agrees with the packed system and the dense oracle") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto c = test::consistent_problem(rng, 2, 2, 2);
    c.p.e += test::rand_rbq(rng, 2, 2);
    const SolveReport r = solve_min_norm(c.p);
    CHECK(is_hermitian(r.solution));
    const DesignSystem ds = assemble_design(c.p);
    const double packed_res = (ds.coeff * r.packed - ds.rhs).norm();
    CHECK(std::abs(packed_res - r.residual) <= 1e-12 * std::max(1.0, r.residual));
    const Matrix brute = test::brute_design(c.p);
    const Vector oracle = test::cod_min_norm(brute, ds.rhs);
    CHECK(std::abs((brute * oracle - ds.rhs).norm() - r.residual) < 1e-10);
    CHECK_FALSE(r.consistent);
  }
}

TEST_CASE("no random Hermitian candidate beats the solver's residual") {
  Rng rng(6);
  auto c = test::consistent_problem(rng, 2, 2, 1);
  c.p.f += test::rand_rbq(rng, 2, 1);
  const SolveReport r = solve_min_norm(c.p);
  for (int t = 0; t < 1000; ++t) {
    const double scale = t < 500 ? 1e-3 : 1.0;
    RbqMatrix cand = test::rand_hermitian(rng, 2);
    cand *= scale;
    CHECK(rbq_residual(c.p, r.solution + cand) >= r.residual - 1e-12);
  }
}

TEST_CASE("solution family") {
  Rng rng(7);
  SECTION("full column rank: family collapses to the min-norm solution") {
    const auto c = test::consistent_problem(rng, 3, 2, 3);
    const SolveReport base = solve_min_norm(c.p);
    REQUIRE(base.unique);
    const SolveReport zero = solve_family(c.p, Vector::Zero(6));
    CHECK(zero.packed == base.packed);
    const SolveReport any = solve_family(c.p, test::sym_matrix(rng, 6, 1));
    CHECK((any.packed - base.packed).norm() < 1e-10);
  }
  SECTION("rank-deficient: equal residuals, min-norm dominance in packed space") {
    auto c = test::consistent_problem(rng, 1, 3, 1);
    c.p.e += test::rand_rbq(rng, 1, 1);
    const SolveReport base = solve_min_norm(c.p);
    REQUIRE_FALSE(base.unique);
    const Eigen::Index np = hermitian_rbq_params(3);
    for (int t = 0; t < 50; ++t) {
      const SolveReport f = solve_family(c.p, 3.0 * test::sym_matrix(rng, np, 1));
      CHECK(is_hermitian(f.solution));
      CHECK(std::abs(f.residual - base.residual) < 1e-10);
      CHECK(base.packed.norm() <= f.packed.norm() + 1e-12);
    }
  }
}

TEST_CASE("consistency decisions") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto c = test::consistent_problem(rng, 3, 2, 2);
    CHECK(check_consistency(c.p));
    const DesignSystem ds = assemble_design(c.p);
    const RbmeProblem bad = perturbed(c.p, left_null_direction(ds.coeff));
    CHECK_FALSE(check_consistency(bad));
    CHECK_FALSE(solve_min_norm(bad).consistent);
  }
  RbmeProblem zero_rhs = test::consistent_problem(rng, 2, 2, 2).p;
  zero_rhs.e = RbqMatrix(2, 2);
  zero_rhs.f = RbqMatrix(2, 2);
  CHECK(check_consistency(zero_rhs));
  CHECK(frobenius(solve_min_norm(zero_rhs).solution) == 0.0);
}

TEST_CASE("uniqueness decisions") {
  Rng rng(9);
  CHECK(check_uniqueness(test::consistent_problem(rng, 2, 2, 1).p));
  RbmeProblem z{RbqMatrix(2, 2), RbqMatrix(2, 2), RbqMatrix(2, 2), RbqMatrix(2, 2), RbqMatrix(2, 2),
                RbqMatrix(2, 2)};
  CHECK_FALSE(check_uniqueness(z));
  CHECK(solve_min_norm(z).rank == 0);

  // drop the smallest singular direction of a full-rank n = 2 design
  DesignSystem ds = assemble_design(test::consistent_problem(rng, 2, 2, 2).p);
  REQUIRE(check_uniqueness(ds));
  Eigen::JacobiSVD<Matrix> svd(ds.coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector sv = svd.singularValues();
  sv(sv.size() - 1) = 0.0;
  ds.coeff = svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
  CHECK_FALSE(check_uniqueness(ds));
}

TEST_CASE("complex specialization") {
  Rng rng(10);
  SECTION("identity operators") {
    const ComplexMatrix x = test::rand_complex_hermitian(rng, 3);
    const ComplexMatrix i = ComplexMatrix::identity(3);
    const ComplexProblem p{i, i, i, i, x, x};
    const ComplexSolveReport r = solve_complex_min_norm(p);
    CHECK(frobenius(r.solution - x) < 1e-12);
    CHECK(check_complex_consistency(p));
    CHECK(check_complex_uniqueness(p));
  }
  SECTION("constructed-consistent n = 4") {
    const Eigen::Index m = 4, n = 4, s = 3;
    const ComplexMatrix a = test::rand_complex(rng, m, n), b = test::rand_complex(rng, n, s);
    const ComplexMatrix c = test::rand_complex(rng, m, n), d = test::rand_complex(rng, n, s);
    const ComplexMatrix x = test::rand_complex_hermitian(rng, n);
    const ComplexProblem p{a, b, c, d, a * x * b, c * x * d};
    const DesignSystem ds = assemble_complex_design(p);
    CHECK(ds.coeff.rows() == 4 * m * s);
    CHECK(ds.coeff.cols() == n * n);
    const ComplexSolveReport r = solve_complex_min_norm(p);
    CHECK(frobenius(r.solution - x) < 1e-9);
    CHECK(is_hermitian(r.solution));
    CHECK(r.consistent);
    CHECK(r.rank == n * n);

    // left-null perturbation of the stacked right-hand side
    const Vector dir = left_null_direction(ds.coeff);
    const Eigen::Index blk = 2 * m * s;
    auto unpack = [&](Eigen::Index off) {
      const Matrix row = unvec(dir.segment(off, blk), m, 2 * s);
      return ComplexMatrix(row.leftCols(s), -row.rightCols(s));
    };
    ComplexProblem bad = p;
    bad.e = bad.e + unpack(0);
    bad.f = bad.f + unpack(blk);
    CHECK_FALSE(check_complex_consistency(bad));
  }
  SECTION("zero operators") {
    const ComplexMatrix z = ComplexMatrix::zero(2, 2);
    const ComplexProblem p{z, z, z, z, z, z};
    CHECK(check_complex_consistency(p));
    CHECK_FALSE(check_complex_uniqueness(p));
  }
  SECTION("family residuals") {
    const ComplexMatrix a = test::rand_complex(rng, 1, 3), b = test::rand_complex(rng, 3, 1);
    const ComplexMatrix e = test::rand_complex(rng, 1, 1);
    const ComplexProblem p{a, b, a, b, e, e};
    const ComplexSolveReport base = solve_complex_min_norm(p);
    for (int t = 0; t < 10; ++t) {
      const ComplexSolveReport f = solve_complex_family(p, test::sym_matrix(rng, 9, 1));
      CHECK(std::abs(f.residual - base.residual) < 1e-10);
      CHECK(base.packed.norm() <= f.packed.norm() + 1e-12);
      CHECK(is_hermitian(f.solution));
    }
  }
}
