#include "rbq/bench.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "rbq/cr_solver.hpp"
#include "rbq/io.hpp"

namespace rbq::bench {

void BenchConfig::validate() const {
  if (k_range.empty()) throw InputError("bench: k range is empty");
  for (int k : k_range) {
    if (k < 1) throw InputError("bench: k must be >= 1, got " + std::to_string(k));
  }
  if (repeats < 1) throw InputError("bench: repeats must be >= 1");
  if (methods.empty()) throw InputError("bench: no methods selected");
}

namespace {

Matrix skew(const Matrix& s) { return s - s.transpose(); }

RbqMatrix weighted(Rng& rng, Eigen::Index rows, Eigen::Index cols, const std::array<double, 4>& w) {
  RbqMatrix out(rows, cols);
  for (std::size_t t = 0; t < 4; ++t) out.comp(t) = w[t] * rng.uniform_matrix(rows, cols);
  return out;
}

Matrix toeplitz_1n(Eigen::Index n) {
  Matrix t(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) t(r, c) = static_cast<double>(std::abs(r - c) + 1);
  return t;
}

Matrix stacked_identity(Eigen::Index rows, Eigen::Index n) {
  Matrix m = Matrix::Zero(rows, n);
  m.topRows(n).setIdentity();
  return m;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

BenchRecord record_for(int k, const Instance& inst, const SolveReport& r) {
  BenchRecord rec;
  rec.k = k;
  rec.m = inst.problem.m();
  rec.n = inst.problem.n();
  rec.s = inst.problem.s();
  rec.method = r.method;
  rec.log10_error = std::log10(solution_gap(inst.x_true, r.solution));
  rec.elapsed_ms = r.elapsed.count();
  rec.residual = r.residual;
  return rec;
}

constexpr std::uint64_t kAccuracyStream = 1;
constexpr std::uint64_t kCompareStream = 2;

} // namespace

Instance accuracy_instance(int k, Rng& rng, bool identity) {
  const Eigen::Index n = 2 * k, m = n, s = identity ? n : k;
  Instance inst;
  RbmeProblem& p = inst.problem;
  if (identity) {
    p.a = p.b = p.c = p.d = RbqMatrix::identity(n);
  } else {
    p.a = weighted(rng, m, n, {10, 1, 1, 1});
    p.b = weighted(rng, n, s, {1, 1, 1, 1});
    p.c = weighted(rng, m, n, {1, 10, 4, 1});
    p.d = weighted(rng, n, s, {1, 2, 1, 1});
  }
  const Matrix s01 = rng.uniform_matrix(n, n); // S0 = S1
  const Matrix s2 = 5.0 * rng.uniform_matrix(n, n);
  const Matrix s3 = 2.0 * rng.uniform_matrix(n, n);
  inst.x_true = RbqMatrix(s01 + s01.transpose(), skew(s01), skew(s2), skew(s3));
  p.e = p.a * inst.x_true * p.b;
  p.f = p.c * inst.x_true * p.d;
  return inst;
}

Instance compare_instance(int k, Rng& rng) {
  const Eigen::Index n = 2 * k, m = n + 16, s = n + 6;
  Instance inst;
  RbmeProblem& p = inst.problem;
  p.a = RbqMatrix::scaled(stacked_identity(m, n), RbqScalar::i());
  Matrix b = Matrix::Zero(n, s);
  b.leftCols(n) = -Matrix::Identity(n, n);
  p.b = RbqMatrix::scaled(b, RbqScalar::k());
  p.c = RbqMatrix::scaled(stacked_identity(m, n), RbqScalar::j());
  p.d = RbqMatrix::scaled(Matrix::Ones(n, s), RbqScalar::j());

  Matrix x1 = Matrix::Zero(n, n);
  x1.topRightCorner(k, k).setIdentity();
  x1.bottomLeftCorner(k, k) = -Matrix::Identity(k, k);
  const Matrix s2 = rng.normal_matrix(n, n);
  const Matrix s3 = rng.normal_matrix(n, n);
  inst.x_true = RbqMatrix(toeplitz_1n(n), x1, skew(s2), skew(s3));
  p.e = p.a * inst.x_true * p.b;
  p.f = p.c * inst.x_true * p.d;
  return inst;
}

SolveReport timed_solve(const RbmeProblem& p, Method method, int repeats, const SolveOptions& opts) {
  std::vector<double> times;
  SolveReport last;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    last = method == Method::RR ? solve_min_norm(p, opts) : cr_solve_hermitian(p, std::nullopt, opts);
    times.push_back(last.elapsed.count());
  }
  last.elapsed = std::chrono::duration<double, std::milli>(median(times));
  return last;
}

double solution_gap(const RbqMatrix& a, const RbqMatrix& b) { return frobenius(a - b); }

std::vector<BenchRecord> run_protocol_accuracy(const BenchConfig& cfg) {
  cfg.validate();
  const Rng base = Rng(cfg.seed).split(kAccuracyStream);
  std::vector<BenchRecord> out;
  for (int k : cfg.k_range) {
    Rng rng = base.split(static_cast<std::uint64_t>(k));
    const Instance inst = accuracy_instance(k, rng, cfg.identity);
    for (Method method : cfg.methods) {
      out.push_back(record_for(k, inst, timed_solve(inst.problem, method, cfg.repeats,
                                                    cfg.solve_options())));
    }
  }
  return out;
}

std::vector<BenchRecord> run_protocol_compare(const BenchConfig& cfg) {
  cfg.validate();
  const Rng base = Rng(cfg.seed).split(kCompareStream);
  std::vector<BenchRecord> out;
  for (int k : cfg.k_range) {
    Rng rng = base.split(static_cast<std::uint64_t>(k));
    const Instance inst = compare_instance(k, rng);
    for (Method method : {Method::RR, Method::CR}) {
      out.push_back(record_for(k, inst, timed_solve(inst.problem, method, cfg.repeats,
                                                    cfg.solve_options())));
    }
  }
  return out;
}

// --- CSV -----------------------------------------------------------------------

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  char buf[256];
  for (const BenchRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%d,%ld,%ld,%ld,%s,%.17g,%.17g,%.17g\n", r.k,
                  static_cast<long>(r.m), static_cast<long>(r.n), static_cast<long>(r.s),
                  std::string(method_name(r.method)).c_str(), r.log10_error, r.elapsed_ms,
                  r.residual);
    out << buf;
  }
}

std::vector<BenchRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw InputError("csv:1: expected header \"" + std::string(kCsvHeader) + "\"");
  }
  std::vector<BenchRecord> out;
  for (int lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    const std::string where = "csv:" + std::to_string(lineno);
    if (f.size() != 8) {
      throw InputError(where + ": expected 8 fields, got " + std::to_string(f.size()));
    }
    BenchRecord r;
    try {
      r.k = std::stoi(f[0]);
      r.m = std::stol(f[1]);
      r.n = std::stol(f[2]);
      r.s = std::stol(f[3]);
      r.log10_error = std::stod(f[5]);
      r.elapsed_ms = std::stod(f[6]);
      r.residual = std::stod(f[7]);
    } catch (const std::exception&) {
      throw InputError(where + ": non-numeric field");
    }
    if (f[4] == "RR") {
      r.method = Method::RR;
    } else if (f[4] == "CR") {
      r.method = Method::CR;
    } else {
      throw InputError(where + ": unknown method \"" + f[4] + "\"");
    }
    out.push_back(r);
  }
  return out;
}

// --- PDIEP goldens -------------------------------------------------------------

Eigensystem hermitian_eigen(const ComplexMatrix& m) {
  if (!is_hermitian(m)) throw InputError("hermitian_eigen: matrix is not Hermitian");
  const Eigen::Index n = m.rows();
  Eigen::MatrixXcd z(n, n);
  z.real() = m.re;
  z.imag() = m.im;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigen: no convergence");
  Eigen::MatrixXcd v = es.eigenvectors();
  for (Eigen::Index c = 0; c < n; ++c) {
    const std::complex<double> last = v(n - 1, c);
    // a vanishing last component leaves the phase as computed
    if (std::abs(last) > 0.0) v.col(c) *= std::abs(last) / last;
  }
  return {es.eigenvalues(), {v.real(), v.imag()}};
}

EigenpairData align_pairs(const Eigensystem& es, const EigenpairData& printed, double& deviation) {
  const Eigen::Index n = es.phi.rows();
  if (printed.n != n) {
    throw ShapeError("align_pairs: printed pairs have n = " + std::to_string(printed.n) +
                     ", matrix is " + std::to_string(n));
  }
  EigenpairData out;
  out.n = n;
  out.lambdas.resize(printed.k());
  out.phi = ComplexMatrix::zero(n, printed.k());
  deviation = 0.0;
  for (Eigen::Index c = 0; c < printed.k(); ++c) {
    Eigen::Index best = 0;
    (es.lambdas.array() - printed.lambdas(c)).abs().minCoeff(&best);
    double sign = 1.0;
    if (printed.phi.re(n - 1, c) < 0.0) sign = -1.0;
    out.lambdas(c) = es.lambdas(best);
    out.phi.re.col(c) = sign * es.phi.re.col(best);
    out.phi.im.col(c) = sign * es.phi.im.col(best);
    deviation = std::max({deviation, std::abs(out.lambdas(c) - printed.lambdas(c)),
                          (out.phi.re.col(c) - printed.phi.re.col(c)).cwiseAbs().maxCoeff(),
                          (out.phi.im.col(c) - printed.phi.im.col(c)).cwiseAbs().maxCoeff()});
  }
  return out;
}

EigenpairData select_pairs(const EigenpairData& all, const std::vector<int>& pairs) {
  EigenpairData out;
  out.n = all.n;
  const auto k = static_cast<Eigen::Index>(pairs.size());
  out.lambdas.resize(k);
  out.phi = ComplexMatrix::zero(all.n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const int idx = pairs[static_cast<std::size_t>(c)];
    if (idx < 1 || idx > all.k()) {
      throw InputError("select_pairs: index " + std::to_string(idx) + " outside 1.." +
                       std::to_string(all.k()));
    }
    out.lambdas(c) = all.lambdas(idx - 1);
    out.phi.re.col(c) = all.phi.re.col(idx - 1);
    out.phi.im.col(c) = all.phi.im.col(idx - 1);
  }
  return out;
}

namespace {

GoldenCase run_case(const std::string& name, const EigenpairData& all, const std::vector<int>& pairs) {
  GoldenCase gc;
  gc.name = name;
  gc.pairs = pairs;
  const EigenpairData d = select_pairs(all, pairs);
  const PdiepReport r = reconstruct(d);
  gc.residuals = r.residuals;
  gc.solvable = r.solvable;
  return gc;
}

std::string pairs_label(const std::vector<int>& pairs) {
  std::string s = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) s += (i ? "," : "") + std::to_string(pairs[i]);
  return s + "}";
}

std::vector<int> all_pairs(Eigen::Index k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i) + 1;
  return v;
}

} // namespace

GoldenSet golden_random(const std::filesystem::path& data_dir) {
  const io::Json j = io::read_json_file(data_dir / kGoldenRandom);
  const EigenpairData printed = io::eigenpairs_from_json(j.at("printed_pairs"));
  const ComplexMatrix m_hat = io::complex_matrix_from_json(j.at("reconstruction"), "reconstruction");
  GoldenSet set;
  set.name = "random5";
  const std::vector<int> idx = all_pairs(printed.k());
  set.cases.push_back(run_case("printed pairs", printed, idx));
  const EigenpairData derived = align_pairs(hermitian_eigen(m_hat), printed, set.crosscheck_deviation);
  set.cases.push_back(run_case("pairs re-derived from printed reconstruction", derived, idx));
  return set;
}

GoldenSet golden_fixed(const std::filesystem::path& data_dir) {
  const io::Json j = io::read_json_file(data_dir / kGoldenFixed);
  const EigenpairData printed = io::eigenpairs_from_json(j.at("printed_pairs"));
  const ComplexMatrix m = io::complex_matrix_from_json(j.at("matrix"), "matrix");
  GoldenSet set;
  set.name = "fixed5";
  const EigenpairData derived = align_pairs(hermitian_eigen(m), printed, set.crosscheck_deviation);
  for (const auto& c : j.at("cases")) {
    const auto pairs = c.get<std::vector<int>>();
    set.cases.push_back(run_case("pairs " + pairs_label(pairs), derived, pairs));
  }
  return set;
}

std::vector<GoldenSet> run_pdiep_goldens(const std::filesystem::path& data_dir) {
  return {golden_random(data_dir), golden_fixed(data_dir)};
}

} // namespace rbq::bench
