// rbqls: least-squares Hermitian solutions of (AXB, CXD) = (E, F) over reduced
// biquaternions or complex numbers, PDIEP reconstruction and benchmarks.
//
// Exit status: 0 success, 1 solver (numerical) failure, 2 bad input.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rbq/bench.hpp"
#include "rbq/cr_solver.hpp"
#include "rbq/io.hpp"
#include "rbq/simd/kernels.hpp"

namespace {

using rbq::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitInput = 2;

struct ProblemArgs {
  std::string problem;
  std::array<std::string, 6> parts; // A..F
  std::string method = "rr";
  std::string field = "rbq";
  std::string y_file;
  std::optional<std::uint64_t> y_seed;
  std::optional<double> tol;
  std::string out;
};

void add_problem_options(CLI::App* cmd, ProblemArgs& a) {
  cmd->add_option("--problem", a.problem, "JSON file with matrices A..F");
  static constexpr std::array<const char*, 6> names{"A", "B", "C", "D", "E", "F"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    cmd->add_option(std::string("--") + names[i], a.parts[i],
                    std::string("matrix file for ") + names[i] + " (instead of --problem)");
  }
  cmd->add_option("--method", a.method, "rr or cr")->check(CLI::IsMember({"rr", "cr"}));
  cmd->add_option("--field", a.field, "rbq or complex")->check(CLI::IsMember({"rbq", "complex"}));
  cmd->add_option("--tol", a.tol, "singular-value threshold for rank decisions");
  cmd->add_option("--out", a.out, "write JSON here instead of stdout");
}

Json load_problem_json(const ProblemArgs& a) {
  if (!a.problem.empty()) return rbq::io::read_json_file(a.problem);
  static constexpr std::array<const char*, 6> names{"A", "B", "C", "D", "E", "F"};
  Json j;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (a.parts[i].empty()) {
      throw rbq::InputError(std::string("no --problem given and --") + names[i] + " is missing");
    }
    j[names[i]] = rbq::io::read_json_file(a.parts[i]);
  }
  return j;
}

std::optional<rbq::Vector> load_y(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return rbq::io::vector_from_json(rbq::io::read_json_file(path), path);
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    rbq::io::write_text_file(out, text);
  }
}

rbq::SolveOptions options(const ProblemArgs& a) {
  rbq::SolveOptions o;
  o.rank_tol = a.tol;
  return o;
}

/// Free vector from --y-file, or uniform in [-1, 1) from --y-seed.
std::optional<rbq::Vector> family_vector(const ProblemArgs& a, Eigen::Index params) {
  if (!a.y_seed) return load_y(a.y_file);
  if (!a.y_file.empty()) throw rbq::InputError("--y-file and --y-seed are exclusive");
  rbq::Rng rng(*a.y_seed);
  return rbq::Vector(2.0 * rng.uniform_matrix(params, 1).array() - 1.0);
}

Json solve_rbq(const ProblemArgs& a) {
  const Json pj = load_problem_json(a);
  const rbq::SolveOptions opts = options(a);
  if (a.field == "complex") {
    if (a.method == "cr") throw rbq::InputError("--method cr applies to --field rbq only");
    const rbq::ComplexProblem p = rbq::io::complex_problem_from_json(pj);
    const auto y = family_vector(a, rbq::hermitian_complex_params(p.n()));
    return rbq::io::to_json(y ? rbq::solve_complex_family(p, *y, opts)
                              : rbq::solve_complex_min_norm(p, opts));
  }
  const rbq::RbmeProblem p = rbq::io::problem_from_json(pj);
  const auto y = family_vector(a, rbq::hermitian_rbq_params(p.n()));
  if (a.method == "cr") return rbq::io::to_json(rbq::cr_solve_hermitian(p, y, opts));
  return rbq::io::to_json(y ? rbq::solve_family(p, *y, opts) : rbq::solve_min_norm(p, opts));
}

Json check(const ProblemArgs& a) {
  Json full = solve_rbq(a);
  Json j;
  for (const char* key : {"consistent", "unique", "rank", "residual", "method"}) j[key] = full[key];
  return j;
}

std::vector<int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  auto to_int = [&](std::string_view s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw rbq::InputError("--k-range: cannot parse \"" + text + "\" (expected a..b or a)");
    }
    return v;
  };
  const std::string_view sv(text);
  const int lo = to_int(dots == std::string::npos ? sv : sv.substr(0, dots));
  const int hi = dots == std::string::npos ? lo : to_int(sv.substr(dots + 2));
  if (hi < lo) throw rbq::InputError("--k-range: empty range \"" + text + "\"");
  std::vector<int> out;
  for (int k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

struct BenchArgs {
  std::string protocol = "accuracy";
  std::string k_range;
  std::uint64_t seed = 1;
  int repeats = 1;
  std::string csv;
  bool identity = false;
  std::string methods = "rr";
  std::optional<double> tol;
  std::string data_dir = "tests/data";
};

void print_records(const std::vector<rbq::bench::BenchRecord>& recs) {
  for (const auto& r : recs) {
    std::printf("k=%-3d m=%-4ld n=%-4ld s=%-4ld %s  log10_err=%8.3f  time=%10.3f ms  residual=%.3e\n",
                r.k, static_cast<long>(r.m), static_cast<long>(r.n), static_cast<long>(r.s),
                std::string(rbq::method_name(r.method)).c_str(), r.log10_error, r.elapsed_ms,
                r.residual);
  }
}

void bench(const BenchArgs& a) {
  if (a.protocol == "pdiep") {
    for (const auto& set : rbq::bench::run_pdiep_goldens(a.data_dir)) {
      std::printf("%s: eigenpair cross-check deviation %.3e\n", set.name.c_str(),
                  set.crosscheck_deviation);
      for (const auto& c : set.cases) {
        std::printf("  %-48s solvable=%d residuals:", c.name.c_str(), c.solvable ? 1 : 0);
        for (Eigen::Index i = 0; i < c.residuals.size(); ++i) std::printf(" %.4e", c.residuals(i));
        std::printf("\n");
      }
    }
    return;
  }
  rbq::bench::BenchConfig cfg;
  cfg.seed = a.seed;
  cfg.repeats = a.repeats;
  cfg.identity = a.identity;
  cfg.rank_tol = a.tol;
  const bool compare = a.protocol == "compare";
  cfg.k_range = parse_k_range(a.k_range.empty() ? (compare ? "1..8" : "1..6") : a.k_range);
  cfg.methods.clear();
  if (a.methods == "rr" || a.methods == "both") cfg.methods.push_back(rbq::Method::RR);
  if (a.methods == "cr" || a.methods == "both") cfg.methods.push_back(rbq::Method::CR);
  const auto recs = compare ? rbq::bench::run_protocol_compare(cfg)
                            : rbq::bench::run_protocol_accuracy(cfg);
  print_records(recs);
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) throw rbq::InputError("cannot write " + a.csv);
    rbq::bench::write_csv(out, recs);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-squares Hermitian solutions of reduced biquaternion matrix equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("rbqls 0.1 (kernels: ") +
                                        std::string(rbq::simd::isa_name(rbq::simd::active().isa)) +
                                        ")");

  ProblemArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "minimum-norm (or --y-file family) Hermitian solution");
  add_problem_options(solve, solve_args);
  solve->add_option("--y-file", solve_args.y_file, "JSON array: free vector of the solution family");
  solve->add_option("--y-seed", solve_args.y_seed, "random free vector, uniform in [-1, 1)");

  ProblemArgs check_args;
  CLI::App* chk = app.add_subcommand("check", "consistency and uniqueness report");
  add_problem_options(chk, check_args);

  std::string eig_file, eig_y, eig_out;
  CLI::App* pdiep = app.add_subcommand("pdiep", "Hermitian matrix from prescribed eigenpairs");
  pdiep->add_option("--eigenpairs", eig_file, "eigenpair JSON file")->required();
  pdiep->add_option("--y-file", eig_y, "JSON array of length n^2");
  pdiep->add_option("--out", eig_out, "write JSON here instead of stdout");

  BenchArgs bench_args;
  CLI::App* bn = app.add_subcommand("bench", "benchmark protocols");
  bn->add_option("--protocol", bench_args.protocol, "accuracy, compare or pdiep")
      ->check(CLI::IsMember({"accuracy", "compare", "pdiep"}));
  bn->add_option("--k-range", bench_args.k_range, "a..b (default 1..6 accuracy, 1..8 compare)");
  bn->add_option("--seed", bench_args.seed, "64-bit seed");
  bn->add_option("--repeats", bench_args.repeats, "timing repeats (median reported)")
      ->check(CLI::PositiveNumber);
  bn->add_option("--csv", bench_args.csv, "write records as CSV");
  bn->add_flag("--identity", bench_args.identity, "accuracy protocol with A = B = C = D = I");
  bn->add_option("--methods", bench_args.methods, "accuracy protocol: rr, cr or both")
      ->check(CLI::IsMember({"rr", "cr", "both"}));
  bn->add_option("--tol", bench_args.tol, "singular-value threshold for rank decisions");
  bn->add_option("--data-dir", bench_args.data_dir, "directory with the PDIEP golden files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) {
      emit(solve_rbq(solve_args), solve_args.out);
    } else if (*chk) {
      emit(check(check_args), check_args.out);
    } else if (*pdiep) {
      const rbq::EigenpairData d = rbq::io::eigenpairs_from_json(rbq::io::read_json_file(eig_file));
      emit(rbq::io::to_json(rbq::reconstruct(d, load_y(eig_y))), eig_out);
    } else if (*bn) {
      bench(bench_args);
    }
  } catch (const rbq::NumericalError& e) {
    std::cerr << "rbqls: " << e.what() << "\n";
    return kExitSolver;
  } catch (const rbq::Error& e) {
    std::cerr << "rbqls: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "rbqls: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
