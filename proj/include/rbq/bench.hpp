#pragma once

// Benchmark harness: error-vs-dimension runs, RR-vs-CR accuracy and timing,
// and the PDIEP golden reconstructions.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rbq/pdiep.hpp"
#include "rbq/rng.hpp"
#include "rbq/rr_solver.hpp"

namespace rbq::bench {

struct BenchConfig {
  std::vector<int> k_range{1, 2, 3, 4, 5, 6};
  std::uint64_t seed = 1;
  int repeats = 1;
  std::optional<double> rank_tol;
  double consistency_tol = kConsistencyTol;
  std::vector<Method> methods{Method::RR};
  /// Accuracy protocol only: A = B = C = D = I with s = n.
  bool identity = false;

  /// Throws InputError on an empty k range, k < 1 or repeats < 1.
  void validate() const;
  SolveOptions solve_options() const { return {rank_tol, consistency_tol}; }
};

struct BenchRecord {
  int k = 0;
  Eigen::Index m = 0, n = 0, s = 0;
  Method method = Method::RR;
  double log10_error = 0.0; ///< log10 ||X_true - X||_F
  double elapsed_ms = 0.0;  ///< median over repeats
  double residual = 0.0;
  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// A generated problem with its known Hermitian solution.
struct Instance {
  RbmeProblem problem;
  RbqMatrix x_true;
};

/// m = n = 2k, s = k with the scaled uniform recipe (identity operators and
/// s = n when `identity`).
Instance accuracy_instance(int k, Rng& rng, bool identity = false);
/// n = 2k, m = n + 16, s = n + 6 with the structured operators and a
/// Toeplitz real part.
Instance compare_instance(int k, Rng& rng);

/// Solves p with `method` `repeats` times; returns the last report with the
/// median elapsed time.
SolveReport timed_solve(const RbmeProblem& p, Method method, int repeats, const SolveOptions& opts);

std::vector<BenchRecord> run_protocol_accuracy(const BenchConfig& cfg);
/// Always runs both methods; records are ordered (k, RR), (k, CR), ...
std::vector<BenchRecord> run_protocol_compare(const BenchConfig& cfg);

/// Frobenius distance between two solutions, used for the RR/CR agreement check.
double solution_gap(const RbqMatrix& a, const RbqMatrix& b);

// --- CSV ---------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "k,m,n,s,method,log10_error,elapsed_ms,residual";
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// Throws InputError with the line number on malformed input.
std::vector<BenchRecord> parse_csv(std::istream& in);

// --- PDIEP goldens -------------------------------------------------------------

struct GoldenCase {
  std::string name;
  std::vector<int> pairs; ///< 1-based eigenpair indices
  Vector residuals;
  bool solvable = false;
};

struct GoldenSet {
  std::string name;
  /// Max componentwise deviation between re-derived and printed eigenpairs
  /// (eigenvalues and eigenvector real/imaginary parts).
  double crosscheck_deviation = 0.0;
  std::vector<GoldenCase> cases;
};

/// Printed eigenpairs plus the printed (rounded) reconstruction of a random
/// 5 x 5 Hermitian matrix.
inline constexpr const char* kGoldenRandom = "pdiep_random5.json";
/// Printed 5 x 5 Hermitian matrix plus its printed spectrum.
inline constexpr const char* kGoldenFixed = "pdiep_fixed5.json";

struct Eigensystem {
  Vector lambdas;    ///< ascending
  ComplexMatrix phi; ///< unit columns, last component real and non-negative
};

Eigensystem hermitian_eigen(const ComplexMatrix& m);

/// For each printed pair, the re-derived pair with the nearest eigenvalue,
/// its eigenvector sign flipped to agree with the printed one. `deviation`
/// receives the max componentwise gap to the printed values.
EigenpairData align_pairs(const Eigensystem& es, const EigenpairData& printed, double& deviation);

/// Columns `pairs` (1-based) as PDIEP input.
EigenpairData select_pairs(const EigenpairData& all, const std::vector<int>& pairs);

/// Random-matrix set: the literal printed pairs, then the pairs re-derived
/// from the printed reconstruction.
GoldenSet golden_random(const std::filesystem::path& data_dir);
/// Fixed-matrix set: re-derived pairs, subsets given in the golden file.
GoldenSet golden_fixed(const std::filesystem::path& data_dir);
std::vector<GoldenSet> run_pdiep_goldens(const std::filesystem::path& data_dir);

} // namespace rbq::bench
