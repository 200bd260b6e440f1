#pragma once

// JSON formats.
//
// Matrix:     {"rows": m, "cols": n, "x0": [...], "x1": [...], "x2": [...], "x3": [...]}
//             planes are row-major flat arrays of length m*n; absent planes are zero.
//             Complex matrices use x0 (real) and x1 (imaginary) only.
// Problem:    {"A": matrix, "B": ..., "F": ...}
// Eigenpairs: {"n": n, "lambdas": [k reals], "phi_re": [n*k], "phi_im": [n*k]} (row-major)

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rbq/pdiep.hpp"
#include "rbq/rr_solver.hpp"

namespace rbq::io {

using Json = nlohmann::json;

/// Parses text, turning syntax errors into InputError with line and column.
/// `source` names the origin in messages.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// `field` is the JSON path used in error messages.
RbqMatrix rbq_matrix_from_json(const Json& j, const std::string& field);
ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& field);
Json to_json(const RbqMatrix& x);
Json to_json(const ComplexMatrix& x);

RbmeProblem problem_from_json(const Json& j);
ComplexProblem complex_problem_from_json(const Json& j);
Json to_json(const RbmeProblem& p);

EigenpairData eigenpairs_from_json(const Json& j);
Json to_json(const EigenpairData& d);

Vector vector_from_json(const Json& j, const std::string& field);
Json to_json(const Vector& v);

Json to_json(const SolveReport& r);
Json to_json(const ComplexSolveReport& r);
Json to_json(const PdiepReport& r);

} // namespace rbq::io
