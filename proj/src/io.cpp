#include "rbq/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rbq::io {

namespace {

/// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const Json& require(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw InputError(field + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(field + ": missing field \"" + key + "\"");
  return *it;
}

Eigen::Index require_dim(const Json& j, const char* key, const std::string& field) {
  const Json& v = require(j, key, field);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(field + "." + key + ": expected a non-negative integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

double number_at(const Json& arr, std::size_t i, const std::string& field) {
  const Json& v = arr[i];
  if (!v.is_number()) {
    throw InputError(field + "[" + std::to_string(i) + "]: expected a number, got " +
                     std::string(v.type_name()));
  }
  return v.get<double>();
}

/// Row-major flat array -> rows x cols plane. Missing key gives zeros.
Matrix plane(const Json& j, const char* key, Eigen::Index rows, Eigen::Index cols,
             const std::string& field) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return Matrix::Zero(rows, cols);
  const std::string path = field + "." + key;
  if (!it->is_array()) throw InputError(path + ": expected an array");
  const auto expected = static_cast<std::size_t>(rows * cols);
  if (it->size() != expected) {
    throw InputError(path + ": expected " + std::to_string(expected) + " entries for " +
                     shape_string(rows, cols) + ", got " + std::to_string(it->size()));
  }
  Matrix out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = number_at(*it, static_cast<std::size_t>(r * cols + c), path);
    }
  }
  return out;
}

Json plane_json(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  }
  return arr;
}

template <class Report>
Json report_json(const Report& r) {
  Json j;
  j["solution"] = to_json(r.solution);
  j["residual"] = r.residual;
  j["consistent"] = r.consistent;
  j["unique"] = r.unique;
  j["rank"] = r.rank;
  j["elapsed_ms"] = r.elapsed.count();
  j["method"] = std::string(method_name(r.method));
  return j;
}

constexpr std::array<const char*, 6> kProblemKeys{"A", "B", "C", "D", "E", "F"};

} // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

RbqMatrix rbq_matrix_from_json(const Json& j, const std::string& field) {
  const Eigen::Index rows = require_dim(j, "rows", field);
  const Eigen::Index cols = require_dim(j, "cols", field);
  return RbqMatrix(plane(j, "x0", rows, cols, field), plane(j, "x1", rows, cols, field),
                   plane(j, "x2", rows, cols, field), plane(j, "x3", rows, cols, field));
}

ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& field) {
  const RbqMatrix x = rbq_matrix_from_json(j, field);
  if (!x.comp(2).isZero(0.0) || !x.comp(3).isZero(0.0)) {
    throw InputError(field + ": complex matrix has nonzero x2/x3 planes");
  }
  return {x.comp(0), x.comp(1)};
}

Json to_json(const RbqMatrix& x) {
  Json j;
  j["rows"] = x.rows();
  j["cols"] = x.cols();
  for (std::size_t t = 0; t < 4; ++t) j["x" + std::to_string(t)] = plane_json(x.comp(t));
  return j;
}

Json to_json(const ComplexMatrix& x) {
  Json j;
  j["rows"] = x.rows();
  j["cols"] = x.cols();
  j["x0"] = plane_json(x.re);
  j["x1"] = plane_json(x.im);
  return j;
}

RbmeProblem problem_from_json(const Json& j) {
  std::array<RbqMatrix, 6> m;
  for (std::size_t i = 0; i < kProblemKeys.size(); ++i) {
    m[i] = rbq_matrix_from_json(require(j, kProblemKeys[i], "problem"), kProblemKeys[i]);
  }
  RbmeProblem p{m[0], m[1], m[2], m[3], m[4], m[5]};
  p.validate();
  return p;
}

ComplexProblem complex_problem_from_json(const Json& j) {
  std::array<ComplexMatrix, 6> m;
  for (std::size_t i = 0; i < kProblemKeys.size(); ++i) {
    m[i] = complex_matrix_from_json(require(j, kProblemKeys[i], "problem"), kProblemKeys[i]);
  }
  ComplexProblem p{m[0], m[1], m[2], m[3], m[4], m[5]};
  p.validate();
  return p;
}

Json to_json(const RbmeProblem& p) {
  const std::array<const RbqMatrix*, 6> m{&p.a, &p.b, &p.c, &p.d, &p.e, &p.f};
  Json j;
  for (std::size_t i = 0; i < m.size(); ++i) j[kProblemKeys[i]] = to_json(*m[i]);
  return j;
}

EigenpairData eigenpairs_from_json(const Json& j) {
  EigenpairData d;
  d.n = require_dim(j, "n", "eigenpairs");
  const Json& lam = require(j, "lambdas", "eigenpairs");
  if (!lam.is_array()) throw InputError("eigenpairs.lambdas: expected an array of reals");
  d.lambdas.resize(static_cast<Eigen::Index>(lam.size()));
  for (std::size_t i = 0; i < lam.size(); ++i) {
    d.lambdas(static_cast<Eigen::Index>(i)) = number_at(lam, i, "eigenpairs.lambdas");
  }
  require(j, "phi_re", "eigenpairs");
  d.phi = {plane(j, "phi_re", d.n, d.k(), "eigenpairs"),
           plane(j, "phi_im", d.n, d.k(), "eigenpairs")};
  d.validate();
  return d;
}

Json to_json(const EigenpairData& d) {
  Json j;
  j["n"] = d.n;
  j["lambdas"] = to_json(d.lambdas);
  j["phi_re"] = plane_json(d.phi.re);
  j["phi_im"] = plane_json(d.phi.im);
  return j;
}

Vector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of reals");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number_at(j, i, field);
  return v;
}

Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json to_json(const SolveReport& r) { return report_json(r); }
Json to_json(const ComplexSolveReport& r) { return report_json(r); }

Json to_json(const PdiepReport& r) {
  Json j;
  j["matrix"] = to_json(r.matrix);
  j["residuals"] = to_json(r.residuals);
  j["solvable"] = r.solvable;
  j["rank"] = r.rank;
  return j;
}

} // namespace rbq::io
