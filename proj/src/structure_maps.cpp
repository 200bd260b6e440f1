#include "rbq/structure_maps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

namespace rbq {

Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw ShapeError("unvec: vector of length " + std::to_string(v.size()) +
                     " cannot fill " + shape_string(rows, cols));
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Eigen::Index sym_index(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  return j * n - j * (j - 1) / 2 + (i - j);
}

Eigen::Index asym_index(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  return j * (n - 1) - j * (j - 1) / 2 + (i - j - 1);
}

namespace {

void require_square(const Matrix& x, const char* op) {
  if (x.rows() != x.cols()) {
    throw ShapeError(std::string(op) + ": matrix is " + shape_string(x.rows(), x.cols()) +
                     ", expected square");
  }
}

} // namespace

Vector vec_s(const Matrix& x, double tol) {
  require_square(x, "vec_s");
  if ((x - x.transpose()).norm() > tol * std::max(1.0, x.norm())) {
    throw StructureError("vec_s: matrix is not symmetric");
  }
  const Eigen::Index n = x.rows();
  Vector out(packed_sym_size(n));
  Eigen::Index p = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) out(p++) = x(i, j);
  }
  return out;
}

Matrix unvec_s(const Vector& packed, Eigen::Index n) {
  if (packed.size() != packed_sym_size(n)) {
    throw ShapeError("unvec_s: expected " + std::to_string(packed_sym_size(n)) +
                     " entries for n=" + std::to_string(n) + ", got " +
                     std::to_string(packed.size()));
  }
  Matrix x(n, n);
  Eigen::Index p = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      x(i, j) = packed(p);
      x(j, i) = packed(p);
      ++p;
    }
  }
  return x;
}

Vector vec_a(const Matrix& x, double tol) {
  require_square(x, "vec_a");
  if ((x + x.transpose()).norm() > tol * std::max(1.0, x.norm())) {
    throw StructureError("vec_a: matrix is not antisymmetric");
  }
  const Eigen::Index n = x.rows();
  Vector out(packed_asym_size(n));
  Eigen::Index p = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) out(p++) = x(i, j);
  }
  return out;
}

Matrix unvec_a(const Vector& packed, Eigen::Index n) {
  if (packed.size() != packed_asym_size(n)) {
    throw ShapeError("unvec_a: expected " + std::to_string(packed_asym_size(n)) +
                     " entries for n=" + std::to_string(n) + ", got " +
                     std::to_string(packed.size()));
  }
  Matrix x = Matrix::Zero(n, n);
  Eigen::Index p = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      x(i, j) = packed(p);
      x(j, i) = -packed(p);
      ++p;
    }
  }
  return x;
}

// ---------------------------------------------------------------------------

StructureMatrix::StructureMatrix(Eigen::Index rows, Eigen::Index cols) : rows_(rows) {
  entries_.reserve(static_cast<std::size_t>(cols));
  for (Eigen::Index c = 0; c < cols; ++c) push_column({});
}

std::span<const StructureMatrix::Entry> StructureMatrix::column(Eigen::Index c) const {
  const auto b = col_start_[static_cast<std::size_t>(c)];
  const auto e = col_start_[static_cast<std::size_t>(c) + 1];
  return {entries_.data() + b, e - b};
}

void StructureMatrix::push_column(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row < b.row; });
  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= rows_) {
      throw ShapeError("StructureMatrix: row " + std::to_string(e.row) + " outside " +
                       std::to_string(rows_) + " rows");
    }
    if (e.value != 0) entries_.push_back(e);
  }
  col_start_.push_back(entries_.size());
  ++cols_;
}

Vector StructureMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) {
    throw ShapeError("StructureMatrix::apply: " + shape_string(rows_, cols_) +
                     " times vector of length " + std::to_string(x.size()));
  }
  Vector y = Vector::Zero(rows_);
  for (Eigen::Index c = 0; c < cols_; ++c) {
    const double xc = x(c);
    for (const Entry& e : column(c)) y(e.row) += e.value * xc;
  }
  return y;
}

Vector StructureMatrix::apply_transpose(const Vector& x) const {
  if (x.size() != rows_) {
    throw ShapeError("StructureMatrix::apply_transpose: " + shape_string(cols_, rows_) +
                     " times vector of length " + std::to_string(x.size()));
  }
  Vector y = Vector::Zero(cols_);
  for (Eigen::Index c = 0; c < cols_; ++c) {
    double s = 0.0;
    for (const Entry& e : column(c)) s += e.value * x(e.row);
    y(c) = s;
  }
  return y;
}

Matrix StructureMatrix::to_dense() const {
  Matrix d = Matrix::Zero(rows_, cols_);
  for (Eigen::Index c = 0; c < cols_; ++c) {
    for (const Entry& e : column(c)) d(e.row, c) = e.value;
  }
  return d;
}

StructureMatrix StructureMatrix::operator-() const {
  StructureMatrix out = *this;
  for (Entry& e : out.entries_) e.value = -e.value;
  return out;
}

bool operator==(const StructureMatrix& a, const StructureMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.col_start_ != b.col_start_) return false;
  return std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                    [](const auto& x, const auto& y) { return x.row == y.row && x.value == y.value; });
}

StructureMatrix multiply(const StructureMatrix& a, const StructureMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("StructureMatrix multiply: " + shape_string(a.rows(), a.cols()) + " by " +
                     shape_string(b.rows(), b.cols()));
  }
  StructureMatrix out(a.rows(), 0);
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    std::map<Eigen::Index, int> acc;
    for (const auto& eb : b.column(c)) {
      for (const auto& ea : a.column(eb.row)) acc[ea.row] += ea.value * eb.value;
    }
    std::vector<StructureMatrix::Entry> col;
    col.reserve(acc.size());
    for (const auto& [row, v] : acc) col.push_back({row, v});
    out.push_column(std::move(col));
  }
  return out;
}

StructureMatrix block_diag(std::span<const StructureMatrix> blocks) {
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  StructureMatrix out(rows, 0);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      std::vector<StructureMatrix::Entry> col;
      for (const auto& e : b.column(c)) col.push_back({e.row + offset, e.value});
      out.push_column(std::move(col));
    }
    offset += b.rows();
  }
  return out;
}

StructureMatrix build_k_s(Eigen::Index n) {
  StructureMatrix k(n * n, 0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      if (i == j) {
        k.push_column({{i + j * n, 1}});
      } else {
        k.push_column({{i + j * n, 1}, {j + i * n, 1}});
      }
    }
  }
  return k;
}

StructureMatrix build_k_a(Eigen::Index n) {
  StructureMatrix k(n * n, 0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) k.push_column({{i + j * n, 1}, {j + i * n, -1}});
  }
  return k;
}

namespace {

// Shared construction for J (four component blocks) and J~ (two). X^R has
// `blocks` x `blocks` blocks of size n; block (r, c) is sign * X_comp; the
// first block row stores X_t at block column t with sign row_sign[t].
template <class BlockFn>
StructureMatrix build_rep_lift(Eigen::Index n, int blocks, BlockFn block_of) {
  const Eigen::Index nn = n * n;
  const Eigen::Index side = blocks * n;
  std::vector<std::vector<StructureMatrix::Entry>> cols(static_cast<std::size_t>(blocks * nn));
  for (int r = 0; r < blocks; ++r) {
    for (int c = 0; c < blocks; ++c) {
      const RepBlock b = block_of(r, c);
      const int row_sign = block_of(0, b.comp).sign;
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          const Eigen::Index target = (r * n + i) + (c * n + j) * side;
          const Eigen::Index source = b.comp * nn + i + j * n;
          cols[static_cast<std::size_t>(source)].push_back({target, b.sign * row_sign});
        }
      }
    }
  }
  StructureMatrix out(side * side, 0);
  for (auto& col : cols) out.push_column(std::move(col));
  return out;
}

} // namespace

StructureMatrix build_j(Eigen::Index n) { return build_rep_lift(n, 4, real_rep_block); }

StructureMatrix build_j_tilde(Eigen::Index n) {
  return build_rep_lift(n, 2, [](int r, int c) -> RepBlock {
    static constexpr RepBlock kTable[2][2] = {{{0, +1}, {1, -1}}, {{1, +1}, {0, +1}}};
    return kTable[r][c];
  });
}

StructureMatrix build_q(Eigen::Index n) {
  const StructureMatrix ks = build_k_s(n), ka = build_k_a(n);
  const std::array blocks{ks, -ka, ka, -ka};
  return block_diag(blocks);
}

StructureMatrix build_r(Eigen::Index n) {
  const StructureMatrix ks = build_k_s(n), ka = build_k_a(n);
  const std::array blocks{ks, ka, ka, ka};
  return block_diag(blocks);
}

StructureMatrix build_q_tilde(Eigen::Index n) {
  const StructureMatrix ks = build_k_s(n), ka = build_k_a(n);
  const std::array blocks{ks, -ka};
  return block_diag(blocks);
}

StructureMatrix build_r_tilde(Eigen::Index n) {
  const StructureMatrix ks = build_k_s(n), ka = build_k_a(n);
  const std::array blocks{ks, ka};
  return block_diag(blocks);
}

// ---------------------------------------------------------------------------

Vector pack_hermitian(const RbqMatrix& x, double tol) {
  if (x.rows() != x.cols()) {
    throw ShapeError("pack_hermitian: matrix is " + shape_string(x.rows(), x.cols()) +
                     ", expected square");
  }
  const Eigen::Index n = x.rows();
  const Eigen::Index ns = packed_sym_size(n), na = packed_asym_size(n);
  Vector out(ns + 3 * na);
  out.head(ns) = vec_s(x.comp(0), tol);
  for (std::size_t t = 1; t < 4; ++t) {
    out.segment(ns + static_cast<Eigen::Index>(t - 1) * na, na) = vec_a(x.comp(t), tol);
  }
  return out;
}

RbqMatrix unpack_hermitian(const Vector& packed, Eigen::Index n) {
  if (packed.size() != hermitian_rbq_params(n)) {
    throw ShapeError("unpack_hermitian: expected " + std::to_string(hermitian_rbq_params(n)) +
                     " parameters for n=" + std::to_string(n) + ", got " +
                     std::to_string(packed.size()));
  }
  const Vector full = build_r(n).apply(packed);
  const Eigen::Index nn = n * n;
  return {unvec(full.segment(0, nn), n, n), unvec(full.segment(nn, nn), n, n),
          unvec(full.segment(2 * nn, nn), n, n), unvec(full.segment(3 * nn, nn), n, n)};
}

Vector pack_hermitian(const ComplexMatrix& x, double tol) {
  if (x.rows() != x.cols()) {
    throw ShapeError("pack_hermitian: matrix is " + shape_string(x.rows(), x.cols()) +
                     ", expected square");
  }
  const Eigen::Index n = x.rows();
  Vector out(n * n);
  out.head(packed_sym_size(n)) = vec_s(x.re, tol);
  out.tail(packed_asym_size(n)) = vec_a(x.im, tol);
  return out;
}

ComplexMatrix unpack_hermitian_complex(const Vector& packed, Eigen::Index n) {
  if (packed.size() != hermitian_complex_params(n)) {
    throw ShapeError("unpack_hermitian_complex: expected " +
                     std::to_string(hermitian_complex_params(n)) + " parameters for n=" +
                     std::to_string(n) + ", got " + std::to_string(packed.size()));
  }
  const Vector full = build_r_tilde(n).apply(packed);
  const Eigen::Index nn = n * n;
  return {unvec(full.segment(0, nn), n, n), unvec(full.segment(nn, nn), n, n)};
}

} // namespace rbq
