#pragma once

// Data-parallel inner loops used by design assembly and norm evaluation.
//
// Every kernel has a scalar reference implementation; vector variants (AVX2+FMA
// on x86-64, NEON on aarch64) are selected once at startup from the CPU
// features. Setting RBQ_SIMD=scalar in the environment forces the reference
// path.

#include <cstddef>
#include <span>
#include <string_view>

namespace rbq::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// y += alpha * x
using AxpyFn = void (*)(double alpha, const double* x, double* y, std::size_t n);
/// sum x[i] * y[i]
using DotFn = double (*)(const double* x, const double* y, std::size_t n);
/// sum x[i]^2
using SumSquaresFn = double (*)(const double* x, std::size_t n);
/// sum (x[i] - y[i])^2
using SquaredDistanceFn = double (*)(const double* x, const double* y, std::size_t n);

struct KernelTable {
  Isa isa;
  AxpyFn axpy;
  DotFn dot;
  SumSquaresFn sum_squares;
  SquaredDistanceFn squared_distance;
};

const KernelTable& scalar_kernels();
/// Table for `isa`, or nullptr when that variant is not compiled in or the
/// CPU lacks the instructions.
const KernelTable* kernels_for(Isa isa);
/// Table selected for this process.
const KernelTable& active();

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}
inline double squared_distance(std::span<const double> x, std::span<const double> y) {
  return active().squared_distance(x.data(), y.data(), x.size());
}

} // namespace rbq::simd
