#pragma once

// Counter-based, splittable generator for reproducible benchmark instances.
//
// Output i of stream key K is splitmix64_mix(K + (i + 1) * golden), so any
// draw can be recomputed from (key, counter) alone. split() derives an
// independent key by mixing the parent key with a stream id; std engines are
// avoided because std::normal_distribution is not portable across libraries.

#include <cstdint>

#include "rbq/rbq_core.hpp"

namespace rbq {

std::uint64_t splitmix64_mix(std::uint64_t z);

class Rng {
public:
  explicit Rng(std::uint64_t seed);

  /// Independent child generator; the parent's counter is untouched.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, one value per call).
  double normal();

  Matrix uniform_matrix(Eigen::Index rows, Eigen::Index cols);
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

private:
  Rng(std::uint64_t key, bool);
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace rbq
