#pragma once

#include <cstdint>
#include <random>

#include "negmon/linalg.hpp"

namespace negmon {

/// Seeded random source. The engine is the standard-specified mt19937_64 and
/// the uniform/Gaussian transforms are done in-library, so a seed produces the
/// same stream on every platform (std::*_distribution would not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n);
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Re + i*Im with independent standard normal components.
  Complex complex_gaussian();

  /// Matrix of independent complex Gaussian entries.
  ComplexMatrix ginibre(std::size_t rows, std::size_t cols);
  /// Haar-distributed unitary: Gram-Schmidt orthonormalization of a Ginibre
  /// matrix with positive-real diagonal convention.
  ComplexMatrix haar_unitary(std::size_t n);
  /// Haar isometry with orthonormal columns, rows >= cols.
  ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Decorrelated per-trial seed derived from a campaign seed (SplitMix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace negmon
