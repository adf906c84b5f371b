#include "negmon/random.hpp"

#include <cmath>
#include <numbers>

namespace negmon {

double Rng::uniform() {
  // 53 random bits into [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

ComplexMatrix Rng::ginibre(std::size_t rows, std::size_t cols) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = complex_gaussian();
  }
  return g;
}

ComplexMatrix Rng::haar_isometry(std::size_t rows, std::size_t cols) {
  if (rows < cols) throw DimMismatchError("haar_isometry: need rows >= cols");
  ComplexMatrix q = ginibre(rows, cols);
  // Modified Gram-Schmidt with one reorthogonalization pass. The positive real
  // column norms fix the diagonal phase convention, so q is Haar.
  for (std::size_t j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj{0.0, 0.0};
        for (std::size_t i = 0; i < rows; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < rows; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    if (norm == 0.0) throw Error("haar_isometry: degenerate Gaussian draw");
    for (std::size_t i = 0; i < rows; ++i) q(i, j) /= norm;
  }
  return q;
}

ComplexMatrix Rng::haar_unitary(std::size_t n) { return haar_isometry(n, n); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace negmon
