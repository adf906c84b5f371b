#pragma once

// Test-only oracles. These stay independent of the Jacobi eigensolver path
// they are used to check.

#include <cstddef>

#include "negmon/linalg.hpp"
#include "negmon/random.hpp"

namespace oracles {

using negmon::Complex;
using negmon::ComplexMatrix;

// Cofactor-expansion determinant; fine for the small fixed matrices in tests.
inline Complex det(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Complex sum{0.0, 0.0};
  double sign = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        minor(i - 1, jc++) = m(i, j);
      }
    }
    sum += sign * m(0, k) * det(minor);
    sign = -sign;
  }
  return sum;
}

// Characteristic polynomial evaluated at lambda.
inline Complex char_poly(const ComplexMatrix& m, double lambda) {
  ComplexMatrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
  return det(shifted);
}

inline ComplexMatrix random_hermitian(negmon::Rng& rng, std::size_t n) {
  ComplexMatrix g = rng.ginibre(n, n);
  ComplexMatrix h = dagger(g);
  h += g;
  h *= 0.5;
  return h;
}

inline ComplexMatrix random_hermitian_traceless(negmon::Rng& rng, std::size_t n) {
  ComplexMatrix h = random_hermitian(rng, n);
  const Complex shift = h.trace() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) -= shift;
  return h;
}

// The Bell projector |Φ⟩⟨Φ|, Φ = (|00⟩ + |11⟩)/√2, as explicit entries.
inline ComplexMatrix bell_projector() {
  ComplexMatrix m(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

}  // namespace oracles
