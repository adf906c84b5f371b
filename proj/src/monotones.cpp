#include "negmon/monotones.hpp"

#include <cmath>

namespace negmon {

namespace {

double clamp_noise(double value, double tol) {
  return (value < 0.0 && value >= -tol) ? 0.0 : value;
}

}  // namespace

PosNegParts pos_neg_parts(const ComplexMatrix& h, double tol) {
  const auto eig = hermitian_eigen(h, tol);
  const std::size_t n = h.rows();
  const double cutoff = tol * std::max(1.0, h.max_norm());
  PosNegParts parts{ComplexMatrix(n, n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (std::abs(lambda) <= cutoff) continue;
    ComplexMatrix& target = lambda > 0.0 ? parts.positive : parts.negative;
    const double magnitude = std::abs(lambda);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vi = eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        target(i, j) += magnitude * vi * std::conj(eig.eigenvectors(j, k));
      }
    }
  }
  return parts;
}

ComplexMatrix abs_hermitian(const ComplexMatrix& h, double tol) {
  const auto parts = pos_neg_parts(h, tol);
  return parts.positive + parts.negative;
}

double negativity_raw(const DensityMatrix& rho) {
  return 0.5 * (trace_norm_hermitian(rho.partial_transpose()) - 1.0);
}

double negativity(const DensityMatrix& rho, double tol) {
  return clamp_noise(negativity_raw(rho), tol);
}

double log_negativity_raw(const DensityMatrix& rho) {
  return std::log2(trace_norm_hermitian(rho.partial_transpose()));
}

double log_negativity(const DensityMatrix& rho, double tol) {
  return clamp_noise(log_negativity_raw(rho), tol);
}

bool is_ppt(const DensityMatrix& rho, double tol) {
  return min_eigenvalue_hermitian(rho.partial_transpose()) >= -tol;
}

}  // namespace negmon
