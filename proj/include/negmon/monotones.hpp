#pragma once

#include "negmon/linalg.hpp"
#include "negmon/states.hpp"

namespace negmon {

/// Spectral split h = positive − negative with both parts PSD and mutually
/// orthogonal; |h| = positive + negative.
struct PosNegParts {
  ComplexMatrix positive;
  ComplexMatrix negative;
};

/// Eigenvalues within ±cutoff of zero are assigned to neither part, where
/// cutoff = tol * max(1, ‖h‖_max).
PosNegParts pos_neg_parts(const ComplexMatrix& h, double tol = kEigenTol);

/// |h| = positive + negative.
ComplexMatrix abs_hermitian(const ComplexMatrix& h, double tol = kEigenTol);

/// N(ρ) = (‖ρ^Γ‖₁ − 1)/2. Values within tol of 0 from floating-point noise
/// are clamped to 0; the _raw variants skip the clamp for slack diagnostics.
double negativity(const DensityMatrix& rho, double tol = kStateTol);
double negativity_raw(const DensityMatrix& rho);

/// LN(ρ) = log₂ ‖ρ^Γ‖₁.
double log_negativity(const DensityMatrix& rho, double tol = kStateTol);
double log_negativity_raw(const DensityMatrix& rho);

/// Peres-Horodecki test: min eigenvalue of ρ^Γ ≥ −tol.
bool is_ppt(const DensityMatrix& rho, double tol = 1e-9);

}  // namespace negmon
