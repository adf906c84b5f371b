#pragma once

#include <cstdint>
#include <vector>

#include "negmon/linalg.hpp"

namespace negmon {

/// Default tolerance for density-matrix invariants (Hermiticity, unit trace,
/// positivity) and ensemble weight sums.
inline constexpr double kStateTol = 1e-9;

/// Bipartite (optionally marker-extended) quantum state. Construction
/// validates Hermiticity, unit trace and positivity; instances are immutable.
class DensityMatrix {
 public:
  /// `transpose_party` designates which subsystem plays the role of party A
  /// for partial transposition.
  DensityMatrix(ComplexMatrix matrix, DimSpec dims, std::size_t transpose_party = 0,
                double tol = kStateTol);

  const ComplexMatrix& matrix() const { return matrix_; }
  const DimSpec& dims() const { return dims_; }
  std::size_t transpose_party() const { return transpose_party_; }
  std::size_t dim() const { return matrix_.rows(); }

  /// ρ^Γ with respect to the designated party A.
  ComplexMatrix partial_transpose() const;

 private:
  ComplexMatrix matrix_;
  DimSpec dims_;
  std::size_t transpose_party_;
};

struct EnsembleMember {
  double weight;
  DensityMatrix state;
};

/// Finite ensemble {(p_i, ρ_i)}: weights nonnegative summing to 1, members
/// sharing dimensions and transpose party.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members, double tol = kStateTol);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const DimSpec& dims() const { return members_.front().state.dims(); }

 private:
  std::vector<EnsembleMember> members_;
};

/// Rank-1 projector |ψ⟩⟨ψ| from a normalized amplitude vector.
DensityMatrix pure_state(const std::vector<Complex>& amplitudes, const DimSpec& dims,
                         std::size_t transpose_party = 0);

/// Projector onto Σ_i |ii⟩/√d on a d×d bipartite space.
DensityMatrix max_entangled(std::size_t d);

/// Two-qubit Werner family p·|Ψ⁻⟩⟨Ψ⁻| + (1−p)·I/4 with Ψ⁻ the singlet.
DensityMatrix werner(double p);

/// Ginibre-induced random state G·G†/tr(G·G†) with G a dim×rank standard
/// complex Gaussian matrix drawn deterministically from the seed.
DensityMatrix random_density(const DimSpec& dims, std::size_t rank, std::uint64_t seed,
                             std::size_t transpose_party = 0);

/// Seeded ensemble of `members` random states with uniform-simplex weights
/// and per-member random rank.
Ensemble random_ensemble(const DimSpec& dims, std::size_t members, std::uint64_t seed);

/// Block state Σ_i p_i ρ_i ⊗ |i⟩_M⟨i| recording which member is present. The
/// marker qudit is appended on the non-transposed side (dims become
/// [d_A, d_B, k]), so the transpose party still addresses A.
DensityMatrix marker_extension(const Ensemble& ensemble);

/// Mixture Σ_i p_i ρ_i.
DensityMatrix mix(const Ensemble& ensemble);

}  // namespace negmon
