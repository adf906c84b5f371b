#pragma once

#include <cstdint>
#include <vector>

#include "negmon/linalg.hpp"
#include "negmon/states.hpp"

namespace negmon {

/// Tolerance for instrument trace preservation.
inline constexpr double kInstrTol = 1e-9;
/// Branches with probability below this are dropped by apply_instrument.
inline constexpr double kBranchEps = 1e-12;
/// Total dropped weight above this aborts apply_instrument.
inline constexpr double kMaxDiscardedWeight = 1e-9;
/// PSD threshold for Choi-based CP and PPT certification.
inline constexpr double kPptTol = 1e-9;

/// One completely positive branch Ψ(x) = Σ_k K x K† as a Kraus-operator list.
/// `in_party`/`out_party` designate which subsystem plays party A on each
/// side for the PPT classification.
struct KrausMap {
  std::vector<ComplexMatrix> operators;
  DimSpec in_dims;
  DimSpec out_dims;
  std::size_t in_party = 0;
  std::size_t out_party = 0;

  std::size_t in_dim() const { return in_dims.product(); }
  std::size_t out_dim() const { return out_dims.product(); }

  /// Checks shapes and the trace-non-increasing bound Σ K†K ≼ I + tol.
  void validate(double tol = kInstrTol) const;
};

/// Finite set of CP branches whose sum is trace preserving; models a
/// measurement with recorded outcome.
class Instrument {
 public:
  explicit Instrument(std::vector<KrausMap> branches, double tol = kInstrTol);

  const std::vector<KrausMap>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  const DimSpec& in_dims() const { return branches_.front().in_dims; }
  const DimSpec& out_dims() const { return branches_.front().out_dims; }

 private:
  std::vector<KrausMap> branches_;
};

/// Choi matrix on out⊗in; PSD iff the map is completely positive.
struct ChoiMatrix {
  ComplexMatrix matrix;
  DimSpec in_dims;
  DimSpec out_dims;
  std::size_t in_party = 0;
  std::size_t out_party = 0;
};

/// Σ_k K x K† (unnormalized; trace = branch probability when x is a state).
ComplexMatrix apply_map(const KrausMap& psi, const ComplexMatrix& x);
ComplexMatrix apply_map(const KrausMap& psi, const DensityMatrix& rho);

/// The partial-transpose conjugated branch Ψ^Γ(x) = (Ψ(x^Γ))^Γ.
ComplexMatrix apply_map_pt_conjugated(const KrausMap& psi, const ComplexMatrix& x);

/// Sub-selected application: outcomes (p_i, Ψ_i(ρ)/p_i). Branches with
/// p_i < kBranchEps are omitted; the discarded weight must stay below
/// kMaxDiscardedWeight.
Ensemble apply_instrument(const Instrument& instr, const DensityMatrix& rho);

/// (Ψ ⊗ id) applied to the unnormalized maximally entangled Σ_ij |ii⟩⟨jj|.
ChoiMatrix choi(const KrausMap& psi);

/// Applies a map given by its Choi matrix: Ψ(x) = tr_in[(I ⊗ xᵀ) C].
ComplexMatrix apply_choi(const ChoiMatrix& c, const ComplexMatrix& x);

/// Complete positivity: min eigenvalue of the Choi matrix ≥ −tol.
bool is_cp(const ChoiMatrix& c, double tol = kPptTol);

/// PPT classification: the Choi matrix of Γ_out ∘ Ψ ∘ Γ_in is PSD within tol
/// (equivalently, Ψ^Γ is completely positive). Requires bipartite in/out dims.
bool is_ppt_map(const KrausMap& psi, double tol = kPptTol);

/// Choi matrix of the conjugated map Γ_out ∘ Ψ ∘ Γ_in; equals the Choi of Ψ
/// partially transposed on the A factors of both sides.
ChoiMatrix choi_pt_conjugated(const KrausMap& psi);

/// Instrument whose branch Kraus operators {A_ik ⊗ I_B} are square blocks of
/// a Haar-random isometry on A; trace preserving by construction.
Instrument random_local_instrument(std::size_t dim_a, std::size_t dim_b, std::size_t n_branches,
                                   std::size_t kraus_per_branch, std::uint64_t seed);

/// Random POVM on A followed by an outcome-conditioned Haar unitary on B:
/// branch i has the single Kraus operator M_i ⊗ V_i.
Instrument random_one_round_locc(std::size_t dim_a, std::size_t dim_b, std::size_t n_outcomes,
                                 std::uint64_t seed);

}  // namespace negmon
