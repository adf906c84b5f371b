#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "negmon/channels.hpp"
#include "negmon/monotones.hpp"
#include "negmon/states.hpp"

namespace negmon {

/// Slack below which an inequality step counts as violated. Above eigensolver
/// noise at the supported dimensions, far below any genuine violation.
inline constexpr double kSlackTol = 1e-8;
/// Tolerance for chain steps that are algebraic identities.
inline constexpr double kIdentityTol = 1e-9;
/// Default seed for all randomized harness runs.
inline constexpr std::uint64_t kDefaultSeed = 0xCAFE;

enum class StepKind { Inequality, Identity };

/// One evaluated line of a proof chain: lhs ≤ rhs (slack = rhs − lhs) or
/// lhs = rhs within tol.
struct ChainStep {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  StepKind kind = StepKind::Inequality;
  double tol = kSlackTol;
  double slack = 0.0;
  bool ok = true;
};

/// Per-inequality slack record for one verified chain.
struct ChainReport {
  std::string name;
  std::vector<ChainStep> steps;
  bool passed = true;
  /// Smallest slack over the inequality steps (+inf if there are none).
  double worst_slack = std::numeric_limits<double>::infinity();
  /// Input fingerprints for replay.
  std::uint64_t seed = 0;
  std::string input_hash;

  ChainStep& add_inequality(std::string label, double lhs, double rhs, double tol = kSlackTol);
  ChainStep& add_identity(std::string label, double lhs, double rhs, double tol = kIdentityTol);
};

struct VerifierOptions {
  double slack_tol = kSlackTol;
  double identity_tol = kIdentityTol;
  double ppt_tol = kPptTol;
};

/// FNV-1a fingerprint of matrix entries, for report replay bookkeeping.
std::string fingerprint(const ComplexMatrix& m);

/// Positivity chain for one CP branch and a Hermitian operator h:
/// tr|Ψ(h)| = tr Ψ(h)_+ + tr Ψ(h)_−, the subadditivity steps
/// tr Ψ(±h)_+ ≤ tr Ψ(h_±), and the endpoint tr|Ψ(h)| ≤ tr Ψ(|h|).
ChainReport check_positive_chain(const KrausMap& psi, const ComplexMatrix& h,
                                 const VerifierOptions& opts = {});

/// Trace-norm chain for an instrument: Σ_i tr|(Ψ_i(ρ))^Γ| = Σ_i tr|Ψ_i^Γ(ρ^Γ)|
/// ≤ Σ_i tr Ψ_i^Γ(|ρ^Γ|) = ‖ρ^Γ‖₁. Throws NotPPTInstrumentError if a branch
/// fails the PPT classification.
ChainReport check_monotone_chain(const Instrument& instr, const DensityMatrix& rho,
                                 const VerifierOptions& opts = {});

/// Two-step logarithm chain: Σ p_i LN(ρ_i) ≤ log₂ Σ p_i ‖ρ_i^Γ‖₁ ≤ LN(ρ).
ChainReport check_ln_monotonicity(const Instrument& instr, const DensityMatrix& rho,
                                  const VerifierOptions& opts = {});

/// Non-increase on average of the negativity: Σ p_i N(ρ_i) ≤ N(ρ).
ChainReport check_negativity_monotonicity(const Instrument& instr, const DensityMatrix& rho,
                                          const VerifierOptions& opts = {});

/// Marker-state inequality: LN(Σ p_i ρ_i ⊗ |i⟩⟨i|) ≥ Σ p_i LN(ρ_i) and
/// ≥ LN(Σ p_i ρ_i), plus the block identity ‖marker^Γ‖₁ = Σ p_i ‖ρ_i^Γ‖₁.
ChainReport check_marker_inequality(const Ensemble& ensemble, const VerifierOptions& opts = {});

/// Mixing report: δ > 0 certifies a convexity violation for the measure.
struct ConvexityWitness {
  double lambda = 0.5;
  double ln_mixture = 0.0;
  double ln_average = 0.0;
  double delta_ln = 0.0;
  double neg_mixture = 0.0;
  double neg_average = 0.0;
  double delta_neg = 0.0;
};

ConvexityWitness convexity_witness(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                   double lambda);

struct WernerRow {
  double p = 0.0;
  double trace_norm = 0.0;
  double negativity = 0.0;
  double log_negativity = 0.0;
};

/// Werner-family scan: closed form ‖ρ^Γ‖₁ = max(1, (1+3p)/2) and discrete
/// concavity of LN on the p ≥ 1/3 sub-grid.
struct WernerScan {
  std::vector<WernerRow> rows;
  double max_closed_form_error = 0.0;
  double max_second_difference = -std::numeric_limits<double>::infinity();
  bool closed_form_ok = true;
  bool concavity_ok = true;
  bool passed() const { return closed_form_ok && concavity_ok; }
};

WernerScan werner_scan(const std::vector<double>& grid);

struct CampaignConfig {
  /// locc1 (one-round LOCC instruments), local (local-on-A instruments), or
  /// eq7 (CP map + traceless Hermitian positivity-chain pairs).
  std::string family = "locc1";
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_outcomes = 4;
  std::size_t kraus_per_branch = 2;
  /// State rank cap; 0 means full rank.
  std::size_t max_rank = 0;
  /// Kraus-operator cap for eq7 maps.
  std::size_t max_kraus = 4;
  VerifierOptions options{};
};

struct MonotoneStat {
  std::size_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
};

struct TrialFailure {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string check;
  std::string detail;
  double slack = 0.0;
};

struct CampaignSummary {
  std::string family;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t n_trials = 0;
  std::size_t n_violations = 0;
  /// Trials aborted by numerical invariant failures, counted separately from
  /// monotonicity violations.
  std::size_t n_casualties = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::map<std::string, MonotoneStat> per_check;
  std::uint64_t seed = kDefaultSeed;
  std::vector<TrialFailure> failures;
};

/// The chain checks produced by one campaign trial.
struct TrialReports {
  std::uint64_t seed = 0;
  std::vector<ChainReport> reports;
};

/// Deterministic per-trial evaluation; the campaign is the fold over trials.
TrialReports run_trial(const CampaignConfig& config, std::size_t trial);

CampaignSummary run_campaign(const CampaignConfig& config);

}  // namespace negmon
