#include "negmon/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "negmon/random.hpp"

namespace negmon {

namespace {

double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

void finalize(ChainStep& step) {
  step.slack = step.rhs - step.lhs;
  if (step.kind == StepKind::Inequality) {
    step.ok = step.slack >= -step.tol;
  } else {
    step.ok = std::abs(step.slack) <= step.tol;
  }
}

void require_ppt_branches(const Instrument& instr, double ppt_tol) {
  for (std::size_t i = 0; i < instr.size(); ++i) {
    if (!is_ppt_map(instr.branches()[i], ppt_tol)) {
      throw NotPPTInstrumentError("instrument branch " + std::to_string(i) +
                                  " fails the PPT classification");
    }
  }
}

// Branch-wise trace norms ‖(Ψ_i(ρ))^Γ‖₁ and probabilities p_i = tr Ψ_i(ρ),
// shared by the three monotonicity chains.
struct BranchTerms {
  std::vector<double> probabilities;
  std::vector<double> pt_trace_norms;  // of the unnormalized branch outputs
  double sum_pt_trace_norms = 0.0;
};

BranchTerms branch_terms(const Instrument& instr, const DensityMatrix& rho) {
  BranchTerms terms;
  for (const auto& branch : instr.branches()) {
    const ComplexMatrix sigma = apply_map(branch, rho.matrix());
    const double tn =
        trace_norm_hermitian(partial_transpose(sigma, branch.out_dims, branch.out_party));
    terms.probabilities.push_back(sigma.trace().real());
    terms.pt_trace_norms.push_back(tn);
    terms.sum_pt_trace_norms += tn;
  }
  return terms;
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

}  // namespace

std::string fingerprint(const ComplexMatrix& m) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  const std::size_t dims[2] = {m.rows(), m.cols()};
  h = fnv1a(dims, sizeof(dims), h);
  h = fnv1a(m.entries().data(), m.size() * sizeof(Complex), h);
  return to_hex(h);
}

ChainStep& ChainReport::add_inequality(std::string label, double lhs, double rhs, double tol) {
  ChainStep step{std::move(label), lhs, rhs, StepKind::Inequality, tol, 0.0, true};
  finalize(step);
  passed = passed && step.ok;
  worst_slack = std::min(worst_slack, step.slack);
  steps.push_back(std::move(step));
  return steps.back();
}

ChainStep& ChainReport::add_identity(std::string label, double lhs, double rhs, double tol) {
  ChainStep step{std::move(label), lhs, rhs, StepKind::Identity, tol, 0.0, true};
  finalize(step);
  passed = passed && step.ok;
  steps.push_back(std::move(step));
  return steps.back();
}

ChainReport check_positive_chain(const KrausMap& psi, const ComplexMatrix& h,
                                 const VerifierOptions& opts) {
  psi.validate();
  if (!h.is_hermitian(kStateTol)) {
    throw NotHermitianError("check_positive_chain: operator is not Hermitian");
  }
  ChainReport report;
  report.name = "positive_chain";
  report.input_hash = fingerprint(h);

  const ComplexMatrix image = apply_map(psi, h);
  const double tn_image = trace_norm_hermitian(image);
  const auto image_parts = pos_neg_parts(image);
  const auto h_parts = pos_neg_parts(h);

  const double tr_image_pos = real_trace(image_parts.positive);
  const double tr_image_neg = real_trace(image_parts.negative);

  ComplexMatrix minus_h = h;
  minus_h *= -1.0;
  const double tr_image_of_minus_pos = real_trace(pos_neg_parts(apply_map(psi, minus_h)).positive);

  const double tr_psi_hpos = real_trace(apply_map(psi, h_parts.positive));
  const double tr_psi_hneg = real_trace(apply_map(psi, h_parts.negative));
  const double tr_psi_abs = real_trace(apply_map(psi, h_parts.positive + h_parts.negative));

  report.add_identity("tr|Ψ(h)| = tr Ψ(h)_+ + tr Ψ(h)_-", tn_image, tr_image_pos + tr_image_neg,
                      opts.identity_tol);
  report.add_identity("tr Ψ(h)_- = tr Ψ(-h)_+", tr_image_neg, tr_image_of_minus_pos,
                      opts.identity_tol);
  report.add_inequality("tr Ψ(h)_+ <= tr Ψ(h_+)", tr_image_pos, tr_psi_hpos, opts.slack_tol);
  report.add_inequality("tr Ψ(-h)_+ <= tr Ψ(h_-)", tr_image_of_minus_pos, tr_psi_hneg,
                        opts.slack_tol);
  report.add_identity("tr Ψ(h_+) + tr Ψ(h_-) = tr Ψ(|h|)", tr_psi_hpos + tr_psi_hneg, tr_psi_abs,
                      opts.identity_tol);
  report.add_inequality("tr|Ψ(h)| <= tr Ψ(|h|)", tn_image, tr_psi_abs, opts.slack_tol);
  return report;
}

ChainReport check_monotone_chain(const Instrument& instr, const DensityMatrix& rho,
                                 const VerifierOptions& opts) {
  require_ppt_branches(instr, opts.ppt_tol);
  ChainReport report;
  report.name = "trace_norm_chain";
  report.input_hash = fingerprint(rho.matrix());

  const ComplexMatrix rho_pt = rho.partial_transpose();
  const double rhs = trace_norm_hermitian(rho_pt);
  const auto terms = branch_terms(instr, rho);

  // Middle line of the chain, evaluated through the conjugated maps.
  double sum_conjugated = 0.0;
  double sum_conjugated_abs = 0.0;
  const ComplexMatrix abs_rho_pt = abs_hermitian(rho_pt);
  for (const auto& branch : instr.branches()) {
    sum_conjugated += trace_norm_hermitian(apply_map_pt_conjugated(branch, rho_pt));
    sum_conjugated_abs += real_trace(apply_map_pt_conjugated(branch, abs_rho_pt));
  }

  report.add_identity("Σ tr|(Ψ_i(ρ))^Γ| = Σ tr|Ψ_i^Γ(ρ^Γ)|", terms.sum_pt_trace_norms,
                      sum_conjugated, opts.identity_tol);
  report.add_inequality("Σ tr|Ψ_i^Γ(ρ^Γ)| <= Σ tr Ψ_i^Γ(|ρ^Γ|)", sum_conjugated,
                        sum_conjugated_abs, opts.slack_tol);
  report.add_identity("Σ tr Ψ_i^Γ(|ρ^Γ|) = ‖ρ^Γ‖₁", sum_conjugated_abs, rhs, opts.identity_tol);
  report.add_inequality("Σ p_i ‖ρ_i^Γ‖₁ <= ‖ρ^Γ‖₁", terms.sum_pt_trace_norms, rhs,
                        opts.slack_tol);
  return report;
}

ChainReport check_ln_monotonicity(const Instrument& instr, const DensityMatrix& rho,
                                  const VerifierOptions& opts) {
  require_ppt_branches(instr, opts.ppt_tol);
  ChainReport report;
  report.name = "log_negativity_chain";
  report.input_hash = fingerprint(rho.matrix());

  const auto terms = branch_terms(instr, rho);
  double avg_ln = 0.0;
  for (std::size_t i = 0; i < terms.probabilities.size(); ++i) {
    const double p = terms.probabilities[i];
    // p·log₂(x/p) → 0 as p → 0; omitted terms are below slack resolution.
    if (p < kBranchEps) continue;
    avg_ln += p * std::log2(terms.pt_trace_norms[i] / p);
  }
  const double log_sum = std::log2(terms.sum_pt_trace_norms);
  const double ln_rho = log_negativity_raw(rho);

  report.add_inequality("Σ p_i LN(ρ_i) <= log₂ Σ p_i ‖ρ_i^Γ‖₁", avg_ln, log_sum, opts.slack_tol);
  report.add_inequality("log₂ Σ p_i ‖ρ_i^Γ‖₁ <= LN(ρ)", log_sum, ln_rho, opts.slack_tol);
  report.add_inequality("Σ p_i LN(ρ_i) <= LN(ρ)", avg_ln, ln_rho, opts.slack_tol);
  return report;
}

ChainReport check_negativity_monotonicity(const Instrument& instr, const DensityMatrix& rho,
                                          const VerifierOptions& opts) {
  require_ppt_branches(instr, opts.ppt_tol);
  ChainReport report;
  report.name = "negativity_chain";
  report.input_hash = fingerprint(rho.matrix());

  const auto terms = branch_terms(instr, rho);
  // Σ p_i N(ρ_i) = (Σ ‖(Ψ_i(ρ))^Γ‖₁ − Σ p_i)/2; no per-branch normalization.
  double sum_p = 0.0;
  for (double p : terms.probabilities) sum_p += p;
  const double avg_neg = 0.5 * (terms.sum_pt_trace_norms - sum_p);
  const double neg_rho = negativity_raw(rho);

  report.add_inequality("Σ p_i N(ρ_i) <= N(ρ)", avg_neg, neg_rho, opts.slack_tol);
  return report;
}

ChainReport check_marker_inequality(const Ensemble& ensemble, const VerifierOptions& opts) {
  ChainReport report;
  report.name = "marker_chain";

  const DensityMatrix marker = marker_extension(ensemble);
  report.input_hash = fingerprint(marker.matrix());

  double avg_ln = 0.0;
  double sum_pt_trace_norms = 0.0;
  for (const auto& member : ensemble.members()) {
    const double tn = trace_norm_hermitian(member.state.partial_transpose());
    avg_ln += member.weight * std::log2(tn);
    sum_pt_trace_norms += member.weight * tn;
  }
  const double ln_marker = log_negativity_raw(marker);
  const double tn_marker = trace_norm_hermitian(marker.partial_transpose());
  const double ln_mixture = log_negativity_raw(mix(ensemble));

  report.add_identity("‖marker^Γ‖₁ = Σ p_i ‖ρ_i^Γ‖₁", tn_marker, sum_pt_trace_norms, 1e-10);
  report.add_inequality("Σ p_i LN(ρ_i) <= LN(marker)", avg_ln, ln_marker, opts.slack_tol);
  report.add_inequality("LN(Σ p_i ρ_i) <= LN(marker)", ln_mixture, ln_marker, opts.slack_tol);
  return report;
}

ConvexityWitness convexity_witness(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                   double lambda) {
  if (rho1.dims() != rho2.dims() || rho1.transpose_party() != rho2.transpose_party()) {
    throw DimMismatchError("convexity_witness: states must share dims and transpose party");
  }
  if (lambda < 0.0 || lambda > 1.0) {
    throw OutOfRangeError("convexity_witness: lambda outside [0, 1]");
  }
  const Ensemble pair({{lambda, rho1}, {1.0 - lambda, rho2}});
  const DensityMatrix mixture = mix(pair);

  ConvexityWitness w;
  w.lambda = lambda;
  w.ln_mixture = log_negativity(mixture);
  w.ln_average = lambda * log_negativity(rho1) + (1.0 - lambda) * log_negativity(rho2);
  w.delta_ln = w.ln_mixture - w.ln_average;
  w.neg_mixture = negativity(mixture);
  w.neg_average = lambda * negativity(rho1) + (1.0 - lambda) * negativity(rho2);
  w.delta_neg = w.neg_mixture - w.neg_average;
  return w;
}

WernerScan werner_scan(const std::vector<double>& grid) {
  std::vector<double> ps = grid;
  std::sort(ps.begin(), ps.end());
  WernerScan scan;
  for (double p : ps) {
    const DensityMatrix state = werner(p);
    WernerRow row;
    row.p = p;
    row.trace_norm = trace_norm_hermitian(state.partial_transpose());
    row.negativity = negativity(state);
    row.log_negativity = log_negativity(state);
    scan.rows.push_back(row);

    const double closed_form = std::max(1.0, (1.0 + 3.0 * p) / 2.0);
    scan.max_closed_form_error =
        std::max(scan.max_closed_form_error, std::abs(row.trace_norm - closed_form));
  }
  scan.closed_form_ok = scan.max_closed_form_error <= 1e-10;

  // Discrete concavity of LN on the p ≥ 1/3 sub-grid: second differences of
  // consecutive triples must not exceed +1e-9. Uneven spacings fall back to
  // the chord-slope difference scaled by the smaller gap.
  for (std::size_t i = 1; i + 1 < scan.rows.size(); ++i) {
    if (scan.rows[i - 1].p < 1.0 / 3.0 - 1e-12) continue;
    const double h_left = scan.rows[i].p - scan.rows[i - 1].p;
    const double h_right = scan.rows[i + 1].p - scan.rows[i].p;
    if (h_left <= 0.0 || h_right <= 0.0) continue;
    double d2;
    if (std::abs(h_left - h_right) <= 1e-12) {
      d2 = scan.rows[i + 1].log_negativity - 2.0 * scan.rows[i].log_negativity +
           scan.rows[i - 1].log_negativity;
    } else {
      const double slope_right =
          (scan.rows[i + 1].log_negativity - scan.rows[i].log_negativity) / h_right;
      const double slope_left =
          (scan.rows[i].log_negativity - scan.rows[i - 1].log_negativity) / h_left;
      d2 = (slope_right - slope_left) * std::min(h_left, h_right);
    }
    scan.max_second_difference = std::max(scan.max_second_difference, d2);
  }
  scan.concavity_ok = scan.max_second_difference <= 1e-9;
  return scan;
}

namespace {

KrausMap random_cp_map(Rng& rng, std::size_t dim, std::size_t n_kraus) {
  KrausMap psi{{}, DimSpec{dim}, DimSpec{dim}};
  for (std::size_t k = 0; k < n_kraus; ++k) psi.operators.push_back(rng.ginibre(dim, dim));
  // Rescale to trace non-increasing; the positivity chain is scale invariant.
  ComplexMatrix gram(dim, dim);
  for (const auto& k : psi.operators) gram += dagger(k) * k;
  const double top = hermitian_eigen(gram).eigenvalues.back();
  const double scale = 1.0 / std::sqrt(top);
  for (auto& k : psi.operators) k *= scale;
  return psi;
}

void tally(CampaignSummary& summary, const ChainReport& report, std::size_t trial,
           std::uint64_t seed) {
  auto& stat = summary.per_check[report.name];
  stat.worst_slack = std::min(stat.worst_slack, report.worst_slack);
  summary.worst_slack = std::min(summary.worst_slack, report.worst_slack);
  if (!report.passed) {
    stat.violations += 1;
    summary.n_violations += 1;
    double slack = report.worst_slack;
    std::string detail;
    for (const auto& step : report.steps) {
      if (!step.ok) {
        detail = step.label;
        break;
      }
    }
    summary.failures.push_back({trial, seed, report.name, detail, slack});
  }
}

}  // namespace

TrialReports run_trial(const CampaignConfig& config, std::size_t trial) {
  TrialReports out;
  out.seed = derive_seed(config.seed, trial);
  Rng structure(derive_seed(out.seed, 0));

  if (config.family == "eq7") {
    const std::size_t n_kraus = 1 + structure.uniform_index(std::max<std::size_t>(1, config.max_kraus));
    Rng map_rng(derive_seed(out.seed, 1));
    Rng h_rng(derive_seed(out.seed, 2));
    const KrausMap psi = random_cp_map(map_rng, config.dim_a, n_kraus);
    ComplexMatrix g = h_rng.ginibre(config.dim_a, config.dim_a);
    ComplexMatrix h = g;
    h += dagger(g);
    h *= 0.5;
    const Complex shift = h.trace() / static_cast<double>(config.dim_a);
    for (std::size_t i = 0; i < config.dim_a; ++i) h(i, i) -= shift;
    out.reports.push_back(check_positive_chain(psi, h, config.options));
    return out;
  }

  const DimSpec dims{config.dim_a, config.dim_b};
  const std::size_t full_rank = dims.product();
  const std::size_t rank_cap =
      config.max_rank == 0 ? full_rank : std::min(config.max_rank, full_rank);
  const std::size_t rank = 1 + structure.uniform_index(rank_cap);
  const DensityMatrix rho = random_density(dims, rank, derive_seed(out.seed, 1));

  const std::size_t outcomes = 1 + structure.uniform_index(std::max<std::size_t>(1, config.max_outcomes));
  Instrument instr =
      config.family == "local"
          ? random_local_instrument(config.dim_a, config.dim_b, outcomes, config.kraus_per_branch,
                                    derive_seed(out.seed, 2))
          : random_one_round_locc(config.dim_a, config.dim_b, outcomes, derive_seed(out.seed, 2));

  out.reports.push_back(check_monotone_chain(instr, rho, config.options));
  out.reports.push_back(check_ln_monotonicity(instr, rho, config.options));
  out.reports.push_back(check_negativity_monotonicity(instr, rho, config.options));
  out.reports.push_back(check_marker_inequality(apply_instrument(instr, rho), config.options));
  for (auto& report : out.reports) report.seed = out.seed;
  return out;
}

CampaignSummary run_campaign(const CampaignConfig& config) {
  if (config.family != "locc1" && config.family != "local" && config.family != "eq7") {
    throw OutOfRangeError("run_campaign: unknown family '" + config.family + "'");
  }
  CampaignSummary summary;
  summary.family = config.family;
  summary.dim_a = config.dim_a;
  summary.dim_b = config.dim_b;
  summary.seed = config.seed;
  summary.n_trials = config.trials;

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    try {
      const TrialReports reports = run_trial(config, trial);
      for (const auto& report : reports.reports) tally(summary, report, trial, reports.seed);
    } catch (const Error& e) {
      summary.n_casualties += 1;
      summary.failures.push_back(
          {trial, derive_seed(config.seed, trial), "casualty", e.what(), 0.0});
    }
  }
  return summary;
}

}  // namespace negmon
