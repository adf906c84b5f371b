// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

#include "negmon/random.hpp"
#include "negmon/verifier.hpp"

using namespace negmon;

namespace {

int failures = 0;

void criterion(int index, const std::string& description, bool ok, const std::string& detail) {
  std::printf("[%s] %d. %s (%s)\n", ok ? "PASS" : "FAIL", index, description.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

std::size_t check_violations(const CampaignSummary& summary, const std::string& name) {
  const auto it = summary.per_check.find(name);
  return it == summary.per_check.end() ? 0 : it->second.violations;
}

void criterion_1_monotonicity_campaign() {
  CampaignConfig config;
  config.family = "locc1";
  config.dim_a = 2;
  config.dim_b = 2;
  config.trials = 1000;
  config.max_outcomes = 4;
  config.max_rank = 4;
  config.seed = kDefaultSeed;

  const auto start = std::chrono::steady_clock::now();
  const CampaignSummary summary = run_campaign(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::size_t monotone_violations = check_violations(summary, "trace_norm_chain") +
                                          check_violations(summary, "log_negativity_chain") +
                                          check_violations(summary, "negativity_chain");
  const bool ok = monotone_violations == 0 && summary.n_casualties == 0 &&
                  summary.n_trials == 1000 && seconds <= 60.0;
  criterion(1,
            "monotonicity campaign: 1000 one-round LOCC trials on 2x2, "
            "trace-norm/LN/N chains within 1e-8",
            ok,
            format("violations=%zu casualties=%zu worst_slack=%.3e runtime=%.1fs",
                   monotone_violations, summary.n_casualties, summary.worst_slack, seconds));
}

void criterion_2_positive_chain_endpoint() {
  CampaignConfig config;
  config.family = "eq7";
  config.dim_a = 2;
  config.trials = 500;
  config.seed = kDefaultSeed;

  std::size_t endpoint_violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const TrialReports reports = run_trial(config, trial);
    for (const auto& report : reports.reports) {
      for (const auto& step : report.steps) {
        if (step.label == "tr|Ψ(h)| <= tr Ψ(|h|)") {
          worst = std::min(worst, step.slack);
          if (step.slack < -1e-8) ++endpoint_violations;
        }
      }
    }
  }
  criterion(2,
            "positivity endpoint: 500 (CP qubit map, traceless Hermitian) pairs, "
            "tr|Ψ(h)| <= tr Ψ(|h|) + 1e-8",
            endpoint_violations == 0,
            format("violations=%zu worst_slack=%.3e", endpoint_violations, worst));
}

void criterion_3_werner_closed_form() {
  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) / 100.0;
  const WernerScan scan = werner_scan(grid);
  criterion(3,
            "werner scan: ‖ρ^Γ‖₁ = max(1, (1+3p)/2) within 1e-10 and LN concave on "
            "p >= 1/3 (second differences <= 1e-9)",
            scan.passed(),
            format("max_closed_form_error=%.3e max_second_difference=%.3e",
                   scan.max_closed_form_error, scan.max_second_difference));
}

void criterion_4_nonconvexity_witness() {
  const ConvexityWitness w = convexity_witness(werner(1.0 / 3.0), werner(1.0), 0.5);
  const bool ok = std::abs(w.delta_ln - 0.0849625) <= 1e-6;
  criterion(4, "non-convexity witness: delta for the werner(1/3)/werner(1) half mix",
            ok, format("delta_ln=%.9f expected=0.0849625", w.delta_ln));
}

void criterion_5_marker_inequality() {
  std::size_t violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Ensemble e = random_ensemble(DimSpec{2, 2}, 3, derive_seed(kDefaultSeed, t));
    const ChainReport report = check_marker_inequality(e);
    if (!report.passed) ++violations;
    worst = std::min(worst, report.worst_slack);
  }
  criterion(5,
            "marker inequality: 200 random 3-member two-qubit ensembles, LN(marker) >= "
            "avg LN - 1e-8 and block identity within 1e-10",
            violations == 0, format("violations=%zu worst_slack=%.3e", violations, worst));
}

void criterion_6_ppt_classifier() {
  std::size_t non_ppt_branches = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(kDefaultSeed ^ 0x51ull, t));
    const Instrument instr =
        random_local_instrument(2, 2, 1 + rng.uniform_index(3), 1 + rng.uniform_index(2),
                                rng.next_u64());
    for (const auto& branch : instr.branches()) {
      if (!is_ppt_map(branch)) ++non_ppt_branches;
    }
  }

  const double s = 1.0 / std::sqrt(2.0);
  KrausMap prep{{}, DimSpec{2, 2}, DimSpec{2, 2}};
  for (std::size_t m = 0; m < 4; ++m) {
    ComplexMatrix k(4, 4);
    k(0, m) = s;
    k(3, m) = s;
    prep.operators.push_back(std::move(k));
  }
  const bool prep_cp = is_cp(choi(prep));
  const bool prep_ppt = is_ppt_map(prep);

  const bool ok = non_ppt_branches == 0 && prep_cp && !prep_ppt;
  criterion(6,
            "PPT classifier: 100 local instruments all PPT; bell preparation map is CP "
            "but not PPT",
            ok,
            format("non_ppt_local_branches=%zu bellprep_cp=%d bellprep_ppt=%d",
                   non_ppt_branches, prep_cp ? 1 : 0, prep_ppt ? 1 : 0));
}

void criterion_7_point_values() {
  const double n_bell = negativity(max_entangled(2));
  const double ln_bell = log_negativity(max_entangled(2));
  const double ln_w23 = log_negativity(werner(2.0 / 3.0));
  const double tn2 = trace_norm_hermitian(max_entangled(2).partial_transpose());
  const double tn3 = trace_norm_hermitian(max_entangled(3).partial_transpose());

  const bool ok = std::abs(n_bell - 0.5) <= 1e-9 && std::abs(ln_bell - 1.0) <= 1e-9 &&
                  std::abs(ln_w23 - std::log2(1.5)) <= 1e-9 && std::abs(tn2 - 2.0) <= 1e-9 &&
                  std::abs(tn3 - 3.0) <= 1e-9;
  criterion(7, "point values: N(bell)=1/2, LN(bell)=1, LN(werner(2/3))=log2(3/2), ‖Φ_d^Γ‖₁=d",
            ok,
            format("N=%.12f LN=%.12f LN_w=%.12f tn2=%.12f tn3=%.12f", n_bell, ln_bell, ln_w23,
                   tn2, tn3));
}

void criterion_8_consistency() {
  std::size_t checked = 0;
  double worst = 0.0;
  for (const std::size_t d : {2u, 3u}) {
    const DimSpec dims{d, d};
    for (std::uint64_t t = 0; t < 500; ++t) {
      Rng rng(derive_seed(kDefaultSeed ^ (0x8100ull + d), t));
      const std::size_t rank = 1 + rng.uniform_index(dims.product());
      const DensityMatrix rho = random_density(dims, rank, rng.next_u64());
      const double err =
          std::abs(log_negativity_raw(rho) - std::log2(2.0 * negativity_raw(rho) + 1.0));
      worst = std::max(worst, err);
      ++checked;
    }
  }
  criterion(8, "consistency: LN = log2(2N+1) within 1e-10 on 1000 random 2x2 and 3x3 states",
            worst <= 1e-10 && checked == 1000, format("states=%zu worst_error=%.3e", checked, worst));
}

}  // namespace

int main() {
  criterion_1_monotonicity_campaign();
  criterion_2_positive_chain_endpoint();
  criterion_3_werner_closed_form();
  criterion_4_nonconvexity_witness();
  criterion_5_marker_inequality();
  criterion_6_ppt_classifier();
  criterion_7_point_values();
  criterion_8_consistency();
  std::printf("acceptance: %d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
