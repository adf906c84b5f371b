#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "negmon/json_io.hpp"
#include "negmon/random.hpp"
#include "negmon/verifier.hpp"
#include "oracles.hpp"

using namespace negmon;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

KrausMap identity_map(const DimSpec& dims) {
  return KrausMap{{ComplexMatrix::identity(dims.product())}, dims, dims};
}

Instrument basis_measurement_on_a() {
  std::vector<KrausMap> branches;
  for (std::size_t outcome = 0; outcome < 2; ++outcome) {
    ComplexMatrix proj(2, 2);
    proj(outcome, outcome) = 1.0;
    branches.push_back(
        KrausMap{{tensor(proj, ComplexMatrix::identity(2))}, DimSpec{2, 2}, DimSpec{2, 2}});
  }
  return Instrument(std::move(branches));
}

KrausMap random_cp_qubit_map(Rng& rng, std::size_t n_kraus) {
  KrausMap psi{{}, DimSpec{2}, DimSpec{2}};
  for (std::size_t k = 0; k < n_kraus; ++k) psi.operators.push_back(rng.ginibre(2, 2));
  ComplexMatrix gram(2, 2);
  for (const auto& k : psi.operators) gram += dagger(k) * k;
  const double top = hermitian_eigen(gram).eigenvalues.back();
  for (auto& k : psi.operators) k *= 1.0 / std::sqrt(top);
  return psi;
}

const ChainStep& find_step(const ChainReport& report, const std::string& needle) {
  for (const auto& step : report.steps) {
    if (step.label.find(needle) != std::string::npos) return step;
  }
  throw std::runtime_error("step not found: " + needle);
}

}  // namespace

TEST_CASE("positive chain") {
  SUBCASE("PSD input gives equalities") {
    Rng rng(51);
    const ComplexMatrix g = rng.ginibre(2, 2);
    const ComplexMatrix psd = g * dagger(g);
    const KrausMap psi = random_cp_qubit_map(rng, 2);
    const ChainReport report = check_positive_chain(psi, psd);
    CHECK(report.passed);
    for (const auto& step : report.steps) CHECK(near(step.lhs, step.rhs, 1e-9));
  }

  SUBCASE("identity map gives zero slack everywhere") {
    Rng rng(52);
    const ComplexMatrix h = oracles::random_hermitian_traceless(rng, 2);
    const ChainReport report = check_positive_chain(identity_map(DimSpec{2}), h);
    CHECK(report.passed);
    for (const auto& step : report.steps) CHECK(near(step.slack, 0.0, 1e-12));
  }

  SUBCASE("seeded batch of CP maps against pauli Z") {
    const ComplexMatrix pauli_z = ComplexMatrix::diagonal({1, -1});
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(derive_seed(0xBEEF, seed));
      const KrausMap psi = random_cp_qubit_map(rng, 1 + rng.uniform_index(3));
      const ChainReport report = check_positive_chain(psi, pauli_z);
      CHECK(report.passed);
      CHECK(report.worst_slack >= -kSlackTol);
    }
  }

  SUBCASE("rejects non-hermitian input") {
    Rng rng(53);
    ComplexMatrix skew(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(check_positive_chain(random_cp_qubit_map(rng, 1), skew), NotHermitianError);
  }
}

TEST_CASE("trace norm chain") {
  const DensityMatrix bell = max_entangled(2);

  SUBCASE("identity instrument gives equality") {
    const Instrument id(std::vector<KrausMap>{identity_map(DimSpec{2, 2})});
    const ChainReport report = check_monotone_chain(id, bell);
    CHECK(report.passed);
    const ChainStep& final_step = find_step(report, "Σ p_i ‖ρ_i^Γ‖₁ <= ‖ρ^Γ‖₁");
    CHECK(near(final_step.slack, 0.0, 1e-12));
  }

  SUBCASE("basis measurement of the bell state") {
    const ChainReport report = check_monotone_chain(basis_measurement_on_a(), bell);
    CHECK(report.passed);
    const ChainStep& final_step = find_step(report, "Σ p_i ‖ρ_i^Γ‖₁ <= ‖ρ^Γ‖₁");
    CHECK(near(final_step.lhs, 1.0, 1e-10));
    CHECK(near(final_step.rhs, 2.0, 1e-10));
    CHECK(near(final_step.slack, 1.0, 1e-10));
  }

  SUBCASE("non-PPT instruments are rejected, not silently tested") {
    // All four Bell-preparation Kraus operators in a single deterministic
    // branch: trace preserving and CP, but not a PPT operation.
    const double s = 1.0 / std::sqrt(2.0);
    KrausMap prep{{}, DimSpec{2, 2}, DimSpec{2, 2}};
    for (std::size_t m = 0; m < 4; ++m) {
      ComplexMatrix k(4, 4);
      k(0, m) = s;
      k(3, m) = s;
      prep.operators.push_back(std::move(k));
    }
    const Instrument instr(std::vector<KrausMap>{prep});
    CHECK_THROWS_AS(check_monotone_chain(instr, bell), NotPPTInstrumentError);
  }
}

TEST_CASE("log negativity chain") {
  const DensityMatrix bell = max_entangled(2);

  SUBCASE("identity instrument") {
    const Instrument id(std::vector<KrausMap>{identity_map(DimSpec{2, 2})});
    const ChainReport report = check_ln_monotonicity(id, bell);
    CHECK(report.passed);
    for (const auto& step : report.steps) CHECK(near(step.lhs, step.rhs, 1e-10));
  }

  SUBCASE("bell measurement: 0 <= 0 <= 1") {
    const ChainReport report = check_ln_monotonicity(basis_measurement_on_a(), bell);
    CHECK(report.passed);
    const ChainStep& first = find_step(report, "Σ p_i LN(ρ_i) <= log₂");
    CHECK(near(first.lhs, 0.0, 1e-10));
    CHECK(near(first.rhs, 0.0, 1e-10));
    const ChainStep& second = find_step(report, "<= LN(ρ)");
    CHECK(near(second.rhs, 1.0, 1e-10));
  }
}

TEST_CASE("negativity chain") {
  const DensityMatrix bell = max_entangled(2);
  const Instrument id(std::vector<KrausMap>{identity_map(DimSpec{2, 2})});
  const ChainReport equal = check_negativity_monotonicity(id, bell);
  CHECK(equal.passed);
  CHECK(near(equal.steps[0].slack, 0.0, 1e-12));

  const ChainReport measured = check_negativity_monotonicity(basis_measurement_on_a(), bell);
  CHECK(measured.passed);
  CHECK(near(measured.steps[0].lhs, 0.0, 1e-10));
  CHECK(near(measured.steps[0].rhs, 0.5, 1e-10));
}

TEST_CASE("marker inequality") {
  SUBCASE("single member ensemble gives equalities") {
    const ChainReport report = check_marker_inequality(Ensemble({{1.0, werner(0.9)}}));
    CHECK(report.passed);
    for (const auto& step : report.steps) CHECK(near(step.lhs, step.rhs, 1e-10));
  }

  SUBCASE("werner pair closed form") {
    const Ensemble e({{0.5, werner(1.0 / 3.0)}, {0.5, werner(1.0)}});
    const ChainReport report = check_marker_inequality(e);
    CHECK(report.passed);
    const double log_three_halves = std::log2(1.5);
    const ChainStep& avg = find_step(report, "Σ p_i LN(ρ_i) <= LN(marker)");
    CHECK(near(avg.lhs, 0.5, 1e-10));
    CHECK(near(avg.rhs, log_three_halves, 1e-10));
    const ChainStep& mixture = find_step(report, "LN(Σ p_i ρ_i) <= LN(marker)");
    CHECK(near(mixture.lhs, log_three_halves, 1e-10));
  }

  SUBCASE("random ensembles never fail") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Ensemble e = random_ensemble(DimSpec{2, 2}, 3, derive_seed(0xABCD, seed));
      CHECK(check_marker_inequality(e).passed);
    }
  }
}

TEST_CASE("convexity witness") {
  SUBCASE("identical states give zero delta") {
    const ConvexityWitness w = convexity_witness(werner(0.7), werner(0.7), 0.3);
    CHECK(near(w.delta_ln, 0.0, 1e-12));
    CHECK(near(w.delta_neg, 0.0, 1e-12));
  }

  SUBCASE("werner mixture certifies non-convexity of LN but not N") {
    const ConvexityWitness w = convexity_witness(werner(1.0 / 3.0), werner(1.0), 0.5);
    CHECK(near(w.delta_ln, std::log2(1.5) - 0.5, 1e-10));
    CHECK(w.delta_ln > 0.08);
    // The negativity is affine on this segment.
    CHECK(near(w.delta_neg, 0.0, 1e-10));
  }

  SUBCASE("negativity is convex on random pairs") {
    Rng rng(54);
    for (int rep = 0; rep < 20; ++rep) {
      const DensityMatrix a = random_density(DimSpec{2, 2}, 1 + rng.uniform_index(4),
                                             rng.next_u64());
      const DensityMatrix b = random_density(DimSpec{2, 2}, 1 + rng.uniform_index(4),
                                             rng.next_u64());
      const ConvexityWitness w = convexity_witness(a, b, rng.uniform());
      CHECK(w.delta_neg <= 1e-9);
    }
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(convexity_witness(werner(0.1), max_entangled(3), 0.5), DimMismatchError);
    CHECK_THROWS_AS(convexity_witness(werner(0.1), werner(0.2), 1.5), OutOfRangeError);
  }
}

TEST_CASE("werner scan") {
  SUBCASE("endpoint rows") {
    const WernerScan scan = werner_scan({0.0, 1.0});
    CHECK(near(scan.rows[0].trace_norm, 1.0, 1e-12));
    CHECK(scan.rows[0].negativity == 0.0);
    CHECK(scan.rows[0].log_negativity == 0.0);
    CHECK(near(scan.rows[1].trace_norm, 2.0, 1e-12));
    CHECK(near(scan.rows[1].negativity, 0.5, 1e-12));
    CHECK(near(scan.rows[1].log_negativity, 1.0, 1e-12));
  }

  SUBCASE("uniform grid closed form and concavity") {
    std::vector<double> grid(101);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) / 100.0;
    const WernerScan scan = werner_scan(grid);
    CHECK(scan.closed_form_ok);
    CHECK(scan.max_closed_form_error <= 1e-10);
    CHECK(scan.concavity_ok);
    CHECK(scan.max_second_difference <= 1e-9);
    CHECK(scan.passed());
  }

  SUBCASE("rejects out-of-range grid") {
    CHECK_THROWS_AS(werner_scan({0.0, 1.2}), OutOfRangeError);
  }
}

TEST_CASE("campaigns") {
  SUBCASE("zero trials is a vacuous pass") {
    CampaignConfig config;
    config.trials = 0;
    const CampaignSummary summary = run_campaign(config);
    CHECK(summary.n_trials == 0);
    CHECK(summary.n_violations == 0);
    CHECK(summary.n_casualties == 0);
  }

  SUBCASE("fixed seed reproduces the summary") {
    CampaignConfig config;
    config.trials = 20;
    config.seed = 1234;
    const Json a = summary_to_json(run_campaign(config));
    const Json b = summary_to_json(run_campaign(config));
    CHECK(a.dump() == b.dump());
  }

  SUBCASE("locc1 family stays violation free") {
    CampaignConfig config;
    config.trials = 50;
    config.max_rank = 4;
    const CampaignSummary summary = run_campaign(config);
    CHECK(summary.n_trials == 50);
    CHECK(summary.n_violations == 0);
    CHECK(summary.n_casualties == 0);
    CHECK(summary.worst_slack >= -kSlackTol);
    CHECK(summary.per_check.count("trace_norm_chain") == 1);
    CHECK(summary.per_check.count("log_negativity_chain") == 1);
    CHECK(summary.per_check.count("negativity_chain") == 1);
    CHECK(summary.per_check.count("marker_chain") == 1);
  }

  SUBCASE("local family stays violation free") {
    CampaignConfig config;
    config.family = "local";
    config.trials = 25;
    const CampaignSummary summary = run_campaign(config);
    CHECK(summary.n_violations == 0);
    CHECK(summary.n_casualties == 0);
  }

  SUBCASE("eq7 family stays violation free") {
    CampaignConfig config;
    config.family = "eq7";
    config.trials = 50;
    const CampaignSummary summary = run_campaign(config);
    CHECK(summary.n_violations == 0);
    CHECK(summary.per_check.count("positive_chain") == 1);
  }

  SUBCASE("trial reports are deterministic") {
    CampaignConfig config;
    config.trials = 5;
    const TrialReports a = run_trial(config, 3);
    const TrialReports b = run_trial(config, 3);
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
      CHECK(a.reports[i].input_hash == b.reports[i].input_hash);
      CHECK(a.reports[i].worst_slack == b.reports[i].worst_slack);
    }
  }

  SUBCASE("unknown family is rejected") {
    CampaignConfig config;
    config.family = "bogus";
    CHECK_THROWS_AS(run_campaign(config), OutOfRangeError);
  }
}

TEST_CASE("fingerprints distinguish inputs") {
  CHECK(fingerprint(werner(0.25).matrix()) != fingerprint(werner(0.75).matrix()));
  CHECK(fingerprint(werner(0.25).matrix()) == fingerprint(werner(0.25).matrix()));
}
