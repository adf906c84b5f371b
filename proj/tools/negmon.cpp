// negmon: negativity / logarithmic negativity toolkit and PPT-monotonicity
// verification harness. JSON goes to stdout; human-readable tables go to
// stderr under --verbose. Exit codes: 0 = all pass, 1 = violation found,
// 2 = input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "negmon/json_io.hpp"
#include "negmon/random.hpp"

namespace {

using negmon::Json;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw negmon::Error("cannot open file \"" + path + "\"");
  Json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw negmon::Error("cannot write file \"" + path + "\"");
  out << text;
}

std::uint64_t parse_seed_text(const std::string& text, const char* what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos, 0);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw negmon::Error(std::string(what) + " must be an integer (decimal or 0x hex)");
  }
}

// --seed on the command line, overridden by the NEGMON_SEED environment
// variable, falling back to the fixed default for reproducibility.
std::uint64_t resolve_seed(const std::string& seed_text) {
  std::uint64_t seed = negmon::kDefaultSeed;
  if (!seed_text.empty()) seed = parse_seed_text(seed_text, "--seed");
  if (const char* env = std::getenv("NEGMON_SEED")) {
    seed = parse_seed_text(env, "NEGMON_SEED");
  }
  return seed;
}

void parse_dims(const std::string& text, std::size_t& dim_a, std::size_t& dim_b) {
  const auto bad = [&] { throw negmon::Error("--dims must look like 2x2 (got \"" + text + "\")"); };
  try {
    const auto xpos = text.find('x');
    std::size_t pos = 0;
    if (xpos == std::string::npos) {
      dim_a = std::stoul(text, &pos);
      if (pos != text.size()) bad();
      dim_b = 1;
    } else {
      dim_a = std::stoul(text.substr(0, xpos), &pos);
      if (pos != xpos) bad();
      const std::string rest = text.substr(xpos + 1);
      dim_b = std::stoul(rest, &pos);
      if (pos != rest.size()) bad();
    }
  } catch (const negmon::Error&) {
    throw;
  } catch (const std::exception&) {
    bad();
  }
  if (dim_a == 0 || dim_b == 0) bad();
}

int cmd_compute(const std::string& path, bool nats, bool raw) {
  const negmon::DensityMatrix rho = negmon::density_from_json(read_json_file(path));
  const double tn = negmon::trace_norm_hermitian(rho.partial_transpose());
  Json out{{"negativity", negmon::negativity(rho)},
           {"log_negativity", negmon::log_negativity(rho)},
           {"ppt", negmon::is_ppt(rho)},
           {"trace_norm_pt", tn}};
  if (nats) out["log_negativity_nats"] = negmon::log_negativity(rho) * std::log(2.0);
  if (raw) {
    out["negativity_raw"] = negmon::negativity_raw(rho);
    out["log_negativity_raw"] = negmon::log_negativity_raw(rho);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_verify(const negmon::CampaignConfig& config, const std::string& json_path, bool verbose) {
  const negmon::CampaignSummary summary = negmon::run_campaign(config);
  const Json out = negmon::summary_to_json(summary);
  std::cout << out.dump(2) << "\n";
  if (!json_path.empty()) write_text_file(json_path, out.dump(2) + "\n");
  if (verbose) {
    std::fprintf(stderr, "campaign: family=%s dims=%zux%zu trials=%zu seed=%llu\n",
                 summary.family.c_str(), summary.dim_a, summary.dim_b, summary.n_trials,
                 static_cast<unsigned long long>(summary.seed));
    for (const auto& [name, stat] : summary.per_check) {
      std::fprintf(stderr, "  %-22s violations=%zu worst_slack=%.3e\n", name.c_str(),
                   stat.violations, stat.worst_slack);
    }
    std::fprintf(stderr, "  violations=%zu casualties=%zu\n", summary.n_violations,
                 summary.n_casualties);
  }
  return summary.n_violations == 0 ? 0 : 1;
}

int cmd_werner_scan(std::size_t points, const std::string& csv_path, bool verbose) {
  if (points < 2) throw negmon::Error("--points must be at least 2");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  const negmon::WernerScan scan = negmon::werner_scan(grid);
  std::cout << negmon::scan_to_json(scan).dump(2) << "\n";
  if (!csv_path.empty()) {
    std::string csv = "p,tracenorm,negativity,log_negativity\n";
    char line[160];
    for (const auto& r : scan.rows) {
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", r.p, r.trace_norm,
                    r.negativity, r.log_negativity);
      csv += line;
    }
    write_text_file(csv_path, csv);
  }
  if (verbose) {
    std::fprintf(stderr, "werner scan: %zu points, max closed-form error %.3e, max second difference %.3e\n",
                 scan.rows.size(), scan.max_closed_form_error, scan.max_second_difference);
  }
  return scan.passed() ? 0 : 1;
}

int cmd_witness(const std::string& path1, const std::string& path2, double lambda) {
  const negmon::DensityMatrix rho1 = negmon::density_from_json(read_json_file(path1));
  const negmon::DensityMatrix rho2 = negmon::density_from_json(read_json_file(path2));
  const negmon::ConvexityWitness w = negmon::convexity_witness(rho1, rho2, lambda);
  std::cout << negmon::witness_to_json(w).dump(2) << "\n";
  return 0;
}

int cmd_choi_check(const std::string& path) {
  const Json j = read_json_file(path);
  const std::vector<negmon::KrausMap> branches = negmon::kraus_branches_from_json(j);

  Json branch_reports = Json::array();
  bool all_ok = true;
  for (const auto& b : branches) {
    const bool cp = negmon::is_cp(negmon::choi(b));
    const bool ppt = negmon::is_ppt_map(b);
    all_ok = all_ok && cp && ppt;
    branch_reports.push_back(Json{{"cp", cp}, {"ppt", ppt}});
  }

  negmon::ComplexMatrix total(branches.front().in_dim(), branches.front().in_dim());
  for (const auto& b : branches) {
    for (const auto& k : b.operators) total += dagger(k) * k;
  }
  total -= negmon::ComplexMatrix::identity(total.rows());
  const bool trace_preserving = total.max_norm() <= negmon::kInstrTol;
  all_ok = all_ok && trace_preserving;

  Json out{{"branches", std::move(branch_reports)}, {"trace_preserving", trace_preserving}};
  std::cout << out.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_marker_check(const std::string& path, bool random, std::size_t trials, std::size_t members,
                     std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
  Json reports = Json::array();
  std::size_t violations = 0;
  if (random) {
    for (std::size_t t = 0; t < trials; ++t) {
      const negmon::Ensemble e = negmon::random_ensemble(negmon::DimSpec{dim_a, dim_b}, members,
                                                         negmon::derive_seed(seed, t));
      negmon::ChainReport report = negmon::check_marker_inequality(e);
      report.seed = negmon::derive_seed(seed, t);
      if (!report.passed) ++violations;
      reports.push_back(negmon::report_to_json(report));
    }
  } else {
    if (path.empty()) throw negmon::Error("marker-check needs an ensemble file or --random");
    const negmon::Ensemble e = negmon::ensemble_from_json(read_json_file(path));
    const negmon::ChainReport report = negmon::check_marker_inequality(e);
    if (!report.passed) ++violations;
    reports.push_back(negmon::report_to_json(report));
  }
  Json out{{"reports", std::move(reports)}, {"violations", violations}};
  std::cout << out.dump(2) << "\n";
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"negativity and logarithmic negativity monotonicity toolkit"};
  app.require_subcommand(1);

  // compute
  std::string compute_path;
  bool compute_nats = false;
  bool compute_raw = false;
  auto* compute = app.add_subcommand("compute", "negativity / log-negativity of a state file");
  compute->add_option("state", compute_path, "density matrix JSON file")->required();
  compute->add_flag("--nats", compute_nats, "also report the log-negativity in natural-log units");
  compute->add_flag("--raw", compute_raw, "include unclamped values for slack diagnostics");

  // verify
  negmon::CampaignConfig config;
  std::string verify_dims = "2x2";
  std::string verify_seed_text;
  std::string verify_json_path;
  bool verify_verbose = false;
  auto* verify = app.add_subcommand("verify", "randomized monotonicity campaign");
  verify->add_option("--trials", config.trials, "number of seeded trials")->capture_default_str();
  verify->add_option("--dims", verify_dims, "bipartite dimensions, e.g. 2x2")->capture_default_str();
  verify->add_option("--family", config.family, "instrument family: locc1, local, or eq7")
      ->check(CLI::IsMember({"locc1", "local", "eq7"}))
      ->capture_default_str();
  verify->add_option("--seed", verify_seed_text, "campaign seed (default 0xCAFE)");
  verify->add_option("--outcomes", config.max_outcomes, "max instrument outcomes")
      ->capture_default_str();
  verify->add_option("--kraus", config.kraus_per_branch, "Kraus operators per branch (local family)")
      ->capture_default_str();
  verify->add_option("--rank", config.max_rank, "state rank cap (0 = full rank)")
      ->capture_default_str();
  verify->add_option("--json", verify_json_path, "also write the summary to this file");
  verify->add_flag("--verbose", verify_verbose, "human-readable table on stderr");

  // werner-scan
  std::size_t scan_points = 101;
  std::string scan_csv;
  bool scan_verbose = false;
  auto* scan = app.add_subcommand("werner-scan", "Werner family closed form and concavity scan");
  scan->add_option("--points", scan_points, "uniform grid size on [0, 1]")->capture_default_str();
  scan->add_option("--csv", scan_csv, "write p,tracenorm,negativity,log_negativity rows here");
  scan->add_flag("--verbose", scan_verbose, "summary line on stderr");

  // witness
  std::string witness_state1;
  std::string witness_state2;
  double witness_lambda = 0.5;
  auto* witness = app.add_subcommand("witness", "convexity violation witness for a two-state mix");
  witness->add_option("--state1", witness_state1, "first state JSON file")->required();
  witness->add_option("--state2", witness_state2, "second state JSON file")->required();
  witness->add_option("--lambda", witness_lambda, "mixing weight of state1")->capture_default_str();

  // choi-check
  std::string choi_path;
  auto* choi = app.add_subcommand("choi-check", "CP/PPT classification of an instrument file");
  choi->add_option("instrument", choi_path, "instrument JSON file")->required();

  // marker-check
  std::string marker_path;
  bool marker_random = false;
  std::size_t marker_trials = 1;
  std::size_t marker_members = 3;
  std::string marker_dims = "2x2";
  std::string marker_seed_text;
  auto* marker = app.add_subcommand("marker-check", "marker-state inequality check");
  marker->add_option("ensemble", marker_path, "ensemble JSON file");
  marker->add_flag("--random", marker_random, "generate random ensembles instead of reading a file");
  marker->add_option("--trials", marker_trials, "random ensembles to draw")->capture_default_str();
  marker->add_option("--members", marker_members, "members per random ensemble")
      ->capture_default_str();
  marker->add_option("--dims", marker_dims, "bipartite dimensions for random ensembles")
      ->capture_default_str();
  marker->add_option("--seed", marker_seed_text, "seed (default 0xCAFE)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) return cmd_compute(compute_path, compute_nats, compute_raw);
    if (verify->parsed()) {
      parse_dims(verify_dims, config.dim_a, config.dim_b);
      config.seed = resolve_seed(verify_seed_text);
      return cmd_verify(config, verify_json_path, verify_verbose);
    }
    if (scan->parsed()) return cmd_werner_scan(scan_points, scan_csv, scan_verbose);
    if (witness->parsed()) return cmd_witness(witness_state1, witness_state2, witness_lambda);
    if (choi->parsed()) return cmd_choi_check(choi_path);
    if (marker->parsed()) {
      std::size_t dim_a = 2;
      std::size_t dim_b = 2;
      parse_dims(marker_dims, dim_a, dim_b);
      return cmd_marker_check(marker_path, marker_random, marker_trials, marker_members, dim_a,
                              dim_b, resolve_seed(marker_seed_text));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
