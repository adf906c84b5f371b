#include "negmon/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace negmon {

namespace {

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

bool is_nonneg_integer(const Json& v) {
  if (v.is_number_unsigned()) return true;
  return v.is_number_integer() && v.get<std::int64_t>() >= 0;
}

std::size_t require_positive_int(const Json& j, const char* key) {
  const Json& v = require_field(j, key);
  if (!is_nonneg_integer(v) || v.get<std::uint64_t>() == 0) {
    throw Error(std::string("field \"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

DimSpec dims_from_json(const Json& j, const char* key) {
  const Json& v = require_field(j, key);
  if (!v.is_array() || v.empty()) {
    throw Error(std::string("field \"") + key + "\" must be a non-empty array");
  }
  std::vector<std::size_t> dims;
  for (const auto& d : v) {
    if (!is_nonneg_integer(d) || d.get<std::uint64_t>() == 0) {
      throw Error(std::string("field \"") + key + "\" must contain positive integers");
    }
    dims.push_back(d.get<std::size_t>());
  }
  return DimSpec(std::move(dims));
}

Json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const auto& e : m.entries()) entries.push_back(Json::array({e.real(), e.imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = require_positive_int(j, "rows");
  const std::size_t cols = require_positive_int(j, "cols");
  const Json& entries = require_field(j, "entries");
  if (!entries.is_array() || entries.size() != rows * cols) {
    throw Error("field \"entries\" must be an array of rows*cols [re, im] pairs");
  }
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error("field \"entries\" must contain [re, im] number pairs");
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ComplexMatrix(rows, cols, std::move(values));
}

Json density_to_json(const DensityMatrix& rho) {
  Json j = matrix_to_json(rho.matrix());
  j["dims"] = rho.dims().dims();
  j["transpose_party"] = rho.transpose_party();
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  const DimSpec dims = dims_from_json(j, "dims");
  std::size_t party = 0;
  if (j.contains("transpose_party")) {
    if (!is_nonneg_integer(j.at("transpose_party"))) {
      throw Error("field \"transpose_party\" must be a subsystem index");
    }
    party = j.at("transpose_party").get<std::size_t>();
  }
  return DensityMatrix(m, dims, party);
}

Json instrument_to_json(const Instrument& instr) {
  Json branches = Json::array();
  for (const auto& b : instr.branches()) {
    Json kraus = Json::array();
    for (const auto& k : b.operators) kraus.push_back(matrix_to_json(k));
    branches.push_back(Json{{"kraus", std::move(kraus)}});
  }
  return Json{{"in_dims", instr.in_dims().dims()},
              {"out_dims", instr.out_dims().dims()},
              {"transpose_party", instr.branches().front().in_party},
              {"branches", std::move(branches)}};
}

std::vector<KrausMap> kraus_branches_from_json(const Json& j) {
  const DimSpec in_dims = dims_from_json(j, "in_dims");
  const DimSpec out_dims = dims_from_json(j, "out_dims");
  std::size_t party = 0;
  if (j.contains("transpose_party")) {
    if (!is_nonneg_integer(j.at("transpose_party"))) {
      throw Error("field \"transpose_party\" must be a subsystem index");
    }
    party = j.at("transpose_party").get<std::size_t>();
  }
  const Json& branches = require_field(j, "branches");
  if (!branches.is_array() || branches.empty()) {
    throw Error("field \"branches\" must be a non-empty array");
  }
  std::vector<KrausMap> maps;
  for (const auto& b : branches) {
    const Json& kraus = require_field(b, "kraus");
    if (!kraus.is_array() || kraus.empty()) {
      throw Error("field \"kraus\" must be a non-empty array of matrices");
    }
    KrausMap map{{}, in_dims, out_dims, party, party};
    for (const auto& k : kraus) map.operators.push_back(matrix_from_json(k));
    maps.push_back(std::move(map));
  }
  return maps;
}

Instrument instrument_from_json(const Json& j) {
  return Instrument(kraus_branches_from_json(j));
}

Json ensemble_to_json(const Ensemble& e) {
  Json members = Json::array();
  for (const auto& m : e.members()) {
    members.push_back(Json{{"weight", m.weight}, {"state", density_to_json(m.state)}});
  }
  return Json{{"members", std::move(members)}};
}

Ensemble ensemble_from_json(const Json& j) {
  const Json& members = require_field(j, "members");
  if (!members.is_array() || members.empty()) {
    throw Error("field \"members\" must be a non-empty array");
  }
  std::vector<EnsembleMember> out;
  for (const auto& m : members) {
    const Json& w = require_field(m, "weight");
    if (!w.is_number()) throw Error("field \"weight\" must be a number");
    out.push_back({w.get<double>(), density_from_json(require_field(m, "state"))});
  }
  return Ensemble(std::move(out));
}

Json report_to_json(const ChainReport& report) {
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    steps.push_back(Json{{"label", s.label},
                         {"lhs", s.lhs},
                         {"rhs", s.rhs},
                         {"kind", s.kind == StepKind::Inequality ? "inequality" : "identity"},
                         {"tol", s.tol},
                         {"slack", s.slack},
                         {"ok", s.ok}});
  }
  return Json{{"name", report.name},
              {"passed", report.passed},
              {"worst_slack", finite_or_null(report.worst_slack)},
              {"seed", report.seed},
              {"input_hash", report.input_hash},
              {"steps", std::move(steps)}};
}

Json witness_to_json(const ConvexityWitness& w) {
  return Json{{"lambda", w.lambda},
              {"ln_mixture", w.ln_mixture},
              {"ln_average", w.ln_average},
              {"delta_ln", w.delta_ln},
              {"neg_mixture", w.neg_mixture},
              {"neg_average", w.neg_average},
              {"delta_neg", w.delta_neg},
              {"convexity_violated", w.delta_ln > 0.0}};
}

Json scan_to_json(const WernerScan& scan) {
  Json rows = Json::array();
  for (const auto& r : scan.rows) {
    rows.push_back(Json{{"p", r.p},
                        {"trace_norm", r.trace_norm},
                        {"negativity", r.negativity},
                        {"log_negativity", r.log_negativity}});
  }
  return Json{{"rows", std::move(rows)},
              {"max_closed_form_error", scan.max_closed_form_error},
              {"max_second_difference", finite_or_null(scan.max_second_difference)},
              {"closed_form_ok", scan.closed_form_ok},
              {"concavity_ok", scan.concavity_ok},
              {"passed", scan.passed()}};
}

Json summary_to_json(const CampaignSummary& summary) {
  Json per_check = Json::object();
  for (const auto& [name, stat] : summary.per_check) {
    per_check[name] = Json{{"violations", stat.violations},
                           {"worst_slack", finite_or_null(stat.worst_slack)}};
  }
  Json failures = Json::array();
  for (const auto& f : summary.failures) {
    failures.push_back(Json{{"trial", f.trial},
                            {"seed", f.seed},
                            {"check", f.check},
                            {"detail", f.detail},
                            {"slack", f.slack}});
  }
  return Json{{"family", summary.family},
              {"dims", Json::array({summary.dim_a, summary.dim_b})},
              {"trials", summary.n_trials},
              {"violations", summary.n_violations},
              {"casualties", summary.n_casualties},
              {"worst_slack", finite_or_null(summary.worst_slack)},
              {"per_check", std::move(per_check)},
              {"seed", summary.seed},
              {"failures", std::move(failures)},
              {"passed", summary.n_violations == 0}};
}

}  // namespace negmon
