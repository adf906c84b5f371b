#pragma once

#include <json.hpp>

#include "negmon/channels.hpp"
#include "negmon/states.hpp"
#include "negmon/verifier.hpp"

namespace negmon {

using Json = nlohmann::json;

// Matrix interchange format: {"rows": n, "cols": n, "entries": [[re, im], ...]}
// row-major. Round-trips preserve values to full double precision.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// Matrix format plus "dims": [..] and "transpose_party": index.
Json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

// {"in_dims": [..], "out_dims": [..], "branches": [{"kraus": [matrix, ...]}, ...]}
// with an optional "transpose_party" designating party A on both sides.
Json instrument_to_json(const Instrument& instr);
Instrument instrument_from_json(const Json& j);

// The branch list alone, without the trace-preservation validation; lets the
// CLI classify instruments instead of rejecting them.
std::vector<KrausMap> kraus_branches_from_json(const Json& j);

// {"members": [{"weight": p, "state": <density matrix>}, ...]}
Json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& j);

Json report_to_json(const ChainReport& report);
Json witness_to_json(const ConvexityWitness& w);
Json scan_to_json(const WernerScan& scan);
Json summary_to_json(const CampaignSummary& summary);

}  // namespace negmon
