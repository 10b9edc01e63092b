#pragma once

#include <json.hpp>

#include "ngonstab/beta_certifier.hpp"
#include "ngonstab/operator_positivity.hpp"
#include "ngonstab/reduction.hpp"
#include "ngonstab/spectrum.hpp"

namespace ngonstab::cli {

using nlohmann::json;

json to_json(const ReducedBlocks& blocks, const SymmetryBasis& basis);
json to_json(const MonodromySpectrum& spectrum);
json to_json(const StabilityReport& report);
json to_json(const RegionCertificate& cert, const std::vector<ChainEntry>& chain);
json to_json(const RegionMembership& membership, double beta, double e);
json to_json(const PositivityReport& report);

// Accepts {"checkpoints": [{"beta0": b, "e0": e}, ...]} or the bare array.
// Throws std::invalid_argument on malformed input.
RegionCertificate certificate_from_json(const json& j);

}  // namespace ngonstab::cli
