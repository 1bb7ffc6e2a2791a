// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "oddpair/costs.hpp"
#include "oddpair/params.hpp"

// JSON text for the command-line tool and for preset files.
namespace oddpair::io {

std::string params_to_json(const ParamSet& ps, int indent = 2);
// Throws InvalidParameters on malformed input.
ParamSet params_from_json(const std::string& text);

std::string validation_to_json(const ValidationReport& rep, int indent = 2);
// Array of {preset, phase, M1, S1, I1, analytic_match, notes[]}.
std::string cost_records_to_json(const std::vector<CostRecord>& recs, int indent = 2);
std::string comparison_to_json(int level, const std::vector<ComparisonRow>& rows, int indent = 2);

}  // namespace oddpair::io
