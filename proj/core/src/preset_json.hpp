// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "oddpair/params.hpp"

namespace oddpair::detail {

// Reads the preset schema {k, x_hex, p_hex, r_hex, t_hex, b, label} plus the
// optional residue, miller, x_form and claimed bit lengths.
ParamSet preset_from_json(const nlohmann::json& j);
nlohmann::json preset_to_json(const ParamSet& ps);

}  // namespace oddpair::detail
