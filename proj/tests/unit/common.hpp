// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "oddpair/curve.hpp"
#include "oddpair/params.hpp"

namespace testutil {

inline const oddpair::ParamSet& toy(int k) {
  for (const auto& ps : oddpair::toy_presets())
    if (ps.k == k) return ps;
  throw std::runtime_error("no toy preset for k=" + std::to_string(k));
}

// Contexts are cached; building one samples generators.
inline const oddpair::PairingContext& toy_context(int k) {
  static std::unique_ptr<oddpair::PairingContext> c9, c15, c27;
  auto& slot = k == 9 ? c9 : k == 15 ? c15 : c27;
  if (!slot) slot = oddpair::make_context(toy(k), 7);
  return *slot;
}

}  // namespace testutil
