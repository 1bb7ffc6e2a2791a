// SPDX-License-Identifier: Apache-2.0
#include "oddpair/io.hpp"

#include <json.hpp>

#include "oddpair/errors.hpp"
#include "preset_json.hpp"

namespace oddpair::io {

namespace {

nlohmann::json count_json(const OpCount& c) { return {{"M1", c.m}, {"S1", c.s}, {"I1", c.i}}; }

}  // namespace

std::string params_to_json(const ParamSet& ps, int indent) { return detail::preset_to_json(ps).dump(indent); }

ParamSet params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameters(std::string("malformed preset: ") + e.what());
  }
  return detail::preset_from_json(j);
}

std::string validation_to_json(const ValidationReport& rep, int indent) {
  nlohmann::json j;
  j["label"] = rep.label;
  j["ok"] = rep.ok();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : rep.checks) j["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return j.dump(indent);
}

std::string cost_records_to_json(const std::vector<CostRecord>& recs, int indent) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : recs) {
    nlohmann::json e = {{"preset", r.preset}, {"phase", r.phase}};
    e.update(count_json(r.measured));
    e["analytic_match"] = r.analytic_match;
    e["notes"] = r.notes;
    j.push_back(std::move(e));
  }
  return j.dump(indent);
}

std::string comparison_to_json(int level, const std::vector<ComparisonRow>& rows, int indent) {
  nlohmann::json j;
  j["level"] = level;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e = {{"curve", r.curve},
                        {"computed", r.computed},
                        {"p_bits", r.p_bits},
                        {"miller", count_json(r.miller)},
                        {"final_exp", count_json(r.final_exp)},
                        {"total", count_json(r.total)},
                        {"reference_total", count_json(r.reference_total)},
                        {"total_match", r.total == r.reference_total}};
    if (!r.preset.empty()) e["preset"] = r.preset;
    j["rows"].push_back(std::move(e));
  }
  return j.dump(indent);
}

}  // namespace oddpair::io
