// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace oddpair::selftest {

// One acceptance line. Ids look like "C1.bilinearity.k9-paper-128": the
// criterion number, the property and the preset or field it covers.
struct Result {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 1;
  std::vector<std::string> only;  // id prefixes; empty runs everything
  std::string preset_dir;         // falls back to ODDPAIR_PRESET_DIR
};

std::vector<Result> run(const Options& opt, const std::function<void(const Result&)>& sink = {});

std::string format(const Result& r);

// One id per line; blank lines and '#' comments are ignored.
std::set<std::string> read_known(const std::string& path);

struct Verdict {
  std::vector<std::string> unexpected_fail, unexpected_pass;
  bool ok() const { return unexpected_fail.empty() && unexpected_pass.empty(); }
};

// Compares the FAIL set with the known list. A known id that was not run
// is ignored.
Verdict compare(const std::vector<Result>& results, const std::set<std::string>& known);

}  // namespace oddpair::selftest
