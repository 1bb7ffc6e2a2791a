// SPDX-License-Identifier: Apache-2.0
// Prints one PASS/FAIL line per acceptance criterion. With a known-deviation
// list the exit status is 0 iff the FAIL set equals the list.
#include <cstdlib>
#include <iostream>
#include <string>

#include "selftest.hpp"

int main(int argc, char** argv) {
  oddpair::selftest::Options opt;
  std::string known_path;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--known" && i + 1 < argc) {
      known_path = argv[++i];
    } else if (a == "--seed" && i + 1 < argc) {
      opt.seed = std::stoull(argv[++i]);
    } else if (a == "--only" && i + 1 < argc) {
      opt.only.push_back(argv[++i]);
    } else {
      std::cerr << "usage: oddpair_acceptance [--known FILE] [--seed N] [--only PREFIX]...\n";
      return 1;
    }
  }
  try {
    auto results = oddpair::selftest::run(opt, [](const auto& r) { std::cout << oddpair::selftest::format(r) << std::endl; });
    if (known_path.empty()) {
      for (const auto& r : results)
        if (!r.pass) return 3;
      return 0;
    }
    auto v = oddpair::selftest::compare(results, oddpair::selftest::read_known(known_path));
    for (const auto& id : v.unexpected_fail) std::cout << "# unexpected FAIL " << id << "\n";
    for (const auto& id : v.unexpected_pass) std::cout << "# unexpected PASS " << id << "\n";
    std::cout << "# " << (v.ok() ? "fail set matches the known deviations" : "fail set differs from the known deviations")
              << "\n";
    return v.ok() ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
