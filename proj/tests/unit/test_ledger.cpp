// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "oddpair/ledger.hpp"

using namespace oddpair;

TEST_CASE("phases nest and sum") {
  CostLedger l("demo");
  l.mul(2);
  {
    CostLedger::Phase a(l, "outer");
    l.sqr();
    {
      CostLedger::Phase b(l, "inner");
      l.inv();
      CHECK(l.phase() == "outer/inner");
    }
    l.mul();
  }
  CHECK(l.phase().empty());
  CHECK(l.total() == OpCount{3, 1, 1});
  CHECK(l.phase_total("outer") == OpCount{1, 1, 1});
  CHECK(l.phase_total("outer/inner") == OpCount{0, 0, 1});
  CHECK(l.phase_total("out") == OpCount{});
  CHECK(l.scope() == "demo");
}

TEST_CASE("snapshot and diff") {
  CostLedger l;
  auto a = l.snapshot();
  l.mul(5);
  l.add(7);
  CHECK(CostLedger::diff(a, l.snapshot()) == OpCount{5, 0, 0});
  CHECK(l.additions() == 7);
}

TEST_CASE("copies keep counting independently") {
  CostLedger l;
  l.mul();
  CostLedger c = l;
  c.mul();
  CHECK(l.total().m == 1);
  CHECK(c.total().m == 2);
  CHECK(c.phases().at("").m == 2);
}

TEST_CASE("formatting") {
  CHECK((OpCount{3024, 3060, 1}).str() == "I1+3024M1+3060S1");
  CHECK(OpDelta::between({10, 0, 0}, {7, 2, 0}).str().find("-3M1") != std::string::npos);
  CHECK(OpDelta::between({1, 1, 1}, {1, 1, 1}).zero());
}
