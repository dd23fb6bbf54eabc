// Copyright 2026 The epirisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "epirisk/econ.hpp"
#include "epirisk/errors.hpp"
#include "oracles.hpp"

using namespace epirisk;

namespace {

AgentEconomy make(Utility u, double w, double l) {
  AgentEconomy e;
  e.utility = u;
  e.wealth = w;
  e.loss = l;
  return e;
}

}  // namespace

TEST_CASE("risk neutral willingness to pay is the expected loss") {
  for (const double w : {0.0, 1.0, 7.0}) {
    CHECK(std::abs(willingness_to_pay(make(Utility::risk_neutral(), w, 1.0), 0.3) - 0.3) < 1e-15);
    CHECK(risk_premium(make(Utility::risk_neutral(), w, 2.0), 0.4) == doctest::Approx(0.0));
  }
}

TEST_CASE("cara golden values") {
  const AgentEconomy e = make(Utility::cara(1.0), 1.0, 1.0);
  CHECK(std::abs(willingness_to_pay(e, 0.5) - oracle::kCaraM) < 1e-12);
  CHECK(std::abs(willingness_to_pay_numeric(e, 0.5) - oracle::kCaraM) < 1e-8);
  CHECK(std::abs(risk_premium(e, 0.5) - oracle::kCaraPi) < 1e-12);
  CHECK(std::abs(oracle::cara_wtp(1.0, 1.0, 1.0, 0.5) - oracle::kCaraM) < 1e-15);
  const AgentEconomy e2 = make(Utility::cara(1.0), 2.0, 1.0);
  CHECK(std::abs(invest_threshold(e2, 0.5, 0.1) - oracle::kCaraThreshold) < 1e-8);
}

TEST_CASE("numeric and closed-form willingness to pay agree") {
  const Utility us[] = {Utility::risk_neutral(), Utility::cara(0.5), Utility::cara(3.0),
                        Utility::log(0.5), Utility::crra(2.0), Utility::crra(0.5)};
  for (const auto& u : us) {
    const AgentEconomy e = make(u, 3.0, 1.5);
    for (const double p : {0.0, 0.05, 0.3, 0.7, 1.0}) {
      CHECK(std::abs(willingness_to_pay(e, p) - willingness_to_pay_numeric(e, p)) < 1e-8);
    }
  }
}

TEST_CASE("no risk, no payment; certain loss costs the loss") {
  for (const auto& u : {Utility::cara(2.0), Utility::log(0.0), Utility::crra(3.0)}) {
    const AgentEconomy e = make(u, 2.0, 1.0);
    CHECK(std::abs(willingness_to_pay(e, 0.0)) < 1e-12);
    CHECK(std::abs(willingness_to_pay(e, 1.0) - 1.0) < 1e-12);
    CHECK(std::abs(risk_premium(e, 1.0)) < 1e-12);
  }
}

TEST_CASE("risk averse agents pay a nonnegative premium increasing in p") {
  for (const auto& u : {Utility::cara(1.0), Utility::log(0.2), Utility::crra(1.5)}) {
    const AgentEconomy e = make(u, 2.0, 1.0);
    double prev = -1.0;
    for (int k = 0; k <= 50; ++k) {
      const double p = k / 50.0;
      const double m = willingness_to_pay(e, p);
      CHECK(m >= prev - 1e-12);
      CHECK(risk_premium(e, p) >= -1e-12);
      prev = m;
    }
  }
}

TEST_CASE("investment threshold") {
  const AgentEconomy rn = make(Utility::risk_neutral(), 1.0, 1.0);
  CHECK(std::abs(invest_threshold(rn, 0.6, 0.2) - 0.4) < 1e-15);
  for (const auto& u : {Utility::cara(1.0), Utility::log(0.0)}) {
    const AgentEconomy e = make(u, 2.0, 1.0);
    CHECK(std::abs(invest_threshold(e, 0.37, 0.37)) < 1e-12);
  }
  CHECK_THROWS_AS(invest_threshold(rn, 0.2, 0.6), DomainError);
  AgentEconomy cheap = rn;
  cheap.cost = 0.3;
  CHECK(invests(cheap, 0.6, 0.2));
  cheap.cost = 0.5;
  CHECK_FALSE(invests(cheap, 0.6, 0.2));
}

TEST_CASE("economy validation") {
  AgentEconomy e = make(Utility::log(0.0), 1.0, 1.0);
  CHECK_THROWS_AS(e.validate(), DomainError);  // log(0) at w - l
  e.wealth = 2.0;
  CHECK_NOTHROW(e.validate());
  e.cost = 1.5;
  CHECK_THROWS_AS(e.validate(), DomainError);
  CHECK_THROWS_AS(Utility::cara(0.0), DomainError);
  CHECK_THROWS_AS(Utility::crra(1.0), DomainError);
}
