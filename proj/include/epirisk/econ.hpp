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

// Expected-utility agent: willingness to pay, risk premium and the
// self-protection threshold.
//
// An agent with wealth w faces a loss l with probability p. The amount m it
// would pay to remove the risk solves
//
//     p u(w - l) + (1 - p) u(w) = u(w - m),
//
// and m = p l + pi(p) defines the risk premium pi. Comparing the two
// lotteries (not investing: loss prob pN; investing at cost c: loss prob pS)
// gives the threshold (pN - pS) l + pi(pN) - pi(pS); the agent invests iff
// c is strictly below it.

#ifndef EPIRISK_ECON_HPP_
#define EPIRISK_ECON_HPP_

#include <string>
#include <variant>

namespace epirisk {

struct RiskNeutral {
  friend bool operator==(const RiskNeutral&, const RiskNeutral&) = default;
};

// u(x) = -exp(-a x) / a
struct Cara {
  double a;
  friend bool operator==(const Cara&, const Cara&) = default;
};

// u(x) = log(x + shift), defined for x > -shift
struct LogUtility {
  double shift;
  friend bool operator==(const LogUtility&, const LogUtility&) = default;
};

// u(x) = x^(1 - rho) / (1 - rho), defined for x > 0
struct Crra {
  double rho;
  friend bool operator==(const Crra&, const Crra&) = default;
};

class Utility {
 public:
  using Kind = std::variant<RiskNeutral, Cara, LogUtility, Crra>;

  Utility() : kind_(RiskNeutral{}) {}
  static Utility risk_neutral() { return Utility(RiskNeutral{}); }
  static Utility cara(double a);
  static Utility log(double shift);
  static Utility crra(double rho);

  double operator()(double wealth) const;

  // Infimum of the domain; -inf for RiskNeutral and Cara.
  double domain_min() const;
  // True when u is finite at domain_min() (closed domain).
  bool domain_closed() const;
  bool in_domain(double wealth) const;

  bool is_risk_neutral() const;
  const Kind& kind() const { return kind_; }
  std::string name() const;

  friend bool operator==(const Utility&, const Utility&) = default;

 private:
  explicit Utility(Kind kind) : kind_(kind) {}

  Kind kind_;
};

struct AgentEconomy {
  Utility utility;
  double wealth = 1.0;
  double loss = 1.0;
  // The agent's own protection cost. Population-level analysis takes costs
  // from a CostModel instead.
  double cost = 0.0;

  // Checks 0 <= cost <= loss and that w - loss - cost is in the utility's
  // domain. Throws DomainError.
  void validate() const;
};

// m(p), by closed form where available.
double willingness_to_pay(const AgentEconomy& econ, double p);

// m(p) by bisection on u(w - m) = E[u], for any utility. Tolerance 1e-12 in
// m, at most 200 iterations. Throws NumericError when the root cannot be
// bracketed.
double willingness_to_pay_numeric(const AgentEconomy& econ, double p);

double risk_premium(const AgentEconomy& econ, double p);

// (pN - pS) l + pi(pN) - pi(pS). Throws DomainError if pS > pN.
double invest_threshold(const AgentEconomy& econ, double p_n, double p_s);

// Agent-level best response: invest iff econ.cost < threshold.
bool invests(const AgentEconomy& econ, double p_n, double p_s);

}  // namespace epirisk

#endif  // EPIRISK_ECON_HPP_
