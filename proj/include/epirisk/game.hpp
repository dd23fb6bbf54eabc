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

// Population game on top of the local mean field.
//
// A fraction gamma of agents invests. Given gamma, every agent faces the
// critical cost c^gamma and invests iff its own cost is below it, so the
// population best response is BR(gamma) = P(c <= c^gamma). Equilibria are
// the gamma with gamma = BR(gamma); for a constant cost an interior gamma is
// an equilibrium when agents are indifferent (c = c^gamma).
//
// The critical cost can jump at gamma = 0 or 1 when the RDE is degenerate
// there (e.g. p- = 0 with a supercritical protected population: nobody is
// infected when everyone invests, yet any positive seed density triggers a
// large outbreak). Endpoint equilibria are tested against the closure of the
// best-response graph, using both the value at the endpoint and its
// one-sided limit; stability at an endpoint uses the one-sided limit.

#ifndef EPIRISK_GAME_HPP_
#define EPIRISK_GAME_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epirisk/econ.hpp"
#include "epirisk/execution.hpp"
#include "epirisk/lmf.hpp"

namespace epirisk {

enum class Regime {
  kStrong,   // p- = q- = 0
  kWeak,     // q+ = q-
  kGeneral,
};

Regime classify(const EpidemicParams& params);
std::string to_string(Regime regime);

// Law of the protection cost. Constant holds the absolute cost c; the
// piecewise form holds a continuous, piecewise-linear CDF of c / loss.
class CostModel {
 public:
  static CostModel constant(double cost);
  // Knots (ratio_k, cdf_k): ratios strictly increasing within [0, 1], cdf
  // non-decreasing within [0, 1] and ending at 1.
  static CostModel piecewise(std::vector<double> ratios, std::vector<double> cdf);
  // Uniform c / loss on [lo, hi].
  static CostModel uniform(double lo, double hi);

  bool is_constant() const { return constant_.has_value(); }
  double constant_cost() const { return *constant_; }
  const std::vector<double>& ratios() const { return ratios_; }
  const std::vector<double>& cdf_values() const { return cdf_; }

  // P(c / loss <= t).
  double cdf(double t) const;

  // Total cost paid per capita when the cheapest fraction gamma invests:
  // loss * integral_0^gamma Q(u) du for the quantile function Q of c / loss.
  double investing_cost(double gamma, double loss) const;

  // P(c <= critical) for a given loss.
  double best_response(double critical, double loss) const;

  void validate(double loss) const;

 private:
  CostModel() = default;

  std::optional<double> constant_;
  std::vector<double> ratios_;
  std::vector<double> cdf_;
};

enum class Stability { kStable, kUnstable };
std::string to_string(Stability s);

struct Equilibrium {
  double gamma = 0.0;
  double h = 0.0;
  double p_n = 0.0;
  double p_s = 0.0;
  double c_gamma = 0.0;
  double per_capita_cost = 0.0;
  Stability stability = Stability::kStable;
  bool interior = false;
  // Endpoint equilibrium that holds only through the one-sided limit of the
  // critical cost; its probabilities and cost are the limiting ones.
  bool limit_point = false;
};

struct EquilibriumReport {
  std::vector<Equilibrium> equilibria;  // sorted by gamma
  double social_opt_gamma = 0.0;
  double social_opt_cost = 0.0;
  double price_of_anarchy = 1.0;
  double worst_equilibrium_cost = 0.0;
  bool include_unstable = false;
};

struct GameOptions {
  int grid_points = 1024;
  // Count unstable interior equilibria in the price-of-anarchy worst case.
  bool include_unstable = false;
  Execution execution = Execution::kParallel;
};

// c^gamma on a uniform gamma grid plus the one-sided limits at 0 and 1. The
// grid does not depend on the cost, so one curve serves a whole sweep over
// costs.
class CriticalCostCurve {
 public:
  CriticalCostCurve(EpidemicParams params, AgentEconomy econ, int grid_points = 1024,
                    Execution exec = Execution::kParallel);

  const LocalMeanField& lmf() const { return lmf_; }
  const AgentEconomy& economy() const { return econ_; }

  int size() const { return static_cast<int>(grid_.size()); }
  double gamma_at(int k) const;
  const LmfSolution& at(int k) const { return grid_[k]; }
  const std::vector<LmfSolution>& grid() const { return grid_; }

  const LmfSolution& right_limit_at_zero() const { return lower_limit_; }
  const LmfSolution& left_limit_at_one() const { return upper_limit_; }

  LmfSolution evaluate(double gamma) const;

  // Expected loss part of the per-capita cost:
  // gamma (pS l + pi(pS)) + (1 - gamma) (pN l + pi(pN)).
  double expected_loss(const LmfSolution& sol) const;

  // Largest critical cost over the grid and both limits.
  double max_critical_cost() const;

 private:
  LocalMeanField lmf_;
  AgentEconomy econ_;
  std::vector<LmfSolution> grid_;
  LmfSolution lower_limit_;
  LmfSolution upper_limit_;
};

double social_cost(const EpidemicParams& params, const AgentEconomy& econ,
                   const CostModel& cost, double gamma);

EquilibriumReport find_equilibria(const EpidemicParams& params, const AgentEconomy& econ,
                                  const CostModel& cost, const GameOptions& options = {});
EquilibriumReport find_equilibria(const CriticalCostCurve& curve, const CostModel& cost,
                                  const GameOptions& options = {});

// sup over gamma of c / (social cost at gamma). Strong protection with a
// risk-neutral population only; RegimeError otherwise.
double price_of_anarchy_case1(const EpidemicParams& params, const AgentEconomy& econ,
                              double cost, const GameOptions& options = {});

struct Case2Poa {
  double generic = 1.0;   // worst equilibrium cost / optimal cost
  double formula = 1.0;   // 1 v 1(c0 < c) h(0) l / (c + h(1) l)
  double c0 = 0.0;
  double c1 = 0.0;
  double h0 = 0.0;
  double h1 = 0.0;
  bool agree = true;      // |generic - formula| <= 1e-6
};

// Weak protection with a risk-neutral population only; RegimeError
// otherwise. Emits a warning when the two evaluations disagree.
Case2Poa price_of_anarchy_case2(const EpidemicParams& params, const AgentEconomy& econ,
                                double cost, const GameOptions& options = {});

struct Trajectory {
  std::vector<double> gammas;  // starts with gamma0
  bool converged = false;
  // Set when the iteration settled into a two-cycle instead of converging.
  std::optional<std::pair<double, double>> cycle;

  double final() const { return gammas.back(); }
};

// gamma_{t+1} = P(c <= c^{gamma_t}) until |step| < 1e-9 or max_steps.
Trajectory best_response_dynamics(const EpidemicParams& params, const AgentEconomy& econ,
                                  const CostModel& cost, double gamma0, int max_steps = 1000);

struct TippingReport {
  std::optional<double> threshold;
  double target = 0.0;  // highest equilibrium
  EquilibriumReport equilibria;
};

// Smallest gamma0 (to 1e-7) from which the dynamics reach the highest
// equilibrium. Empty when there is a single equilibrium, when the dynamics
// reach it from 0, or when no seeding reaches it.
TippingReport tipping_analysis(const EpidemicParams& params, const AgentEconomy& econ,
                               const CostModel& cost, const GameOptions& options = {});
std::optional<double> tipping_threshold(const EpidemicParams& params,
                                        const AgentEconomy& econ, const CostModel& cost,
                                        const GameOptions& options = {});

struct AdoptionRow {
  double q_minus = 0.0;
  double cost_ratio = 0.0;
  double gamma = 0.0;
  Stability stability = Stability::kStable;
  double p_n = 0.0;
  double p_s = 0.0;
  double social_cost = 0.0;  // per-capita cost at this equilibrium
  double poa = 1.0;          // price of anarchy of the (q-, c/l) cell
  bool limit_point = false;
};

// Every equilibrium for each (q-, c/l) cell, q- outer, cost inner. Cost
// ratios are multiplied by econ.loss.
std::vector<AdoptionRow> adoption_curve(const EpidemicParams& base, const AgentEconomy& econ,
                                        std::span<const double> q_minus_values,
                                        std::span<const double> cost_ratios,
                                        const GameOptions& options = {});

// Largest stable equilibrium of a cell; nullopt if the cell has none.
std::optional<double> max_stable_gamma(std::span<const AdoptionRow> rows, double q_minus,
                                       double cost_ratio);

struct QualityParadox {
  double cost_ratio = 0.0;
  double q_better = 0.0;      // smaller q-, better protection
  double q_worse = 0.0;
  double gamma_better = 0.0;  // maximal stable adoption
  double gamma_worse = 0.0;
};

// A cell pair where better protection (smaller q-) has strictly lower
// maximal stable adoption; the largest gap found. With require_positive,
// both q- values must be > 0.
std::optional<QualityParadox> find_quality_paradox(std::span<const AdoptionRow> rows,
                                                   bool require_positive = false);

}  // namespace epirisk

#endif  // EPIRISK_GAME_HPP_
