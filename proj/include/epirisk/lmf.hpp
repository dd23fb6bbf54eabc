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

// Local mean field solution of the epidemic layer.
//
// Each agent invests (state S) independently with probability gamma. On the
// limiting Galton-Watson tree, the indicator that a node is infected from
// its own subtree is Bernoulli(h), where h is a fixed point of
//
//   f(x, gamma) = 1 - gamma (1 - p-) G*(1 - q- x)
//                   - (1 - gamma) (1 - p+) G*(1 - q+ x)
//
// with G* the generating function of the offspring law P*. The map
// x -> f(x, gamma) is non-decreasing and concave, so g(x) = f(x) - x has a
// single root in [0, 1] whenever f(0, gamma) > 0. When f(0, gamma) = 0 the
// point 0 is always a root and a second, positive root may exist; we call
// that case degenerate.
//
// The root agent's loss probabilities use the degree law P itself:
//
//   pN = 1 - (1 - p+) G(1 - q+ h),   pS = 1 - (1 - p-) G(1 - q- h).

#ifndef EPIRISK_LMF_HPP_
#define EPIRISK_LMF_HPP_

#include "epirisk/dist.hpp"
#include "epirisk/econ.hpp"

namespace epirisk {

struct EpidemicParams {
  double p_plus = 0.0;   // direct loss, state N
  double p_minus = 0.0;  // direct loss, state S
  double q_plus = 0.0;   // contagion onto an N neighbour
  double q_minus = 0.0;  // contagion onto an S neighbour
  DegreeDist degree = DegreeDist::regular(0);

  // Throws DomainError unless all four are probabilities with p- <= p+ and
  // q- <= q+.
  void validate() const;
};

enum class RootChoice {
  kSmallest,  // the physical no-seed solution in the degenerate case
  kLargest,   // limit of h(gamma') as gamma' approaches a degenerate gamma
};

struct RdeSolution {
  double h = 0.0;
  bool degenerate = false;
  int iterations = 0;
  double residual = 0.0;  // |f(h) - h|
};

struct LossProbs {
  double h = 0.0;
  double p_n = 0.0;
  double p_s = 0.0;
};

struct LmfSolution {
  double gamma = 0.0;
  double h = 0.0;
  double p_n = 0.0;
  double p_s = 0.0;
  double c_gamma = 0.0;
  bool degenerate = false;
};

// Caches the offspring law so repeated solves over a gamma grid do not
// rebuild it. Immutable; safe to share across threads.
class LocalMeanField {
 public:
  explicit LocalMeanField(EpidemicParams params);

  const EpidemicParams& params() const { return params_; }
  const DegreeDist& offspring() const { return offspring_; }

  // f(x, gamma).
  double rde_map(double x, double gamma) const;

  RdeSolution solve(double gamma, RootChoice choice = RootChoice::kSmallest) const;

  // Applies rde_map `depth` times starting from x0.
  double iterate(double gamma, double x0, int depth) const;

  LossProbs loss_probs_at(double h) const;
  LossProbs loss_probs(double gamma, RootChoice choice = RootChoice::kSmallest) const;

  LmfSolution critical_cost(const AgentEconomy& econ, double gamma,
                            RootChoice choice = RootChoice::kSmallest) const;

 private:
  EpidemicParams params_;
  DegreeDist offspring_;
};

RdeSolution solve_rde(const EpidemicParams& params, double gamma);
LossProbs loss_probs(const EpidemicParams& params, double gamma);
LmfSolution critical_cost(const EpidemicParams& params, const AgentEconomy& econ,
                          double gamma);

}  // namespace epirisk

#endif  // EPIRISK_LMF_HPP_
