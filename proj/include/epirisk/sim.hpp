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

// Ground truth for the epidemic layer on finite graphs.
//
// One realization draws D_i (invest), a direct-loss seed phi_i with
// probability p- or p+ by D_i, and for every directed edge j -> i an open
// indicator theta_ji with probability q- or q+ by the receiver's D_i. The
// infected set is the minimal solution of
//
//   1 - X_i = (1 - phi_i) prod_{j ~ i} (1 - theta_ji X_j),
//
// i.e. the nodes reachable from a seed along open directed edges.
//
// Random variables come from CounterRng(seed, trial) with kinds 0 (D_i),
// 1 (phi_i) and 2 (theta, indexed by the CSR slot of the edge in the
// sender's list), so two runs with the same seed share every uniform.

#ifndef EPIRISK_SIM_HPP_
#define EPIRISK_SIM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "epirisk/execution.hpp"
#include "epirisk/graph.hpp"
#include "epirisk/lmf.hpp"

namespace epirisk {

struct SimConfig {
  EpidemicParams params;  // degree law unused
  double gamma = 0.0;
  // Explicit investment vector; when empty D_i ~ Bernoulli(gamma).
  std::vector<std::uint8_t> investment;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  // Also estimate P(X_i = 1) for every node.
  bool per_node = false;

  void validate(NodeId n) const;
};

// Conditional means are ratio estimators pooled over trials (infected
// investors / investors), so
//   mean_infected = f * mean_given_s + (1 - f) * mean_given_n
// holds exactly for the pooled investment fraction f. They are NaN when no
// node of that state was ever drawn. Standard errors are 0 for one trial.
struct SimOutcome {
  double mean_infected = 0.0;
  double mean_infected_given_s = 0.0;
  double mean_infected_given_n = 0.0;
  double se_infected = 0.0;
  double se_given_s = 0.0;
  double se_given_n = 0.0;
  double invest_fraction = 0.0;
  std::uint64_t trials = 0;
  std::vector<double> node_rate;  // with per_node
  std::vector<double> node_se;
};

SimOutcome run_epidemic(const Graph& graph, const SimConfig& config,
                        Execution exec = Execution::kParallel);

// Fresh G(n, lambda / n) per trial (graph seed split from config.seed and the
// trial index), one epidemic on each. per_node is ignored.
SimOutcome run_er_ensemble(NodeId n, double lambda, const SimConfig& config,
                           Execution exec = Execution::kParallel);

struct ExactOptions {
  // Verify on every outcome that the reachable set solves the recursion and
  // that removing any infected node breaks it. Throws NumericError if not.
  bool check_minimality = false;
  Execution execution = Execution::kParallel;
};

inline constexpr int kExactBudgetBits = 24;

// Exact P(X_i = 1) by enumerating every joint outcome of the seeds and the
// directed edge indicators. Requires n + 2 * edges <= 24.
std::vector<double> exact_tiny(const Graph& graph, const EpidemicParams& params,
                               std::span<const std::uint8_t> investment,
                               const ExactOptions& options = {});

struct TreeDpResult {
  double y_root = 0.0;  // P(root infected from below)
  double x_root = 0.0;  // P(root infected); equals y_root, the root has no parent
  std::vector<double> y;  // per node, breadth-first order
};

// Bottom-up y_i = gamma (1 - (1 - p-) prod (1 - q- y_k))
//              + (1 - gamma) (1 - (1 - p+) prod (1 - q+ y_k)).
TreeDpResult tree_dp(const TreeGraph& tree, const EpidemicParams& params, double gamma);

}  // namespace epirisk

#endif  // EPIRISK_SIM_HPP_
