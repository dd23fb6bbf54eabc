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

#include "epirisk/sim.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "epirisk/errors.hpp"
#include "epirisk/netgen.hpp"
#include "epirisk/rng.hpp"

namespace epirisk {
namespace {

constexpr std::uint32_t kInvestDraw = 0;
constexpr std::uint32_t kSeedDraw = 1;
constexpr std::uint32_t kEdgeDraw = 2;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TrialCounts {
  std::uint64_t infected = 0;
  std::uint64_t infected_s = 0;
  std::uint64_t invested = 0;
};

// Scratch buffers for one realization; one instance per thread.
class TrialRunner {
 public:
  TrialRunner(const Graph& graph, const SimConfig& config)
      : graph_(graph),
        config_(config),
        state_(graph.num_nodes()),
        infected_(graph.num_nodes()) {
    queue_.reserve(graph.num_nodes());
  }

  TrialCounts run(std::uint64_t trial) {
    const auto& p = config_.params;
    const CounterRng rng(config_.seed, trial);
    const NodeId n = graph_.num_nodes();
    const bool explicit_d = !config_.investment.empty();
    TrialCounts c;
    queue_.clear();
    for (NodeId i = 0; i < n; ++i) {
      const bool s = explicit_d ? config_.investment[i] != 0
                                : rng.uniform(kInvestDraw, i) < config_.gamma;
      state_[i] = s ? 1 : 0;
      c.invested += s ? 1 : 0;
      const bool seed = rng.uniform(kSeedDraw, i) < (s ? p.p_minus : p.p_plus);
      infected_[i] = seed ? 1 : 0;
      if (seed) queue_.push_back(i);
    }
    const auto& offsets = graph_.offsets();
    const auto& adj = graph_.adjacency();
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const NodeId j = queue_[head];
      for (std::size_t e = offsets[j]; e < offsets[j + 1]; ++e) {
        const NodeId i = adj[e];
        if (infected_[i]) continue;
        const double q = state_[i] ? p.q_minus : p.q_plus;
        if (rng.uniform(kEdgeDraw, e) < q) {
          infected_[i] = 1;
          queue_.push_back(i);
        }
      }
    }
    c.infected = queue_.size();
    for (const NodeId i : queue_) c.infected_s += state_[i];
    return c;
  }

  const std::vector<std::uint8_t>& infected() const { return infected_; }

 private:
  const Graph& graph_;
  const SimConfig& config_;
  std::vector<std::uint8_t> state_;
  std::vector<std::uint8_t> infected_;
  std::vector<NodeId> queue_;
};

// Ratio estimator sum(a) / sum(b) with a delta-method standard error.
std::pair<double, double> ratio_estimate(const std::vector<TrialCounts>& counts, NodeId n,
                                         bool invested_side) {
  const auto num = [&](const TrialCounts& c) {
    return static_cast<double>(invested_side ? c.infected_s : c.infected - c.infected_s);
  };
  const auto den = [&](const TrialCounts& c) {
    return static_cast<double>(invested_side ? c.invested : n - c.invested);
  };
  double sa = 0.0;
  double sb = 0.0;
  for (const auto& c : counts) {
    sa += num(c);
    sb += den(c);
  }
  if (sb <= 0.0) return {kNaN, kNaN};
  const double r = sa / sb;
  const auto t = static_cast<double>(counts.size());
  if (counts.size() < 2) return {r, 0.0};
  double ss = 0.0;
  for (const auto& c : counts) {
    const double d = num(c) - r * den(c);
    ss += d * d;
  }
  const double mean_b = sb / t;
  return {r, std::sqrt(ss / (t * (t - 1.0))) / mean_b};
}

SimOutcome summarize(const std::vector<TrialCounts>& counts, NodeId n) {
  SimOutcome out;
  out.trials = counts.size();
  const auto t = static_cast<double>(counts.size());
  const auto nd = static_cast<double>(n);
  double sum = 0.0;
  double invested = 0.0;
  for (const auto& c : counts) {
    sum += static_cast<double>(c.infected) / nd;
    invested += static_cast<double>(c.invested);
  }
  out.mean_infected = sum / t;
  out.invest_fraction = invested / (t * nd);
  if (counts.size() >= 2) {
    double ss = 0.0;
    for (const auto& c : counts) {
      const double d = static_cast<double>(c.infected) / nd - out.mean_infected;
      ss += d * d;
    }
    out.se_infected = std::sqrt(ss / (t - 1.0) / t);
  }
  std::tie(out.mean_infected_given_s, out.se_given_s) = ratio_estimate(counts, n, true);
  std::tie(out.mean_infected_given_n, out.se_given_n) = ratio_estimate(counts, n, false);
  return out;
}

void fill_node_rates(SimOutcome& out, const std::vector<std::uint64_t>& node_counts) {
  const auto t = static_cast<double>(out.trials);
  out.node_rate.resize(node_counts.size());
  out.node_se.resize(node_counts.size());
  for (std::size_t i = 0; i < node_counts.size(); ++i) {
    const double r = static_cast<double>(node_counts[i]) / t;
    out.node_rate[i] = r;
    out.node_se[i] = std::sqrt(r * (1.0 - r) / t);
  }
}

}  // namespace

void SimConfig::validate(NodeId n) const {
  params.validate();
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma outside [0, 1]");
  if (!investment.empty() && investment.size() != n) {
    std::ostringstream os;
    os << "investment vector has " << investment.size() << " entries for " << n << " nodes";
    throw DomainError(os.str());
  }
  if (n == 0) throw DomainError("graph has no nodes");
}

SimOutcome run_epidemic(const Graph& graph, const SimConfig& config, Execution exec) {
  config.validate(graph.num_nodes());
  const NodeId n = graph.num_nodes();
  std::vector<TrialCounts> counts(config.trials);
  std::vector<std::uint64_t> node_counts(config.per_node ? n : 0, 0);

  if (exec == Execution::kSerial) {
    TrialRunner runner(graph, config);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      counts[t] = runner.run(t);
      if (config.per_node) {
        for (NodeId i = 0; i < n; ++i) node_counts[i] += runner.infected()[i];
      }
    }
  } else {
    const auto trials = static_cast<std::int64_t>(config.trials);
#pragma omp parallel
    {
      TrialRunner runner(graph, config);
      std::vector<std::uint64_t> local(node_counts.size(), 0);
#pragma omp for schedule(static)
      for (std::int64_t t = 0; t < trials; ++t) {
        counts[static_cast<std::size_t>(t)] = runner.run(static_cast<std::uint64_t>(t));
        if (config.per_node) {
          for (NodeId i = 0; i < n; ++i) local[i] += runner.infected()[i];
        }
      }
      // integer sums: the merge order does not matter
#pragma omp critical(epirisk_sim_merge)
      for (std::size_t i = 0; i < local.size(); ++i) node_counts[i] += local[i];
    }
  }
  SimOutcome out = summarize(counts, n);
  if (config.per_node) fill_node_rates(out, node_counts);
  return out;
}

SimOutcome run_er_ensemble(NodeId n, double lambda, const SimConfig& config, Execution exec) {
  config.validate(n);
  if (!config.investment.empty()) {
    throw DomainError("the ER ensemble draws D_i from gamma; no explicit vector");
  }
  if (!(lambda >= 0.0 && lambda <= static_cast<double>(n))) {
    throw DomainError("ER ensemble needs 0 <= lambda <= n");
  }
  SimConfig single = config;
  single.per_node = false;
  std::vector<TrialCounts> counts(config.trials);
  for_each_index(counts.size(), exec, [&](std::size_t t) {
    const Graph g = gen_er(n, lambda, split_seed(config.seed, t));
    TrialRunner runner(g, single);
    counts[t] = runner.run(t);
  });
  return summarize(counts, n);
}

// ------------------------------------------------------------- exact_tiny

namespace {

struct TinyModel {
  int n = 0;
  int slots = 0;  // directed edges
  std::vector<int> owner;       // slot -> sender
  std::vector<int> target;      // slot -> receiver
  std::vector<int> reverse;     // slot (j -> i) -> slot (i -> j)
  std::vector<std::uint32_t> first;  // node -> first slot
  std::vector<double> bit_prob;      // probability that bit b is 1
};

TinyModel build_tiny(const Graph& g, const EpidemicParams& p,
                     std::span<const std::uint8_t> d) {
  TinyModel m;
  m.n = static_cast<int>(g.num_nodes());
  m.slots = static_cast<int>(g.adjacency().size());
  for (int i = 0; i <= m.n; ++i) m.first.push_back(static_cast<std::uint32_t>(g.offsets()[i]));
  for (int j = 0; j < m.n; ++j) {
    for (const NodeId i : g.neighbors(static_cast<NodeId>(j))) {
      m.owner.push_back(j);
      m.target.push_back(static_cast<int>(i));
    }
  }
  m.reverse.resize(m.slots);
  for (int e = 0; e < m.slots; ++e) {
    const auto nb = g.neighbors(static_cast<NodeId>(m.target[e]));
    const auto it = std::lower_bound(nb.begin(), nb.end(), static_cast<NodeId>(m.owner[e]));
    m.reverse[e] = static_cast<int>(m.first[m.target[e]] + (it - nb.begin()));
  }
  for (int i = 0; i < m.n; ++i) m.bit_prob.push_back(d[i] ? p.p_minus : p.p_plus);
  for (int e = 0; e < m.slots; ++e) m.bit_prob.push_back(d[m.target[e]] ? p.q_minus : p.q_plus);
  return m;
}

// Least fixed point: nodes reachable from seeds along open slots.
std::uint32_t reach(const TinyModel& m, std::uint32_t outcome) {
  const std::uint32_t seeds = outcome & ((1u << m.n) - 1u);
  std::uint32_t infected = seeds;
  std::uint32_t frontier = seeds;
  while (frontier != 0) {
    const int j = std::countr_zero(frontier);
    frontier &= frontier - 1;
    for (std::uint32_t e = m.first[j]; e < m.first[j + 1]; ++e) {
      if (!((outcome >> (m.n + e)) & 1u)) continue;
      const std::uint32_t bit = 1u << m.target[e];
      if (!(infected & bit)) {
        infected |= bit;
        frontier |= bit;
      }
    }
  }
  return infected;
}

// Right-hand side of the recursion: i is infected iff seeded or some
// neighbour j in x has its edge j -> i open.
std::uint32_t recursion_map(const TinyModel& m, std::uint32_t outcome, std::uint32_t x) {
  std::uint32_t out = outcome & ((1u << m.n) - 1u);
  for (int i = 0; i < m.n; ++i) {
    for (std::uint32_t e = m.first[i]; e < m.first[i + 1]; ++e) {
      const int j = m.target[e];
      const int in_slot = m.reverse[e];  // j -> i
      if (((x >> j) & 1u) && ((outcome >> (m.n + in_slot)) & 1u)) out |= 1u << i;
    }
  }
  return out;
}

void check_minimal(const TinyModel& m, std::uint32_t outcome, std::uint32_t x) {
  bool ok = recursion_map(m, outcome, x) == x;
  for (std::uint32_t rest = x; ok && rest != 0; rest &= rest - 1) {
    const std::uint32_t smaller = x & ~(rest & (~rest + 1u));
    if (recursion_map(m, outcome, smaller) == smaller) ok = false;
  }
  if (!ok) {
    std::ostringstream os;
    os << "reachable set " << x << " is not the minimal solution for outcome " << outcome;
    throw NumericError(os.str());
  }
}

// Weight of bits [lo, lo + count) for every assignment of those bits.
std::vector<double> half_table(const TinyModel& m, int lo, int count) {
  std::vector<double> w(std::size_t{1} << count, 1.0);
  for (std::size_t mask = 0; mask < w.size(); ++mask) {
    for (int b = 0; b < count; ++b) {
      const double p = m.bit_prob[lo + b];
      w[mask] *= ((mask >> b) & 1u) ? p : 1.0 - p;
    }
  }
  return w;
}

}  // namespace

std::vector<double> exact_tiny(const Graph& graph, const EpidemicParams& params,
                               std::span<const std::uint8_t> investment,
                               const ExactOptions& options) {
  params.validate();
  const std::size_t n = graph.num_nodes();
  if (investment.size() != n) throw DomainError("investment vector length must equal n");
  const std::size_t bits = n + graph.adjacency().size();
  if (bits > kExactBudgetBits) {
    std::ostringstream os;
    os << "exact enumeration needs n + 2 m <= " << kExactBudgetBits << ", got " << bits;
    throw DomainError(os.str());
  }
  const TinyModel m = build_tiny(graph, params, investment);
  const int low_bits = static_cast<int>(bits / 2);
  const int high_bits = static_cast<int>(bits) - low_bits;
  const auto low = half_table(m, 0, low_bits);
  const auto high = half_table(m, low_bits, high_bits);
  const std::uint32_t low_mask = (1u << low_bits) - 1u;
  const std::uint64_t outcomes = std::uint64_t{1} << bits;

  const auto visit = [&](std::uint32_t outcome, std::array<double, kExactBudgetBits>& acc) {
    const double w = low[outcome & low_mask] * high[outcome >> low_bits];
    const std::uint32_t x = reach(m, outcome);
    if (options.check_minimality) check_minimal(m, outcome, x);
    if (w == 0.0) return;
    for (std::uint32_t rest = x; rest != 0; rest &= rest - 1) acc[std::countr_zero(rest)] += w;
  };

  // fixed chunks reduced in chunk order, so the serial and parallel paths
  // add in the same order and agree bit for bit
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (outcomes + kChunk - 1) / kChunk;
  std::vector<std::array<double, kExactBudgetBits>> partial(chunks);
  for_each_index(chunks, options.execution, [&](std::size_t c) {
    partial[c].fill(0.0);
    const std::uint64_t end = std::min(outcomes, (c + 1) * kChunk);
    for (std::uint64_t o = c * kChunk; o < end; ++o) visit(static_cast<std::uint32_t>(o), partial[c]);
  });
  std::array<double, kExactBudgetBits> total{};
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < n; ++i) total[i] += p[i];
  }
  std::vector<double> out(total.begin(), total.begin() + static_cast<std::ptrdiff_t>(n));
  for (auto& v : out) v = std::min(1.0, std::max(0.0, v));
  return out;
}

// ------------------------------------------------------------- tree_dp

TreeDpResult tree_dp(const TreeGraph& tree, const EpidemicParams& params, double gamma) {
  params.validate();
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma outside [0, 1]");
  const auto& p = params;
  TreeDpResult out;
  out.y.assign(tree.size(), 0.0);
  for (NodeId i = tree.size(); i-- > 0;) {
    double prod_s = 1.0;
    double prod_n = 1.0;
    const NodeId first = tree.first_child(i);
    for (NodeId k = first; k < first + tree.num_children(i); ++k) {
      prod_s *= 1.0 - p.q_minus * out.y[k];
      prod_n *= 1.0 - p.q_plus * out.y[k];
    }
    out.y[i] = gamma * (1.0 - (1.0 - p.p_minus) * prod_s) +
               (1.0 - gamma) * (1.0 - (1.0 - p.p_plus) * prod_n);
  }
  out.y_root = out.y[tree.root()];
  out.x_root = out.y_root;
  return out;
}

}  // namespace epirisk
