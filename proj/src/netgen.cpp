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

#include "epirisk/netgen.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "epirisk/errors.hpp"
#include "epirisk/rng.hpp"

namespace epirisk {
namespace {

// 53-bit uniform in [0, 1); avoids implementation-defined distributions so
// graphs are identical across standard libraries.
double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  // rejection removes the modulo bias
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine();
  while (x >= limit) x = engine();
  return x % bound;
}

}  // namespace

Graph gen_er(NodeId n, double lambda, std::uint64_t seed) {
  if (n < 1) throw DomainError("gen_er needs n >= 1");
  if (!(lambda >= 0.0) || !(lambda <= static_cast<double>(n))) {
    std::ostringstream os;
    os << "gen_er needs 0 <= lambda <= n, got lambda=" << lambda << " n=" << n;
    throw DomainError(os.str());
  }
  const double p = lambda / n;
  std::vector<Edge> edges;
  if (p <= 0.0) return Graph::from_edges(n, edges);
  if (p >= 1.0) {
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId w = 0; w < v; ++w) edges.emplace_back(v, w);
    }
    return Graph::from_edges(n, edges);
  }
  Engine engine = make_engine(seed, 0x45520000);
  edges.reserve(static_cast<std::size_t>(0.5 * lambda * n * 1.1) + 16);
  const double log_q = std::log1p(-p);
  // walk the pairs (v, w), w < v, in row order with geometric gaps
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double skip = std::floor(std::log1p(-uniform01(engine)) / log_q);
    if (skip >= static_cast<double>(nn) * static_cast<double>(nn)) break;
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(w));
  }
  return Graph::from_edges(n, edges);
}

Graph gen_config(NodeId n, const DegreeDist& degree, std::uint64_t seed) {
  if (!std::isfinite(mean_degree(degree))) throw DomainError("degree law needs a finite mean");
  if (n == 0) return Graph();
  Engine engine = make_engine(seed, 0x43460000);
  std::vector<std::uint64_t> deg(n);
  std::uint64_t total = 0;
  for (NodeId i = 0; i < n; ++i) {
    deg[i] = static_cast<std::uint64_t>(sample_degree(degree, engine));
    total += deg[i];
  }
  if (total % 2 == 1) {
    bool fixed = false;
    for (int attempt = 0; attempt < 100 && !fixed; ++attempt) {
      const auto i = static_cast<NodeId>(uniform_below(engine, n));
      const auto d = static_cast<std::uint64_t>(sample_degree(degree, engine));
      if ((d + deg[i]) % 2 == 1) {
        total = total - deg[i] + d;
        deg[i] = d;
        fixed = true;
      }
    }
    if (!fixed) {
      // e.g. a regular law with odd degree on an odd node count
      for (NodeId i = 0; i < n; ++i) {
        if (deg[i] > 0) {
          --deg[i];
          --total;
          break;
        }
      }
    }
  }
  std::vector<NodeId> stubs;
  stubs.reserve(total);
  for (NodeId i = 0; i < n; ++i) stubs.insert(stubs.end(), deg[i], i);
  for (std::size_t k = stubs.size(); k > 1; --k) {
    const auto j = static_cast<std::size_t>(uniform_below(engine, k));
    std::swap(stubs[k - 1], stubs[j]);
  }
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) edges.emplace_back(stubs[k], stubs[k + 1]);
  return Graph::from_edges(n, edges);
}

TreeGraph gen_gw_tree(const DegreeDist& root_degree, const DegreeDist& offspring,
                      std::uint32_t depth, std::uint64_t seed, std::size_t max_nodes) {
  Engine engine = make_engine(seed, 0x47570000);
  std::vector<NodeId> counts;
  std::size_t level_begin = 0;
  std::size_t level_end = 1;  // nodes [begin, end) form the current level
  std::size_t total = 1;
  for (std::uint32_t d = 0; d < depth && level_begin < level_end; ++d) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const int k = sample_degree(i == 0 ? root_degree : offspring, engine);
      total += static_cast<std::size_t>(k);
      if (total > max_nodes) {
        std::ostringstream os;
        os << "Galton-Watson tree exceeds " << max_nodes
           << " nodes; use a smaller depth or a subcritical offspring law";
        throw DomainError(os.str());
      }
      counts.push_back(static_cast<NodeId>(k));
    }
    level_begin = level_end;
    level_end = total;
  }
  counts.resize(total, 0);  // the last level has no children
  return TreeGraph::from_child_counts(std::move(counts));
}

}  // namespace epirisk
