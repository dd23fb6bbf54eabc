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

// Random graph generators. Every generator takes an explicit seed and is
// bit-reproducible for a given seed.

#ifndef EPIRISK_NETGEN_HPP_
#define EPIRISK_NETGEN_HPP_

#include <cstdint>

#include "epirisk/dist.hpp"
#include "epirisk/graph.hpp"

namespace epirisk {

// Erdos-Renyi G(n, lambda / n) by geometric skipping over the pairs, so the
// cost is proportional to the number of edges. Requires n >= 1 and
// 0 <= lambda <= n.
Graph gen_er(NodeId n, double lambda, std::uint64_t seed);

// Erased configuration model: i.i.d. degrees from `degree`, uniform stub
// matching, then self-loops dropped and multi-edges merged. An odd stub total
// is fixed by redrawing one node's degree.
Graph gen_config(NodeId n, const DegreeDist& degree, std::uint64_t seed);

// Galton-Watson tree: the root's child count follows `root_degree`, every
// other node's follows `offspring`; nodes at `depth` get no children. Throws
// DomainError when the tree would exceed max_nodes.
TreeGraph gen_gw_tree(const DegreeDist& root_degree, const DegreeDist& offspring,
                      std::uint32_t depth, std::uint64_t seed,
                      std::size_t max_nodes = 10'000'000);

}  // namespace epirisk

#endif  // EPIRISK_NETGEN_HPP_
