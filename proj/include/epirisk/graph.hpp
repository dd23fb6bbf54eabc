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

#ifndef EPIRISK_GRAPH_HPP_
#define EPIRISK_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace epirisk {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Simple undirected graph in compressed sparse row form. Neighbour lists are
// sorted. Position e in the flat adjacency array identifies the directed
// edge (i -> adjacency()[e]) for the i owning that slot.
class Graph {
 public:
  Graph() : offsets_{0} {}

  // Builds the simple graph on n nodes spanned by `edges`: self-loops are
  // dropped and duplicates merged. Throws DomainError on ids >= n.
  static Graph from_edges(NodeId n, std::span<const Edge> edges);

  NodeId num_nodes() const { return static_cast<NodeId>(offsets_.size() - 1); }
  std::size_t num_edges() const { return adj_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t first_slot(NodeId i) const { return offsets_[i]; }
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  const std::vector<NodeId>& adjacency() const { return adj_; }

  bool has_edge(NodeId u, NodeId v) const;

  // Undirected edges with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  // Symmetry, no self-loops, sorted and duplicate-free lists.
  bool is_simple() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adj_;
};

// Plain edge list: first line "n m", then m lines "u v", zero-indexed.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);  // InputError on malformed input
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

// Rooted tree with nodes numbered in breadth-first order, root 0. The
// children of a node are contiguous and numbered after it, so a reverse
// sweep over ids visits every child before its parent.
class TreeGraph {
 public:
  static constexpr NodeId kNoParent = static_cast<NodeId>(-1);

  // child_counts[i] is the number of children of node i in breadth-first
  // order; its length must equal the resulting node count.
  static TreeGraph from_child_counts(std::vector<NodeId> child_counts);

  NodeId size() const { return static_cast<NodeId>(parent_.size()); }
  NodeId root() const { return 0; }
  NodeId parent(NodeId i) const { return parent_[i]; }
  std::uint32_t depth(NodeId i) const { return depth_[i]; }
  std::uint32_t height() const;
  NodeId num_children(NodeId i) const { return child_count_[i]; }
  NodeId first_child(NodeId i) const { return first_child_[i]; }

  Graph to_graph() const;

 private:
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<NodeId> first_child_;
  std::vector<NodeId> child_count_;
};

}  // namespace epirisk

#endif  // EPIRISK_GRAPH_HPP_
