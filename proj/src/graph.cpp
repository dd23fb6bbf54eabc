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

#include "epirisk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "epirisk/errors.hpp"

namespace epirisk {

Graph Graph::from_edges(NodeId n, std::span<const Edge> edges) {
  if (n == std::numeric_limits<NodeId>::max()) throw DomainError("too many nodes");
  std::vector<std::size_t> deg(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      std::ostringstream os;
      os << "edge (" << u << ", " << v << ") references a node >= n = " << n;
      throw DomainError(os.str());
    }
    if (u == v) continue;
    ++deg[u];
    ++deg[v];
  }
  Graph g;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  std::vector<NodeId> raw(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[fill[u]++] = v;
    raw[fill[v]++] = u;
  }
  // sort, dedupe and compact each list
  std::vector<std::size_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::size_t out = 0;
  for (NodeId i = 0; i < n; ++i) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) raw[out++] = *it;
    offsets[i + 1] = out;
  }
  raw.resize(out);
  g.offsets_ = std::move(offsets);
  g.adj_ = std::move(raw);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (const NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool Graph::is_simple() const {
  for (NodeId u = 0; u < num_nodes(); ++u) {
    const auto nb = neighbors(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] == u || nb[k] >= num_nodes()) return false;
      if (k > 0 && nb[k] <= nb[k - 1]) return false;
      if (!has_edge(nb[k], u)) return false;
    }
  }
  return true;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << "edge list line " << line_no << ": " << what;
    throw InputError(os.str());
  };
  const auto next_line = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) fail("missing header 'n m'");
  long long n = -1;
  long long m = -1;
  {
    std::istringstream is(line);
    std::string rest;
    if (!(is >> n >> m) || (is >> rest)) fail("header must be 'n m'");
  }
  if (n < 0 || m < 0 || n >= std::numeric_limits<NodeId>::max()) fail("bad node or edge count");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    if (!next_line()) fail("expected " + std::to_string(m) + " edges");
    std::istringstream is(line);
    long long u = -1;
    long long v = -1;
    std::string rest;
    if (!(is >> u >> v) || (is >> rest)) fail("edge must be 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) fail("node id out of range");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (next_line()) fail("trailing content after the declared edges");
  return Graph::from_edges(static_cast<NodeId>(n), edges);
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  write_edge_list(g, out);
  if (!out) throw InputError("failed writing " + path);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_edge_list(in);
}

TreeGraph TreeGraph::from_child_counts(std::vector<NodeId> child_counts) {
  if (child_counts.empty()) throw DomainError("a tree has at least the root");
  TreeGraph t;
  const std::size_t n = child_counts.size();
  t.parent_.assign(n, kNoParent);
  t.depth_.assign(n, 0);
  t.first_child_.assign(n, 0);
  t.child_count_ = std::move(child_counts);
  std::size_t next = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= next) throw DomainError("child counts leave nodes unreachable");
    t.first_child_[i] = static_cast<NodeId>(next);
    for (NodeId c = 0; c < t.child_count_[i]; ++c) {
      if (next >= n) throw DomainError("child counts exceed the node count");
      t.parent_[next] = static_cast<NodeId>(i);
      t.depth_[next] = t.depth_[i] + 1;
      ++next;
    }
  }
  if (next != n) throw DomainError("child counts do not match the node count");
  return t;
}

std::uint32_t TreeGraph::height() const {
  return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

Graph TreeGraph::to_graph() const {
  std::vector<Edge> edges;
  edges.reserve(parent_.size());
  for (NodeId i = 1; i < size(); ++i) edges.emplace_back(parent_[i], i);
  return Graph::from_edges(size(), edges);
}

}  // namespace epirisk
