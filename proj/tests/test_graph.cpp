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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <sstream>
#include <vector>

#include "epirisk/errors.hpp"
#include "epirisk/graph.hpp"
#include "epirisk/netgen.hpp"

using namespace epirisk;

TEST_CASE("edge list construction drops loops and duplicates") {
  const std::vector<Edge> edges = {{0, 1}, {1, 0}, {2, 2}, {1, 2}, {0, 1}};
  const Graph g = Graph::from_edges(4, edges);
  CHECK(g.num_nodes() == 4);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(2, 2));
  CHECK(g.degree(3) == 0);
  CHECK(g.is_simple());
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  const std::vector<Edge> bad = {{0, 4}};
  CHECK_THROWS_AS(Graph::from_edges(4, bad), DomainError);
}

TEST_CASE("edge list round trip") {
  const Graph g = gen_er(200, 4.0, 9);
  std::stringstream ss;
  write_edge_list(g, ss);
  CHECK(read_edge_list(ss) == g);
}

TEST_CASE("malformed edge lists report the line") {
  std::istringstream a("3 2\n0 1\n1 x\n");
  try {
    read_edge_list(a);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream b("3 2\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(b), InputError);
  std::istringstream c("2 1\n0 5\n");
  CHECK_THROWS_AS(read_edge_list(c), InputError);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/graph.txt"), InputError);
}

TEST_CASE("erdos renyi generator") {
  CHECK(gen_er(2, 2.0, 1).num_edges() == 1);
  CHECK(gen_er(50, 0.0, 1).num_edges() == 0);
  CHECK(gen_er(1, 0.0, 1).num_nodes() == 1);
  CHECK_THROWS_AS(gen_er(10, 11.0, 1), DomainError);
  CHECK_THROWS_AS(gen_er(10, -1.0, 1), DomainError);
  CHECK_THROWS_AS(gen_er(0, 0.0, 1), DomainError);
  CHECK(gen_er(1000, 5.0, 42) == gen_er(1000, 5.0, 42));
  CHECK_FALSE(gen_er(1000, 5.0, 42) == gen_er(1000, 5.0, 43));
  const NodeId n = 10000;
  const double lambda = 10.0;
  const Graph g = gen_er(n, lambda, 7);
  CHECK(g.is_simple());
  const double mean = 2.0 * g.num_edges() / n;
  const double p = lambda / n;
  // node degrees are Binomial(n-1, p), the mean of n of them (edges shared
  // by two endpoints doubles the variance of the average)
  const double se = std::sqrt(2.0 * (n - 1) * p * (1 - p) / n);
  CHECK(std::abs(mean - lambda * (n - 1) / n) < 3.0 * se);
}

TEST_CASE("configuration model") {
  const Graph ring = gen_config(6, DegreeDist::regular(2), 3);
  for (NodeId i = 0; i < 6; ++i) CHECK(ring.degree(i) <= 2);
  CHECK(ring.is_simple());
  CHECK(gen_config(40, DegreeDist::regular(0), 1).num_edges() == 0);
  CHECK(gen_config(0, DegreeDist::regular(3), 1).num_nodes() == 0);
  // odd stub total with every degree odd
  const Graph odd = gen_config(7, DegreeDist::regular(3), 2);
  CHECK(odd.is_simple());
  CHECK(gen_config(500, DegreeDist::poisson(3), 5) == gen_config(500, DegreeDist::poisson(3), 5));
}

TEST_CASE("configuration model degrees follow a poisson law") {
  const NodeId n = 100000;
  const DegreeDist d = DegreeDist::poisson(10);
  const Graph g = gen_config(n, d, 2026);
  std::vector<double> observed(60, 0.0);
  for (NodeId i = 0; i < n; ++i) observed[std::min<std::size_t>(g.degree(i), 59)] += 1.0;
  double stat = 0.0;
  int bins = 0;
  double o = 0.0;
  double e = 0.0;
  double cdf = 0.0;
  for (int k = 0; k < 59; ++k) {
    o += observed[k];
    e += n * d.pmf(k);
    cdf += d.pmf(k);
    if (e >= 5.0 && n * (1.0 - cdf) >= 5.0) {
      stat += (o - e) * (o - e) / e;
      ++bins;
      o = e = 0.0;
    }
  }
  o += observed[59];
  e += n * (1.0 - cdf);
  stat += (o - e) * (o - e) / e;
  ++bins;
  const boost::math::chi_squared chi(bins - 1);
  CHECK(stat < boost::math::quantile(chi, 0.99));
}

TEST_CASE("tree graphs") {
  const TreeGraph t = TreeGraph::from_child_counts({2, 1, 0, 0});
  CHECK(t.size() == 4);
  CHECK(t.parent(0) == TreeGraph::kNoParent);
  CHECK(t.parent(3) == 1);
  CHECK(t.depth(3) == 2);
  CHECK(t.height() == 2);
  const Graph g = t.to_graph();
  CHECK(g.num_edges() == 3);
  CHECK(g.has_edge(0, 2));
  CHECK_THROWS_AS(TreeGraph::from_child_counts({3, 0}), DomainError);
}

TEST_CASE("galton watson trees") {
  CHECK(gen_gw_tree(DegreeDist::poisson(5), DegreeDist::poisson(5), 0, 1).size() == 1);
  const TreeGraph bin = gen_gw_tree(DegreeDist::regular(2), DegreeDist::regular(2), 3, 1);
  CHECK(bin.size() == 15);
  CHECK(bin.height() == 3);
  double sum = 0.0;
  double sumsq = 0.0;
  const int trees = 1000;
  for (int s = 0; s < trees; ++s) {
    const double size =
        gen_gw_tree(DegreeDist::poisson(10), DegreeDist::poisson(10), 2, 100 + s).size();
    sum += size;
    sumsq += size * size;
  }
  const double mean = sum / trees;
  const double sd = std::sqrt((sumsq / trees - mean * mean) * trees / (trees - 1));
  CHECK(std::abs(mean - 111.0) < 3.0 * sd / std::sqrt(trees));
  CHECK_THROWS_AS(gen_gw_tree(DegreeDist::regular(10), DegreeDist::regular(10), 9, 1, 1000),
                  DomainError);
}
