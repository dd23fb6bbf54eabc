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

// Acceptance checks. Prints one PASS/FAIL line per criterion; tolerances
// and runtime budgets are fixed below. Exits non-zero when a criterion fails
// unless its number is listed with --known-failures=a,b,...

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "epirisk/errors.hpp"
#include "epirisk/game.hpp"
#include "epirisk/lmf.hpp"
#include "epirisk/sim.hpp"
#include "oracles.hpp"

using namespace epirisk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

EpidemicParams er_case(double lambda, double pp, double pm, double qp, double qm) {
  EpidemicParams p;
  p.p_plus = pp;
  p.p_minus = pm;
  p.q_plus = qp;
  p.q_minus = qm;
  p.degree = DegreeDist::poisson(lambda);
  return p;
}

const AgentEconomy kNeutral{};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// 1: solver residual and bisection oracle, 100 draws, < 1 s of solver time
Verdict rde_solver() {
  std::mt19937_64 eng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_res = 0.0;
  double worst_err = 0.0;
  double solver_time = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double pp = u(eng), qp = u(eng);
    const double pm = pp * u(eng), qm = qp * u(eng);
    const double lambda = 0.1 + 15.0 * u(eng);
    const double gamma = u(eng);
    const auto t0 = Clock::now();
    const RdeSolution s = LocalMeanField(er_case(lambda, pp, pm, qp, qm)).solve(gamma);
    solver_time += seconds_since(t0);
    worst_res = std::max(worst_res, s.residual);
    worst_err = std::max(worst_err,
                         std::abs(s.h - oracle::poisson_rde_root(pp, pm, qp, qm, lambda, gamma)));
  }
  return {worst_res < 1e-10 && worst_err < 1e-8 && solver_time < 1.0,
          fmt("max residual %.2e, max |h - oracle| %.2e, %.3f s", worst_res, worst_err,
              solver_time)};
}

// 2: h(gamma) non-increasing on 101 points, 50 draws, < 5 s
Verdict monotonicity() {
  std::mt19937_64 eng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 50; ++i) {
    const double pp = u(eng), qp = u(eng);
    const LocalMeanField lmf(er_case(0.1 + 15.0 * u(eng), pp, pp * u(eng), qp, qp * u(eng)));
    double prev = lmf.solve(0.0).h;
    for (int k = 1; k <= 100; ++k) {
      const double h = lmf.solve(k / 100.0).h;
      if (h > prev + 1e-12) ++violations;
      prev = h;
    }
  }
  const double t = seconds_since(t0);
  return {violations == 0 && t < 5.0, fmt("%.0f violations, %.3f s", violations, t)};
}

// 3: golden h*
Verdict golden_h() {
  const double h = LocalMeanField(er_case(10, 0.01, 0, 0.5, 0)).solve(0.0).h;
  const double err = std::abs(h - oracle::kHStar);
  return {err < 1e-8, fmt("h = %.16f, |h - oracle| %.2e", h, err)};
}

// 4: closed-form strong protection equilibrium
Verdict prop2() {
  const double c = 0.5;
  const EquilibriumReport r =
      find_equilibria(er_case(10, 0.01, 0, 0.5, 0), kNeutral, CostModel::constant(c));
  const double closed = 1.0 - std::log(0.99 / 0.5) / (5.0 * 0.5);
  if (r.equilibria.size() != 1) return {false, fmt("%.0f equilibria", r.equilibria.size())};
  const double dg = std::abs(r.equilibria[0].gamma - closed);
  const double dc = std::abs(r.equilibria[0].per_capita_cost - c);
  return {dg < 1e-6 && dc < 1e-9, fmt("gamma* = %.10f, |dgamma| %.2e, |cost - c| %.2e",
                                      r.equilibria[0].gamma, dg, dc)};
}

// 5: weak protection structure
Verdict case2_structure() {
  const EpidemicParams p = er_case(10, 0.01, 0, 0.5, 0.5);
  const CriticalCostCurve curve(p, kNeutral);
  const double c0 = curve.at(0).c_gamma;
  const double c1 = curve.at(curve.size() - 1).c_gamma;
  const double c1m = curve.left_limit_at_one().c_gamma;
  const auto set_of = [&](double c) {
    std::vector<double> g;
    for (const auto& e : find_equilibria(curve, CostModel::constant(c)).equilibria) {
      g.push_back(e.gamma);
    }
    return g;
  };
  const auto low = set_of(0.5 * c0);
  const auto mid = set_of(0.5 * (c0 + c1m));
  const auto high = set_of(2.0 * c1);
  const bool bands = low == std::vector<double>{1.0} && mid.size() == 3 && mid[0] == 0.0 &&
                     mid[1] > 0.0 && mid[1] < 1.0 && mid[2] == 1.0 &&
                     high == std::vector<double>{0.0};
  int disagreements = 0;
  int reported = 0;
  auto prev = set_warning_sink([&](std::string_view) { ++reported; });
  for (const double c : {0.5 * c0, 0.5 * (c0 + c1m), 0.5 * (c1m + c1), 0.5 * c1, 2.0 * c1}) {
    if (!price_of_anarchy_case2(p, kNeutral, c).agree) ++disagreements;
  }
  set_warning_sink(std::move(prev));
  const bool poa_ok = disagreements == 0 || reported >= disagreements;
  std::ostringstream os;
  os << "c0 " << c0 << " < c1 " << c1 << ", bands {1} / {0, " << mid[1] << ", 1} / {0}"
     << ", formula disagreements " << disagreements << " (reported " << reported << ")";
  return {c0 < c1 && bands && poa_ok, os.str()};
}

// 6: PoA ~ h* l / c at c = 10 c0
Verdict poa_asymptotics() {
  const EpidemicParams p = er_case(10, 0.01, 0, 0.5, 0.5);
  const double c0 = price_of_anarchy_case2(p, kNeutral, 0.001).c0;
  const double c = 10.0 * c0;
  const double poa = price_of_anarchy_case2(p, kNeutral, c).generic;
  const double rel = std::abs(poa / (oracle::kHStar / c) - 1.0);
  return {rel < 0.05, fmt("PoA %.6g vs h*l/c %.6g, relative gap %.4f", poa, oracle::kHStar / c,
                          rel)};
}

// 7: Monte Carlo vs exact enumeration, 20 graphs, 1e5 trials, < 60 s
Verdict oracle_equivalence() {
  std::mt19937_64 eng(707);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::uint64_t trials = 100000;
  double worst_z = 0.0;
  int misses = 0;
  const auto t0 = Clock::now();
  for (int g = 0; g < 20; ++g) {
    const auto n = static_cast<NodeId>(1 + eng() % 5);
    std::vector<Edge> edges;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        if (u(eng) < 0.6 && n + 2 * (edges.size() + 1) <= kExactBudgetBits) {
          edges.emplace_back(a, b);
        }
      }
    }
    const Graph graph = Graph::from_edges(n, edges);
    EpidemicParams p;
    p.p_plus = u(eng);
    p.p_minus = p.p_plus * u(eng);
    p.q_plus = u(eng);
    p.q_minus = p.q_plus * u(eng);
    std::vector<std::uint8_t> d(n);
    for (auto& x : d) x = u(eng) < 0.5;
    const auto exact = exact_tiny(graph, p, d);
    SimConfig cfg;
    cfg.params = p;
    cfg.investment = d;
    cfg.trials = trials;
    cfg.seed = 7000 + g;
    cfg.per_node = true;
    const SimOutcome out = run_epidemic(graph, cfg);
    for (NodeId i = 0; i < n; ++i) {
      const double se = std::sqrt(exact[i] * (1.0 - exact[i]) / trials);
      const double diff = std::abs(out.node_rate[i] - exact[i]);
      const double z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : INFINITY);
      worst_z = std::max(worst_z, z);
      if (z > 4.0) ++misses;
    }
  }
  const double t = seconds_since(t0);
  return {misses == 0 && t < 60.0,
          fmt("max |z| %.2f, %.0f nodes beyond 4 se, %.2f s", worst_z, misses, t)};
}

// 8: tree DP equals the unrolled recursion on binary trees, depth <= 8
Verdict tree_dp_vs_rde() {
  double worst = 0.0;
  EpidemicParams p;
  p.p_plus = 0.15;
  p.p_minus = 0.03;
  p.q_plus = 0.6;
  p.q_minus = 0.2;
  p.degree = DegreeDist::regular(3);
  const LocalMeanField lmf(p);
  for (int depth = 0; depth <= 8; ++depth) {
    std::vector<NodeId> counts;
    NodeId level = 1;
    for (int d = 0; d <= depth; ++d) {
      counts.insert(counts.end(), level, d < depth ? 2 : 0);
      level *= 2;
    }
    const TreeGraph tree = TreeGraph::from_child_counts(counts);
    for (const double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      worst = std::max(worst, std::abs(tree_dp(tree, p, gamma).y_root -
                                       lmf.iterate(gamma, 0.0, depth + 1)));
    }
  }
  return {worst < 1e-12, fmt("max difference %.2e", worst)};
}

// 9: mean infection on ER graphs approaches the mean-field mixture, < 10 min
Verdict lmf_convergence() {
  const EpidemicParams p = er_case(10, 0.01, 0, 0.5, 0);
  const double gamma = 0.5;
  const LossProbs lp = LocalMeanField(p).loss_probs(gamma);
  const double mixture = gamma * lp.p_s + (1.0 - gamma) * lp.p_n;
  std::vector<double> gaps;
  const auto t0 = Clock::now();
  for (const NodeId n : {1000u, 10000u, 100000u}) {
    SimConfig cfg;
    cfg.params = p;
    cfg.gamma = gamma;
    cfg.trials = 200;
    cfg.seed = 909;
    gaps.push_back(std::abs(run_er_ensemble(n, 10.0, cfg).mean_infected - mixture));
  }
  const double t = seconds_since(t0);
  const bool decreasing = gaps[1] < gaps[0] && gaps[2] < gaps[1];
  std::ostringstream os;
  os << "mixture " << mixture << ", gaps " << gaps[0] << " " << gaps[1] << " " << gaps[2] << ", "
     << t << " s";
  return {decreasing && gaps[2] < 0.01 && t < 600.0, os.str()};
}

// 10: quality paradox among imperfect products and a bistable band with a
// tipping threshold, both for the default adoption table
Verdict adoption_phenomena() {
  const EpidemicParams base = er_case(10, 0.01, 0, 0.5, 0);
  const std::vector<double> qs = {0.0, 0.125, 0.25, 0.375, 0.5};
  std::vector<double> ratios;
  for (int k = 0; k < 400; ++k) ratios.push_back(k / 399.0);
  const auto rows = adoption_curve(base, kNeutral, qs, ratios);
  const auto positive = find_quality_paradox(rows, true);
  const auto any = find_quality_paradox(rows, false);
  const bool a = positive.has_value();

  // the q- = q+ band (c0, c1-) is ~2.5e-8 wide, far below the table's cost
  // spacing, so it is probed at a cost inside it
  EpidemicParams weak = base;
  weak.q_minus = 0.5;
  const CriticalCostCurve curve(weak, kNeutral);
  const double c = 0.5 * (curve.at(0).c_gamma + curve.left_limit_at_one().c_gamma);
  const TippingReport tip = tipping_analysis(weak, kNeutral, CostModel::constant(c));
  double interior = std::nan("");
  for (const auto& e : tip.equilibria.equilibria) {
    if (e.interior && e.stability == Stability::kUnstable) interior = e.gamma;
  }
  const bool b = tip.threshold.has_value() && std::abs(*tip.threshold - interior) < 1e-5;
  std::ostringstream os;
  os << "(a) ";
  if (a) {
    os << "q- " << positive->q_better << " vs " << positive->q_worse << " at c/l "
       << positive->cost_ratio;
  } else {
    os << "no pair with both q- > 0";
    if (any) os << " (only q- " << any->q_better << " vs " << any->q_worse << ")";
  }
  os << "; (b) c/l " << c << ", threshold "
     << (tip.threshold ? std::to_string(*tip.threshold) : std::string("none"))
     << ", unstable interior " << interior;
  return {a && b, os.str()};
}

// 11: PoA >= 1 over 100 draws for each regime
Verdict poa_at_least_one() {
  std::mt19937_64 eng(1111);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  double smallest = INFINITY;
  GameOptions opts;
  for (int regime = 0; regime < 3; ++regime) {
    for (int i = 0; i < 100; ++i) {
      const double pp = 0.5 * u(eng), qp = u(eng);
      EpidemicParams p = er_case(0.2 + 12.0 * u(eng), pp, pp * u(eng), qp, qp * u(eng));
      if (regime == 0) p.p_minus = p.q_minus = 0.0;
      if (regime == 1) p.q_minus = p.q_plus;
      const double c = 0.6 * u(eng);
      double poa = 0.0;
      if (regime == 0) {
        poa = price_of_anarchy_case1(p, kNeutral, c, opts);
      } else if (regime == 1) {
        auto prev = set_warning_sink([](std::string_view) {});
        poa = price_of_anarchy_case2(p, kNeutral, c, opts).generic;
        set_warning_sink(std::move(prev));
      } else {
        AgentEconomy e;
        if (i % 2 == 1) e.utility = Utility::cara(0.5 + 2.0 * u(eng));
        poa = find_equilibria(p, e, CostModel::constant(c), opts).price_of_anarchy;
      }
      smallest = std::min(smallest, poa);
      if (poa < 1.0 - 1e-9) ++violations;
    }
  }
  return {violations == 0, fmt("%.0f violations, smallest PoA %.12f", violations, smallest)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const std::string flag = "--known-failures=";
    if (arg.rfind(flag, 0) == 0) {
      std::istringstream in(arg.substr(flag.size()));
      for (std::string tok; std::getline(in, tok, ',');) known.insert(std::stoi(tok));
    }
  }
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"RDE solver vs bisection oracle", rde_solver},
      {"h(gamma) non-increasing", monotonicity},
      {"golden h*", golden_h},
      {"strong protection closed-form equilibrium", prop2},
      {"weak protection structure", case2_structure},
      {"PoA ~ h* l / c", poa_asymptotics},
      {"Monte Carlo vs exact enumeration", oracle_equivalence},
      {"tree DP vs unrolled recursion", tree_dp_vs_rde},
      {"mean-field convergence on ER graphs", lmf_convergence},
      {"adoption phenomena", adoption_phenomena},
      {"PoA >= 1", poa_at_least_one},
  };
  int unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s%s\n", v.pass ? "PASS" : "FAIL", id, criteria[k].first,
                v.detail.c_str(), !v.pass && known.count(id) ? " [known failure]" : "");
    std::fflush(stdout);
    if (!v.pass && !known.count(id)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
