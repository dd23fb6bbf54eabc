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

#include "epirisk/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "epirisk/errors.hpp"
#include "epirisk/execution.hpp"
#include "epirisk/netgen.hpp"
#include "epirisk/rng.hpp"
#include "epirisk/sim.hpp"

namespace epirisk::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kDefaultLambda = 10.0;

std::vector<double> linspace(double lo, double hi, std::int64_t n) {
  std::vector<double> out;
  if (n == 1) return {lo};
  for (std::int64_t k = 0; k < n; ++k) {
    out.push_back(k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / (n - 1));
  }
  return out;
}

std::int64_t positive_integer(const Config& cfg, const std::string& section,
                              const std::string& key, std::int64_t fallback,
                              std::int64_t min = 1) {
  const std::int64_t v = cfg.integer(section, key, fallback);
  if (v < min) cfg.fail(section, key, "must be >= " + std::to_string(min));
  return v;
}

double probability(const Config& cfg, const std::string& section, const std::string& key,
                   double fallback) {
  const double v = cfg.number(section, key, fallback);
  if (!(v >= 0.0 && v <= 1.0)) cfg.fail(section, key, "must lie in [0, 1]");
  return v;
}

std::uint64_t seed_from(const Config& cfg) {
  return static_cast<std::uint64_t>(positive_integer(cfg, "run", "seed", 1, 0));
}

DegreeDist degree_from(const Config& cfg, const std::string& section, const std::string& key) {
  const YAML::Node node = cfg.get(section, key);
  if (!node) return DegreeDist::poisson(kDefaultLambda);
  if (!node.IsMap() || !node["kind"]) {
    cfg.fail(section, key, "expected {kind: poisson|regular|geometric|empirical, ...}");
  }
  const auto kind = node["kind"].as<std::string>();
  try {
    if (kind == "poisson") {
      const double lambda = node_number(cfg, section, key, node, "lambda", kDefaultLambda);
      if (lambda == 0.0) return DegreeDist::regular(0);
      return DegreeDist::poisson(lambda);
    }
    if (kind == "regular") {
      const double d = node_number(cfg, section, key, node, "degree", 0.0);
      if (d != std::floor(d)) cfg.fail(section, key, "regular degree must be an integer");
      return DegreeDist::regular(static_cast<int>(d));
    }
    if (kind == "geometric") {
      return DegreeDist::geometric(node_number(cfg, section, key, node, "success", 0.5));
    }
    if (kind == "empirical") {
      const YAML::Node probs = node["probs"];
      if (!probs || !probs.IsSequence()) cfg.fail(section, key, "empirical needs probs: [...]");
      std::vector<double> p;
      for (const auto& v : probs) p.push_back(v.as<double>());
      return DegreeDist::empirical(std::move(p));
    }
  } catch (const DomainError& e) {
    cfg.fail(section, key, e.what());
  } catch (const YAML::Exception& e) {
    cfg.fail(section, key, e.what());
  }
  cfg.fail(section, key, "unknown degree kind '" + kind + "'");
}

double poisson_lambda(const EpidemicParams& p) {
  if (const auto* d = std::get_if<Poisson>(&p.degree.kind())) return d->lambda;
  if (const auto* d = std::get_if<Regular>(&p.degree.kind()); d && d->degree == 0) return 0.0;
  return -1.0;
}

Json describe(const EpidemicParams& p) {
  Json j;
  j["p_plus"] = p.p_plus;
  j["p_minus"] = p.p_minus;
  j["q_plus"] = p.q_plus;
  j["q_minus"] = p.q_minus;
  j["degree"] = p.degree.name();
  j["regime"] = to_string(classify(p));
  return j;
}

Json describe(const AgentEconomy& e) {
  Json j;
  j["utility"] = e.utility.name();
  j["wealth"] = e.wealth;
  j["loss"] = e.loss;
  return j;
}

Json describe(const CostModel& c, double loss) {
  Json j;
  if (c.is_constant()) {
    j["kind"] = "constant";
    j["c"] = c.constant_cost();
    j["ratio"] = loss > 0.0 ? c.constant_cost() / loss : 0.0;
  } else {
    j["kind"] = "piecewise";
    j["ratios"] = c.ratios();
    j["cdf"] = c.cdf_values();
  }
  return j;
}

Table start_table(const std::string& command, std::vector<std::string> columns) {
  Table t;
  t.columns = std::move(columns);
  t.meta["command"] = command;
  return t;
}
}  // namespace

// ----------------------------------------------------------------- builders

EpidemicParams model_from(const Config& cfg) {
  EpidemicParams p;
  p.p_plus = probability(cfg, "model", "p_plus", 0.01);
  p.p_minus = probability(cfg, "model", "p_minus", 0.0);
  p.q_plus = probability(cfg, "model", "q_plus", 0.5);
  p.q_minus = probability(cfg, "model", "q_minus", 0.0);
  p.degree = degree_from(cfg, "model", "degree");
  const std::string c = cfg.text("run", "case", "");
  if (c == "strong") {
    p.p_minus = 0.0;
    p.q_minus = 0.0;
  } else if (c == "weak") {
    p.q_minus = p.q_plus;
  } else if (!c.empty() && c != "general") {
    cfg.fail("run", "case", "expected strong, weak or general");
  }
  if (p.p_minus > p.p_plus) cfg.fail("model", "p_minus", "must not exceed p_plus");
  if (p.q_minus > p.q_plus) cfg.fail("model", "q_minus", "must not exceed q_plus");
  return p;
}

AgentEconomy economy_from(const Config& cfg) {
  AgentEconomy e;
  e.wealth = cfg.number("economy", "wealth", 1.0);
  e.loss = cfg.number("economy", "loss", 1.0);
  if (!(e.loss >= 0.0)) cfg.fail("economy", "loss", "must be >= 0");
  const YAML::Node u = cfg.get("economy", "utility");
  try {
    std::string kind = "risk_neutral";
    if (u && u.IsScalar()) {
      kind = u.as<std::string>();
    } else if (u && u.IsMap() && u["kind"]) {
      kind = u["kind"].as<std::string>();
    } else if (u) {
      cfg.fail("economy", "utility", "expected a name or {kind: ..., ...}");
    }
    const YAML::Node fields = (u && u.IsMap()) ? u : YAML::Node(YAML::NodeType::Map);
    if (kind == "risk_neutral") {
      e.utility = Utility::risk_neutral();
    } else if (kind == "cara") {
      e.utility = Utility::cara(node_number(cfg, "economy", "utility", fields, "a", 1.0));
    } else if (kind == "log") {
      e.utility = Utility::log(node_number(cfg, "economy", "utility", fields, "shift", 0.0));
    } else if (kind == "crra") {
      e.utility = Utility::crra(node_number(cfg, "economy", "utility", fields, "rho", 2.0));
    } else {
      cfg.fail("economy", "utility", "unknown utility '" + kind + "'");
    }
    e.validate();
  } catch (const DomainError& err) {
    cfg.fail("economy", "utility", err.what());
  }
  return e;
}

CostModel cost_from(const Config& cfg, double loss) {
  const std::string kind = cfg.text("cost", "kind", "constant");
  try {
    if (kind == "constant") {
      if (cfg.has("cost", "c") && cfg.has("cost", "ratio")) {
        cfg.fail("cost", "c", "give either c or ratio, not both");
      }
      double c = cfg.number("cost", "ratio", 0.5) * loss;
      if (cfg.has("cost", "c")) c = cfg.number("cost", "c", 0.0);
      if (!(c >= 0.0 && c <= loss)) {
        cfg.fail("cost", cfg.has("cost", "c") ? "c" : "ratio", "cost must lie in [0, loss]");
      }
      return CostModel::constant(c);
    }
    if (kind == "piecewise") {
      return CostModel::piecewise(cfg.numbers("cost", "ratios", {}), cfg.numbers("cost", "cdf", {}));
    }
    if (kind == "uniform") {
      return CostModel::uniform(cfg.number("cost", "lo", 0.0), cfg.number("cost", "hi", 1.0));
    }
  } catch (const DomainError& err) {
    cfg.fail("cost", "kind", err.what());
  }
  cfg.fail("cost", "kind", "expected constant, piecewise or uniform");
}

GameOptions game_options_from(const Config& cfg) {
  GameOptions o;
  o.grid_points = static_cast<int>(positive_integer(cfg, "game", "grid_points", 1024, 3));
  o.include_unstable = cfg.boolean("game", "include_unstable", false);
  return o;
}

// ----------------------------------------------------------------- commands

CommandResult cmd_lmf_solve(const Config& cfg) {
  EpidemicParams params = model_from(cfg);
  const AgentEconomy econ = economy_from(cfg);
  std::vector<double> gammas;
  if (cfg.has("lmf", "gammas")) {
    gammas = cfg.numbers("lmf", "gammas", {});
    for (const double g : gammas) {
      if (!(g >= 0.0 && g <= 1.0)) cfg.fail("lmf", "gammas", "values must lie in [0, 1]");
    }
  } else {
    gammas = linspace(0.0, 1.0, positive_integer(cfg, "lmf", "gamma_points", 401));
  }
  const std::vector<double> lambdas = cfg.numbers("lmf", "lambdas", {});
  for (const double l : lambdas) {
    if (!(l >= 0.0)) cfg.fail("lmf", "lambdas", "values must be >= 0");
  }
  cfg.check_unused();

  const bool sweep = !lambdas.empty();
  std::vector<std::string> cols = {"gamma", "h", "p_N", "p_S", "c_gamma", "degenerate"};
  if (sweep) cols.insert(cols.begin(), "lambda");
  CommandResult res;
  res.table = start_table("lmf-solve", cols);
  res.table.meta["model"] = describe(params);
  res.table.meta["economy"] = describe(econ);
  const std::vector<double> sweep_values = sweep ? lambdas : std::vector<double>{-1.0};
  for (const double lambda : sweep_values) {
    if (sweep) {
      params.degree = lambda > 0.0 ? DegreeDist::poisson(lambda) : DegreeDist::regular(0);
    }
    const LocalMeanField lmf(params);
    std::vector<LmfSolution> sols(gammas.size());
    for_each_index(gammas.size(), Execution::kParallel,
                   [&](std::size_t k) { sols[k] = lmf.critical_cost(econ, gammas[k]); });
    for (const auto& s : sols) {
      std::vector<Cell> row = {s.gamma, s.h, s.p_n, s.p_s, s.c_gamma, s.degenerate};
      if (sweep) row.insert(row.begin(), lambda);
      res.table.add_row(std::move(row));
    }
  }
  return res;
}

CommandResult cmd_equilibria(const Config& cfg) {
  const EpidemicParams params = model_from(cfg);
  const AgentEconomy econ = economy_from(cfg);
  const CostModel cost = cost_from(cfg, econ.loss);
  const GameOptions opts = game_options_from(cfg);
  cfg.check_unused();

  const EquilibriumReport rep = find_equilibria(params, econ, cost, opts);
  CommandResult res;
  res.table = start_table("equilibria", {"gamma", "stability", "interior", "limit_point", "h",
                                         "p_N", "p_S", "c_gamma", "per_capita_cost"});
  auto& meta = res.table.meta;
  meta["model"] = describe(params);
  meta["economy"] = describe(econ);
  meta["cost"] = describe(cost, econ.loss);
  meta["include_unstable"] = opts.include_unstable;
  meta["social_opt_gamma"] = rep.social_opt_gamma;
  meta["social_opt_cost"] = rep.social_opt_cost;
  meta["worst_equilibrium_cost"] = rep.worst_equilibrium_cost;
  meta["price_of_anarchy"] = rep.price_of_anarchy;
  if (cost.is_constant() && econ.utility.is_risk_neutral()) {
    if (classify(params) == Regime::kStrong) {
      meta["poa_case1"] = price_of_anarchy_case1(params, econ, cost.constant_cost(), opts);
    }
    if (params.q_plus == params.q_minus) {
      const Case2Poa c2 = price_of_anarchy_case2(params, econ, cost.constant_cost(), opts);
      Json j;
      j["generic"] = c2.generic;
      j["formula"] = c2.formula;
      j["agree"] = c2.agree;
      j["c0"] = c2.c0;
      j["c1"] = c2.c1;
      j["h0"] = c2.h0;
      j["h1"] = c2.h1;
      meta["poa_case2"] = j;
    }
  }
  for (const auto& e : rep.equilibria) {
    res.table.add_row({e.gamma, to_string(e.stability), e.interior, e.limit_point, e.h, e.p_n,
                       e.p_s, e.c_gamma, e.per_capita_cost});
  }
  return res;
}

CommandResult cmd_adoption_curve(const Config& cfg) {
  const EpidemicParams base = model_from(cfg);
  const AgentEconomy econ = economy_from(cfg);
  const GameOptions opts = game_options_from(cfg);
  const std::vector<double> qs =
      cfg.numbers("adoption", "q_minus_values", {0.0, 0.125, 0.25, 0.375, 0.5});
  for (const double q : qs) {
    if (!(q >= 0.0 && q <= base.q_plus)) {
      cfg.fail("adoption", "q_minus_values", "values must lie in [0, q_plus]");
    }
  }
  std::vector<double> ratios;
  if (cfg.has("adoption", "cost_ratios")) {
    ratios = cfg.numbers("adoption", "cost_ratios", {});
    for (const double r : ratios) {
      if (!(r >= 0.0 && r <= 1.0)) cfg.fail("adoption", "cost_ratios", "values must lie in [0, 1]");
    }
  } else {
    ratios = linspace(0.0, 1.0, positive_integer(cfg, "adoption", "cost_points", 400));
  }
  cfg.check_unused();

  const auto rows = adoption_curve(base, econ, qs, ratios, opts);
  CommandResult res;
  res.table = start_table("adoption-curve", {"q_minus", "cost_ratio", "branch", "gamma", "p_N",
                                             "p_S", "social_cost", "poa", "limit_point"});
  auto& meta = res.table.meta;
  meta["model"] = describe(base);
  meta["economy"] = describe(econ);
  const auto witness = [](const std::optional<QualityParadox>& w) {
    if (!w) return Json(nullptr);
    Json j;
    j["cost_ratio"] = w->cost_ratio;
    j["q_better"] = w->q_better;
    j["q_worse"] = w->q_worse;
    j["max_stable_gamma_better"] = w->gamma_better;
    j["max_stable_gamma_worse"] = w->gamma_worse;
    return j;
  };
  meta["quality_paradox"] = witness(find_quality_paradox(rows));
  meta["quality_paradox_positive_q"] = witness(find_quality_paradox(rows, true));
  for (const auto& r : rows) {
    res.table.add_row({r.q_minus, r.cost_ratio, to_string(r.stability), r.gamma, r.p_n, r.p_s,
                       r.social_cost, r.poa, r.limit_point});
  }
  return res;
}

CommandResult cmd_poa_curve(const Config& cfg) {
  const EpidemicParams params = model_from(cfg);
  const AgentEconomy econ = economy_from(cfg);
  GameOptions opts = game_options_from(cfg);
  std::vector<double> ratios;
  if (cfg.has("poa", "cost_ratios")) {
    ratios = cfg.numbers("poa", "cost_ratios", {});
  } else {
    const double lo = cfg.number("poa", "cost_min", 0.002);
    const double hi = cfg.number("poa", "cost_max", 0.03);
    if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
      cfg.fail("poa", "cost_min", "need 0 <= cost_min <= cost_max <= 1");
    }
    ratios = linspace(lo, hi, positive_integer(cfg, "poa", "cost_points", 281));
  }
  for (const double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) cfg.fail("poa", "cost_ratios", "values must lie in [0, 1]");
  }
  std::string mode = cfg.text("run", "case", "");
  if (mode.empty()) mode = to_string(classify(params));
  cfg.check_unused();

  opts.execution = Execution::kSerial;  // cells run in parallel instead
  std::vector<double> poa(ratios.size());
  std::vector<double> formula(ratios.size(), std::nan(""));
  std::vector<std::int64_t> agree(ratios.size(), -1);
  std::atomic<int> disagreements{0};
  WarningSink previous = set_warning_sink([&](std::string_view) { ++disagreements; });
  try {
    for_each_index(ratios.size(), Execution::kParallel, [&](std::size_t k) {
      const double c = ratios[k] * econ.loss;
      if (mode == "strong") {
        poa[k] = price_of_anarchy_case1(params, econ, c, opts);
      } else if (mode == "weak") {
        const Case2Poa r = price_of_anarchy_case2(params, econ, c, opts);
        poa[k] = r.generic;
        formula[k] = r.formula;
        agree[k] = r.agree ? 1 : 0;
      } else {
        poa[k] = find_equilibria(params, econ, CostModel::constant(c), opts).price_of_anarchy;
      }
    });
  } catch (...) {
    set_warning_sink(std::move(previous));
    throw;
  }
  set_warning_sink(std::move(previous));
  if (disagreements > 0) {
    warn(std::to_string(disagreements.load()) +
         " cost values where the case-2 closed form differs from the worst-equilibrium ratio");
  }

  CommandResult res;
  res.table = start_table("poa-curve", {"cost_ratio", "poa", "poa_formula", "formula_agrees"});
  res.table.meta["model"] = describe(params);
  res.table.meta["economy"] = describe(econ);
  res.table.meta["case"] = mode;
  res.table.meta["formula_disagreements"] = disagreements.load();
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    Cell f = mode == "weak" ? Cell(formula[k]) : Cell(std::monostate{});
    Cell a = agree[k] < 0 ? Cell(std::monostate{}) : Cell(agree[k] == 1);
    res.table.add_row({ratios[k], poa[k], f, a});
  }
  return res;
}

namespace {

CommandResult validate_lmf(const Config& cfg) {
  const EpidemicParams params = model_from(cfg);
  const double lambda = poisson_lambda(params);
  if (lambda < 0.0) cfg.fail("model", "degree", "validate needs a Poisson degree law (ER graphs)");
  std::vector<double> ns = cfg.numbers("validate", "n_values", {1e3, 1e4, 1e5});
  for (const double n : ns) {
    if (!(n >= 1.0 && n == std::floor(n) && n < 4.0e9 && n >= lambda)) {
      cfg.fail("validate", "n_values", "values must be integers with lambda <= n < 4e9");
    }
  }
  const auto trials = positive_integer(cfg, "validate", "trials", 200);
  const double gamma = probability(cfg, "validate", "gamma", 0.5);
  const double threshold = cfg.number("validate", "threshold", 0.01);
  const std::uint64_t seed = seed_from(cfg);
  cfg.check_unused();

  const LossProbs lp = LocalMeanField(params).loss_probs(gamma);
  const double mixture = gamma * lp.p_s + (1.0 - gamma) * lp.p_n;
  CommandResult res;
  res.table = start_table("validate", {"n", "trials", "mean_infected", "se_infected",
                                       "lmf_mixture", "gap"});
  std::vector<double> gaps;
  for (const double n : ns) {
    SimConfig sc;
    sc.params = params;
    sc.gamma = gamma;
    sc.trials = static_cast<std::uint64_t>(trials);
    sc.seed = seed;
    const SimOutcome out = run_er_ensemble(static_cast<NodeId>(n), lambda, sc);
    const double gap = std::abs(out.mean_infected - mixture);
    gaps.push_back(gap);
    res.table.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(trials),
                       out.mean_infected, out.se_infected, mixture, gap});
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < gaps.size(); ++k) decreasing = decreasing && gaps[k] < gaps[k - 1];
  const bool small = !gaps.empty() && gaps.back() < threshold;
  auto& meta = res.table.meta;
  meta["mode"] = "lmf";
  meta["model"] = describe(params);
  meta["gamma"] = gamma;
  meta["seed"] = seed;
  meta["threshold"] = threshold;
  meta["gaps_decreasing"] = decreasing;
  meta["final_gap_below_threshold"] = small;
  meta["verdict"] = decreasing && small ? "pass" : "fail";
  res.exit_code = decreasing && small ? kExitOk : kExitValidationFailed;
  return res;
}

CommandResult validate_tiny(const Config& cfg) {
  const auto graphs = positive_integer(cfg, "validate", "graphs", 20);
  const auto max_nodes = positive_integer(cfg, "validate", "max_nodes", 5);
  if (max_nodes > kExactBudgetBits) cfg.fail("validate", "max_nodes", "must be <= 24");
  const auto trials = positive_integer(cfg, "validate", "trials", 100000);
  const double sigmas = cfg.number("validate", "sigmas", 4.0);
  const std::uint64_t seed = seed_from(cfg);
  cfg.check_unused();

  Engine eng = make_engine(seed, 0x74696e79);
  const auto unif = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
  CommandResult res;
  res.table = start_table("validate", {"graph", "node", "invests", "exact", "estimate", "se", "z"});
  bool pass = true;
  for (std::int64_t g = 0; g < graphs; ++g) {
    const auto n = static_cast<NodeId>(1 + eng() % static_cast<std::uint64_t>(max_nodes));
    const double density = unif();
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (unif() < density) edges.emplace_back(u, v);
      }
    }
    while (n + 2 * edges.size() > static_cast<std::size_t>(kExactBudgetBits)) edges.pop_back();
    const Graph graph = Graph::from_edges(n, edges);
    EpidemicParams p;
    p.p_plus = unif();
    p.p_minus = unif() * p.p_plus;
    p.q_plus = unif();
    p.q_minus = unif() * p.q_plus;
    std::vector<std::uint8_t> d(n);
    for (auto& x : d) x = unif() < 0.5 ? 1 : 0;
    const auto exact = exact_tiny(graph, p, d);
    SimConfig sc;
    sc.params = p;
    sc.investment = d;
    sc.trials = static_cast<std::uint64_t>(trials);
    sc.seed = split_seed(seed, static_cast<std::uint64_t>(g));
    sc.per_node = true;
    const SimOutcome out = run_epidemic(graph, sc);
    for (NodeId i = 0; i < n; ++i) {
      const double se = std::sqrt(exact[i] * (1.0 - exact[i]) / static_cast<double>(trials));
      const double diff = out.node_rate[i] - exact[i];
      const double z = se > 0.0 ? diff / se : (std::abs(diff) < 1e-12 ? 0.0 : INFINITY);
      pass = pass && std::abs(z) <= sigmas;
      res.table.add_row({g, static_cast<std::int64_t>(i), d[i] != 0, exact[i], out.node_rate[i],
                         se, z});
    }
  }
  auto& meta = res.table.meta;
  meta["mode"] = "tiny";
  meta["seed"] = seed;
  meta["sigmas"] = sigmas;
  meta["verdict"] = pass ? "pass" : "fail";
  res.exit_code = pass ? kExitOk : kExitValidationFailed;
  return res;
}

}  // namespace

CommandResult cmd_validate(const Config& cfg) {
  const std::string mode = cfg.text("validate", "mode", "lmf");
  if (mode == "lmf") return validate_lmf(cfg);
  if (mode == "tiny") return validate_tiny(cfg);
  cfg.fail("validate", "mode", "expected lmf or tiny");
}

CommandResult cmd_tipping(const Config& cfg) {
  const EpidemicParams params = model_from(cfg);
  const AgentEconomy econ = economy_from(cfg);
  const CostModel cost = cost_from(cfg, econ.loss);
  const GameOptions opts = game_options_from(cfg);
  const double offset = cfg.number("tipping", "offset", 1e-3);
  if (!(offset > 0.0 && offset < 1.0)) cfg.fail("tipping", "offset", "must lie in (0, 1)");
  const auto max_steps = positive_integer(cfg, "tipping", "max_steps", 1000);
  cfg.check_unused();

  const TippingReport rep = tipping_analysis(params, econ, cost, opts);
  CommandResult res;
  res.table = start_table("tipping", {"start", "gamma0", "step", "gamma"});
  auto& meta = res.table.meta;
  meta["model"] = describe(params);
  meta["economy"] = describe(econ);
  meta["cost"] = describe(cost, econ.loss);
  meta["threshold"] = rep.threshold ? Json(*rep.threshold) : Json(nullptr);
  meta["target"] = rep.target;
  Json eqs = Json::array();
  for (const auto& e : rep.equilibria.equilibria) {
    Json j;
    j["gamma"] = e.gamma;
    j["stability"] = to_string(e.stability);
    eqs.push_back(j);
  }
  meta["equilibria"] = eqs;

  std::vector<std::pair<std::string, double>> starts;
  if (rep.threshold) {
    starts.emplace_back("below", std::max(0.0, *rep.threshold - offset));
    starts.emplace_back("above", std::min(1.0, *rep.threshold + offset));
  } else {
    starts.emplace_back("zero", 0.0);
  }
  for (const auto& [label, g0] : starts) {
    const Trajectory t = best_response_dynamics(params, econ, cost, g0, static_cast<int>(max_steps));
    for (std::size_t s = 0; s < t.gammas.size(); ++s) {
      res.table.add_row({label, g0, static_cast<std::int64_t>(s), t.gammas[s]});
    }
    meta["converged_" + label] = t.converged;
  }
  return res;
}

CommandResult cmd_simulate(const Config& cfg) {
  const EpidemicParams params = model_from(cfg);
  const std::uint64_t seed = seed_from(cfg);
  Graph graph;
  if (cfg.has("simulate", "graph")) {
    graph = load_edge_list(cfg.text("simulate", "graph", ""));
  } else {
    const std::string kind = cfg.text("simulate", "kind", "er");
    const auto n = positive_integer(cfg, "simulate", "n", 1000);
    if (n >= 4'000'000'000LL) cfg.fail("simulate", "n", "too many nodes");
    const std::uint64_t graph_seed = split_seed(seed, 0x67726170);
    try {
      if (kind == "er") {
        double lambda = poisson_lambda(params);
        lambda = cfg.number("simulate", "lambda", lambda >= 0.0 ? lambda : kDefaultLambda);
        graph = gen_er(static_cast<NodeId>(n), lambda, graph_seed);
      } else if (kind == "config") {
        graph = gen_config(static_cast<NodeId>(n), params.degree, graph_seed);
      } else {
        cfg.fail("simulate", "kind", "expected er or config (or give simulate.graph)");
      }
    } catch (const DomainError& e) {
      cfg.fail("simulate", "kind", e.what());
    }
  }
  SimConfig sc;
  sc.params = params;
  sc.gamma = probability(cfg, "simulate", "gamma", 0.5);
  for (const double v : cfg.numbers("simulate", "investment", {})) {
    if (v != 0.0 && v != 1.0) cfg.fail("simulate", "investment", "entries must be 0 or 1");
    sc.investment.push_back(v != 0.0 ? 1 : 0);
  }
  if (!sc.investment.empty() && sc.investment.size() != graph.num_nodes()) {
    cfg.fail("simulate", "investment", "length must equal the node count");
  }
  sc.trials = static_cast<std::uint64_t>(positive_integer(cfg, "simulate", "trials", 10000));
  sc.seed = seed;
  sc.per_node = cfg.boolean("simulate", "per_node", false);
  cfg.check_unused();

  const SimOutcome out = run_epidemic(graph, sc);
  CommandResult res;
  Json summary;
  summary["n"] = graph.num_nodes();
  summary["edges"] = graph.num_edges();
  summary["trials"] = out.trials;
  summary["gamma"] = sc.gamma;
  summary["invest_fraction"] = out.invest_fraction;
  summary["mean_infected"] = out.mean_infected;
  summary["se_infected"] = out.se_infected;
  const auto finite = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  summary["mean_infected_given_s"] = finite(out.mean_infected_given_s);
  summary["se_given_s"] = finite(out.se_given_s);
  summary["mean_infected_given_n"] = finite(out.mean_infected_given_n);
  summary["se_given_n"] = finite(out.se_given_n);
  if (sc.per_node) {
    res.table = start_table("simulate", {"node", "rate", "se"});
    res.table.meta["model"] = describe(params);
    res.table.meta["seed"] = seed;
    res.table.meta["summary"] = summary;
    for (NodeId i = 0; i < graph.num_nodes(); ++i) {
      res.table.add_row({static_cast<std::int64_t>(i), out.node_rate[i], out.node_se[i]});
    }
  } else {
    res.table = start_table(
        "simulate", {"n", "edges", "trials", "gamma", "invest_fraction", "mean_infected",
                     "se_infected", "mean_infected_given_s", "se_given_s",
                     "mean_infected_given_n", "se_given_n"});
    res.table.meta["model"] = describe(params);
    res.table.meta["seed"] = seed;
    res.table.add_row({static_cast<std::int64_t>(graph.num_nodes()),
                       static_cast<std::int64_t>(graph.num_edges()),
                       static_cast<std::int64_t>(out.trials), sc.gamma, out.invest_fraction,
                       out.mean_infected, out.se_infected, out.mean_infected_given_s,
                       out.se_given_s, out.mean_infected_given_n, out.se_given_n});
  }
  return res;
}

CommandResult cmd_gen_graph(const Config& cfg) {
  const std::string kind = cfg.text("graph", "kind", "er");
  const std::uint64_t seed = seed_from(cfg);
  Graph graph;
  try {
    if (kind == "er" || kind == "config") {
      const auto n = positive_integer(cfg, "graph", "n", 1000);
      if (n >= 4'000'000'000LL) cfg.fail("graph", "n", "too many nodes");
      if (kind == "er") {
        const double lambda = cfg.number("graph", "lambda", kDefaultLambda);
        cfg.check_unused();
        graph = gen_er(static_cast<NodeId>(n), lambda, seed);
      } else {
        const DegreeDist degree = degree_from(cfg, "model", "degree");
        cfg.check_unused();
        graph = gen_config(static_cast<NodeId>(n), degree, seed);
      }
    } else if (kind == "gw_tree") {
      const DegreeDist degree = degree_from(cfg, "model", "degree");
      const auto depth = positive_integer(cfg, "graph", "depth", 3, 0);
      cfg.check_unused();
      const DegreeDist offspring =
          mean_degree(degree) > 0.0 ? size_biased(degree) : DegreeDist::regular(0);
      graph = gen_gw_tree(degree, offspring, static_cast<std::uint32_t>(depth), seed).to_graph();
    } else {
      cfg.fail("graph", "kind", "expected er, config or gw_tree");
    }
  } catch (const DomainError& e) {
    cfg.fail("graph", "kind", e.what());
  }
  CommandResult res;
  std::ostringstream os;
  write_edge_list(graph, os);
  res.raw = os.str();
  res.table = start_table("gen-graph", {"n", "m"});
  res.table.add_row({static_cast<std::int64_t>(graph.num_nodes()),
                     static_cast<std::int64_t>(graph.num_edges())});
  return res;
}

// ----------------------------------------------------------------- dispatch

namespace {

using CommandFn = CommandResult (*)(const Config&);

const std::vector<std::pair<std::string, CommandFn>>& registry() {
  static const std::vector<std::pair<std::string, CommandFn>> table = {
      {"lmf-solve", cmd_lmf_solve},   {"equilibria", cmd_equilibria},
      {"adoption-curve", cmd_adoption_curve}, {"poa-curve", cmd_poa_curve},
      {"validate", cmd_validate},     {"tipping", cmd_tipping},
      {"simulate", cmd_simulate},     {"gen-graph", cmd_gen_graph},
  };
  return table;
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

CommandResult run_command(std::string_view name, const Config& cfg) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) {
      // shared keys every command accepts, read up front so check_unused
      // inside the command does not flag them
      const std::uint64_t seed = seed_from(cfg);
      cfg.get("run", "case");
      cfg.get("run", "format");
      CommandResult res = fn(cfg);
      res.table.meta["seed"] = seed;
      return res;
    }
  }
  throw InputError("unknown command '" + std::string(name) + "'");
}

int exit_code_for_current_exception(std::string& message) {
  try {
    throw;
  } catch (const InputError& e) {
    message = e.what();
    return kExitConfigError;
  } catch (const RegimeError& e) {
    message = e.what();
    return kExitConfigError;
  } catch (const DomainError& e) {
    message = e.what();
    return kExitConfigError;
  } catch (const NumericError& e) {
    message = e.what();
    return kExitNumericError;
  } catch (const std::exception& e) {
    message = e.what();
    return kExitNumericError;
  }
}

}  // namespace epirisk::cli
