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

#include <cmath>
#include <sstream>
#include <string>

#include "epirisk/cli/commands.hpp"
#include "epirisk/errors.hpp"
#include "epirisk/graph.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace epirisk;
using namespace epirisk::cli;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

double cell(const Table& t, std::size_t row, const std::string& col) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    if (t.columns[k] == col) return std::get<double>(t.rows[row][k]);
  }
  FAIL("no column " << col);
  return 0.0;
}

}  // namespace

TEST_CASE("config errors carry file, line and key") {
  const std::string unknown_section = error_of([] { Config::parse("model:\n  p_plus: 0.1\nmodle:\n  x: 1\n", "a.yaml"); });
  CHECK(unknown_section.find("a.yaml:3") != std::string::npos);
  const Config cfg = Config::parse("model:\n  p_plus: 0.1\n  q_plsu: 0.2\n", "b.yaml");
  model_from(cfg);
  const std::string typo = error_of([&] { cfg.check_unused(); });
  CHECK(typo.find("b.yaml:3: model.q_plsu") != std::string::npos);
  const Config bad = Config::parse("model:\n  p_plus: 1.5\n", "c.yaml");
  const std::string range = error_of([&] { model_from(bad); });
  CHECK(range.find("c.yaml:2: model.p_plus") != std::string::npos);
  CHECK_THROWS_AS(Config::parse("model: [1, 2]\n"), InputError);
  CHECK_THROWS_AS(Config::parse("model:\n  p_plus: [\n"), InputError);
}

TEST_CASE("overrides win and are parsed as yaml") {
  Config cfg = Config::parse("model:\n  p_plus: 0.1\n");
  cfg.set("model.p_plus=0.2");
  cfg.set("model.degree={kind: regular, degree: 3}");
  const EpidemicParams p = model_from(cfg);
  CHECK(p.p_plus == 0.2);
  CHECK(p.degree == DegreeDist::regular(3));
  CHECK_THROWS_AS(cfg.set("nosection"), InputError);
  CHECK_THROWS_AS(cfg.set("bogus.key=1"), InputError);
  cfg.set("model.p_minus=0.5");
  CHECK(error_of([&] { model_from(cfg); }).find("--set model.p_minus") != std::string::npos);
}

TEST_CASE("builders") {
  Config cfg;
  cfg.set("run.case=weak");
  cfg.set("economy.utility={kind: cara, a: 2}");
  cfg.set("cost.ratio=0.25");
  cfg.set("economy.loss=2");
  const EpidemicParams p = model_from(cfg);
  CHECK(p.q_minus == p.q_plus);
  const AgentEconomy e = economy_from(cfg);
  CHECK(e.utility.name() == "cara");
  const CostModel c = cost_from(cfg, e.loss);
  CHECK(c.constant_cost() == 0.5);
  Config both;
  both.set("cost.ratio=0.1");
  both.set("cost.c=0.1");
  CHECK_THROWS_AS(cost_from(both, 1.0), InputError);
  Config badcase;
  badcase.set("run.case=medium");
  CHECK_THROWS_AS(model_from(badcase), InputError);
}

TEST_CASE("table rendering") {
  Table t;
  t.columns = {"a", "b", "c"};
  t.add_row({1.5, std::string("x,y"), std::nan("")});
  t.add_row({std::int64_t{3}, true, std::monostate{}});
  CHECK(to_csv(t) == "a,b,c\n1.5,\"x,y\",nan\n3,true,\n");
  const auto j = nlohmann::json::parse(to_json(t));
  CHECK(j["rows"][0]["c"].is_null());
  CHECK(j["rows"][1]["b"] == true);
  CHECK_THROWS(t.add_row({1.0}));
  CHECK(format_number(0.1) == "0.1");
  CHECK_THROWS_AS(parse_format("xml"), InputError);
}

TEST_CASE("lmf-solve golden row and lambda sweep") {
  Config cfg;
  cfg.set("lmf.gammas=[0]");
  const CommandResult r = run_command("lmf-solve", cfg);
  REQUIRE(r.table.rows.size() == 1);
  CHECK(std::abs(cell(r.table, 0, "h") - oracle::kHStar) < 1e-10);
  Config sweep;
  sweep.set("lmf.gammas=[0, 1]");
  sweep.set("lmf.lambdas=[0, 5]");
  sweep.set("model.q_plus=0");
  sweep.set("model.p_minus=0.004");
  const CommandResult s = run_command("lmf-solve", sweep);
  REQUIRE(s.table.rows.size() == 4);
  CHECK(s.table.columns.front() == "lambda");
  CHECK(cell(s.table, 0, "h") == doctest::Approx(0.01));
  CHECK(cell(s.table, 3, "h") == doctest::Approx(0.004));
}

TEST_CASE("equilibria, tipping and price of anarchy commands") {
  Config cfg;
  cfg.set("run.case=strong");
  const CommandResult eq = run_command("equilibria", cfg);
  REQUIRE(eq.table.rows.size() == 1);
  CHECK(std::abs(cell(eq.table, 0, "gamma") - oracle::kProp2Gamma) < 1e-6);
  CHECK(eq.table.meta.contains("poa_case1"));

  Config weak;
  weak.set("run.case=weak");
  weak.set("cost.ratio=6.975e-5");
  const CommandResult tip = run_command("tipping", weak);
  CHECK(tip.table.meta["threshold"].is_number());
  CHECK(tip.table.meta["target"] == 1.0);

  Config poa;
  poa.set("run.case=weak");
  poa.set("poa.cost_ratios=[0.00005, 0.001, 0.02]");
  const CommandResult pc = run_command("poa-curve", poa);
  REQUIRE(pc.table.rows.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(cell(pc.table, k, "poa") >= 1.0 - 1e-9);
  CHECK(cell(pc.table, 0, "poa") == doctest::Approx(1.0));
}

TEST_CASE("adoption-curve command") {
  Config cfg;
  cfg.set("adoption.cost_points=41");
  const CommandResult r = run_command("adoption-curve", cfg);
  CHECK(r.table.meta["quality_paradox"].is_object());
  for (std::size_t k = 0; k < r.table.rows.size(); ++k) {
    if (cell(r.table, k, "cost_ratio") == 1.0) CHECK(cell(r.table, k, "gamma") == 0.0);
  }
  Config bad;
  bad.set("adoption.q_minus_values=[0.7]");
  CHECK_THROWS_AS(run_command("adoption-curve", bad), InputError);
}

TEST_CASE("validate in tiny mode passes") {
  Config cfg;
  cfg.set("validate.mode=tiny");
  cfg.set("validate.graphs=4");
  cfg.set("validate.trials=20000");
  const CommandResult r = run_command("validate", cfg);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.table.meta["verdict"] == "pass");
}

TEST_CASE("validate in lmf mode without contagion has a tiny gap") {
  Config cfg;
  cfg.set("model.q_plus=0");
  cfg.set("validate.n_values=[1000]");
  cfg.set("validate.trials=20");
  const CommandResult r = run_command("validate", cfg);
  CHECK(cell(r.table, 0, "gap") < 0.01);
  CHECK(r.exit_code == kExitOk);
}

TEST_CASE("simulate and gen-graph commands") {
  Config cfg;
  cfg.set("simulate.n=200");
  cfg.set("simulate.trials=100");
  const CommandResult a = run_command("simulate", cfg);
  const CommandResult b = run_command("simulate", cfg);
  CHECK(cell(a.table, 0, "mean_infected") == cell(b.table, 0, "mean_infected"));
  Config gg;
  gg.set("graph.kind=gw_tree");
  gg.set("graph.depth=2");
  gg.set("model.degree={kind: regular, degree: 3}");
  const CommandResult g = run_command("gen-graph", gg);
  REQUIRE(g.raw.has_value());
  std::istringstream in(*g.raw);
  CHECK(read_edge_list(in).num_nodes() == 1 + 3 + 6);
  Config bad;
  bad.set("graph.kind=lattice");
  CHECK_THROWS_AS(run_command("gen-graph", bad), InputError);
}

TEST_CASE("exit codes") {
  std::string msg;
  const auto code = [&](auto ex) {
    try {
      throw ex;
    } catch (...) {
      return exit_code_for_current_exception(msg);
    }
  };
  CHECK(code(InputError("x")) == kExitConfigError);
  CHECK(code(DomainError("x")) == kExitConfigError);
  CHECK(code(RegimeError("x")) == kExitConfigError);
  CHECK(code(NumericError("x")) == kExitNumericError);
  CHECK_THROWS_AS(run_command("nope", Config()), InputError);
}
