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

#include "epirisk/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "epirisk/errors.hpp"

namespace epirisk {
namespace {

constexpr double kMergeGap = 1e-6;
constexpr double kBisectWidth = 1e-13;
constexpr double kDistributionTol = 1e-6;
constexpr double kGolden = 0.6180339887498949;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Excess of the best response over the diagonal, in units where the sign is
// what matters: c^gamma - c for a constant cost, BR(gamma) - gamma otherwise.
double excess(const CostModel& cost, double loss, const LmfSolution& sol) {
  if (cost.is_constant()) return sol.c_gamma - cost.constant_cost();
  return cost.best_response(sol.c_gamma, loss) - sol.gamma;
}

double endpoint_tol(const CostModel& cost, double loss) {
  return cost.is_constant() ? 1e-12 * std::max(1.0, loss) : 1e-12;
}

double per_capita(const CriticalCostCurve& curve, const CostModel& cost,
                  const LmfSolution& sol) {
  return cost.investing_cost(sol.gamma, curve.economy().loss) + curve.expected_loss(sol);
}

Equilibrium make_equilibrium(const CriticalCostCurve& curve, const CostModel& cost,
                             const LmfSolution& sol, Stability stability, bool interior,
                             bool limit_point) {
  Equilibrium e;
  e.gamma = sol.gamma;
  e.h = sol.h;
  e.p_n = sol.p_n;
  e.p_s = sol.p_s;
  e.c_gamma = sol.c_gamma;
  e.per_capita_cost = per_capita(curve, cost, sol);
  e.stability = stability;
  e.interior = interior;
  e.limit_point = limit_point;
  return e;
}

double ratio_or_one(double num, double den) {
  constexpr double kTiny = 1e-300;
  if (den <= kTiny) return num <= kTiny ? 1.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

void require_risk_neutral(const AgentEconomy& econ, const char* what) {
  if (!econ.utility.is_risk_neutral()) {
    throw RegimeError(std::string(what) + " requires a risk-neutral population");
  }
}

}  // namespace

Regime classify(const EpidemicParams& params) {
  if (params.p_minus == 0.0 && params.q_minus == 0.0) return Regime::kStrong;
  if (params.q_plus == params.q_minus) return Regime::kWeak;
  return Regime::kGeneral;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kStrong:
      return "strong";
    case Regime::kWeak:
      return "weak";
    case Regime::kGeneral:
      return "general";
  }
  return "general";
}

std::string to_string(Stability s) {
  return s == Stability::kStable ? "stable" : "unstable";
}

// ---------------------------------------------------------------- CostModel

CostModel CostModel::constant(double cost) {
  if (!(cost >= 0.0) || !std::isfinite(cost)) throw DomainError("cost must be >= 0");
  CostModel m;
  m.constant_ = cost;
  return m;
}

CostModel CostModel::piecewise(std::vector<double> ratios, std::vector<double> cdf) {
  if (ratios.size() != cdf.size() || ratios.size() < 2) {
    throw DomainError("cost cdf needs at least two knots and matching lengths");
  }
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    if (!is_probability(ratios[k]) || !is_probability(cdf[k])) {
      throw DomainError("cost cdf knots must lie in [0, 1] x [0, 1]");
    }
    if (k > 0 && !(ratios[k] > ratios[k - 1])) {
      throw DomainError("cost cdf ratios must be strictly increasing");
    }
    if (k > 0 && cdf[k] < cdf[k - 1]) throw DomainError("cost cdf must be non-decreasing");
  }
  if (std::abs(cdf.back() - 1.0) > 1e-12) throw DomainError("cost cdf must end at 1");
  cdf.back() = 1.0;
  // An atom anywhere but at 0 breaks continuity of t -> P(c / l <= t) on
  // the range the game evaluates.
  if (ratios.front() > 0.0 && cdf.front() > 0.0) {
    throw DomainError("cost cdf must be continuous: first knot above 0 needs cdf 0");
  }
  CostModel m;
  m.ratios_ = std::move(ratios);
  m.cdf_ = std::move(cdf);
  return m;
}

CostModel CostModel::uniform(double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw DomainError("uniform cost needs 0 <= lo < hi <= 1");
  }
  return piecewise({lo, hi}, {0.0, 1.0});
}

double CostModel::cdf(double t) const {
  if (is_constant()) throw DomainError("cdf() is only defined for a cost distribution");
  if (t < ratios_.front()) return 0.0;
  if (t >= ratios_.back()) return 1.0;
  const auto it = std::upper_bound(ratios_.begin(), ratios_.end(), t);
  const auto k = static_cast<std::size_t>(it - ratios_.begin());
  const double t0 = ratios_[k - 1];
  const double t1 = ratios_[k];
  const double w = (t - t0) / (t1 - t0);
  return cdf_[k - 1] + w * (cdf_[k] - cdf_[k - 1]);
}

double CostModel::investing_cost(double gamma, double loss) const {
  if (!is_probability(gamma)) throw DomainError("investing fraction outside [0, 1]");
  if (is_constant()) return gamma * *constant_;
  // integral of the quantile function, segment by segment
  double total = std::min(gamma, cdf_.front()) * ratios_.front();
  for (std::size_t k = 0; k + 1 < ratios_.size(); ++k) {
    const double u0 = cdf_[k];
    const double u1 = cdf_[k + 1];
    if (gamma <= u0) break;
    if (u1 <= u0) continue;
    const double u_end = std::min(gamma, u1);
    const double t_end = ratios_[k] + (ratios_[k + 1] - ratios_[k]) * (u_end - u0) / (u1 - u0);
    total += (u_end - u0) * 0.5 * (ratios_[k] + t_end);
  }
  return loss * total;
}

double CostModel::best_response(double critical, double loss) const {
  if (is_constant()) return *constant_ <= critical ? 1.0 : 0.0;
  if (loss <= 0.0) return critical >= 0.0 ? 1.0 : 0.0;
  return cdf(critical / loss);
}

void CostModel::validate(double loss) const {
  if (is_constant() && !(*constant_ >= 0.0 && *constant_ <= loss)) {
    std::ostringstream os;
    os << "constant cost " << *constant_ << " outside [0, loss=" << loss << "]";
    throw DomainError(os.str());
  }
}

// -------------------------------------------------------- CriticalCostCurve

CriticalCostCurve::CriticalCostCurve(EpidemicParams params, AgentEconomy econ,
                                     int grid_points, Execution exec)
    : lmf_(std::move(params)), econ_(std::move(econ)) {
  if (grid_points < 3) throw DomainError("gamma grid needs at least 3 points");
  econ_.validate();
  grid_.resize(static_cast<std::size_t>(grid_points));
  for_each_index(grid_.size(), exec, [&](std::size_t k) {
    grid_[k] = lmf_.critical_cost(econ_, gamma_at(static_cast<int>(k)));
  });
  lower_limit_ = lmf_.critical_cost(econ_, 0.0, RootChoice::kLargest);
  upper_limit_ = lmf_.critical_cost(econ_, 1.0, RootChoice::kLargest);
}

double CriticalCostCurve::gamma_at(int k) const {
  const int last = size() - 1;
  if (k >= last) return 1.0;
  return static_cast<double>(k) / last;
}

LmfSolution CriticalCostCurve::evaluate(double gamma) const {
  return lmf_.critical_cost(econ_, gamma);
}

double CriticalCostCurve::expected_loss(const LmfSolution& sol) const {
  const double l = econ_.loss;
  const double s = sol.p_s * l + risk_premium(econ_, sol.p_s);
  const double n = sol.p_n * l + risk_premium(econ_, sol.p_n);
  return sol.gamma * s + (1.0 - sol.gamma) * n;
}

double CriticalCostCurve::max_critical_cost() const {
  double best = std::max(lower_limit_.c_gamma, upper_limit_.c_gamma);
  for (const auto& s : grid_) best = std::max(best, s.c_gamma);
  return best;
}

// ------------------------------------------------------------- equilibria

double social_cost(const EpidemicParams& params, const AgentEconomy& econ,
                   const CostModel& cost, double gamma) {
  if (!is_probability(gamma)) throw DomainError("gamma outside [0, 1]");
  const LocalMeanField lmf(params);
  const LmfSolution sol = lmf.critical_cost(econ, gamma);
  const double l = econ.loss;
  return cost.investing_cost(gamma, l) +
         gamma * (sol.p_s * l + risk_premium(econ, sol.p_s)) +
         (1.0 - gamma) * (sol.p_n * l + risk_premium(econ, sol.p_n));
}

EquilibriumReport find_equilibria(const EpidemicParams& params, const AgentEconomy& econ,
                                  const CostModel& cost, const GameOptions& options) {
  const CriticalCostCurve curve(params, econ, options.grid_points, options.execution);
  return find_equilibria(curve, cost, options);
}

EquilibriumReport find_equilibria(const CriticalCostCurve& curve, const CostModel& cost,
                                  const GameOptions& options) {
  const double loss = curve.economy().loss;
  cost.validate(loss);
  const int n = curve.size();
  const double tol = endpoint_tol(cost, loss);
  const auto ex = [&](const LmfSolution& s) { return excess(cost, loss, s); };

  // scan values; the endpoints use their one-sided limits
  std::vector<double> scan(static_cast<std::size_t>(n));
  for (int k = 1; k + 1 < n; ++k) scan[k] = ex(curve.at(k));
  scan[0] = ex(curve.right_limit_at_zero());
  scan[n - 1] = ex(curve.left_limit_at_one());

  std::vector<Equilibrium> found;

  {  // gamma = 0: BR(0) = 0 in the closure
    const double actual = ex(curve.at(0));
    const double limit = scan[0];
    if (std::min(actual, limit) <= tol) {
      Stability st;
      if (limit < -tol) {
        st = Stability::kStable;
      } else if (limit > tol) {
        st = Stability::kUnstable;
      } else {
        st = scan[1] <= 0.0 ? Stability::kStable : Stability::kUnstable;
      }
      const bool via_limit = actual > tol;
      found.push_back(make_equilibrium(
          curve, cost, via_limit ? curve.right_limit_at_zero() : curve.at(0), st, false,
          via_limit));
    }
  }
  {  // gamma = 1: BR(1) = 1 in the closure
    const double actual = ex(curve.at(n - 1));
    const double limit = scan[n - 1];
    if (std::max(actual, limit) >= -tol) {
      Stability st;
      if (limit > tol) {
        st = Stability::kStable;
      } else if (limit < -tol) {
        st = Stability::kUnstable;
      } else {
        st = scan[n - 2] >= 0.0 ? Stability::kStable : Stability::kUnstable;
      }
      const bool via_limit = actual < -tol;
      found.push_back(make_equilibrium(
          curve, cost, via_limit ? curve.left_limit_at_one() : curve.at(n - 1), st, false,
          via_limit));
    }
  }

  // interior crossings: sign scan, then bisection
  const auto positive = [](double e) { return e > 0.0; };
  for (int k = 0; k + 1 < n; ++k) {
    const bool s0 = positive(scan[k]);
    const bool s1 = positive(scan[k + 1]);
    if (s0 == s1) continue;
    double lo = curve.gamma_at(k);
    double hi = curve.gamma_at(k + 1);
    while (hi - lo > kBisectWidth) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (positive(ex(curve.evaluate(mid))) == s0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double g = std::clamp(0.5 * (lo + hi), 0.0, 1.0);
    if (g <= 0.0 || g >= 1.0) continue;  // endpoints handled above
    const LmfSolution sol = curve.evaluate(g);
    const double residual = cost.is_constant()
                                ? std::abs(sol.c_gamma - cost.constant_cost())
                                : std::abs(ex(sol));
    const double allowed = cost.is_constant() ? 1e-7 * std::max(loss, 1e-300)
                                              : kDistributionTol;
    if (!(residual <= allowed)) continue;  // a jump, not a crossing
    found.push_back(make_equilibrium(curve, cost, sol,
                                     s0 ? Stability::kStable : Stability::kUnstable, true,
                                     false));
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const Equilibrium& a, const Equilibrium& b) { return a.gamma < b.gamma; });
  EquilibriumReport report;
  report.include_unstable = options.include_unstable;
  for (const auto& e : found) {
    if (!report.equilibria.empty() &&
        std::abs(e.gamma - report.equilibria.back().gamma) < kMergeGap) {
      // keep the endpoint over a crossing that converged onto it
      if (report.equilibria.back().interior && !e.interior) report.equilibria.back() = e;
      continue;
    }
    report.equilibria.push_back(e);
  }
  if (report.equilibria.empty()) {
    throw NumericError("no equilibrium found; the best-response scan is inconsistent");
  }

  // social optimum over symmetric profiles
  const auto cost_at = [&](double g) { return per_capita(curve, cost, curve.evaluate(g)); };
  int best_k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double v = per_capita(curve, cost, curve.at(k));
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  double best_gamma = curve.gamma_at(best_k);
  {
    double a = curve.gamma_at(std::max(0, best_k - 1));
    double b = curve.gamma_at(std::min(n - 1, best_k + 1));
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = cost_at(x1);
    double f2 = cost_at(x2);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kGolden * (b - a);
        f1 = cost_at(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kGolden * (b - a);
        f2 = cost_at(x2);
      }
    }
    if (f1 < best) {
      best = f1;
      best_gamma = x1;
    }
    if (f2 < best) {
      best = f2;
      best_gamma = x2;
    }
  }
  for (const auto& e : report.equilibria) {
    if (e.per_capita_cost < best) {
      best = e.per_capita_cost;
      best_gamma = e.gamma;
    }
  }
  report.social_opt_gamma = best_gamma;
  report.social_opt_cost = best;

  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& e : report.equilibria) {
    if (e.interior && e.stability == Stability::kUnstable && !options.include_unstable) {
      continue;
    }
    worst = std::max(worst, e.per_capita_cost);
  }
  if (!std::isfinite(worst)) {
    // only unstable interior points: fall back to all of them
    for (const auto& e : report.equilibria) worst = std::max(worst, e.per_capita_cost);
  }
  report.worst_equilibrium_cost = worst;
  report.price_of_anarchy = ratio_or_one(worst, best);
  return report;
}

// ------------------------------------------------------ price of anarchy

double price_of_anarchy_case1(const EpidemicParams& params, const AgentEconomy& econ,
                              double cost, const GameOptions& options) {
  if (classify(params) != Regime::kStrong) {
    throw RegimeError("case-1 price of anarchy needs p- = q- = 0");
  }
  require_risk_neutral(econ, "case-1 price of anarchy");
  return find_equilibria(params, econ, CostModel::constant(cost), options).price_of_anarchy;
}

Case2Poa price_of_anarchy_case2(const EpidemicParams& params, const AgentEconomy& econ,
                                double cost, const GameOptions& options) {
  if (params.q_plus != params.q_minus) {
    throw RegimeError("case-2 price of anarchy needs q+ = q-");
  }
  require_risk_neutral(econ, "case-2 price of anarchy");
  const CriticalCostCurve curve(params, econ, options.grid_points, options.execution);
  Case2Poa out;
  const LmfSolution& s0 = curve.at(0);
  const LmfSolution& s1 = curve.at(curve.size() - 1);
  out.c0 = s0.c_gamma;
  out.c1 = s1.c_gamma;
  out.h0 = s0.h;
  out.h1 = s1.h;
  const double l = econ.loss;
  out.formula = 1.0;
  if (out.c0 < cost) out.formula = std::max(1.0, ratio_or_one(out.h0 * l, cost + out.h1 * l));
  out.generic = find_equilibria(curve, CostModel::constant(cost), options).price_of_anarchy;
  out.agree = std::abs(out.generic - out.formula) <= 1e-6;
  if (!out.agree) {
    std::ostringstream os;
    os << "case-2 price of anarchy at c=" << cost << ": closed form " << out.formula
       << " differs from worst-equilibrium ratio " << out.generic;
    warn(os.str());
  }
  return out;
}

// ------------------------------------------------------------- dynamics

Trajectory best_response_dynamics(const EpidemicParams& params, const AgentEconomy& econ,
                                  const CostModel& cost, double gamma0, int max_steps) {
  if (!is_probability(gamma0)) throw DomainError("gamma0 outside [0, 1]");
  if (max_steps < 0) throw DomainError("max_steps must be >= 0");
  cost.validate(econ.loss);
  const LocalMeanField lmf(params);
  Trajectory traj;
  traj.gammas.push_back(gamma0);
  for (int t = 0; t < max_steps; ++t) {
    const double g = traj.gammas.back();
    const double next = cost.best_response(lmf.critical_cost(econ, g).c_gamma, econ.loss);
    traj.gammas.push_back(next);
    if (std::abs(next - g) < 1e-9) {
      traj.converged = true;
      return traj;
    }
    const std::size_t m = traj.gammas.size();
    if (m >= 3 && std::abs(next - traj.gammas[m - 3]) < 1e-12) {
      traj.cycle = std::make_pair(traj.gammas[m - 2], next);
      break;
    }
  }
  if (!traj.cycle && traj.gammas.size() >= 3) {
    const std::size_t m = traj.gammas.size();
    if (std::abs(traj.gammas[m - 1] - traj.gammas[m - 3]) < 1e-9) {
      traj.cycle = std::make_pair(traj.gammas[m - 2], traj.gammas[m - 1]);
    }
  }
  return traj;
}

TippingReport tipping_analysis(const EpidemicParams& params, const AgentEconomy& econ,
                               const CostModel& cost, const GameOptions& options) {
  TippingReport out;
  out.equilibria = find_equilibria(params, econ, cost, options);
  const auto& eqs = out.equilibria.equilibria;
  out.target = eqs.back().gamma;
  if (eqs.size() < 2) return out;
  const auto reaches = [&](double g0) {
    const Trajectory t = best_response_dynamics(params, econ, cost, g0);
    return t.converged && std::abs(t.final() - out.target) < kMergeGap;
  };
  if (reaches(0.0) || !reaches(1.0)) return out;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    if (reaches(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.threshold = hi;
  return out;
}

std::optional<double> tipping_threshold(const EpidemicParams& params,
                                        const AgentEconomy& econ, const CostModel& cost,
                                        const GameOptions& options) {
  return tipping_analysis(params, econ, cost, options).threshold;
}

// ------------------------------------------------------------ adoption

std::vector<AdoptionRow> adoption_curve(const EpidemicParams& base, const AgentEconomy& econ,
                                        std::span<const double> q_minus_values,
                                        std::span<const double> cost_ratios,
                                        const GameOptions& options) {
  for (const double q : q_minus_values) {
    if (!(q >= 0.0 && q <= base.q_plus)) {
      std::ostringstream os;
      os << "q- = " << q << " outside [0, q+ = " << base.q_plus << "]";
      throw DomainError(os.str());
    }
  }
  for (const double r : cost_ratios) {
    if (!is_probability(r)) throw DomainError("cost ratios must lie in [0, 1]");
  }
  std::vector<AdoptionRow> rows;
  for (const double q : q_minus_values) {
    EpidemicParams params = base;
    params.q_minus = q;
    const CriticalCostCurve curve(params, econ, options.grid_points, options.execution);
    std::vector<std::vector<AdoptionRow>> cells(cost_ratios.size());
    for_each_index(cost_ratios.size(), options.execution, [&](std::size_t i) {
      const double ratio = cost_ratios[i];
      const EquilibriumReport rep =
          find_equilibria(curve, CostModel::constant(ratio * econ.loss), options);
      for (const auto& e : rep.equilibria) {
        AdoptionRow row;
        row.q_minus = q;
        row.cost_ratio = ratio;
        row.gamma = e.gamma;
        row.stability = e.stability;
        row.p_n = e.p_n;
        row.p_s = e.p_s;
        row.social_cost = e.per_capita_cost;
        row.poa = rep.price_of_anarchy;
        row.limit_point = e.limit_point;
        cells[i].push_back(row);
      }
    });
    for (auto& cell : cells) rows.insert(rows.end(), cell.begin(), cell.end());
  }
  return rows;
}

std::optional<double> max_stable_gamma(std::span<const AdoptionRow> rows, double q_minus,
                                       double cost_ratio) {
  std::optional<double> best;
  for (const auto& r : rows) {
    if (r.q_minus != q_minus || r.cost_ratio != cost_ratio) continue;
    if (r.stability != Stability::kStable) continue;
    if (!best || r.gamma > *best) best = r.gamma;
  }
  return best;
}

std::optional<QualityParadox> find_quality_paradox(std::span<const AdoptionRow> rows,
                                                   bool require_positive) {
  // (cost ratio) -> (q-) -> maximal stable gamma
  std::map<double, std::map<double, double>> table;
  for (const auto& r : rows) {
    if (r.stability != Stability::kStable) continue;
    auto& cell = table[r.cost_ratio];
    auto [it, inserted] = cell.emplace(r.q_minus, r.gamma);
    if (!inserted) it->second = std::max(it->second, r.gamma);
  }
  std::optional<QualityParadox> best;
  double best_gap = 1e-9;
  for (const auto& [ratio, cell] : table) {
    for (auto a = cell.begin(); a != cell.end(); ++a) {
      if (require_positive && a->first <= 0.0) continue;
      for (auto b = std::next(a); b != cell.end(); ++b) {
        const double gap = b->second - a->second;
        if (gap > best_gap) {
          best_gap = gap;
          best = QualityParadox{ratio, a->first, b->first, a->second, b->second};
        }
      }
    }
  }
  return best;
}

}  // namespace epirisk
