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

#include "epirisk/lmf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epirisk/errors.hpp"

namespace epirisk {
namespace {

constexpr int kMaxFixedPointIterations = 10000;
constexpr double kFixedPointStep = 1e-14;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void check_gamma(double gamma) {
  if (!is_probability(gamma)) {
    std::ostringstream os;
    os << "investment fraction " << gamma << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

DegreeDist offspring_of(const DegreeDist& degree) {
  // no neighbours: the subtree below a node is empty
  if (mean_degree(degree) == 0.0) return DegreeDist::regular(0);
  return size_biased(degree);
}

}  // namespace

void EpidemicParams::validate() const {
  if (!is_probability(p_plus) || !is_probability(p_minus) ||
      !is_probability(q_plus) || !is_probability(q_minus)) {
    throw DomainError("p+, p-, q+, q- must all lie in [0, 1]");
  }
  if (p_minus > p_plus) throw DomainError("require p- <= p+");
  if (q_minus > q_plus) throw DomainError("require q- <= q+");
}

LocalMeanField::LocalMeanField(EpidemicParams params)
    : params_(std::move(params)), offspring_(offspring_of(params_.degree)) {
  params_.validate();
}

double LocalMeanField::rde_map(double x, double gamma) const {
  const auto& p = params_;
  return 1.0 - gamma * (1.0 - p.p_minus) * gen_fn(offspring_, 1.0 - p.q_minus * x) -
         (1.0 - gamma) * (1.0 - p.p_plus) * gen_fn(offspring_, 1.0 - p.q_plus * x);
}

double LocalMeanField::iterate(double gamma, double x0, int depth) const {
  check_gamma(gamma);
  double x = x0;
  for (int i = 0; i < depth; ++i) x = rde_map(x, gamma);
  return x;
}

RdeSolution LocalMeanField::solve(double gamma, RootChoice choice) const {
  check_gamma(gamma);
  RdeSolution out;
  const double f0 = rde_map(0.0, gamma);
  out.degenerate = !(f0 > 0.0);
  if (out.degenerate && choice == RootChoice::kSmallest) {
    out.h = 0.0;
    out.residual = std::abs(f0);
    return out;
  }

  // Iterates from 1 decrease monotonically to the largest fixed point and
  // stay above it.
  double x = 1.0;
  double step = 0.0;
  for (; out.iterations < kMaxFixedPointIterations; ++out.iterations) {
    const double next = rde_map(x, gamma);
    step = x - next;
    x = std::min(x, next);
    if (step <= kFixedPointStep) break;
  }

  // Bracketed polish on g(x) = f(x) - x: g(hi) <= 0 <= g(lo).
  const auto g = [&](double y) { return rde_map(y, gamma) - y; };
  double hi = x;
  double lo = x;
  double width = std::max(2.0 * step, 1e-15);
  while (true) {
    lo = std::max(0.0, hi - width);
    if (g(lo) >= 0.0 || lo == 0.0) break;
    hi = lo;  // still right of the root
    width *= 4.0;
  }
  if (g(hi) > 0.0) {
    // iteration stopped exactly on the root from above
    lo = hi;
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.h = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
  out.residual = std::abs(g(out.h));
  if (!(out.residual <= 1e-10)) {
    std::ostringstream os;
    os << "RDE solve at gamma=" << gamma << " left residual " << out.residual;
    throw NumericError(os.str());
  }
  return out;
}

LossProbs LocalMeanField::loss_probs_at(double h) const {
  const auto& p = params_;
  LossProbs out;
  out.h = h;
  out.p_n = 1.0 - (1.0 - p.p_plus) * gen_fn(p.degree, 1.0 - p.q_plus * h);
  out.p_s = 1.0 - (1.0 - p.p_minus) * gen_fn(p.degree, 1.0 - p.q_minus * h);
  out.p_n = std::clamp(out.p_n, 0.0, 1.0);
  out.p_s = std::clamp(std::min(out.p_s, out.p_n), 0.0, 1.0);
  return out;
}

LossProbs LocalMeanField::loss_probs(double gamma, RootChoice choice) const {
  return loss_probs_at(solve(gamma, choice).h);
}

LmfSolution LocalMeanField::critical_cost(const AgentEconomy& econ, double gamma,
                                          RootChoice choice) const {
  const RdeSolution rde = solve(gamma, choice);
  const LossProbs lp = loss_probs_at(rde.h);
  LmfSolution out;
  out.gamma = gamma;
  out.h = rde.h;
  out.p_n = lp.p_n;
  out.p_s = lp.p_s;
  out.c_gamma = invest_threshold(econ, lp.p_n, lp.p_s);
  out.degenerate = rde.degenerate;
  return out;
}

RdeSolution solve_rde(const EpidemicParams& params, double gamma) {
  return LocalMeanField(params).solve(gamma);
}

LossProbs loss_probs(const EpidemicParams& params, double gamma) {
  return LocalMeanField(params).loss_probs(gamma);
}

LmfSolution critical_cost(const EpidemicParams& params, const AgentEconomy& econ,
                          double gamma) {
  return LocalMeanField(params).critical_cost(econ, gamma);
}

}  // namespace epirisk
