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

#include "epirisk/econ.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "epirisk/errors.hpp"

namespace epirisk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << p << " is not a probability";
    throw DomainError(os.str());
  }
}

}  // namespace

Utility Utility::cara(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("CARA coefficient must be > 0");
  return Utility(Cara{a});
}

Utility Utility::log(double shift) {
  if (!std::isfinite(shift)) throw DomainError("log utility shift must be finite");
  return Utility(LogUtility{shift});
}

Utility Utility::crra(double rho) {
  if (!(rho >= 0.0) || rho == 1.0 || !std::isfinite(rho)) {
    throw DomainError("CRRA coefficient must be >= 0 and != 1 (use log utility)");
  }
  return Utility(Crra{rho});
}

double Utility::operator()(double x) const {
  return std::visit(Overloaded{
                        [x](const RiskNeutral&) { return x; },
                        [x](const Cara& u) { return -std::exp(-u.a * x) / u.a; },
                        [x](const LogUtility& u) { return std::log(x + u.shift); },
                        [x](const Crra& u) {
                          return std::pow(x, 1.0 - u.rho) / (1.0 - u.rho);
                        },
                    },
                    kind_);
}

double Utility::domain_min() const {
  return std::visit(Overloaded{
                        [](const RiskNeutral&) { return -kInf; },
                        [](const Cara&) { return -kInf; },
                        [](const LogUtility& u) { return -u.shift; },
                        [](const Crra&) { return 0.0; },
                    },
                    kind_);
}

bool Utility::domain_closed() const {
  if (const auto* c = std::get_if<Crra>(&kind_)) return c->rho < 1.0;
  return false;
}

bool Utility::in_domain(double x) const {
  const double lo = domain_min();
  return domain_closed() ? x >= lo : x > lo;
}

bool Utility::is_risk_neutral() const {
  if (std::holds_alternative<RiskNeutral>(kind_)) return true;
  if (const auto* c = std::get_if<Crra>(&kind_)) return c->rho == 0.0;
  return false;
}

std::string Utility::name() const {
  return std::visit(Overloaded{
                        [](const RiskNeutral&) { return std::string("risk_neutral"); },
                        [](const Cara&) { return std::string("cara"); },
                        [](const LogUtility&) { return std::string("log"); },
                        [](const Crra&) { return std::string("crra"); },
                    },
                    kind_);
}

void AgentEconomy::validate() const {
  if (!(loss >= 0.0) || !std::isfinite(loss)) throw DomainError("loss must be >= 0");
  if (!(cost >= 0.0 && cost <= loss)) {
    throw DomainError("cost must satisfy 0 <= cost <= loss");
  }
  if (!std::isfinite(wealth)) throw DomainError("wealth must be finite");
  if (!utility.in_domain(wealth - loss - cost)) {
    std::ostringstream os;
    os << "final wealth " << wealth - loss - cost << " outside the domain of "
       << utility.name() << " utility";
    throw DomainError(os.str());
  }
}

double willingness_to_pay_numeric(const AgentEconomy& econ, double p) {
  check_probability(p, "loss probability");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return econ.loss;
  const auto& u = econ.utility;
  const double w = econ.wealth;
  const double l = econ.loss;
  if (!u.in_domain(w - l)) {
    throw NumericError("w - loss outside utility domain; no root for m");
  }
  const double target = p * u(w - l) + (1.0 - p) * u(w);
  // g(m) = u(w - m) - target is decreasing, g(0) >= 0 >= g(l)
  double lo = 0.0;
  double hi = l;
  const double g_lo = u(w - lo) - target;
  const double g_hi = u(w - hi) - target;
  if (!std::isfinite(g_lo) || !std::isfinite(g_hi) || g_lo < 0.0 || g_hi > 0.0) {
    throw NumericError("willingness to pay: root not bracketed in [0, loss]");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (u(w - mid) - target >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double willingness_to_pay(const AgentEconomy& econ, double p) {
  check_probability(p, "loss probability");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return econ.loss;
  if (econ.utility.is_risk_neutral()) return p * econ.loss;
  if (const auto* c = std::get_if<Cara>(&econ.utility.kind())) {
    // m = l + log(p + (1 - p) e^{-a l}) / a, independent of w
    const double l = econ.loss;
    return l + std::log(p + (1.0 - p) * std::exp(-c->a * l)) / c->a;
  }
  return willingness_to_pay_numeric(econ, p);
}

double risk_premium(const AgentEconomy& econ, double p) {
  if (econ.utility.is_risk_neutral()) {
    check_probability(p, "loss probability");
    return 0.0;
  }
  return willingness_to_pay(econ, p) - p * econ.loss;
}

double invest_threshold(const AgentEconomy& econ, double p_n, double p_s) {
  check_probability(p_n, "pN");
  check_probability(p_s, "pS");
  if (p_s > p_n) {
    std::ostringstream os;
    os << "pS = " << p_s << " exceeds pN = " << p_n;
    throw DomainError(os.str());
  }
  if (p_s == p_n) return 0.0;
  if (econ.utility.is_risk_neutral()) return (p_n - p_s) * econ.loss;
  // (pN - pS) l + pi(pN) - pi(pS) = m(pN) - m(pS)
  return willingness_to_pay(econ, p_n) - willingness_to_pay(econ, p_s);
}

bool invests(const AgentEconomy& econ, double p_n, double p_s) {
  return econ.cost < invest_threshold(econ, p_n, p_s);
}

}  // namespace epirisk
