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

#include "epirisk/dist.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "epirisk/errors.hpp"

namespace epirisk {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "generating function argument " << x << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

double horner(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

DegreeDist DegreeDist::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("poisson mean must be finite and > 0");
  }
  return DegreeDist(Poisson{lambda});
}

DegreeDist DegreeDist::regular(int degree) {
  if (degree < 0) throw DomainError("regular degree must be >= 0");
  return DegreeDist(Regular{degree});
}

DegreeDist DegreeDist::geometric(double success) {
  if (!(success > 0.0 && success <= 1.0)) {
    throw DomainError("geometric success probability must be in (0, 1]");
  }
  return DegreeDist(Geometric{success});
}

DegreeDist DegreeDist::empirical(std::vector<double> probs,
                                 std::size_t max_degree) {
  if (probs.empty()) throw DomainError("empirical distribution is empty");
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DomainError("empirical probabilities must be finite and >= 0");
    }
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "empirical probabilities sum to " << total << ", expected 1";
    throw DomainError(os.str());
  }
  if (probs.size() > max_degree + 1) {
    const double tail =
        std::accumulate(probs.begin() + max_degree + 1, probs.end(), 0.0);
    probs.resize(max_degree + 1);
    if (tail > 1e-9) {
      std::ostringstream os;
      os << "empirical distribution truncated at degree " << max_degree
         << ", dropped tail mass " << tail;
      warn(os.str());
    }
    const double kept = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (!(kept > 0.0)) throw DomainError("empirical mass lost by truncation");
    for (double& p : probs) p /= kept;
  }
  while (probs.size() > 1 && probs.back() == 0.0) probs.pop_back();
  return DegreeDist(Empirical{std::move(probs)});
}

std::string DegreeDist::name() const {
  return std::visit(Overloaded{
                        [](const Poisson&) { return std::string("poisson"); },
                        [](const Regular&) { return std::string("regular"); },
                        [](const Geometric&) { return std::string("geometric"); },
                        [](const Empirical&) { return std::string("empirical"); },
                    },
                    kind_);
}

double DegreeDist::pmf(int k) const {
  if (k < 0) return 0.0;
  return std::visit(
      Overloaded{
          [k](const Poisson& d) {
            return std::exp(k * std::log(d.lambda) - d.lambda - std::lgamma(k + 1.0));
          },
          [k](const Regular& d) { return k == d.degree ? 1.0 : 0.0; },
          [k](const Geometric& d) { return d.success * std::pow(1.0 - d.success, k); },
          [k](const Empirical& d) {
            return static_cast<std::size_t>(k) < d.probs.size() ? d.probs[k] : 0.0;
          },
      },
      kind_);
}

double gen_fn(const DegreeDist& dist, double x) {
  check_unit(x);
  return std::visit(
      Overloaded{
          [x](const Poisson& d) { return std::exp(d.lambda * (x - 1.0)); },
          [x](const Regular& d) { return std::pow(x, d.degree); },
          [x](const Geometric& d) {
            return d.success / (1.0 - (1.0 - d.success) * x);
          },
          [x](const Empirical& d) { return horner(d.probs, x); },
      },
      dist.kind());
}

double gen_fn_derivative(const DegreeDist& dist, double x) {
  check_unit(x);
  return std::visit(
      Overloaded{
          [x](const Poisson& d) { return d.lambda * std::exp(d.lambda * (x - 1.0)); },
          [x](const Regular& d) {
            return d.degree == 0 ? 0.0 : d.degree * std::pow(x, d.degree - 1);
          },
          [x](const Geometric& d) {
            const double r = 1.0 - d.success;
            const double den = 1.0 - r * x;
            return d.success * r / (den * den);
          },
          [x](const Empirical& d) {
            double acc = 0.0;
            for (std::size_t k = d.probs.size(); k-- > 1;) {
              acc = acc * x + static_cast<double>(k) * d.probs[k];
            }
            return acc;
          },
      },
      dist.kind());
}

double mean_degree(const DegreeDist& dist) {
  return std::visit(
      Overloaded{
          [](const Poisson& d) { return d.lambda; },
          [](const Regular& d) { return static_cast<double>(d.degree); },
          [](const Geometric& d) { return (1.0 - d.success) / d.success; },
          [](const Empirical& d) {
            double m = 0.0;
            for (std::size_t k = 1; k < d.probs.size(); ++k) {
              m += static_cast<double>(k) * d.probs[k];
            }
            return m;
          },
      },
      dist.kind());
}

DegreeDist size_biased(const DegreeDist& dist, std::size_t max_degree) {
  const double mean = mean_degree(dist);
  if (!(mean > 0.0)) {
    throw DomainError("size-biased law undefined for mean degree 0");
  }
  return std::visit(
      Overloaded{
          [&](const Poisson&) { return dist; },
          [](const Regular& d) { return DegreeDist::regular(d.degree - 1); },
          [&](const Geometric& d) {
            // P*(k) = (k+1) s^2 (1-s)^k
            std::vector<double> probs;
            const double r = 1.0 - d.success;
            double total = 0.0;
            for (std::size_t k = 0;; ++k) {
              const double pk =
                  (k + 1.0) * d.success * d.success * std::pow(r, static_cast<double>(k));
              if (k > max_degree) {
                // remaining tail mass, closed form
                const double tail = 1.0 - total;
                if (tail > 1e-9) {
                  std::ostringstream os;
                  os << "size-biased geometric truncated at degree " << max_degree
                     << ", dropped tail mass " << tail;
                  warn(os.str());
                }
                break;
              }
              probs.push_back(pk);
              total += pk;
            }
            for (double& p : probs) p /= total;
            return DegreeDist::empirical(std::move(probs), max_degree);
          },
          [&](const Empirical& d) {
            std::vector<double> probs(d.probs.size() - 1, 0.0);
            for (std::size_t k = 1; k < d.probs.size(); ++k) {
              probs[k - 1] = static_cast<double>(k) * d.probs[k] / mean;
            }
            // absorb rounding so the sum check passes
            const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
            for (double& p : probs) p /= total;
            return DegreeDist::empirical(std::move(probs), max_degree);
          },
      },
      dist.kind());
}

int sample_degree(const DegreeDist& dist, Engine& engine) {
  return std::visit(
      Overloaded{
          [&](const Poisson& d) { return std::poisson_distribution<int>(d.lambda)(engine); },
          [](const Regular& d) { return d.degree; },
          [&](const Geometric& d) {
            if (d.success >= 1.0) return 0;
            return std::geometric_distribution<int>(d.success)(engine);
          },
          [&](const Empirical& d) {
            return std::discrete_distribution<int>(d.probs.begin(), d.probs.end())(engine);
          },
      },
      dist.kind());
}

}  // namespace epirisk
