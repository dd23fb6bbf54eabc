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

// Degree distributions and their probability generating functions.
//
// A `DegreeDist` is the law P of a node's degree. The branching-process
// approximation of a sparse random graph also needs the size-biased
// offspring law P*, the degree of a node reached along a random edge minus
// that edge: P*(d-1) = d P(d) / sum_k k P(k).

#ifndef EPIRISK_DIST_HPP_
#define EPIRISK_DIST_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "epirisk/rng.hpp"

namespace epirisk {

struct Poisson {
  double lambda;
  friend bool operator==(const Poisson&, const Poisson&) = default;
};

struct Regular {
  int degree;
  friend bool operator==(const Regular&, const Regular&) = default;
};

// P(k) = s (1 - s)^k for k >= 0.
struct Geometric {
  double success;
  friend bool operator==(const Geometric&, const Geometric&) = default;
};

// probs[k] = P(k), k = 0..probs.size()-1.
struct Empirical {
  std::vector<double> probs;
  friend bool operator==(const Empirical&, const Empirical&) = default;
};

inline constexpr std::size_t kDefaultMaxDegree = 200;

class DegreeDist {
 public:
  using Kind = std::variant<Poisson, Regular, Geometric, Empirical>;

  static DegreeDist poisson(double lambda);
  static DegreeDist regular(int degree);
  static DegreeDist geometric(double success);
  // Probabilities must sum to 1 within 1e-12. Entries beyond `max_degree`
  // are dropped and the rest renormalized; a warning is emitted when the
  // dropped mass exceeds 1e-9.
  static DegreeDist empirical(std::vector<double> probs,
                              std::size_t max_degree = kDefaultMaxDegree);

  const Kind& kind() const { return kind_; }
  std::string name() const;

  double pmf(int k) const;

  friend bool operator==(const DegreeDist&, const DegreeDist&) = default;

 private:
  explicit DegreeDist(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

// E[x^N] for x in [0, 1]; throws DomainError otherwise.
double gen_fn(const DegreeDist& dist, double x);

// d/dx E[x^N], analytic per variant.
double gen_fn_derivative(const DegreeDist& dist, double x);

double mean_degree(const DegreeDist& dist);

// Offspring law P*. Poisson maps to itself, Regular(d) to Regular(d-1),
// Empirical to Empirical; Geometric maps to a truncated Empirical (the exact
// law is negative binomial). Throws DomainError when the mean degree is 0.
DegreeDist size_biased(const DegreeDist& dist,
                       std::size_t max_degree = kDefaultMaxDegree);

int sample_degree(const DegreeDist& dist, Engine& engine);

}  // namespace epirisk

#endif  // EPIRISK_DIST_HPP_
