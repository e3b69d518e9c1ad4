// Copyright 2026 The qhyper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generational imitation dynamics over a population of strategies placed on
// the nodes of a hypergraph.

#ifndef QHYPER_EVODYN_H_
#define QHYPER_EVODYN_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qhyper/hypernet.h"
#include "qhyper/qgame.h"
#include "qhyper/random.h"

namespace qhyper {

using Frequencies = std::array<double, kNumStrategies>;

struct Population {
  std::vector<StrategyTag> strategies;
  std::uint64_t generation = 0;

  Frequencies CountFrequencies() const;
};

enum class InitMode {
  kWeightedRandom4,  // C, D, H, Q with weights 0.49, 0.49, 0.01, 0.01
  kWeightedRandom5,  // C, D, H, Q, Sigma with 0.48, 0.48, 0.02, 0.01, 0.01
  kHubQ4,            // Q on the highest-degree node; C, D, H uniform elsewhere
  kHubSigma5,        // Sigma on the hub; C, D, H, Q uniform elsewhere
};

struct InitScheme {
  InitMode mode = InitMode::kWeightedRandom4;
  std::uint64_t seed = 0;
};

// Strategies that may occur under `mode` (4 or 5 of them).
std::span<const StrategyTag> ActiveStrategies(InitMode mode);

Population InitPopulation(const Hypergraph& g, const InitScheme& scheme);

struct EvolutionConfig {
  std::uint64_t max_generations = 10000;
  std::uint64_t window = 1000;
  std::uint64_t equilibrium_patience = 500;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

// F_i: the sum of node i's payoffs over all hyperedges containing it. Edges
// are visited in index order, so the floating-point sums are reproducible.
std::vector<double> AccumulatePayoffs(const Hypergraph& g,
                                      const Population& pop,
                                      const PayoffTable& table);

// (F_j - F_i) / (alpha * max(k_i, k_j)) when F_j > F_i, else 0.
double ImitationProbability(double f_i, double f_j, std::uint32_t k_i,
                            std::uint32_t k_j, double alpha);

// One synchronous generation. Every non-isolated node, in id order, draws a
// uniform neighbour index and then a uniform variate from `rng`, and adopts
// that neighbour's previous-generation strategy with the imitation
// probability. Normalizer alpha is table.MaxPayoff().
Population StepGeneration(const Hypergraph& g, const Population& pop,
                          const PayoffTable& table, Rng& rng);

struct Trajectory {
  // Entry 0 is the initial population; entry t follows generation t.
  std::vector<Frequencies> frequencies;
  std::uint64_t generations_run = 0;
  std::optional<std::uint64_t> equilibrium_generation;
  Frequencies averaged_frequencies{};
};

// Iterates StepGeneration up to max_generations. Stops once the strategy
// vector has stayed identical for equilibrium_patience consecutive
// generations, in which case the average is that constant state; otherwise
// averages the last min(window, generations_run) post-step frequencies.
Trajectory RunEvolution(const Hypergraph& g, const Population& initial,
               const EvolutionConfig& config, const PayoffTable& table);

Trajectory RunEvolution(const Hypergraph& g, const InitScheme& scheme,
               const EvolutionConfig& config, const PayoffTable& table);

}  // namespace qhyper

#endif  // QHYPER_EVODYN_H_
