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

#include "qhyper/evodyn.h"

#include <algorithm>
#include <stdexcept>

namespace qhyper {
namespace {

constexpr std::array<StrategyTag, 4> kFourStrategies = {
    StrategyTag::kC, StrategyTag::kD, StrategyTag::kH, StrategyTag::kQ};

// Initial weights in percent, aligned with ActiveStrategies().
constexpr std::array<int, 4> kWeights4 = {49, 49, 1, 1};
constexpr std::array<int, 5> kWeights5 = {48, 48, 2, 1, 1};

template <std::size_t K>
StrategyTag DrawWeighted(Rng& rng, std::span<const StrategyTag> tags,
                         const std::array<int, K>& percent) {
  auto r = static_cast<int>(rng.UniformIndex(100));
  for (std::size_t k = 0; k < K; ++k) {
    if (r < percent[k]) return tags[k];
    r -= percent[k];
  }
  return tags[K - 1];
}

}  // namespace

Frequencies Population::CountFrequencies() const {
  std::array<std::size_t, kNumStrategies> counts{};
  for (StrategyTag s : strategies) ++counts[Index(s)];
  Frequencies f{};
  const auto n = static_cast<double>(strategies.size());
  for (int k = 0; k < kNumStrategies; ++k) f[k] = counts[k] / n;
  return f;
}

std::span<const StrategyTag> ActiveStrategies(InitMode mode) {
  switch (mode) {
    case InitMode::kWeightedRandom4:
    case InitMode::kHubQ4:
      return kFourStrategies;
    case InitMode::kWeightedRandom5:
    case InitMode::kHubSigma5:
      return kAllStrategies;
  }
  return kAllStrategies;
}

Population InitPopulation(const Hypergraph& g, const InitScheme& scheme) {
  Rng rng(scheme.seed);
  Population pop;
  pop.strategies.resize(g.node_count());
  switch (scheme.mode) {
    case InitMode::kWeightedRandom4:
      for (StrategyTag& s : pop.strategies)
        s = DrawWeighted(rng, kFourStrategies, kWeights4);
      break;
    case InitMode::kWeightedRandom5:
      for (StrategyTag& s : pop.strategies)
        s = DrawWeighted(rng, kAllStrategies, kWeights5);
      break;
    case InitMode::kHubQ4:
    case InitMode::kHubSigma5: {
      const bool q4 = scheme.mode == InitMode::kHubQ4;
      const StrategyTag special = q4 ? StrategyTag::kQ : StrategyTag::kSigma;
      // The special strategy is the last active one; the rest are uniform.
      const std::size_t rest = q4 ? 3 : 4;
      const NodeId hub = g.HighestDegreeNode();
      for (NodeId v = 0; v < g.node_count(); ++v) {
        pop.strategies[v] =
            v == hub ? special : kAllStrategies[rng.UniformIndex(rest)];
      }
      break;
    }
  }
  return pop;
}

void EvolutionConfig::Validate() const {
  if (max_generations < 1) {
    throw std::invalid_argument("generations: must be at least 1");
  }
  if (window < 1 || window > max_generations) {
    throw std::invalid_argument("window: must be in [1, generations]");
  }
  if (equilibrium_patience < 1) {
    throw std::invalid_argument("patience: must be at least 1");
  }
}

std::vector<double> AccumulatePayoffs(const Hypergraph& g,
                                      const Population& pop,
                                      const PayoffTable& table) {
  std::vector<double> f(g.node_count(), 0.0);
  const auto& s = pop.strategies;
  for (const Hyperedge& e : g.edges()) {
    const PayoffTriple& p = table.Lookup(s[e[0]], s[e[1]], s[e[2]]);
    f[e[0]] += p[0];
    f[e[1]] += p[1];
    f[e[2]] += p[2];
  }
  return f;
}

double ImitationProbability(double f_i, double f_j, std::uint32_t k_i,
                            std::uint32_t k_j, double alpha) {
  if (!(f_j > f_i)) return 0.0;
  return (f_j - f_i) / (alpha * std::max(k_i, k_j));
}

Population StepGeneration(const Hypergraph& g, const Population& pop,
                          const PayoffTable& table, Rng& rng) {
  const std::vector<double> f = AccumulatePayoffs(g, pop, table);
  const double alpha = table.MaxPayoff();
  Population next{pop.strategies, pop.generation + 1};
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto nbrs = g.Neighbors(i);
    if (nbrs.empty()) continue;
    const NodeId j = nbrs[rng.UniformIndex(nbrs.size())];
    const double u = rng.UniformReal();
    const double p =
        ImitationProbability(f[i], f[j], g.Degree(i), g.Degree(j), alpha);
    if (u < p) next.strategies[i] = pop.strategies[j];
  }
  return next;
}

Trajectory RunEvolution(const Hypergraph& g, const Population& initial,
               const EvolutionConfig& config, const PayoffTable& table) {
  config.Validate();
  Rng rng(config.seed);
  Trajectory traj;
  traj.frequencies.reserve(config.max_generations + 1);
  traj.frequencies.push_back(initial.CountFrequencies());

  Population pop = initial;
  std::uint64_t unchanged = 0;
  while (traj.generations_run < config.max_generations) {
    Population next = StepGeneration(g, pop, table, rng);
    ++traj.generations_run;
    unchanged = next.strategies == pop.strategies ? unchanged + 1 : 0;
    pop = std::move(next);
    traj.frequencies.push_back(pop.CountFrequencies());
    if (unchanged >= config.equilibrium_patience) {
      traj.equilibrium_generation = traj.generations_run;
      break;
    }
  }

  if (traj.equilibrium_generation) {
    traj.averaged_frequencies = traj.frequencies.back();
    return traj;
  }
  const std::uint64_t w = std::min(config.window, traj.generations_run);
  Frequencies sum{};
  for (auto it = traj.frequencies.end() - static_cast<std::ptrdiff_t>(w);
       it != traj.frequencies.end(); ++it) {
    for (int k = 0; k < kNumStrategies; ++k) sum[k] += (*it)[k];
  }
  for (int k = 0; k < kNumStrategies; ++k)
    traj.averaged_frequencies[k] = sum[k] / static_cast<double>(w);
  return traj;
}

Trajectory RunEvolution(const Hypergraph& g, const InitScheme& scheme,
               const EvolutionConfig& config, const PayoffTable& table) {
  return RunEvolution(g, InitPopulation(g, scheme), config, table);
}

}  // namespace qhyper
