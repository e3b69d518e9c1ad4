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
#include <cmath>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "oracle.h"

namespace qhyper {
namespace {

using enum StrategyTag;

Hypergraph RandomNet(std::size_t n, std::size_t e, std::uint64_t seed) {
  NetworkSpec s;
  s.nodes = n;
  s.edge_count = e;
  s.seed = seed;
  return GenerateRandom(s);
}

Hypergraph ScaleFreeNet(std::size_t n, std::uint64_t seed) {
  NetworkSpec s;
  s.kind = NetworkKind::kScaleFree;
  s.nodes = n;
  s.seed = seed;
  return GenerateScaleFree(s);
}

Population Uniform(std::size_t n, StrategyTag s) {
  return Population{std::vector<StrategyTag>(n, s), 0};
}

// Table whose every player earns `by_own[s]` per game, regardless of others.
PayoffTable OwnStrategyTable(const PayoffParams& params,
                             const std::array<double, kNumStrategies>& by_own) {
  PayoffTable::Entries entries{};
  for (StrategyTag a : kAllStrategies)
    for (StrategyTag b : kAllStrategies)
      for (StrategyTag c : kAllStrategies) {
        const int slot = (Index(a) * 5 + Index(b)) * 5 + Index(c);
        entries[slot] = {by_own[Index(a)], by_own[Index(b)], by_own[Index(c)]};
      }
  return PayoffTable::FromEntries(params, entries);
}

TEST(InitPopulation, WeightedFractionsWithinFourSigma) {
  const Hypergraph g = RandomNet(2500, 10000, 3);
  struct Case {
    InitMode mode;
    std::vector<double> weights;
  };
  const Case cases[] = {
      {InitMode::kWeightedRandom4, {0.49, 0.49, 0.01, 0.01, 0.0}},
      {InitMode::kWeightedRandom5, {0.48, 0.48, 0.02, 0.01, 0.01}},
  };
  for (const Case& c : cases) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Population pop = InitPopulation(g, {c.mode, seed});
      ASSERT_EQ(pop.strategies.size(), 2500u);
      std::array<int, kNumStrategies> counts{};
      for (StrategyTag s : pop.strategies) ++counts[Index(s)];
      for (int k = 0; k < kNumStrategies; ++k) {
        const double mean = 2500 * c.weights[k];
        const double sigma = std::sqrt(2500 * c.weights[k] * (1 - c.weights[k]));
        EXPECT_LE(std::abs(counts[k] - mean), 4 * sigma + 1e-12)
            << "strategy " << k << " seed " << seed;
      }
    }
  }
}

TEST(InitPopulation, HubModes) {
  const Hypergraph star(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Population sigma = InitPopulation(star, {InitMode::kHubSigma5, seed});
    EXPECT_EQ(sigma.strategies[0], kSigma);
    for (std::size_t v = 1; v < 7; ++v) EXPECT_NE(sigma.strategies[v], kSigma);

    const Population q = InitPopulation(star, {InitMode::kHubQ4, seed});
    EXPECT_EQ(q.strategies[0], kQ);
    for (std::size_t v = 1; v < 7; ++v) {
      EXPECT_NE(q.strategies[v], kQ);
      EXPECT_NE(q.strategies[v], kSigma);
    }
  }
}

TEST(InitPopulation, HubRestIsUniform) {
  const Hypergraph g = ScaleFreeNet(2500, 4);
  const Population pop = InitPopulation(g, {InitMode::kHubSigma5, 11});
  std::array<int, kNumStrategies> counts{};
  for (StrategyTag s : pop.strategies) ++counts[Index(s)];
  EXPECT_EQ(counts[Index(kSigma)], 1);
  const double sigma = std::sqrt(2499 * 0.25 * 0.75);
  for (int k = 0; k < 4; ++k) EXPECT_LE(std::abs(counts[k] - 2499 / 4.0), 4 * sigma);
}

TEST(InitPopulation, SingleNodeAndDeterminism) {
  const Hypergraph one(1, {});
  const Population pop = InitPopulation(one, {InitMode::kWeightedRandom4, 5});
  ASSERT_EQ(pop.strategies.size(), 1u);
  EXPECT_NE(pop.strategies[0], kSigma);

  const Hypergraph g = RandomNet(300, 900, 1);
  EXPECT_EQ(InitPopulation(g, {InitMode::kWeightedRandom5, 9}).strategies,
            InitPopulation(g, {InitMode::kWeightedRandom5, 9}).strategies);
}

TEST(AccumulatePayoffs, SmallCases) {
  const PayoffTable t9(PayoffParams{9.0});
  const Hypergraph single(3, {{0, 1, 2}});
  const auto f = AccumulatePayoffs(single, Uniform(3, kC), t9);
  for (double v : f) EXPECT_NEAR(v, 6.0, 1e-12);

  const Hypergraph two(5, {{0, 1, 2}, {0, 1, 3}});
  const auto fd = AccumulatePayoffs(two, Uniform(5, kD), t9);
  const std::vector<double> want = {2, 2, 1, 1, 0};
  for (int v = 0; v < 5; ++v) EXPECT_NEAR(fd[v], want[v], 1e-12);
}

TEST(AccumulatePayoffs, MatchesPerEdgeResummation) {
  std::mt19937 gen(6);
  std::uniform_int_distribution<int> pick(0, 4);
  const Hypergraph g = RandomNet(6, 4, 21);
  for (int trial = 0; trial < 20; ++trial) {
    Population pop = Uniform(6, kC);
    for (StrategyTag& s : pop.strategies) s = kAllStrategies[pick(gen)];
    const double t = 5.0 + 0.25 * trial;
    const auto f = AccumulatePayoffs(g, pop, PayoffTable(PayoffParams{t}));
    // Each node plays once per incident edge, from its own seat in the edge.
    for (NodeId v = 0; v < 6; ++v) {
      double expect = 0.0;
      for (const Hyperedge& e : g.edges())
        for (int seat = 0; seat < 3; ++seat)
          if (e[seat] == v) {
            expect += oracle::PayoffsDense(Index(pop.strategies[e[0]]),
                                           Index(pop.strategies[e[1]]),
                                           Index(pop.strategies[e[2]]), t)[seat];
          }
      EXPECT_NEAR(f[v], expect, 1e-10);
    }
  }
}

TEST(ImitationProbability, Formula) {
  EXPECT_EQ(ImitationProbability(4, 4, 1, 1, 9), 0.0);
  EXPECT_EQ(ImitationProbability(5, 4, 1, 1, 9), 0.0);
  EXPECT_DOUBLE_EQ(ImitationProbability(4, 10, 1, 2, 9), 1.0 / 3.0);
}

TEST(ImitationProbability, BoundedForReachablePayoffs) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> degree(1, 200);
  for (int trial = 0; trial < 100000; ++trial) {
    const double alpha = 6.0 + 4.0 * unit(gen);
    const std::uint32_t ki = degree(gen), kj = degree(gen);
    const double fi = unit(gen) * alpha * ki;
    const double fj = unit(gen) * alpha * kj;
    const double p = ImitationProbability(fi, fj, ki, kj, alpha);
    ASSERT_GE(p, 0.0);
    ASSERT_LE(p, 1.0);
  }
}

TEST(StepGeneration, MonomorphicIsAbsorbing) {
  const Hypergraph nets[] = {RandomNet(200, 600, 2), ScaleFreeNet(200, 2)};
  for (const Hypergraph& g : nets)
    for (double t : {5.0, 7.0, 9.0})
      for (StrategyTag s : kAllStrategies) {
        Rng rng(17);
        const Population pop = Uniform(g.node_count(), s);
        const Population next = StepGeneration(g, pop, PayoffTable(PayoffParams{t}), rng);
        EXPECT_EQ(next.strategies, pop.strategies);
        EXPECT_EQ(next.generation, 1u);
      }
}

TEST(StepGeneration, LoneDefectorConvertsWithTwoThirds) {
  const Hypergraph g(3, {{0, 1, 2}});
  const PayoffTable t9(PayoffParams{9.0});
  const Population pop{{kD, kC, kC}, 0};
  Rng rng(2024);
  constexpr int kTrials = 10000;
  int adopted = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const Population next = StepGeneration(g, pop, t9, rng);
    ASSERT_EQ(next.strategies[0], kD);
    adopted += next.strategies[1] == kD;
  }
  // The neighbour is the defector half the time; p = (9-3)/9 = 2/3 then.
  // Conditioned on drawing the defector, adoption is 2/3.
  EXPECT_NEAR(adopted / static_cast<double>(kTrials), 0.5 * 2.0 / 3.0, 0.03);
}

TEST(StepGeneration, IsDeterministic) {
  const Hypergraph g = RandomNet(300, 1000, 8);
  const Population pop = InitPopulation(g, {InitMode::kWeightedRandom5, 3});
  const PayoffTable table(PayoffParams{7.3});
  Rng a(55), b(55);
  EXPECT_EQ(StepGeneration(g, pop, table, a).strategies,
            StepGeneration(g, pop, table, b).strategies);
}

TEST(StepGeneration, AdoptionsReadPreviousGeneration) {
  // D earns 6 per game, H 3, C 0; alpha = 6. On the edge {0, 1, 2} with
  // (D, H, C), node 1 may copy D from node 0 and node 2 may copy node 1.
  const Hypergraph g(3, {{0, 1, 2}});
  const PayoffTable table = OwnStrategyTable(PayoffParams{6.0}, {0, 6, 3, 0, 0});
  const Population pop{{kD, kH, kC}, 0};
  const std::vector<double> f = {6, 3, 0};
  int sequential_differs = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    // Replay the draw order: per node, neighbour index then variate.
    Rng replay(seed);
    std::vector<StrategyTag> sync = pop.strategies;
    std::vector<StrategyTag> seq = pop.strategies;
    for (NodeId i = 0; i < 3; ++i) {
      const NodeId j = g.Neighbors(i)[replay.UniformIndex(2)];
      const double u = replay.UniformReal();
      if (u < ImitationProbability(f[i], f[j], 1, 1, 6.0)) {
        sync[i] = pop.strategies[j];
        seq[i] = seq[j];
      }
    }
    Rng rng(seed);
    const Population next = StepGeneration(g, pop, table, rng);
    EXPECT_EQ(next.strategies, sync) << "seed " << seed;
    sequential_differs += seq != sync;
  }
  EXPECT_GT(sequential_differs, 0);
}

TEST(StepGeneration, UniformPayoffsFreezeEveryone) {
  // Accumulated payoffs scale with degree, so a constant nonzero payoff only
  // equalizes F on a degree-regular hypergraph; zero payoffs do so anywhere.
  PayoffTable::Entries zero{};
  const PayoffTable flat_zero = PayoffTable::FromEntries(PayoffParams{9.0}, zero);
  const Hypergraph g = RandomNet(300, 900, 4);
  Population pop = InitPopulation(g, {InitMode::kWeightedRandom5, 1});
  const auto start = pop.strategies;
  Rng rng(3);
  for (int gen = 0; gen < 50; ++gen) pop = StepGeneration(g, pop, flat_zero, rng);
  EXPECT_EQ(pop.strategies, start);

  PayoffTable::Entries twos{};
  twos.fill({2.0, 2.0, 2.0});
  const PayoffTable flat_two = PayoffTable::FromEntries(PayoffParams{9.0}, twos);
  const Hypergraph regular = RandomNet(7, 35, 1);  // every triple of 7 nodes
  Population small{{kC, kD, kH, kQ, kSigma, kC, kD}, 0};
  const auto small_start = small.strategies;
  for (int gen = 0; gen < 50; ++gen) small = StepGeneration(regular, small, flat_two, rng);
  EXPECT_EQ(small.strategies, small_start);
}

TEST(Run, AllCooperateReachesEquilibriumAtPatience) {
  const Hypergraph g = RandomNet(100, 300, 1);
  EvolutionConfig cfg;
  cfg.max_generations = 2000;
  cfg.window = 1000;
  cfg.equilibrium_patience = 500;
  const Trajectory traj = RunEvolution(g, Uniform(100, kC), cfg, PayoffTable(PayoffParams{9.0}));
  ASSERT_TRUE(traj.equilibrium_generation.has_value());
  EXPECT_EQ(*traj.equilibrium_generation, 500u);
  EXPECT_EQ(traj.generations_run, 500u);
  EXPECT_EQ(traj.averaged_frequencies, (Frequencies{1, 0, 0, 0, 0}));
}

TEST(Run, FrequenciesSumToOneAndExtinctionIsPermanent) {
  const Hypergraph g = RandomNet(400, 1600, 12);
  EvolutionConfig cfg;
  cfg.max_generations = 2000;
  cfg.window = 1000;
  cfg.equilibrium_patience = 2000;
  cfg.seed = 8;
  const Trajectory traj =
      RunEvolution(g, InitScheme{InitMode::kWeightedRandom5, 8}, cfg, PayoffTable(PayoffParams{7.0}));
  EXPECT_EQ(traj.generations_run, 2000u);
  EXPECT_EQ(traj.frequencies.size(), 2001u);
  std::array<bool, kNumStrategies> extinct{};
  for (const Frequencies& f : traj.frequencies) {
    double sum = 0.0;
    for (int k = 0; k < kNumStrategies; ++k) {
      sum += f[k];
      if (extinct[k]) {
        EXPECT_EQ(f[k], 0.0);
      }
      if (f[k] == 0.0) extinct[k] = true;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }

  Frequencies mean{};
  for (std::size_t t = 1001; t <= 2000; ++t)
    for (int k = 0; k < kNumStrategies; ++k) mean[k] += traj.frequencies[t][k] / 1000;
  for (int k = 0; k < kNumStrategies; ++k)
    EXPECT_NEAR(traj.averaged_frequencies[k], mean[k], 1e-12);
}

TEST(Run, ReproducibleForFixedSeeds) {
  const Hypergraph g = RandomNet(100, 400, 5);
  EvolutionConfig cfg;
  cfg.max_generations = 1500;
  cfg.window = 1000;
  cfg.seed = 31;
  const PayoffTable t9(PayoffParams{9.0});
  const InitScheme scheme{InitMode::kWeightedRandom4, 77};
  const Trajectory a = RunEvolution(g, scheme, cfg, t9);
  const Trajectory b = RunEvolution(g, scheme, cfg, t9);
  EXPECT_EQ(a.averaged_frequencies, b.averaged_frequencies);
  EXPECT_EQ(a.frequencies, b.frequencies);
}

TEST(EvolutionConfig, Validation) {
  EvolutionConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.window = cfg.max_generations + 1;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
  cfg.window = 10;
  cfg.equilibrium_patience = 0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
  cfg.equilibrium_patience = 1;
  cfg.max_generations = 0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace qhyper
