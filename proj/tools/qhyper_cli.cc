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

// qhyper: command-line front end.
//
//   qhyper sweep  [flags]                 run a temptation sweep, write CSV
//   qhyper table  --temptation T          print the 125-profile payoff table
//   qhyper check  --profile A,B,C -T ...  Nash / Pareto check of one profile
//   qhyper netgen [flags]                 write a hypergraph edge list
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "qhyper/evodyn.h"
#include "qhyper/hypernet.h"
#include "qhyper/qgame.h"
#include "qhyper/xsweep.h"

namespace {

using namespace qhyper;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct NetworkFlags {
  std::string kind = "random";
  std::size_t nodes = 2500;
  std::size_t edges = 10000;
  std::size_t m0 = 3;
  std::size_t m = 2;
  CLI::Option* edges_opt = nullptr;
  CLI::Option* m0_opt = nullptr;
  CLI::Option* m_opt = nullptr;

  void Register(CLI::App* app) {
    app->add_option("--network", kind, "Network type")
        ->check(CLI::IsMember({"random", "sf"}))
        ->capture_default_str();
    app->add_option("--nodes", nodes, "Number of agents")->capture_default_str();
    edges_opt = app->add_option("--edges", edges, "Hyperedges (random only)")
                    ->capture_default_str();
    m0_opt = app->add_option("--m0", m0, "Seed nodes (sf only)")
                 ->capture_default_str();
    m_opt = app->add_option("--m", m, "Hyperedges per new node (sf only)")
                ->capture_default_str();
  }

  NetworkSpec ToSpec() const {
    NetworkSpec spec;
    if (kind == "random") {
      if (m0_opt->count() > 0) throw ConfigError("--m0: only valid with --network sf");
      if (m_opt->count() > 0) throw ConfigError("--m: only valid with --network sf");
      spec.kind = NetworkKind::kRandom;
    } else {
      if (edges_opt->count() > 0) {
        throw ConfigError("--edges: only valid with --network random");
      }
      spec.kind = NetworkKind::kScaleFree;
    }
    spec.nodes = nodes;
    spec.edge_count = edges;
    spec.m0 = m0;
    spec.m = m;
    return spec;
  }
};

InitMode ToInitMode(int strategies, const std::string& assignment) {
  if (assignment == "random") {
    return strategies == 4 ? InitMode::kWeightedRandom4
                           : InitMode::kWeightedRandom5;
  }
  return strategies == 4 ? InitMode::kHubQ4 : InitMode::kHubSigma5;
}

Profile ParseProfile(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) {
    throw ConfigError("--profile: expected three comma-separated strategies");
  }
  Profile p;
  for (int k = 0; k < 3; ++k) {
    const auto tag = ParseStrategy(parts[k]);
    if (!tag) {
      throw ConfigError(fmt::format("--profile: unknown strategy '{}'", parts[k]));
    }
    p[k] = *tag;
  }
  return p;
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  out << text;
  if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum three-player Prisoner's Dilemma on hypergraph networks"};
  app.require_subcommand(1);

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Run a temptation sweep");
  NetworkFlags sweep_net;
  sweep_net.Register(sweep);
  SweepConfig cfg;
  int strategies = 4;
  std::string assignment = "random";
  unsigned workers = 1;
  sweep->add_option("--strategies", strategies, "Strategy set size")
      ->check(CLI::IsMember({4, 5}))
      ->capture_default_str();
  sweep->add_option("--assignment", assignment, "Initial strategy assignment")
      ->check(CLI::IsMember({"random", "hub"}))
      ->capture_default_str();
  sweep->add_option("--t-start", cfg.t_start, "First temptation")->capture_default_str();
  sweep->add_option("--t-end", cfg.t_end, "Last temptation")->capture_default_str();
  sweep->add_option("--t-step", cfg.t_step, "Temptation step")->capture_default_str();
  sweep->add_option("--generations", cfg.evolution.max_generations,
                    "Maximum generations")
      ->capture_default_str();
  CLI::Option* window_opt =
      sweep->add_option("--window", cfg.evolution.window, "Averaging window")
          ->capture_default_str();
  sweep->add_option("--patience", cfg.evolution.equilibrium_patience,
                    "Unchanged generations that count as equilibrium")
      ->capture_default_str();
  sweep->add_option("--replicas", cfg.replicas_per_t, "Replicas per T")
      ->capture_default_str();
  sweep->add_option("--seed", cfg.master_seed, "Master seed")->capture_default_str();
  sweep->add_option("--out", cfg.output_path, "Output CSV (default stdout)");
  sweep->add_option("--workers", workers, "Worker threads (0 = all cores)")
      ->capture_default_str();

  // table
  CLI::App* table_cmd = app.add_subcommand("table", "Print the payoff table");
  double table_t = 9.0;
  table_cmd->add_option("-T,--temptation", table_t, "Temptation")
      ->capture_default_str();

  // check
  CLI::App* check = app.add_subcommand("check", "Nash/Pareto check of a profile");
  std::string profile_text;
  double check_t = 9.0;
  bool classical = false;
  check->add_option("--profile", profile_text, "e.g. Sigma,Sigma,Sigma")
      ->required();
  check->add_option("-T,--temptation", check_t, "Temptation")->capture_default_str();
  check->add_flag("--classical", classical,
                  "Restrict deviations and comparisons to {C, D}");

  // netgen
  CLI::App* netgen = app.add_subcommand("netgen", "Write a hypergraph edge list");
  NetworkFlags gen_net;
  gen_net.Register(netgen);
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  netgen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  netgen->add_option("--out", gen_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sweep->parsed()) {
      cfg.network = sweep_net.ToSpec();
      cfg.init_mode = ToInitMode(strategies, assignment);
      if (window_opt->count() == 0) {
        cfg.evolution.window =
            std::min(cfg.evolution.window, cfg.evolution.max_generations);
      }
      const SweepResult result = RunSweep(cfg, workers);
      if (cfg.output_path.empty() || cfg.output_path == "-") {
        std::cout << FormatCsv(result);
      } else {
        EmitCsv(result, cfg.output_path);
      }
    } else if (table_cmd->parsed()) {
      const PayoffTable table(PayoffParams{table_t});
      std::cout << "A,B,C,payoff_A,payoff_B,payoff_C\n";
      for (StrategyTag a : kAllStrategies)
        for (StrategyTag b : kAllStrategies)
          for (StrategyTag c : kAllStrategies) {
            const PayoffTriple& p = table.Lookup(a, b, c);
            std::cout << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f}\n",
                                     StrategyName(a), StrategyName(b),
                                     StrategyName(c), p[0], p[1], p[2]);
          }
    } else if (check->parsed()) {
      const Profile profile = ParseProfile(profile_text);
      const PayoffTable table(PayoffParams{check_t});
      const std::span<const StrategyTag> allowed =
          classical ? std::span<const StrategyTag>(kClassicalStrategies)
                    : std::span<const StrategyTag>(kAllStrategies);
      if (classical) {
        for (StrategyTag s : profile) {
          if (s != StrategyTag::kC && s != StrategyTag::kD) {
            throw ConfigError("--profile: --classical requires C or D only");
          }
        }
      }
      const PayoffTriple& p = table.Lookup(profile);
      std::cout << fmt::format("profile: {},{},{}\n", StrategyName(profile[0]),
                               StrategyName(profile[1]),
                               StrategyName(profile[2]));
      std::cout << fmt::format("temptation: {}\n", check_t);
      std::cout << fmt::format("payoffs: ({:.6g},{:.6g},{:.6g})\n", p[0], p[1],
                               p[2]);
      const auto deviation = BestDeviation(profile, table, allowed);
      std::cout << "Nash: " << (deviation ? "false" : "true") << '\n';
      if (deviation) {
        std::cout << fmt::format("best deviation: player {} -> {} (gain {:.6g})\n",
                                 "ABC"[deviation->player],
                                 StrategyName(deviation->to), deviation->gain);
      }
      std::cout << "Pareto: "
                << (IsParetoOptimal(profile, table, allowed) ? "true" : "false")
                << '\n';
    } else if (netgen->parsed()) {
      NetworkSpec spec = gen_net.ToSpec();
      spec.seed = gen_seed;
      const Hypergraph g = Generate(spec);
      std::ostringstream text;
      WriteEdgeList(text, g);
      WriteText(gen_out, text.str());
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
