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

#include "qhyper/xsweep.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

#include <fmt/format.h>

#include "qhyper/qgame.h"
#include "qhyper/random.h"

namespace qhyper {
namespace {

struct Cell {
  std::size_t t_index;
  std::uint32_t replica;
};

SweepRow MeanRow(std::span<const SweepRow> replicas) {
  SweepRow mean;
  mean.temptation = replicas.front().temptation;
  mean.equilibrium = true;
  for (const SweepRow& r : replicas) {
    for (int k = 0; k < kNumStrategies; ++k)
      mean.frequencies[k] += r.frequencies[k];
    mean.generations = std::max(mean.generations, r.generations);
    mean.equilibrium = mean.equilibrium && r.equilibrium;
  }
  for (double& f : mean.frequencies) f /= static_cast<double>(replicas.size());
  return mean;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseReal(std::string_view field, std::size_t line_no) {
  // std::from_chars for double is unavailable on older toolchains.
  std::string text(field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw IoError(fmt::format("csv line {}: bad number '{}'", line_no, text));
  }
  return v;
}

std::uint64_t ParseUnsigned(std::string_view field, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw IoError(
        fmt::format("csv line {}: bad integer '{}'", line_no, field));
  }
  return v;
}

}  // namespace

void SweepConfig::Validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(t_start)) throw ConfigError("t-start: must be finite");
  if (!finite(t_end)) throw ConfigError("t-end: must be finite");
  if (!finite(t_step) || !(t_step > 0.0)) {
    throw ConfigError("t-step: must be positive");
  }
  if (t_start > t_end) throw ConfigError("t-start: must not exceed t-end");
  if (replicas_per_t < 1) throw ConfigError("replicas: must be at least 1");
  try {
    network.Validate();
    evolution.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double> TemptationGrid(double t_start, double t_end,
                                   double t_step) {
  const auto count =
      static_cast<std::size_t>(std::floor((t_end - t_start) / t_step + 1e-9)) +
      1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = t_start + static_cast<double>(i) * t_step;
  return grid;
}

std::uint64_t DeriveSeed(std::uint64_t master, SeedStream stream,
                         std::uint64_t replica, std::uint64_t t_index) {
  std::uint64_t h = SplitMix64(master);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(stream));
  h = SplitMix64(h ^ replica);
  return SplitMix64(h ^ t_index);
}

SweepResult RunSweep(const SweepConfig& config, unsigned workers) {
  config.Validate();
  const std::vector<double> grid =
      TemptationGrid(config.t_start, config.t_end, config.t_step);
  const std::uint32_t replicas = config.replicas_per_t;

  std::vector<Hypergraph> networks;
  std::vector<Population> initial;
  networks.reserve(replicas);
  initial.reserve(replicas);
  for (std::uint32_t r = 0; r < replicas; ++r) {
    NetworkSpec spec = config.network;
    spec.seed = DeriveSeed(config.master_seed, SeedStream::kNetwork, r, 0);
    networks.push_back(Generate(spec));
    const InitScheme scheme{
        config.init_mode,
        DeriveSeed(config.master_seed, SeedStream::kPopulation, r, 0)};
    initial.push_back(InitPopulation(networks.back(), scheme));
  }

  std::vector<Cell> cells;
  for (std::size_t t = 0; t < grid.size(); ++t)
    for (std::uint32_t r = 0; r < replicas; ++r) cells.push_back({t, r});

  std::vector<SweepRow> cell_rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      const Cell cell = cells[c];
      const PayoffTable table(PayoffParams{grid[cell.t_index]});
      EvolutionConfig evo = config.evolution;
      evo.seed = DeriveSeed(config.master_seed, SeedStream::kDynamics,
                            cell.replica, cell.t_index);
      const Trajectory traj =
          RunEvolution(networks[cell.replica], initial[cell.replica], evo, table);
      SweepRow& row = cell_rows[c];
      row.temptation = grid[cell.t_index];
      row.frequencies = traj.averaged_frequencies;
      row.generations = traj.generations_run;
      row.equilibrium = traj.equilibrium_generation.has_value();
      row.equilibrium_generation = traj.equilibrium_generation;
      row.replica = cell.replica;
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(cells.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  // cells are already ordered by T then replica.
  SweepResult result;
  result.rows.reserve(cells.size() + (replicas > 1 ? grid.size() : 0));
  for (std::size_t t = 0; t < grid.size(); ++t) {
    const std::span<const SweepRow> block(cell_rows.data() + t * replicas,
                                          replicas);
    result.rows.insert(result.rows.end(), block.begin(), block.end());
    if (replicas > 1) result.rows.push_back(MeanRow(block));
  }
  return result;
}

std::string FormatCsv(const SweepResult& result) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepRow& r : result.rows) {
    out += fmt::format("{:.4f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{},{}\n",
                       r.temptation, r.frequencies[0], r.frequencies[1],
                       r.frequencies[2], r.frequencies[3], r.frequencies[4],
                       r.generations, r.equilibrium ? "true" : "false",
                       r.replica ? fmt::to_string(*r.replica) : "mean");
  }
  return out;
}

SweepResult ParseCsv(std::string_view text) {
  SweepResult result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw IoError("csv: unexpected header");
      continue;
    }
    const auto f = SplitFields(line);
    if (f.size() != 9) {
      throw IoError(fmt::format("csv line {}: expected 9 fields", line_no));
    }
    SweepRow row;
    row.temptation = ParseReal(f[0], line_no);
    for (int k = 0; k < kNumStrategies; ++k)
      row.frequencies[k] = ParseReal(f[1 + k], line_no);
    row.generations = ParseUnsigned(f[6], line_no);
    if (f[7] != "true" && f[7] != "false") {
      throw IoError(fmt::format("csv line {}: bad equilibrium flag", line_no));
    }
    row.equilibrium = f[7] == "true";
    if (row.equilibrium) row.equilibrium_generation = row.generations;
    if (f[8] != "mean") {
      row.replica = static_cast<std::uint32_t>(ParseUnsigned(f[8], line_no));
    }
    result.rows.push_back(row);
  }
  if (line_no == 0) throw IoError("csv: empty input");
  return result;
}

void EmitCsv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  out << FormatCsv(result);
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

}  // namespace qhyper
