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

// Temptation sweeps: seeded replicas over a grid of T values, run on a worker
// pool, with CSV output.

#ifndef QHYPER_XSWEEP_H_
#define QHYPER_XSWEEP_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qhyper/evodyn.h"
#include "qhyper/hypernet.h"

namespace qhyper {

// Invalid sweep configuration. what() starts with the offending field name.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure to write or read result files. what() names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  NetworkSpec network;
  InitMode init_mode = InitMode::kWeightedRandom4;
  EvolutionConfig evolution;
  double t_start = 5.0;
  double t_end = 9.0;
  double t_step = 0.05;
  std::uint32_t replicas_per_t = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;

  // Throws ConfigError.
  void Validate() const;
};

// Inclusive grid t_start + i * t_step, i = 0 .. floor((end - start) / step)
// with a 1e-9 slack so that the end point survives rounding.
std::vector<double> TemptationGrid(double t_start, double t_end, double t_step);

// Seed streams of one sweep cell.
enum class SeedStream : std::uint64_t {
  kNetwork = 1,
  kPopulation = 2,
  kDynamics = 3,
};

// h = SplitMix64(master); h = SplitMix64(h ^ stream);
// h = SplitMix64(h ^ replica); return SplitMix64(h ^ t_index).
// Network and population seeds pass t_index = 0 for every T, so one replica
// shares its topology and initial population across the whole grid.
std::uint64_t DeriveSeed(std::uint64_t master, SeedStream stream,
                         std::uint64_t replica, std::uint64_t t_index);

struct SweepRow {
  double temptation = 0.0;
  Frequencies frequencies{};
  std::uint64_t generations = 0;
  bool equilibrium = false;
  std::optional<std::uint64_t> equilibrium_generation;
  // Empty for the per-T mean row.
  std::optional<std::uint32_t> replica;

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  // Sorted by T, then replica, with the mean row (if any) last within a T.
  std::vector<SweepRow> rows;

  bool operator==(const SweepResult&) const = default;
};

// Runs every (T, replica) cell on `workers` threads (0 means hardware
// concurrency). The result does not depend on the worker count. When
// replicas_per_t > 1 a mean row follows the replicas of each T: mean
// frequencies, maximum generation count, equilibrium iff every replica
// reached one.
SweepResult RunSweep(const SweepConfig& config, unsigned workers = 1);

inline constexpr std::string_view kCsvHeader =
    "T,freq_C,freq_D,freq_H,freq_Q,freq_Sigma,generations,equilibrium,replica";

std::string FormatCsv(const SweepResult& result);
// Inverse of FormatCsv up to the printed precision. Throws IoError on
// malformed input.
SweepResult ParseCsv(std::string_view text);
// Throws IoError naming `path` on failure.
void EmitCsv(const SweepResult& result, const std::string& path);

}  // namespace qhyper

#endif  // QHYPER_XSWEEP_H_
