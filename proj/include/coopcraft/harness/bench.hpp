#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "coopcraft/config.hpp"

namespace coopcraft {

struct BenchOptions {
  EnvConfig config;
  int envs = 1;
  int steps = 1000;
  int threads = 1;
  std::uint64_t seed = 0;
};

struct BenchReport {
  int envs = 0;
  int agents = 0;
  int steps = 0;
  int threads = 0;
  double seconds = 0.0;
  std::int64_t env_steps = 0;
  std::int64_t agent_steps = 0;
  double env_steps_per_sec = 0.0;
  double agent_steps_per_sec = 0.0;
};

// Uniform-random actions through BatchEnv; pure environment stepping, no learner.
BenchReport run_bench(const BenchOptions& options);

inline const std::vector<int> kSweepSizes = {1, 8, 64, 512, 4096};
std::vector<BenchReport> run_sweep(const BenchOptions& options, const std::vector<int>& sizes = kSweepSizes);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const BenchReport& r);

}  // namespace coopcraft
