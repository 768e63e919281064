#include "coopcraft/harness/bench.hpp"

#include <chrono>

#include "coopcraft/batch.hpp"

namespace coopcraft {

BenchReport run_bench(const BenchOptions& options) {
  BatchEnv batch(options.config, options.envs, options.threads);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(options.envs));
  for (std::size_t e = 0; e < seeds.size(); ++e) seeds[e] = options.seed + e;
  batch.reset(seeds);

  const auto n_actions = static_cast<std::uint32_t>(options.config.num_actions());
  std::vector<ActionId> actions(static_cast<std::size_t>(options.envs) * static_cast<std::size_t>(batch.n_agents()));
  RngState rng(options.seed, static_cast<std::uint64_t>(RngStream::Policy));

  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < options.steps; ++t) {
    for (auto& a : actions) a = static_cast<ActionId>(rng.uniform(n_actions));
    batch.step(actions);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  BenchReport r;
  r.envs = options.envs;
  r.agents = batch.n_agents();
  r.steps = options.steps;
  r.threads = options.threads;
  r.seconds = elapsed.count();
  r.env_steps = static_cast<std::int64_t>(options.envs) * options.steps;
  r.agent_steps = r.env_steps * r.agents;
  if (r.seconds > 0.0) {
    r.env_steps_per_sec = static_cast<double>(r.env_steps) / r.seconds;
    r.agent_steps_per_sec = static_cast<double>(r.agent_steps) / r.seconds;
  }
  return r;
}

std::vector<BenchReport> run_sweep(const BenchOptions& options, const std::vector<int>& sizes) {
  std::vector<BenchReport> out;
  for (int n : sizes) {
    BenchOptions o = options;
    o.envs = n;
    out.push_back(run_bench(o));
  }
  return out;
}

void write_csv_header(std::ostream& out) {
  out << "envs,agents,threads,steps,seconds,env_steps,agent_steps,env_steps_per_sec,agent_steps_per_sec\n";
}

void write_csv_row(std::ostream& out, const BenchReport& r) {
  out << r.envs << ',' << r.agents << ',' << r.threads << ',' << r.steps << ',' << r.seconds << ',' << r.env_steps
      << ',' << r.agent_steps << ',' << r.env_steps_per_sec << ',' << r.agent_steps_per_sec << '\n';
}

}  // namespace coopcraft
