// coopcraft: benchmarks, rollouts, replay verification and manifests.
//
//   coopcraft bench --envs 4096 --steps 200 --agents 3 --variant coop --threads 8
//   coopcraft bench --sweep --csv sweep.csv
//   coopcraft rollout --policy scripted:trio --seed 0 --record run.jsonl
//   coopcraft replay --verify run.jsonl
//   coopcraft manifest --variant ma --agents 4
//
// Exit codes: 0 ok, 1 user error, 2 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "coopcraft/config_io.hpp"
#include "coopcraft/harness/bench.hpp"
#include "coopcraft/harness/manifest.hpp"
#include "coopcraft/harness/policy.hpp"
#include "coopcraft/harness/replay.hpp"
#include "coopcraft/harness/rollout.hpp"

using namespace coopcraft;

namespace {

constexpr int kUserError = 1;
constexpr int kVerifyFailure = 2;

struct ConfigFlags {
  std::string config_file;
  std::string variant;
  std::optional<int> agents;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--config", config_file, "key=value config file");
    cmd.add_option("--variant", variant, "ma or coop")->check(CLI::IsMember({"ma", "coop"}));
    cmd.add_option("--agents", agents, "number of agents");
  }

  EnvConfig build() const {
    EnvConfig config;
    if (!config_file.empty()) config = load_config_file(config_file);
    if (!variant.empty()) apply_config_value(config, "variant", variant);
    if (agents) config.n_agents = *agents;
    config.validate();
    return config;
  }
};

std::uint64_t default_seed() {
  const char* env = std::getenv("COOPCRAFT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw InvalidConfig("COOPCRAFT_SEED must be an unsigned integer");
  return v;
}

void print_report(const BenchReport& r) {
  std::printf("envs %d  agents %d  threads %d  steps %d  %.3fs\n", r.envs, r.agents, r.threads, r.steps, r.seconds);
  std::printf("  env-steps %lld  agent-steps %lld\n", static_cast<long long>(r.env_steps),
              static_cast<long long>(r.agent_steps));
  std::printf("  %.0f env-steps/s  %.0f agent-steps/s  (pure environment stepping, no learner)\n",
              r.env_steps_per_sec, r.agent_steps_per_sec);
}

void print_summary(const RolloutSummary& s, const EnvConfig& config, const WorldState* state) {
  std::printf("steps %lld  %s\n", static_cast<long long>(s.steps),
              s.truncated ? "truncated" : (s.done ? "done" : "stopped"));
  std::printf("return %.2f of %.0f (%.2f%% of max)\n", s.achievement_return, s.max_total, s.percent_of_max);
  std::printf("per-agent returns:");
  for (double r : s.returns) std::printf(" %.2f", r);
  std::printf("\ntrades %d  deaths %d  revives %d\n", s.trades, s.deaths, s.revives);
  for (std::size_t i = 0; i < s.achievements.size(); ++i) {
    std::printf("agent %zu", i);
    if (state != nullptr && config.coop_mode()) {
      std::printf(" (%s)", std::string(name_of(state->agents[i].specialization)).c_str());
    }
    std::printf(": %zu achievements\n", s.achievements[i].size());
    for (const auto& a : s.achievements[i]) std::printf("  %s\n", a.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coopcraft multi-agent survival-crafting engine"};
  app.require_subcommand(1);

  ConfigFlags bench_cfg;
  BenchOptions bench;
  bool sweep = false;
  std::string csv_path;
  std::optional<std::uint64_t> bench_seed;
  auto* bench_cmd = app.add_subcommand("bench", "uniform-random throughput benchmark");
  bench_cfg.add_to(*bench_cmd);
  bench_cmd->add_option("--envs", bench.envs, "parallel environments")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--steps", bench.steps, "steps per environment")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", bench.threads, "worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed, "base seed");
  bench_cmd->add_flag("--sweep", sweep, "scale over 1, 8, 64, 512, 4096 environments");
  bench_cmd->add_option("--csv", csv_path, "also write results as CSV");

  ConfigFlags roll_cfg;
  RolloutOptions roll;
  std::optional<std::uint64_t> roll_seed;
  std::string record_path;
  bool roll_json = false;
  auto* roll_cmd = app.add_subcommand("rollout", "play one episode with a random or scripted policy");
  roll_cfg.add_to(*roll_cmd);
  roll_cmd->add_option("--policy", roll.policy, "random, noop, scripted:trio or scripted:<bot>");
  roll_cmd->add_option("--seed", roll_seed, "world seed");
  roll_cmd->add_option("--policy-seed", roll.policy_seed, "seed for policy randomness");
  roll_cmd->add_option("--max-steps", roll.max_steps, "stop after this many steps (0: until done)");
  roll_cmd->add_option("--record", record_path, "write a replay file");
  roll_cmd->add_flag("--json", roll_json, "print the summary as JSON");

  std::string verify_path;
  auto* replay_cmd = app.add_subcommand("replay", "re-simulate a replay file");
  replay_cmd->add_option("--verify", verify_path, "replay to verify")->required();

  ConfigFlags man_cfg;
  auto* man_cmd = app.add_subcommand("manifest", "print action, observation, capability and achievement tables");
  man_cfg.add_to(*man_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUserError;
  }

  try {
    if (*bench_cmd) {
      bench.config = bench_cfg.build();
      bench.seed = bench_seed.value_or(default_seed());
      std::vector<BenchReport> reports;
      if (sweep) {
        reports = run_sweep(bench);
      } else {
        reports.push_back(run_bench(bench));
      }
      for (const auto& r : reports) print_report(r);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw InvalidConfig("cannot write " + csv_path);
        write_csv_header(csv);
        for (const auto& r : reports) write_csv_row(csv, r);
      }
      return 0;
    }

    if (*roll_cmd) {
      roll.config = roll_cfg.build();
      roll.seed = roll_seed.value_or(default_seed());
      std::ofstream record;
      if (!record_path.empty()) {
        record.open(record_path);
        if (!record) throw InvalidConfig("cannot write " + record_path);
        roll.record = &record;
      }
      const RolloutSummary summary = run_rollout(roll);
      if (roll_json) {
        std::cout << summary_json(summary).dump(2) << '\n';
      } else {
        Env env(roll.config);
        env.reset(roll.seed);
        print_summary(summary, roll.config, &env.state());
      }
      return 0;
    }

    if (*replay_cmd) {
      std::ifstream in(verify_path);
      if (!in) {
        std::cerr << "cannot open " << verify_path << '\n';
        return kUserError;
      }
      try {
        const Replay replay = load_replay(in);
        const VerifyResult r = verify_replay(replay);
        if (r.ok) {
          std::cout << "OK " << replay.steps.size() << " steps\n";
          return 0;
        }
        std::cout << "FAIL at " << (r.step >= 0 ? "step " + std::to_string(r.step) : std::string("footer"))
                  << ": " << r.field << " (" << r.detail << ")\n";
      } catch (const VersionMismatch& e) {
        std::cout << "FAIL version mismatch: " << e.what() << '\n';
      } catch (const CorruptReplay& e) {
        std::cout << "FAIL corrupt replay: " << e.what() << '\n';
      }
      return kVerifyFailure;
    }

    if (*man_cmd) {
      std::cout << manifests_json(man_cfg.build()).dump(2) << '\n';
      return 0;
    }
  } catch (const InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUserError;
  } catch (const UnknownPolicy& e) {
    std::cerr << e.what() << '\n';
    return kUserError;
  }
  return 0;
}
