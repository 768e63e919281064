#include "coopcraft/harness/rollout.hpp"

#include <optional>

#include "coopcraft/harness/policy.hpp"
#include "coopcraft/harness/replay.hpp"
#include "coopcraft/serialize.hpp"

namespace coopcraft {

void accumulate(RolloutSummary& summary, const EnvConfig& config, const StepResult& result) {
  const auto n = static_cast<std::size_t>(config.n_agents);
  if (summary.returns.size() != n) {
    summary.returns.assign(n, 0.0);
    summary.achievements.resize(n);
  }
  ++summary.steps;
  for (std::size_t i = 0; i < n; ++i) summary.returns[i] += result.rewards[i];
  // Team total until finish_summary; MA converts to a per-agent mean there.
  for (const auto& c : result.info.completions) {
    summary.achievement_return += config.reward.weights[static_cast<std::size_t>(c.achievement)];
    const std::string name(name_of(c.achievement));
    summary.achievements[static_cast<std::size_t>(c.agent)].push_back(name);
    auto& counts = summary.completion_counts[name];
    if (counts.empty()) counts.assign(n, 0);
    ++counts[static_cast<std::size_t>(c.agent)];
    if (c.achievement == AchievementId::MakeStoneSword && summary.stone_sword_step < 0) {
      summary.stone_sword_step = summary.steps;
    }
  }
  for (const auto& e : result.info.events) {
    switch (e.kind) {
      case EventKind::Trade:
        ++summary.trades;
        if (summary.first_trade_step < 0) summary.first_trade_step = summary.steps;
        break;
      case EventKind::Death: ++summary.deaths; break;
      case EventKind::Revive: ++summary.revives; break;
      default: break;
    }
  }
  if (result.done) {
    summary.done = true;
    summary.truncated = result.truncated;
  }
}

void finish_summary(RolloutSummary& summary, const EnvConfig& config, const WorldState& final_state) {
  if (summary.returns.empty()) {
    summary.returns.assign(static_cast<std::size_t>(config.n_agents), 0.0);
    summary.achievements.resize(static_cast<std::size_t>(config.n_agents));
  }
  if (!config.coop_mode()) summary.achievement_return /= config.n_agents;
  summary.max_total = max_total(config);
  summary.percent_of_max = summary.max_total > 0.0 ? 100.0 * summary.achievement_return / summary.max_total : 0.0;
  summary.final_hash = state_hash(final_state);
}

RolloutSummary run_rollout(const RolloutOptions& options) {
  const EnvConfig& config = options.config;
  Env env(config);
  env.reset(options.seed);
  const TeamPolicy policy(options.policy, env.state());

  std::optional<ReplayWriter> writer;
  if (options.record) writer.emplace(*options.record, config, options.seed);

  RolloutSummary summary;
  std::vector<ActionId> actions(static_cast<std::size_t>(config.n_agents));
  while (!summary.done && (options.max_steps <= 0 || summary.steps < options.max_steps)) {
    policy.act(env.state(), config, options.policy_seed, actions);
    const StepResult result = env.step(actions);
    if (writer) writer->step(summary.steps, actions, result);
    accumulate(summary, config, result);
  }
  if (writer) writer->finish(env.state());
  finish_summary(summary, config, env.state());
  return summary;
}

nlohmann::json summary_json(const RolloutSummary& s) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [name, per_agent] : s.completion_counts) counts[name] = per_agent;
  return {{"steps", s.steps},
          {"done", s.done},
          {"truncated", s.truncated},
          {"returns", s.returns},
          {"achievement_return", s.achievement_return},
          {"max_total", s.max_total},
          {"percent_of_max", s.percent_of_max},
          {"achievements", s.achievements},
          {"completion_counts", counts},
          {"trades", s.trades},
          {"deaths", s.deaths},
          {"revives", s.revives},
          {"first_trade_step", s.first_trade_step},
          {"stone_sword_step", s.stone_sword_step},
          {"final_hash", hex64(s.final_hash)}};
}

}  // namespace coopcraft
