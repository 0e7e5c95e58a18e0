#pragma once

#include "lma3/gateway.hpp"
#include "lma3/prompts.hpp"
#include "lma3/registry.hpp"
#include "lma3/trajectory.hpp"

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lma3 {

// Post-hoc evaluation: mining an episode archive for skills the run's own
// relabeler missed, then measuring how many target goals the registry can
// actually reproduce.

// Sweeps every hand-coded evaluation goal over every archived trajectory and
// merges the confirmed prefixes into a copy of the registry under the
// shortest-sequence rule. Works entirely from recorded events: no environment
// steps, no model calls, and running it twice changes nothing further.
GoalRegistry oracle_finetune(const Scenario& sc, const std::vector<Trajectory>& archive,
                             const GoalRegistry& base);

struct GoalOutcome {
  std::string goal;
  bool in_registry = false;
  bool achieved = false;
  std::optional<int> step;
  size_t sequence_length = 0;
};

struct SuccessReport {
  std::vector<GoalOutcome> rows;
  int achieved_count = 0;
  double success_rate = 0.0;
};

// Replays each goal's stored sequence from reset (exact canonical-text match;
// goals the registry has never seen count as failures) and judges completion
// with the ground-truth oracle.
SuccessReport evaluate_success(const Scenario& sc, const GoalRegistry& reg,
                               const std::vector<std::string>& goals);

struct LmJudgeConfig {
  std::string model = "oracle";
  PromptVariant reward_variant = PromptVariant::RewardCot;
  double temperature = 0.0;
  int max_tokens = 1024;
};

// Same replay, but the verdict comes from a reward call per goal (the agent
// judging itself). Goals without a stored sequence are failures without a
// call.
SuccessReport evaluate_success_lm(const Scenario& sc, const GoalRegistry& reg,
                                  const std::vector<std::string>& goals, Gateway& gw,
                                  const LmJudgeConfig& judge, int seed = 0);

std::string success_report_csv(const SuccessReport& report);

// Uniform subsample without replacement; cap 0 means everything.
std::vector<std::string> sample_goals(const std::vector<std::string>& pool, size_t cap,
                                      std::mt19937& rng);

// Reads the "trajectory" field of every line of a trajectories.jsonl file,
// skipping unparsable lines (a killed run may leave a partial tail).
std::vector<Trajectory> load_trajectory_archive(const std::filesystem::path& path);

}  // namespace lma3
