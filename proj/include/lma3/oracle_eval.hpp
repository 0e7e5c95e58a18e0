#pragma once

#include "lma3/prompts.hpp"
#include "lma3/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lma3 {

// The 69 hand-coded evaluation goals: every cook/cut/eat/open/pick-up verb
// applied to every compatible object, entering the kitchen, and the cookbook
// recipe quest. Order is fixed; text is verbatim.
const std::vector<std::string>& evaluation_goals();

// The long-form recipe goal ("You are hungry! ...").
const std::string& recipe_goal();
bool is_recipe_goal(const std::string& goal);

// First step at which the goal's ground condition holds, according to the
// event stream alone. Understands the hand-coded goal grammar plus the
// imperative phrases emitted by describe_event. Unknown phrasing never
// matches.
std::optional<int> oracle_completion_step(const Scenario& sc, const std::string& goal,
                                          const std::vector<GroundEvent>& events);

// Ground-truth substitutes for the two LM roles, used by the oracle baseline
// condition and by evaluation.
std::vector<RelabeledGoal> oracle_relabel(const Scenario& sc, const Trajectory& traj);
std::vector<RewardVerdict> oracle_reward(const Scenario& sc, const Trajectory& traj,
                                         const std::vector<std::string>& goals);

// Scripted action sequence demonstrating a hand-coded goal from reset, for
// evaluation tooling. Empty optional when the goal is not demonstrable.
std::optional<std::vector<std::string>> scripted_demonstration(const Scenario& sc,
                                                               const std::string& goal);

struct ReplayCheck {
  bool achieved = false;
  std::optional<int> step;
  size_t actions_executed = 0;
};

// Replays an action sequence from reset and asks the oracle whether the goal
// was met. Stops early at the horizon; invalid actions just burn steps.
ReplayCheck replay_and_check(const Scenario& sc, const std::vector<std::string>& actions,
                             const std::string& goal);

struct ConfusionReport {
  long true_positives = 0;
  long false_positives = 0;
  long true_negatives = 0;
  long false_negatives = 0;
  double false_positive_rate = 0.0;  // FP / (FP + TN)
  double false_negative_rate = 0.0;  // FN / (FN + TP)
};

// pairs are (human judgement, model judgement).
ConfusionReport confusion_from_pairs(const std::vector<std::pair<bool, bool>>& pairs);

// CSV with a "human,model" header; values may be yes/no, true/false or 1/0.
// Throws std::invalid_argument on unusable rows.
ConfusionReport confusion_from_csv(const std::string& csv_text);

}  // namespace lma3
