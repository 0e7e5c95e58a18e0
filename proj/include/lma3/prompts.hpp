#pragma once

#include "lma3/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lma3 {

// The seven prompt templates. Base variants are plain few-shot; Cot variants
// add worked reasoning; the tips relabeler swaps the simple example answers
// for abstract ones (conjunctions, repetitions, category names).
enum class PromptVariant {
  RelabelBase,
  RelabelCot,
  RelabelCotTips,
  RewardBase,
  RewardCot,
  GoalGenBase,
  GoalGenCot,
};

std::string prompt_variant_name(PromptVariant v);
std::optional<PromptVariant> prompt_variant_from_name(const std::string& name);

// Raw template with {{TRAJECTORY}} / {{GOALS}} / {{INSTRUCTIONS}} slots.
const std::string& template_text(PromptVariant v);

// """-fenced "Step N. / Action N: / Observation N:" block, steps numbered
// from 1. Throws std::invalid_argument on an empty trajectory.
std::string render_trajectory_block(const Trajectory& traj);

// `"goal one", "goal two"` as it appears after "Here is the list of goals:".
std::string render_goal_list(const std::vector<std::string>& goals);

// `#1 first\n#2 second` numbered instruction lines.
std::string render_instruction_list(const std::vector<std::string>& instructions);

std::string render_relabel_prompt(PromptVariant v, const Trajectory& traj);
std::string render_reward_prompt(PromptVariant v, const Trajectory& traj,
                                 const std::vector<std::string>& goals);
// Instructions must number 1..60; throws std::invalid_argument otherwise.
std::string render_goalgen_prompt(PromptVariant v, const Trajectory& traj,
                                  const std::vector<std::string>& instructions);

struct RelabeledGoal {
  std::string description;  // canonical form
  int step = 0;             // completion step claimed by the model

  bool operator==(const RelabeledGoal&) const = default;
};

// Pulls "- {description} (step {n})." entries out of a relabeler completion.
// Tolerates a missing dash on the first line (the base prompt ends with "-"),
// reasoning preambles, "Step"/"steps" capitalisation, and multi-number step
// references (the last number wins). Case-insensitive dedup, capped at 10.
std::vector<RelabeledGoal> parse_relabel_response(const std::string& response);

struct RewardVerdict {
  bool achieved = false;
  std::optional<int> step;  // completion step when achieved

  bool operator==(const RewardVerdict&) const = default;
};

// One verdict per requested goal. Verdict lines are bound to goals by
// position when the counts line up; otherwise each goal is matched to the
// most similar verdict line (longest common substring, at least half the
// goal's length). Unmatched goals and yes-verdicts without a step come back
// as not achieved.
std::vector<RewardVerdict> parse_reward_response(const std::string& response,
                                                 const std::vector<std::string>& goals);

struct GoalProposal {
  std::string goal;                      // canonical high-level description
  std::vector<int> instruction_indices;  // 1-based into the offered list
  std::vector<std::string> subgoals;     // offered instruction texts, in order

  bool operator==(const GoalProposal&) const = default;
};

// Parses "goal: {text}. instructions: {a} (#i); {b} (#j)." Returns nothing
// when no goal line is found or fewer than 2 / more than 4 valid instruction
// references remain after dropping out-of-range ones.
std::optional<GoalProposal> parse_goalgen_response(const std::string& response,
                                                   const std::vector<std::string>& instructions);

}  // namespace lma3
