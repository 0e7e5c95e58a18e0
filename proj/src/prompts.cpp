#include "lma3/prompts.hpp"

#include <sstream>
#include <stdexcept>

namespace lma3 {

namespace {

void replace_slot(std::string& text, const std::string& slot, const std::string& value) {
  size_t pos = text.find(slot);
  if (pos == std::string::npos) throw std::logic_error("template missing slot " + slot);
  while (pos != std::string::npos) {
    text.replace(pos, slot.size(), value);
    pos = text.find(slot, pos + value.size());
  }
}

}  // namespace

std::string prompt_variant_name(PromptVariant v) {
  switch (v) {
    case PromptVariant::RelabelBase: return "relabel_base";
    case PromptVariant::RelabelCot: return "relabel_cot";
    case PromptVariant::RelabelCotTips: return "relabel_cot_tips";
    case PromptVariant::RewardBase: return "reward_base";
    case PromptVariant::RewardCot: return "reward_cot";
    case PromptVariant::GoalGenBase: return "goalgen_base";
    case PromptVariant::GoalGenCot: return "goalgen_cot";
  }
  return "relabel_base";
}

std::optional<PromptVariant> prompt_variant_from_name(const std::string& name) {
  for (PromptVariant v :
       {PromptVariant::RelabelBase, PromptVariant::RelabelCot, PromptVariant::RelabelCotTips,
        PromptVariant::RewardBase, PromptVariant::RewardCot, PromptVariant::GoalGenBase,
        PromptVariant::GoalGenCot})
    if (prompt_variant_name(v) == name) return v;
  return std::nullopt;
}

std::string render_trajectory_block(const Trajectory& traj) {
  if (traj.steps.empty()) throw std::invalid_argument("cannot render an empty trajectory");
  std::ostringstream out;
  out << "\"\"\"\n";
  for (size_t i = 0; i < traj.steps.size(); ++i) {
    int n = static_cast<int>(i) + 1;
    out << "Step " << n << ".\n";
    out << "Action " << n << ": " << traj.steps[i].action << "\n";
    out << "Observation " << n << ": " << traj.steps[i].observation << "\n";
  }
  out << "\"\"\"";
  return out.str();
}

std::string render_goal_list(const std::vector<std::string>& goals) {
  std::string out;
  for (size_t i = 0; i < goals.size(); ++i) {
    if (i > 0) out += ", ";
    out += "\"" + goals[i] + "\"";
  }
  return out;
}

std::string render_instruction_list(const std::vector<std::string>& instructions) {
  std::string out;
  for (size_t i = 0; i < instructions.size(); ++i) {
    if (i > 0) out += "\n";
    out += "#" + std::to_string(i + 1) + " " + instructions[i];
  }
  return out;
}

std::string render_relabel_prompt(PromptVariant v, const Trajectory& traj) {
  if (v != PromptVariant::RelabelBase && v != PromptVariant::RelabelCot &&
      v != PromptVariant::RelabelCotTips)
    throw std::invalid_argument("not a relabel variant");
  std::string text = template_text(v);
  replace_slot(text, "{{TRAJECTORY}}", render_trajectory_block(traj));
  return text;
}

std::string render_reward_prompt(PromptVariant v, const Trajectory& traj,
                                 const std::vector<std::string>& goals) {
  if (v != PromptVariant::RewardBase && v != PromptVariant::RewardCot)
    throw std::invalid_argument("not a reward variant");
  if (goals.empty()) throw std::invalid_argument("reward prompt needs at least one goal");
  std::string text = template_text(v);
  replace_slot(text, "{{TRAJECTORY}}", render_trajectory_block(traj));
  replace_slot(text, "{{GOALS}}", render_goal_list(goals));
  return text;
}

std::string render_goalgen_prompt(PromptVariant v, const Trajectory& traj,
                                  const std::vector<std::string>& instructions) {
  if (v != PromptVariant::GoalGenBase && v != PromptVariant::GoalGenCot)
    throw std::invalid_argument("not a goal generator variant");
  if (instructions.empty() || instructions.size() > 60)
    throw std::invalid_argument("goal generator takes between 1 and 60 instructions");
  std::string text = template_text(v);
  replace_slot(text, "{{TRAJECTORY}}", render_trajectory_block(traj));
  replace_slot(text, "{{INSTRUCTIONS}}", render_instruction_list(instructions));
  return text;
}

}  // namespace lma3
