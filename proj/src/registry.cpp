#include "lma3/registry.hpp"

#include <json.hpp>

#include <stdexcept>

namespace lma3 {

using nlohmann::json;
using nlohmann::ordered_json;

bool GoalRegistry::upsert(const std::string& goal, const std::vector<std::string>& actions,
                          int episode) {
  auto it = goals_.find(goal);
  if (it == goals_.end()) {
    goals_.emplace(goal, SkillEntry{actions, episode, 0});
    return true;
  }
  if (actions.size() < it->second.actions.size()) {
    it->second.actions = actions;
    return true;
  }
  return false;
}

void GoalRegistry::record_achievement(const std::string& goal) {
  auto it = goals_.find(goal);
  if (it != goals_.end()) it->second.achieved_count++;
}

const SkillEntry* GoalRegistry::find(const std::string& goal) const {
  auto it = goals_.find(goal);
  return it == goals_.end() ? nullptr : &it->second;
}

bool GoalRegistry::contains(const std::string& goal) const {
  return goals_.find(goal) != goals_.end();
}

std::vector<std::string> GoalRegistry::goal_texts() const {
  std::vector<std::string> out;
  out.reserve(goals_.size());
  for (const auto& [text, entry] : goals_) out.push_back(text);
  return out;
}

void GoalRegistry::count_occurrence(const std::string& action) { occurrences_[action]++; }

long GoalRegistry::occurrence(const std::string& action) const {
  auto it = occurrences_.find(action);
  return it == occurrences_.end() ? 0 : it->second;
}

std::string GoalRegistry::to_json() const {
  // ordered_json with pre-sorted maps keeps the byte layout reproducible, so
  // snapshots of identical state compare equal with plain diff.
  ordered_json goals = ordered_json::object();
  for (const auto& [text, entry] : goals_) {
    goals[text] = {{"actions", entry.actions},
                   {"first_episode", entry.first_episode},
                   {"achieved_count", entry.achieved_count}};
  }
  ordered_json occ = ordered_json::object();
  for (const auto& [action, n] : occurrences_) occ[action] = n;
  ordered_json doc = {{"goals", goals}, {"occurrences", occ}};
  return doc.dump(2) + "\n";
}

GoalRegistry GoalRegistry::from_json(const std::string& text) {
  json doc = json::parse(text);
  GoalRegistry reg;
  for (const auto& [goal, value] : doc.at("goals").items()) {
    SkillEntry entry;
    entry.actions = value.at("actions").get<std::vector<std::string>>();
    entry.first_episode = value.at("first_episode").get<int>();
    entry.achieved_count = value.at("achieved_count").get<long>();
    reg.goals_.emplace(goal, std::move(entry));
  }
  for (const auto& [action, n] : doc.at("occurrences").items()) {
    reg.occurrences_[action] = n.get<long>();
  }
  return reg;
}

bool GoalRegistry::operator==(const GoalRegistry& other) const {
  if (occurrences_ != other.occurrences_) return false;
  if (goals_.size() != other.goals_.size()) return false;
  auto a = goals_.begin();
  auto b = other.goals_.begin();
  for (; a != goals_.end(); ++a, ++b) {
    if (a->first != b->first) return false;
    if (a->second.actions != b->second.actions) return false;
    if (a->second.first_episode != b->second.first_episode) return false;
    if (a->second.achieved_count != b->second.achieved_count) return false;
  }
  return true;
}

}  // namespace lma3
