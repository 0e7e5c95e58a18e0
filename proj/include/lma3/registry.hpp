#pragma once

#include <map>
#include <string>
#include <vector>

namespace lma3 {

// One mastered goal: the shortest action sequence known to achieve it when
// replayed from reset, plus bookkeeping.
struct SkillEntry {
  std::vector<std::string> actions;
  int first_episode = 0;
  long achieved_count = 0;
};

// Memory of every goal the agent has verifiably achieved, keyed by canonical
// goal text, plus lifetime usage counts for every action ever executed (the
// rarity signal for tail exploration). Sequences only ever get shorter and
// goals are never forgotten.
class GoalRegistry {
 public:
  // Inserts the goal or replaces its sequence when the new one is strictly
  // shorter. Returns true when the entry changed.
  bool upsert(const std::string& goal, const std::vector<std::string>& actions, int episode);

  // Bumps achieved_count for an already-registered goal; unknown goals are
  // ignored (verification of novel text goes through upsert).
  void record_achievement(const std::string& goal);

  const SkillEntry* find(const std::string& goal) const;
  bool contains(const std::string& goal) const;
  size_t size() const { return goals_.size(); }
  std::vector<std::string> goal_texts() const;  // sorted (map order)
  const std::map<std::string, SkillEntry>& entries() const { return goals_; }

  void count_occurrence(const std::string& action);
  long occurrence(const std::string& action) const;  // 0 when never executed
  const std::map<std::string, long>& occurrences() const { return occurrences_; }

  std::string to_json() const;  // stable formatting, diffable snapshots
  static GoalRegistry from_json(const std::string& text);

  bool operator==(const GoalRegistry& other) const;

 private:
  std::map<std::string, SkillEntry> goals_;
  std::map<std::string, long> occurrences_;
};

}  // namespace lma3
