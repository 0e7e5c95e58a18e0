#include "lma3/evaluation.hpp"

#include "lma3/goal_text.hpp"
#include "lma3/oracle_eval.hpp"
#include "lma3/sampling.hpp"
#include "lma3/world.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lma3 {

using nlohmann::json;

GoalRegistry oracle_finetune(const Scenario& sc, const std::vector<Trajectory>& archive,
                             const GoalRegistry& base) {
  GoalRegistry out = base;
  for (const auto& traj : archive) {
    for (const auto& found : oracle_relabel(sc, traj)) {
      if (found.step < 1 || static_cast<size_t>(found.step) > traj.steps.size()) continue;
      std::vector<std::string> prefix;
      prefix.reserve(static_cast<size_t>(found.step));
      for (int i = 0; i < found.step; ++i)
        prefix.push_back(traj.steps[static_cast<size_t>(i)].action);
      bool added = !out.contains(found.description);
      out.upsert(found.description, prefix, static_cast<int>(traj.episode));
      // Count the confirmation once per new goal so a second sweep over the
      // same archive is a no-op.
      if (added) out.record_achievement(found.description);
    }
  }
  return out;
}

SuccessReport evaluate_success(const Scenario& sc, const GoalRegistry& reg,
                               const std::vector<std::string>& goals) {
  SuccessReport report;
  for (const auto& goal : goals) {
    GoalOutcome row;
    row.goal = goal;
    if (const SkillEntry* e = reg.find(canonical_goal(goal))) {
      row.in_registry = true;
      row.sequence_length = e->actions.size();
      ReplayCheck check = replay_and_check(sc, e->actions, goal);
      row.achieved = check.achieved;
      row.step = check.step;
    }
    if (row.achieved) report.achieved_count++;
    report.rows.push_back(std::move(row));
  }
  report.success_rate =
      goals.empty() ? 0.0 : static_cast<double>(report.achieved_count) / goals.size();
  return report;
}

namespace {

Trajectory replay_trajectory(const Scenario& sc, const std::vector<std::string>& actions) {
  Environment env(sc);
  Trajectory traj;
  traj.initial_observation = env.reset();
  for (const auto& action : actions) {
    if (env.done()) break;
    StepResult r = env.step(action);
    traj.steps.push_back({action, r.observation, r.events});
  }
  return traj;
}

}  // namespace

SuccessReport evaluate_success_lm(const Scenario& sc, const GoalRegistry& reg,
                                  const std::vector<std::string>& goals, Gateway& gw,
                                  const LmJudgeConfig& judge, int seed) {
  SuccessReport report;
  for (const auto& goal : goals) {
    GoalOutcome row;
    row.goal = goal;
    const SkillEntry* e = reg.find(canonical_goal(goal));
    if (e != nullptr && !e->actions.empty()) {
      row.in_registry = true;
      row.sequence_length = e->actions.size();
      Trajectory traj = replay_trajectory(sc, e->actions);
      std::vector<std::string> asked{canonical_goal(goal)};
      ChatRequest req;
      req.model = judge.model;
      req.messages = {{"user", render_reward_prompt(judge.reward_variant, traj, asked)}};
      req.temperature = judge.temperature;
      req.max_tokens = judge.max_tokens;
      req.oracle.role = OracleRole::Reward;
      req.oracle.events = all_events(traj);
      req.oracle.goals = asked;
      ChatResponse res = gw.complete(req, {"reward", 0, seed});
      auto verdicts = parse_reward_response(res.content, asked);
      row.achieved = verdicts[0].achieved;
      row.step = verdicts[0].step;
    } else if (e != nullptr) {
      row.in_registry = true;
    }
    if (row.achieved) report.achieved_count++;
    report.rows.push_back(std::move(row));
  }
  report.success_rate =
      goals.empty() ? 0.0 : static_cast<double>(report.achieved_count) / goals.size();
  return report;
}

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string success_report_csv(const SuccessReport& report) {
  std::ostringstream out;
  out << "goal,in_registry,achieved,step,sequence_length\n";
  for (const auto& row : report.rows) {
    out << csv_field(row.goal) << ',' << (row.in_registry ? 1 : 0) << ','
        << (row.achieved ? 1 : 0) << ',';
    if (row.step.has_value()) out << *row.step;
    out << ',' << row.sequence_length << '\n';
  }
  return out.str();
}

std::vector<std::string> sample_goals(const std::vector<std::string>& pool, size_t cap,
                                      std::mt19937& rng) {
  if (cap == 0 || cap >= pool.size()) return pool;
  std::vector<std::string> out;
  out.reserve(cap);
  for (size_t i : sample_indices(rng, pool.size(), cap)) out.push_back(pool[i]);
  return out;
}

std::vector<Trajectory> load_trajectory_archive(const std::filesystem::path& path) {
  std::vector<Trajectory> archive;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      json doc = json::parse(line);
      archive.push_back(trajectory_from_json(doc.at("trajectory").dump()));
    } catch (const std::exception&) {
      continue;
    }
  }
  return archive;
}

}  // namespace lma3
