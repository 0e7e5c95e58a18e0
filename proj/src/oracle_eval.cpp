#include "lma3/oracle_eval.hpp"

#include "lma3/goal_text.hpp"
#include "lma3/world.hpp"

#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace lma3 {

std::vector<RelabeledGoal> oracle_relabel(const Scenario& sc, const Trajectory& traj) {
  std::vector<GroundEvent> events = all_events(traj);
  std::vector<RelabeledGoal> out;
  for (const std::string& goal : evaluation_goals())
    if (auto step = oracle_completion_step(sc, goal, events))
      out.push_back({canonical_goal(goal), *step});
  return out;
}

std::vector<RewardVerdict> oracle_reward(const Scenario& sc, const Trajectory& traj,
                                         const std::vector<std::string>& goals) {
  std::vector<GroundEvent> events = all_events(traj);
  std::vector<RewardVerdict> out;
  out.reserve(goals.size());
  for (const std::string& goal : goals) {
    auto step = oracle_completion_step(sc, goal, events);
    out.push_back(step ? RewardVerdict{true, *step} : RewardVerdict{});
  }
  return out;
}

namespace {

// Assembles demonstrations by walking rooms and opening whatever hides the
// target. Good enough for the hand-coded goals; not a general planner.
class DemoBuilder {
 public:
  explicit DemoBuilder(const Scenario& sc) : sc_(sc), room_(sc.start_room) {}

  bool go_to(const std::string& target) {
    if (room_ == target) return true;
    // Breadth-first over exits, tracking the first move of each path.
    std::deque<std::string> frontier{room_};
    std::map<std::string, std::vector<std::string>> paths{{room_, {}}};
    while (!frontier.empty()) {
      std::string here = frontier.front();
      frontier.pop_front();
      const RoomSpec* r = sc_.find_room(here);
      for (const auto& [dir, dest] : r->exits) {
        if (paths.count(dest)) continue;
        paths[dest] = paths[here];
        paths[dest].push_back("move " + dir);
        if (dest == target) {
          for (const auto& mv : paths[dest]) actions_.push_back(mv);
          room_ = target;
          return true;
        }
        frontier.push_back(dest);
      }
    }
    return false;
  }

  bool reveal(const std::string& holder_id) {
    const ObjectSpec* holder = sc_.find_object(holder_id);
    if (!holder || holder->start.type != Location::Type::Room) return false;
    if (!go_to(holder->start.holder)) return false;
    if (holder->container && !opened_.count(holder_id)) {
      actions_.push_back("open the " + holder_id);
      opened_.insert(holder_id);
    }
    return true;
  }

  bool fetch(const std::string& id) {
    const ObjectSpec* o = sc_.find_object(id);
    if (!o || !o->portable) return false;
    if (o->start.type != Location::Type::OnSurface && o->start.type != Location::Type::InContainer)
      return false;
    if (!reveal(o->start.holder)) return false;
    actions_.push_back("pick up the " + id);
    return true;
  }

  void add(const std::string& action) { actions_.push_back(action); }
  std::vector<std::string> take() { return std::move(actions_); }

 private:
  const Scenario& sc_;
  std::string room_;
  std::set<std::string> opened_;
  std::vector<std::string> actions_;
};

std::optional<std::string> suffix_of(const std::string& s, const std::string& prefix) {
  if (s.rfind(prefix, 0) == 0) return s.substr(prefix.size());
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<std::string>> scripted_demonstration(const Scenario& sc,
                                                               const std::string& goal) {
  std::string g = lowercase_copy(canonical_goal(goal));
  DemoBuilder b(sc);

  if (is_recipe_goal(g)) {
    if (!b.go_to("kitchen")) return std::nullopt;
    b.add("read the cookbook");
    if (!b.fetch("cilantro") || !b.fetch("parsley")) return std::nullopt;
    if (!b.fetch("knife")) return std::nullopt;
    b.add("slice the parsley");
    b.add("prepare the meal");
    b.add("eat the meal");
    return b.take();
  }

  if (auto room = suffix_of(g, "go to the ")) {
    if (!b.go_to(*room)) return std::nullopt;
    return b.take();
  }
  if (auto container = suffix_of(g, "open the ")) {
    const ObjectSpec* c = sc.find_object(*container);
    if (!c || !c->container || c->start.type != Location::Type::Room) return std::nullopt;
    if (!b.go_to(c->start.holder)) return std::nullopt;
    b.add("open the " + *container);
    return b.take();
  }
  if (auto object = suffix_of(g, "pick up the ")) {
    if (!b.fetch(*object)) return std::nullopt;
    return b.take();
  }
  if (auto object = suffix_of(g, "eat the ")) {
    if (!b.fetch(*object)) return std::nullopt;
    b.add("eat the " + *object);
    return b.take();
  }

  for (const char* verb : {"slice", "dice", "chop", "cut"}) {
    if (auto object = suffix_of(g, std::string(verb) + " the ")) {
      if (!b.fetch("knife") || !b.fetch(*object)) return std::nullopt;
      b.add((std::string(verb) == "cut" ? "slice" : std::string(verb)) + " the " + *object);
      return b.take();
    }
  }

  for (const char* verb : {"fry", "roast", "grill", "cook"}) {
    if (auto object = suffix_of(g, std::string(verb) + " the ")) {
      std::string cook_verb = std::string(verb) == "cook" ? "fry" : verb;
      std::string appliance;
      for (const auto& [v, tool] : sc.cook_appliances)
        if (v == cook_verb) appliance = tool;
      const ObjectSpec* tool = sc.find_object(appliance);
      if (!tool) return std::nullopt;
      if (!b.fetch(*object)) return std::nullopt;
      if (!b.go_to(tool->start.holder)) return std::nullopt;
      b.add(cook_verb + " the " + *object);
      return b.take();
    }
  }

  return std::nullopt;
}

ReplayCheck replay_and_check(const Scenario& sc, const std::vector<std::string>& actions,
                             const std::string& goal) {
  WorldState st = reset_world(sc);
  std::vector<GroundEvent> events;
  ReplayCheck check;
  for (const std::string& action : actions) {
    if (st.step >= sc.horizon) break;
    StepResult res = apply_action(sc, st, action);
    st = res.state;
    ++check.actions_executed;
    for (const auto& e : res.events) events.push_back(e);
  }
  if (auto step = oracle_completion_step(sc, goal, events)) {
    check.achieved = true;
    check.step = *step;
  }
  return check;
}

ConfusionReport confusion_from_pairs(const std::vector<std::pair<bool, bool>>& pairs) {
  ConfusionReport r;
  for (const auto& [human, model] : pairs) {
    if (human && model) ++r.true_positives;
    if (!human && model) ++r.false_positives;
    if (!human && !model) ++r.true_negatives;
    if (human && !model) ++r.false_negatives;
  }
  long negatives = r.false_positives + r.true_negatives;
  long positives = r.false_negatives + r.true_positives;
  if (negatives > 0)
    r.false_positive_rate = static_cast<double>(r.false_positives) / static_cast<double>(negatives);
  if (positives > 0)
    r.false_negative_rate = static_cast<double>(r.false_negatives) / static_cast<double>(positives);
  return r;
}

namespace {

std::optional<bool> parse_label(std::string token) {
  size_t a = 0, e = token.size();
  while (a < e && std::isspace(static_cast<unsigned char>(token[a]))) ++a;
  while (e > a && std::isspace(static_cast<unsigned char>(token[e - 1]))) --e;
  std::string t = lowercase_copy(token.substr(a, e - a));
  if (t == "yes" || t == "true" || t == "1") return true;
  if (t == "no" || t == "false" || t == "0") return false;
  return std::nullopt;
}

}  // namespace

ConfusionReport confusion_from_csv(const std::string& csv_text) {
  std::vector<std::pair<bool, bool>> pairs;
  size_t line_start = 0;
  size_t line_no = 0;
  while (line_start <= csv_text.size()) {
    size_t nl = csv_text.find('\n', line_start);
    std::string line = csv_text.substr(
        line_start, nl == std::string::npos ? std::string::npos : nl - line_start);
    line_start = nl == std::string::npos ? csv_text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("labels csv line " + std::to_string(line_no) +
                                  ": expected two comma-separated columns");
    auto human = parse_label(line.substr(0, comma));
    auto model = parse_label(line.substr(comma + 1));
    if (!human || !model) {
      if (line_no == 1) continue;  // header row
      throw std::invalid_argument("labels csv line " + std::to_string(line_no) +
                                  ": labels must be yes/no, true/false or 1/0");
    }
    pairs.emplace_back(*human, *model);
  }
  if (pairs.empty()) throw std::invalid_argument("labels csv contains no data rows");
  return confusion_from_pairs(pairs);
}

}  // namespace lma3
