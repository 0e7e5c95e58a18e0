#include "lma3/oracle_eval.hpp"

#include "lma3/goal_text.hpp"

namespace lma3 {

namespace {

const char* kRecipeGoal =
    "You are hungry! Let's cook a delicious meal. Check the cookbook in the kitchen for "
    "the recipe. Once done, enjoy your meal!";

std::vector<std::string> build_goal_list() {
  std::vector<std::string> goals;
  auto each = [&goals](const char* verb, std::initializer_list<const char*> objects) {
    for (const char* o : objects) goals.push_back(std::string(verb) + " the " + o);
  };
  const auto cookables = {"green apple", "red apple", "red potato", "yellow apple",
                          "yellow potato"};
  const auto cuttables = {"cilantro",  "green apple",  "parsley",      "red apple",
                          "red potato", "yellow apple", "yellow potato"};
  each("cook", cookables);
  each("fry", cookables);
  each("grill", cookables);
  each("roast", cookables);
  each("cut", cuttables);
  each("chop", cuttables);
  each("dice", cuttables);
  each("slice", cuttables);
  each("eat", {"cilantro", "green apple", "parsley", "red apple", "yellow apple"});
  goals.push_back("go to the kitchen");
  each("open", {"cutlery drawer", "dishwasher", "fridge", "kitchen cupboard", "trash can"});
  goals.push_back(kRecipeGoal);
  each("pick up", {"cilantro", "cookbook", "green apple", "knife", "parsley", "red apple",
                   "red potato", "yellow apple", "yellow potato"});
  return goals;
}

}  // namespace

const std::vector<std::string>& evaluation_goals() {
  static const std::vector<std::string> goals = build_goal_list();
  return goals;
}

const std::string& recipe_goal() {
  static const std::string goal = kRecipeGoal;
  return goal;
}

bool is_recipe_goal(const std::string& goal) { return same_goal(goal, kRecipeGoal); }

namespace {

std::optional<int> first_event(const std::vector<GroundEvent>& events, EventKind kind,
                               const std::string& object, const std::string& detail = "") {
  for (const auto& e : events) {
    if (e.kind != kind) continue;
    if (!object.empty() && e.object != object) continue;
    if (!detail.empty() && e.detail != detail) continue;
    return e.step;
  }
  return std::nullopt;
}

std::optional<std::string> strip_prefix(const std::string& s, const std::string& prefix) {
  if (s.rfind(prefix, 0) == 0) return s.substr(prefix.size());
  return std::nullopt;
}

}  // namespace

std::optional<int> oracle_completion_step(const Scenario& sc, const std::string& goal,
                                          const std::vector<GroundEvent>& events) {
  (void)sc;  // the event stream already carries everything the matcher needs
  std::string g = lowercase_copy(canonical_goal(goal));
  if (is_recipe_goal(g)) return first_event(events, EventKind::Ate, "meal");

  if (auto rest = strip_prefix(g, "go to the ")) return first_event(events, EventKind::Moved, *rest);
  if (auto rest = strip_prefix(g, "open the ")) return first_event(events, EventKind::Opened, *rest);
  if (auto rest = strip_prefix(g, "close the ")) return first_event(events, EventKind::Closed, *rest);
  if (auto rest = strip_prefix(g, "pick up the "))
    return first_event(events, EventKind::PickedUp, *rest);
  if (auto rest = strip_prefix(g, "read the "))
    return first_event(events, EventKind::ReadCookbook, *rest);
  if (auto rest = strip_prefix(g, "prepare the "))
    return first_event(events, EventKind::PreparedMeal, *rest);
  if (auto rest = strip_prefix(g, "eat the ")) return first_event(events, EventKind::Ate, *rest);

  if (auto rest = strip_prefix(g, "put the ")) {
    for (const char* sep : {" in the ", " on the "}) {
      size_t at = rest->find(sep);
      if (at == std::string::npos) continue;
      return first_event(events, EventKind::Put, rest->substr(0, at),
                         rest->substr(at + std::string(sep).size()));
    }
    return std::nullopt;
  }

  if (auto rest = strip_prefix(g, "slice the "))
    return first_event(events, EventKind::Cut, *rest, "sliced");
  if (auto rest = strip_prefix(g, "dice the "))
    return first_event(events, EventKind::Cut, *rest, "diced");
  if (auto rest = strip_prefix(g, "chop the "))
    return first_event(events, EventKind::Cut, *rest, "chopped");
  if (auto rest = strip_prefix(g, "cut the ")) return first_event(events, EventKind::Cut, *rest);

  if (auto rest = strip_prefix(g, "fry the "))
    return first_event(events, EventKind::Cooked, *rest, "fried");
  if (auto rest = strip_prefix(g, "roast the "))
    return first_event(events, EventKind::Cooked, *rest, "roasted");
  if (auto rest = strip_prefix(g, "grill the "))
    return first_event(events, EventKind::Cooked, *rest, "grilled");
  if (auto rest = strip_prefix(g, "cook the "))
    return first_event(events, EventKind::Cooked, *rest);

  return std::nullopt;
}

}  // namespace lma3
