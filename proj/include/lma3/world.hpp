#pragma once

#include "lma3/scenario.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lma3 {

// Deterministic single-agent text kitchen. Episodes last at most
// Scenario::horizon submitted commands; every command, valid or not,
// consumes a step and yields one observation string.

enum class CutState { Uncut, Sliced, Diced, Chopped };
enum class CookState { Raw, Fried, Roasted, Grilled };

enum class EventKind {
  Moved,
  Opened,
  Closed,
  PickedUp,
  Put,
  Cut,
  Cooked,
  Ate,
  ReadCookbook,
  PreparedMeal,
};

std::string event_kind_name(EventKind k);
std::optional<EventKind> event_kind_from_name(const std::string& name);

struct GroundEvent {
  int step = 0;  // 1-based step the event happened on
  EventKind kind = EventKind::Moved;
  std::string object;  // object id; room id for Moved
  std::string detail;  // cut/cook variant or put destination, else empty

  bool operator==(const GroundEvent&) const = default;
};

struct ObjectState {
  Location location;
  bool open = false;
  CutState cut = CutState::Uncut;
  CookState cook = CookState::Raw;

  bool operator==(const ObjectState&) const = default;
};

struct WorldState {
  std::string current_room;
  int step = 0;  // number of commands submitted so far
  bool cookbook_read = false;
  std::map<std::string, ObjectState> objects;
  std::vector<std::string> inventory;  // pickup order

  bool holds(const std::string& id) const;
  bool operator==(const WorldState&) const = default;
};

enum class Verb { Move, Open, Close, PickUp, Put, Slice, Dice, Chop, Fry, Roast, Grill, Eat, Read, Prepare };

struct Action {
  Verb verb = Verb::Move;
  std::string object;  // direction for Move, else object id
  std::string target;  // put destination, else empty

  bool operator==(const Action&) const = default;
};

struct StepResult {
  WorldState state;
  std::string observation;
  std::vector<GroundEvent> events;
};

class EpisodeExhausted : public std::runtime_error {
 public:
  EpisodeExhausted() : std::runtime_error("episode exhausted: horizon reached") {}
};

// Parsed catalogue of every well-formed command, sorted by command text.
struct Catalogue {
  std::vector<std::string> texts;
  std::vector<Action> actions;  // parallel to texts

  size_t size() const { return texts.size(); }
};

Catalogue build_catalogue(const Scenario& sc);

WorldState reset_world(const Scenario& sc);

// Recognises exactly the catalogue commands (case-sensitive, exact spacing).
std::optional<Action> parse_action(const Scenario& sc, const std::string& text);

// Whether the action can succeed in this state (the "admissible" test).
bool action_valid(const Scenario& sc, const WorldState& st, const Action& a);

std::vector<std::string> admissible_actions(const Scenario& sc, const Catalogue& cat,
                                            const WorldState& st);

// Applies one command. Never fails on bad input: unknown text and invalid
// actions produce failure observations and still advance the step counter.
// Throws EpisodeExhausted once the horizon has been spent.
StepResult apply_action(const Scenario& sc, const WorldState& st, const std::string& text);

std::string render_room(const Scenario& sc, const WorldState& st);

// "fried sliced red potato" style name reflecting the object's state.
std::string display_name(const WorldState& st, const std::string& id);

std::string world_state_to_json(const WorldState& st);
WorldState world_state_from_json(const std::string& text);

// Convenience wrapper owning the scenario, a parsed catalogue and a state.
class Environment {
 public:
  Environment();
  explicit Environment(Scenario sc);

  const Scenario& scenario() const { return scenario_; }
  const Catalogue& catalogue() const { return catalogue_; }
  const WorldState& state() const { return state_; }

  // Returns the initial room description shown to the agent.
  std::string reset();
  StepResult step(const std::string& text);
  std::vector<std::string> admissible() const;
  bool done() const { return state_.step >= scenario_.horizon; }

 private:
  Scenario scenario_;
  Catalogue catalogue_;
  WorldState state_;
};

}  // namespace lma3
