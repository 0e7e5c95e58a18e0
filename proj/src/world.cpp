#include "lma3/world.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <sstream>

namespace lma3 {

using nlohmann::json;

namespace {

const char* kCantDoThat = "You can't do that.";
const char* kUnknownVerb = "That's not a verb I recognise.";

const std::vector<std::pair<Verb, std::string>>& cut_verbs() {
  static const std::vector<std::pair<Verb, std::string>> v = {
      {Verb::Slice, "slice"}, {Verb::Dice, "dice"}, {Verb::Chop, "chop"}};
  return v;
}

Verb cook_verb_enum(const std::string& name) {
  if (name == "fry") return Verb::Fry;
  if (name == "roast") return Verb::Roast;
  if (name == "grill") return Verb::Grill;
  throw std::runtime_error("unsupported cooking verb: " + name);
}

std::string indefinite(const std::string& noun_phrase) {
  bool vowel = !noun_phrase.empty() && std::string("aeiou").find(noun_phrase[0]) != std::string::npos;
  return (vowel ? "an " : "a ") + noun_phrase;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

// "the a", "the a and the b", "the a, the b, and the c"
std::string definite_list(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i > 0) {
      if (names.size() == 2)
        out += " and ";
      else
        out += i + 1 == names.size() ? ", and " : ", ";
    }
    out += "the " + names[i];
  }
  return out;
}

bool in_current_room(const WorldState& st, const std::string& furniture_id) {
  auto it = st.objects.find(furniture_id);
  return it != st.objects.end() && it->second.location.type == Location::Type::Room &&
         it->second.location.holder == st.current_room;
}

// Portable the agent could interact with from where it stands: held, on a
// surface in the room, or inside an open container in the room.
bool visible_or_held(const WorldState& st, const std::string& id) {
  if (st.holds(id)) return true;
  const ObjectState& os = st.objects.at(id);
  if (os.location.type == Location::Type::OnSurface)
    return in_current_room(st, os.location.holder);
  if (os.location.type == Location::Type::InContainer)
    return in_current_room(st, os.location.holder) && st.objects.at(os.location.holder).open;
  return false;
}

std::vector<std::string> contents_display(const Scenario& sc, const WorldState& st,
                                          const std::string& holder, Location::Type type) {
  std::vector<std::pair<int, std::string>> ranked;
  for (const auto& [id, os] : st.objects)
    if (os.location.type == type && os.location.holder == holder)
      ranked.emplace_back(sc.object_rank(id), display_name(st, id));
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::string> names;
  names.reserve(ranked.size());
  for (auto& [rank, name] : ranked) names.push_back(std::move(name));
  return names;
}

const std::string* appliance_for(const Scenario& sc, const std::string& verb) {
  for (const auto& [v, tool] : sc.cook_appliances)
    if (v == verb) return &tool;
  return nullptr;
}

std::string cook_adjective(CookState c) {
  switch (c) {
    case CookState::Fried: return "fried";
    case CookState::Roasted: return "roasted";
    case CookState::Grilled: return "grilled";
    default: return "";
  }
}

std::string cut_adjective(CutState c) {
  switch (c) {
    case CutState::Sliced: return "sliced";
    case CutState::Diced: return "diced";
    case CutState::Chopped: return "chopped";
    default: return "";
  }
}

std::string verb_word(Verb v) {
  switch (v) {
    case Verb::Slice: return "slice";
    case Verb::Dice: return "dice";
    case Verb::Chop: return "chop";
    case Verb::Fry: return "fry";
    case Verb::Roast: return "roast";
    case Verb::Grill: return "grill";
    default: return "";
  }
}

CutState cut_result(Verb v) {
  switch (v) {
    case Verb::Slice: return CutState::Sliced;
    case Verb::Dice: return CutState::Diced;
    default: return CutState::Chopped;
  }
}

CookState cook_result(Verb v) {
  switch (v) {
    case Verb::Fry: return CookState::Fried;
    case Verb::Roast: return CookState::Roasted;
    default: return CookState::Grilled;
  }
}

}  // namespace

std::string event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Moved: return "moved";
    case EventKind::Opened: return "opened";
    case EventKind::Closed: return "closed";
    case EventKind::PickedUp: return "picked_up";
    case EventKind::Put: return "put";
    case EventKind::Cut: return "cut";
    case EventKind::Cooked: return "cooked";
    case EventKind::Ate: return "ate";
    case EventKind::ReadCookbook: return "read_cookbook";
    case EventKind::PreparedMeal: return "prepared_meal";
  }
  return "moved";
}

std::optional<EventKind> event_kind_from_name(const std::string& name) {
  static const std::vector<EventKind> all = {
      EventKind::Moved,   EventKind::Opened, EventKind::Closed,       EventKind::PickedUp,
      EventKind::Put,     EventKind::Cut,    EventKind::Cooked,       EventKind::Ate,
      EventKind::ReadCookbook, EventKind::PreparedMeal};
  for (EventKind k : all)
    if (event_kind_name(k) == name) return k;
  return std::nullopt;
}

bool WorldState::holds(const std::string& id) const {
  auto it = objects.find(id);
  return it != objects.end() && it->second.location.type == Location::Type::Inventory;
}

std::string display_name(const WorldState& st, const std::string& id) {
  const ObjectState& os = st.objects.at(id);
  std::string name;
  std::string cook = cook_adjective(os.cook);
  std::string cut = cut_adjective(os.cut);
  if (!cook.empty()) name += cook + " ";
  if (!cut.empty()) name += cut + " ";
  return name + id;
}

WorldState reset_world(const Scenario& sc) {
  WorldState st;
  st.current_room = sc.start_room;
  for (const auto& o : sc.objects) {
    ObjectState os;
    os.location = o.start;
    st.objects[o.id] = os;
  }
  return st;
}

Catalogue build_catalogue(const Scenario& sc) {
  Catalogue cat;
  std::vector<std::pair<std::string, Action>> entries;
  auto add = [&entries](std::string text, Action a) {
    entries.emplace_back(std::move(text), std::move(a));
  };

  std::vector<std::string> directions;
  for (const auto& r : sc.rooms)
    for (const auto& [dir, dest] : r.exits)
      if (std::find(directions.begin(), directions.end(), dir) == directions.end())
        directions.push_back(dir);
  for (const auto& dir : directions) add("move " + dir, {Verb::Move, dir, ""});

  for (const auto& o : sc.objects) {
    if (o.container) {
      add("open the " + o.id, {Verb::Open, o.id, ""});
      add("close the " + o.id, {Verb::Close, o.id, ""});
    }
    if (o.portable) add("pick up the " + o.id, {Verb::PickUp, o.id, ""});
  }

  for (const auto& [portable, targets] : sc.put_targets) {
    for (const auto& t : targets) {
      const ObjectSpec* dest = sc.find_object(t);
      const char* prep = dest->container ? " in the " : " on the ";
      add("put the " + portable + prep + t, {Verb::Put, portable, t});
    }
  }

  for (const auto& o : sc.objects) {
    if (o.kind == ObjectKind::Ingredient) {
      for (const auto& [verb, word] : cut_verbs()) add(word + " the " + o.id, {verb, o.id, ""});
      for (const auto& [word, tool] : sc.cook_appliances)
        add(word + " the " + o.id, {cook_verb_enum(word), o.id, ""});
    }
    if (o.kind == ObjectKind::Ingredient || o.kind == ObjectKind::Meal)
      add("eat the " + o.id, {Verb::Eat, o.id, ""});
    if (o.kind == ObjectKind::Cookbook) add("read the " + o.id, {Verb::Read, o.id, ""});
    if (o.kind == ObjectKind::Meal) add("prepare the " + o.id, {Verb::Prepare, o.id, ""});
  }

  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [text, action] : entries) {
    assert(cat.texts.empty() || cat.texts.back() != text);
    cat.texts.push_back(std::move(text));
    cat.actions.push_back(std::move(action));
  }
  return cat;
}

std::optional<Action> parse_action(const Scenario& sc, const std::string& raw) {
  std::string text = raw;
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.erase(text.begin());
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\n' ||
                           text.back() == '\r'))
    text.pop_back();

  auto after = [&text](const std::string& prefix) -> std::optional<std::string> {
    if (text.rfind(prefix, 0) == 0) return text.substr(prefix.size());
    return std::nullopt;
  };

  if (auto rest = after("move ")) {
    for (const auto& r : sc.rooms)
      for (const auto& [dir, dest] : r.exits)
        if (dir == *rest) return Action{Verb::Move, dir, ""};
    return std::nullopt;
  }
  if (auto rest = after("open the ")) {
    const ObjectSpec* o = sc.find_object(*rest);
    if (o && o->container) return Action{Verb::Open, o->id, ""};
    return std::nullopt;
  }
  if (auto rest = after("close the ")) {
    const ObjectSpec* o = sc.find_object(*rest);
    if (o && o->container) return Action{Verb::Close, o->id, ""};
    return std::nullopt;
  }
  if (auto rest = after("pick up the ")) {
    const ObjectSpec* o = sc.find_object(*rest);
    if (o && o->portable) return Action{Verb::PickUp, o->id, ""};
    return std::nullopt;
  }
  if (auto rest = after("put the ")) {
    for (const auto& [portable, targets] : sc.put_targets) {
      for (const char* prep : {" in the ", " on the "}) {
        std::string head = portable + prep;
        if (rest->rfind(head, 0) != 0) continue;
        std::string dest = rest->substr(head.size());
        if (std::find(targets.begin(), targets.end(), dest) == targets.end()) continue;
        const ObjectSpec* d = sc.find_object(dest);
        bool wants_in = prep[1] == 'i';
        if (wants_in ? d->container : d->surface) return Action{Verb::Put, portable, dest};
      }
    }
    return std::nullopt;
  }
  for (const auto& [verb, word] : cut_verbs()) {
    if (auto rest = after(word + " the ")) {
      const ObjectSpec* o = sc.find_object(*rest);
      if (o && o->kind == ObjectKind::Ingredient) return Action{verb, o->id, ""};
      return std::nullopt;
    }
  }
  for (const auto& [word, tool] : sc.cook_appliances) {
    if (auto rest = after(word + " the ")) {
      const ObjectSpec* o = sc.find_object(*rest);
      if (o && o->kind == ObjectKind::Ingredient) return Action{cook_verb_enum(word), o->id, ""};
      return std::nullopt;
    }
  }
  if (auto rest = after("eat the ")) {
    const ObjectSpec* o = sc.find_object(*rest);
    if (o && (o->kind == ObjectKind::Ingredient || o->kind == ObjectKind::Meal))
      return Action{Verb::Eat, o->id, ""};
    return std::nullopt;
  }
  if (auto rest = after("read the ")) {
    const ObjectSpec* o = sc.find_object(*rest);
    if (o && o->kind == ObjectKind::Cookbook) return Action{Verb::Read, o->id, ""};
    return std::nullopt;
  }
  if (auto rest = after("prepare the ")) {
    const ObjectSpec* o = sc.find_object(*rest);
    if (o && o->kind == ObjectKind::Meal) return Action{Verb::Prepare, o->id, ""};
    return std::nullopt;
  }
  return std::nullopt;
}

bool action_valid(const Scenario& sc, const WorldState& st, const Action& a) {
  switch (a.verb) {
    case Verb::Move: {
      const RoomSpec* room = sc.find_room(st.current_room);
      for (const auto& [dir, dest] : room->exits)
        if (dir == a.object) return true;
      return false;
    }
    case Verb::Open:
      return in_current_room(st, a.object) && !st.objects.at(a.object).open;
    case Verb::Close:
      return in_current_room(st, a.object) && st.objects.at(a.object).open;
    case Verb::PickUp:
      return !st.holds(a.object) &&
             static_cast<int>(st.inventory.size()) < sc.inventory_capacity &&
             visible_or_held(st, a.object);
    case Verb::Put: {
      if (!st.holds(a.object) || !in_current_room(st, a.target)) return false;
      const ObjectSpec* dest = sc.find_object(a.target);
      return dest->surface || st.objects.at(a.target).open;
    }
    case Verb::Slice:
    case Verb::Dice:
    case Verb::Chop: {
      if (!st.holds(a.object) || st.objects.at(a.object).cut != CutState::Uncut) return false;
      for (const auto& o : sc.objects)
        if (o.kind == ObjectKind::Tool && o.portable && st.holds(o.id)) return true;
      return false;
    }
    case Verb::Fry:
    case Verb::Roast:
    case Verb::Grill: {
      if (!st.holds(a.object) || st.objects.at(a.object).cook != CookState::Raw) return false;
      const std::string* tool = appliance_for(sc, verb_word(a.verb));
      return tool && in_current_room(st, *tool);
    }
    case Verb::Eat:
      return st.holds(a.object);
    case Verb::Read:
      return visible_or_held(st, a.object);
    case Verb::Prepare: {
      if (!st.cookbook_read) return false;
      if (st.objects.at(a.object).location.type != Location::Type::Unspawned) return false;
      bool near_appliance = false;
      for (const auto& [verb, tool] : sc.cook_appliances)
        if (in_current_room(st, tool)) near_appliance = true;
      if (!near_appliance) return false;
      if (!st.holds("parsley") || st.objects.at("parsley").cut != CutState::Sliced) return false;
      return st.holds("cilantro");
    }
  }
  return false;
}

std::vector<std::string> admissible_actions(const Scenario& sc, const Catalogue& cat,
                                            const WorldState& st) {
  std::vector<std::string> out;
  for (size_t i = 0; i < cat.actions.size(); ++i)
    if (action_valid(sc, st, cat.actions[i])) out.push_back(cat.texts[i]);
  return out;
}

std::string render_room(const Scenario& sc, const WorldState& st) {
  const RoomSpec* room = sc.find_room(st.current_room);
  static const char* starters[4] = {"In one part of the room you see", "There is also",
                                    "You also see", "In another part of the room you see"};
  std::string out = "You are in the " + room->id + ".";
  int slot = 0;
  for (const auto& fid : room->layout) {
    const ObjectSpec* f = sc.find_object(fid);
    const ObjectState& os = st.objects.at(fid);
    std::string phrase;
    if (f->container) {
      if (!os.open) {
        phrase = indefinite(fid + " that is closed");
      } else {
        auto contents = contents_display(sc, st, fid, Location::Type::InContainer);
        if (contents.empty())
          phrase = indefinite("open " + fid + ", that is empty");
        else
          phrase = indefinite("open " + fid + ", that has " + definite_list(contents) + " in it");
      }
    } else if (f->surface) {
      auto contents = contents_display(sc, st, fid, Location::Type::OnSurface);
      if (contents.empty())
        phrase = indefinite(fid + ", that has nothing on it");
      else
        phrase = indefinite(fid + ", that has " + definite_list(contents) + " on it");
    } else {
      phrase = indefinite(fid);
    }
    out += " " + std::string(starters[slot % 4]) + " " + phrase + ".";
    ++slot;
  }
  for (const auto& [dir, dest] : room->exits)
    out += " To the " + capitalize(dir) + " you see the " + dest + ".";
  return out;
}

StepResult apply_action(const Scenario& sc, const WorldState& st, const std::string& text) {
  if (st.step >= sc.horizon) throw EpisodeExhausted();
  StepResult res;
  res.state = st;
  res.state.step = st.step + 1;

  auto parsed = parse_action(sc, text);
  if (!parsed) {
    res.observation = kUnknownVerb;
    return res;
  }
  if (!action_valid(sc, st, *parsed)) {
    res.observation = kCantDoThat;
    return res;
  }

  const Action& a = *parsed;
  WorldState& next = res.state;
  auto emit = [&res, &next](EventKind kind, const std::string& object, const std::string& detail) {
    res.events.push_back({next.step, kind, object, detail});
  };

  switch (a.verb) {
    case Verb::Move: {
      const RoomSpec* room = sc.find_room(st.current_room);
      for (const auto& [dir, dest] : room->exits)
        if (dir == a.object) next.current_room = dest;
      res.observation = render_room(sc, next);
      emit(EventKind::Moved, next.current_room, "");
      break;
    }
    case Verb::Open: {
      next.objects.at(a.object).open = true;
      auto contents = contents_display(sc, next, a.object, Location::Type::InContainer);
      res.observation = "You open the " + a.object + ". " +
                        (contents.empty() ? std::string("It is empty.")
                                          : "It contains " + definite_list(contents) + ".");
      emit(EventKind::Opened, a.object, "");
      break;
    }
    case Verb::Close: {
      next.objects.at(a.object).open = false;
      res.observation = "You close the " + a.object + ".";
      emit(EventKind::Closed, a.object, "");
      break;
    }
    case Verb::PickUp: {
      next.objects.at(a.object).location = {Location::Type::Inventory, ""};
      next.inventory.push_back(a.object);
      res.observation = "You pick up the " + display_name(st, a.object) + ".";
      emit(EventKind::PickedUp, a.object, "");
      break;
    }
    case Verb::Put: {
      const ObjectSpec* dest = sc.find_object(a.target);
      next.objects.at(a.object).location = {
          dest->container ? Location::Type::InContainer : Location::Type::OnSurface, a.target};
      std::erase(next.inventory, a.object);
      res.observation = "You put the " + display_name(st, a.object) +
                        (dest->container ? " in the " : " on the ") + a.target + ".";
      emit(EventKind::Put, a.object, a.target);
      break;
    }
    case Verb::Slice:
    case Verb::Dice:
    case Verb::Chop: {
      next.objects.at(a.object).cut = cut_result(a.verb);
      res.observation = "You " + verb_word(a.verb) + " the " + display_name(st, a.object) + ".";
      emit(EventKind::Cut, a.object, cut_adjective(cut_result(a.verb)));
      break;
    }
    case Verb::Fry:
    case Verb::Roast:
    case Verb::Grill: {
      next.objects.at(a.object).cook = cook_result(a.verb);
      const std::string* tool = appliance_for(sc, verb_word(a.verb));
      res.observation = "You " + verb_word(a.verb) + " the " + display_name(st, a.object) +
                        " with the " + *tool + ".";
      emit(EventKind::Cooked, a.object, cook_adjective(cook_result(a.verb)));
      break;
    }
    case Verb::Eat: {
      next.objects.at(a.object).location = {Location::Type::Consumed, ""};
      std::erase(next.inventory, a.object);
      res.observation = "You eat the " + display_name(st, a.object) + ".";
      emit(EventKind::Ate, a.object, "");
      break;
    }
    case Verb::Read: {
      next.cookbook_read = true;
      res.observation = "You read the " + a.object +
                        ". The recipe says: gather the cilantro and the parsley, slice the "
                        "parsley, then prepare and eat the meal.";
      emit(EventKind::ReadCookbook, a.object, "");
      break;
    }
    case Verb::Prepare: {
      next.objects.at("parsley").location = {Location::Type::Consumed, ""};
      next.objects.at("cilantro").location = {Location::Type::Consumed, ""};
      std::erase(next.inventory, "parsley");
      std::erase(next.inventory, "cilantro");
      next.objects.at(a.object).location = {Location::Type::Inventory, ""};
      next.inventory.push_back(a.object);
      res.observation = "You prepare the " + a.object + ".";
      emit(EventKind::PreparedMeal, a.object, "");
      break;
    }
  }
  return res;
}

// --- State serialization ---

namespace {

std::string location_type_name(Location::Type t) {
  switch (t) {
    case Location::Type::Room: return "room";
    case Location::Type::OnSurface: return "on";
    case Location::Type::InContainer: return "in";
    case Location::Type::Inventory: return "inventory";
    case Location::Type::Consumed: return "consumed";
    case Location::Type::Unspawned: return "unspawned";
  }
  return "unspawned";
}

Location::Type location_type_from_name(const std::string& s) {
  if (s == "room") return Location::Type::Room;
  if (s == "on") return Location::Type::OnSurface;
  if (s == "in") return Location::Type::InContainer;
  if (s == "inventory") return Location::Type::Inventory;
  if (s == "consumed") return Location::Type::Consumed;
  if (s == "unspawned") return Location::Type::Unspawned;
  throw std::runtime_error("bad location type: " + s);
}

const std::vector<std::pair<CutState, std::string>> kCutNames = {
    {CutState::Uncut, "uncut"},
    {CutState::Sliced, "sliced"},
    {CutState::Diced, "diced"},
    {CutState::Chopped, "chopped"}};

const std::vector<std::pair<CookState, std::string>> kCookNames = {
    {CookState::Raw, "raw"},
    {CookState::Fried, "fried"},
    {CookState::Roasted, "roasted"},
    {CookState::Grilled, "grilled"}};

template <typename E>
std::string enum_name(const std::vector<std::pair<E, std::string>>& table, E v) {
  for (const auto& [e, name] : table)
    if (e == v) return name;
  return table.front().second;
}

template <typename E>
E enum_value(const std::vector<std::pair<E, std::string>>& table, const std::string& name) {
  for (const auto& [e, n] : table)
    if (n == name) return e;
  throw std::runtime_error("bad enum name: " + name);
}

}  // namespace

std::string world_state_to_json(const WorldState& st) {
  json j;
  j["current_room"] = st.current_room;
  j["step"] = st.step;
  j["cookbook_read"] = st.cookbook_read;
  j["inventory"] = st.inventory;
  json objs = json::object();
  for (const auto& [id, os] : st.objects) {
    json jo;
    jo["location"] = {{"type", location_type_name(os.location.type)},
                      {"holder", os.location.holder}};
    jo["open"] = os.open;
    jo["cut"] = enum_name(kCutNames, os.cut);
    jo["cook"] = enum_name(kCookNames, os.cook);
    objs[id] = std::move(jo);
  }
  j["objects"] = std::move(objs);
  return j.dump();
}

WorldState world_state_from_json(const std::string& text) {
  json j = json::parse(text);
  WorldState st;
  st.current_room = j.at("current_room").get<std::string>();
  st.step = j.at("step").get<int>();
  st.cookbook_read = j.at("cookbook_read").get<bool>();
  st.inventory = j.at("inventory").get<std::vector<std::string>>();
  for (const auto& [id, jo] : j.at("objects").items()) {
    ObjectState os;
    os.location.type = location_type_from_name(jo.at("location").at("type").get<std::string>());
    os.location.holder = jo.at("location").at("holder").get<std::string>();
    os.open = jo.at("open").get<bool>();
    os.cut = enum_value(kCutNames, jo.at("cut").get<std::string>());
    os.cook = enum_value(kCookNames, jo.at("cook").get<std::string>());
    st.objects[id] = os;
  }
  return st;
}

// --- Environment ---

Environment::Environment() : Environment(default_scenario()) {}

Environment::Environment(Scenario sc)
    : scenario_(std::move(sc)), catalogue_(build_catalogue(scenario_)), state_(reset_world(scenario_)) {}

std::string Environment::reset() {
  state_ = reset_world(scenario_);
  return render_room(scenario_, state_);
}

StepResult Environment::step(const std::string& text) {
  StepResult res = apply_action(scenario_, state_, text);
  state_ = res.state;
  return res;
}

std::vector<std::string> Environment::admissible() const {
  return admissible_actions(scenario_, catalogue_, state_);
}

}  // namespace lma3
