#include "lma3/scenario.hpp"

#include <json.hpp>

#include <stdexcept>

namespace lma3 {

using nlohmann::json;

const ObjectSpec* Scenario::find_object(const std::string& id) const {
  for (const auto& o : objects)
    if (o.id == id) return &o;
  return nullptr;
}

const RoomSpec* Scenario::find_room(const std::string& id) const {
  for (const auto& r : rooms)
    if (r.id == id) return &r;
  return nullptr;
}

int Scenario::object_rank(const std::string& id) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i].id == id) return static_cast<int>(i);
  return -1;
}

namespace {

ObjectKind kind_from_string(const std::string& s) {
  if (s == "furniture") return ObjectKind::Furniture;
  if (s == "tool") return ObjectKind::Tool;
  if (s == "ingredient") return ObjectKind::Ingredient;
  if (s == "cookbook") return ObjectKind::Cookbook;
  if (s == "meal") return ObjectKind::Meal;
  throw std::runtime_error("unknown object kind: " + s);
}

std::string kind_to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::Furniture: return "furniture";
    case ObjectKind::Tool: return "tool";
    case ObjectKind::Ingredient: return "ingredient";
    case ObjectKind::Cookbook: return "cookbook";
    case ObjectKind::Meal: return "meal";
  }
  return "furniture";
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json j = json::parse(text);
  Scenario sc;
  sc.start_room = j.at("start_room").get<std::string>();
  sc.horizon = j.at("horizon").get<int>();
  sc.inventory_capacity = j.at("inventory_capacity").get<int>();
  for (const auto& jr : j.at("rooms")) {
    RoomSpec room;
    room.id = jr.at("id").get<std::string>();
    for (const auto& je : jr.at("exits"))
      room.exits.emplace_back(je.at(0).get<std::string>(), je.at(1).get<std::string>());
    for (const auto& jl : jr.at("layout"))
      room.layout.push_back(jl.get<std::string>());
    sc.rooms.push_back(std::move(room));
  }
  for (const auto& jo : j.at("objects")) {
    ObjectSpec obj;
    obj.id = jo.at("id").get<std::string>();
    obj.kind = kind_from_string(jo.at("kind").get<std::string>());
    obj.portable = jo.value("portable", false);
    obj.container = jo.value("container", false);
    obj.surface = jo.value("surface", false);
    if (jo.contains("room"))
      obj.start = {Location::Type::Room, jo.at("room").get<std::string>()};
    else if (jo.contains("on"))
      obj.start = {Location::Type::OnSurface, jo.at("on").get<std::string>()};
    else if (jo.contains("in"))
      obj.start = {Location::Type::InContainer, jo.at("in").get<std::string>()};
    else
      obj.start = {Location::Type::Unspawned, ""};
    sc.objects.push_back(std::move(obj));
  }
  for (const auto& jc : j.at("cook_appliances"))
    sc.cook_appliances.emplace_back(jc.at(0).get<std::string>(), jc.at(1).get<std::string>());
  for (const auto& [portable, targets] : j.at("put_targets").items()) {
    std::vector<std::string> ids;
    for (const auto& t : targets) ids.push_back(t.get<std::string>());
    sc.put_targets[portable] = std::move(ids);
  }

  // Cheap referential integrity checks; a broken scenario file should fail
  // loudly here rather than as a mystery mid-episode.
  if (!sc.find_room(sc.start_room)) throw std::runtime_error("start_room not declared");
  for (const auto& r : sc.rooms) {
    for (const auto& [dir, dest] : r.exits)
      if (!sc.find_room(dest)) throw std::runtime_error("exit to undeclared room: " + dest);
    for (const auto& id : r.layout)
      if (!sc.find_object(id)) throw std::runtime_error("layout lists undeclared object: " + id);
  }
  for (const auto& o : sc.objects) {
    if (o.start.type == Location::Type::Room && !sc.find_room(o.start.holder))
      throw std::runtime_error(o.id + " placed in undeclared room");
    if (o.start.type == Location::Type::OnSurface || o.start.type == Location::Type::InContainer) {
      const ObjectSpec* holder = sc.find_object(o.start.holder);
      if (!holder) throw std::runtime_error(o.id + " placed in undeclared object");
      bool ok = o.start.type == Location::Type::OnSurface ? holder->surface : holder->container;
      if (!ok) throw std::runtime_error(o.id + " placed in/on unsuitable holder " + holder->id);
    }
  }
  for (const auto& [portable, targets] : sc.put_targets) {
    const ObjectSpec* p = sc.find_object(portable);
    if (!p || !p->portable) throw std::runtime_error("put_targets key not portable: " + portable);
    for (const auto& t : targets) {
      const ObjectSpec* h = sc.find_object(t);
      if (!h || (!h->container && !h->surface))
        throw std::runtime_error("put target not a container or surface: " + t);
    }
  }
  return sc;
}

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["start_room"] = sc.start_room;
  j["horizon"] = sc.horizon;
  j["inventory_capacity"] = sc.inventory_capacity;
  j["rooms"] = json::array();
  for (const auto& r : sc.rooms) {
    json jr;
    jr["id"] = r.id;
    jr["exits"] = json::array();
    for (const auto& [dir, dest] : r.exits) jr["exits"].push_back({dir, dest});
    jr["layout"] = r.layout;
    j["rooms"].push_back(std::move(jr));
  }
  j["objects"] = json::array();
  for (const auto& o : sc.objects) {
    json jo;
    jo["id"] = o.id;
    jo["kind"] = kind_to_string(o.kind);
    if (o.portable) jo["portable"] = true;
    if (o.container) jo["container"] = true;
    if (o.surface) jo["surface"] = true;
    switch (o.start.type) {
      case Location::Type::Room: jo["room"] = o.start.holder; break;
      case Location::Type::OnSurface: jo["on"] = o.start.holder; break;
      case Location::Type::InContainer: jo["in"] = o.start.holder; break;
      default: break;
    }
    j["objects"].push_back(std::move(jo));
  }
  j["cook_appliances"] = json::array();
  for (const auto& [verb, tool] : sc.cook_appliances)
    j["cook_appliances"].push_back({verb, tool});
  j["put_targets"] = json::object();
  for (const auto& [portable, targets] : sc.put_targets)
    j["put_targets"][portable] = targets;
  return j.dump(2);
}

Scenario default_scenario() {
  static const Scenario sc = scenario_from_json(default_scenario_json());
  return sc;
}

}  // namespace lma3
