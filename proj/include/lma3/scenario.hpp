#pragma once

#include <map>
#include <string>
#include <vector>

namespace lma3 {

// Static description of one world layout: rooms, furniture, portable objects
// and the verb bindings that depend on the layout (which appliance fries,
// where each portable may be put). Everything dynamic lives in WorldState.

enum class ObjectKind { Furniture, Tool, Ingredient, Cookbook, Meal };

struct Location {
  enum class Type { Room, OnSurface, InContainer, Inventory, Consumed, Unspawned };
  Type type = Type::Unspawned;
  std::string holder;  // room / surface / container id, empty otherwise

  bool operator==(const Location&) const = default;
};

struct ObjectSpec {
  std::string id;
  ObjectKind kind = ObjectKind::Furniture;
  bool portable = false;
  bool container = false;  // openable, holds things "in" it
  bool surface = false;    // holds things "on" it
  Location start;
};

struct RoomSpec {
  std::string id;
  // Exits in presentation order: direction -> destination room.
  std::vector<std::pair<std::string, std::string>> exits;
  // Furniture and appliances in the order room descriptions mention them.
  std::vector<std::string> layout;
};

struct Scenario {
  std::string start_room;
  int horizon = 25;
  int inventory_capacity = 4;
  std::vector<RoomSpec> rooms;
  std::vector<ObjectSpec> objects;
  // Cooking verb -> appliance id, e.g. "fry" -> "stove".
  std::vector<std::pair<std::string, std::string>> cook_appliances;
  // Portable id -> allowed put destinations (containers and surfaces).
  std::map<std::string, std::vector<std::string>> put_targets;

  const ObjectSpec* find_object(const std::string& id) const;
  const RoomSpec* find_room(const std::string& id) const;
  // Declaration index used to keep content listings in a stable order.
  int object_rank(const std::string& id) const;
};

// The default kitchen scenario, embedded in the binary. assets/scenario.json
// holds the same data for external tools; a test keeps the two in sync.
const std::string& default_scenario_json();
Scenario default_scenario();

Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& sc);

}  // namespace lma3
