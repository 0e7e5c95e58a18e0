#include "lma3/scenario.hpp"

namespace lma3 {

// Verbatim copy of assets/scenario.json; a test keeps the two in sync.
const std::string& default_scenario_json() {
  static const std::string text = R"lma3json({
  "start_room": "corridor",
  "horizon": 25,
  "inventory_capacity": 4,
  "rooms": [
    {
      "id": "corridor",
      "exits": [["south", "kitchen"]],
      "layout": ["shoe cabinet", "key holder"]
    },
    {
      "id": "kitchen",
      "exits": [["north", "corridor"]],
      "layout": ["stove", "oven", "toaster", "fridge", "counter", "dining chair", "cutlery drawer", "kitchen cupboard", "trash can", "dishwasher"]
    }
  ],
  "objects": [
    {"id": "shoe cabinet", "kind": "furniture", "container": true, "room": "corridor"},
    {"id": "key holder", "kind": "furniture", "surface": true, "room": "corridor"},
    {"id": "stove", "kind": "tool", "room": "kitchen"},
    {"id": "oven", "kind": "tool", "room": "kitchen"},
    {"id": "toaster", "kind": "tool", "room": "kitchen"},
    {"id": "fridge", "kind": "furniture", "container": true, "room": "kitchen"},
    {"id": "counter", "kind": "furniture", "surface": true, "room": "kitchen"},
    {"id": "dining chair", "kind": "furniture", "surface": true, "room": "kitchen"},
    {"id": "cutlery drawer", "kind": "furniture", "container": true, "room": "kitchen"},
    {"id": "kitchen cupboard", "kind": "furniture", "container": true, "room": "kitchen"},
    {"id": "trash can", "kind": "furniture", "container": true, "room": "kitchen"},
    {"id": "dishwasher", "kind": "furniture", "container": true, "room": "kitchen"},
    {"id": "red potato", "kind": "ingredient", "portable": true, "on": "counter"},
    {"id": "yellow potato", "kind": "ingredient", "portable": true, "on": "counter"},
    {"id": "red apple", "kind": "ingredient", "portable": true, "on": "counter"},
    {"id": "yellow apple", "kind": "ingredient", "portable": true, "on": "dining chair"},
    {"id": "green apple", "kind": "ingredient", "portable": true, "on": "dining chair"},
    {"id": "parsley", "kind": "ingredient", "portable": true, "in": "fridge"},
    {"id": "cilantro", "kind": "ingredient", "portable": true, "in": "fridge"},
    {"id": "knife", "kind": "tool", "portable": true, "in": "kitchen cupboard"},
    {"id": "cookbook", "kind": "cookbook", "portable": true, "on": "counter"},
    {"id": "meal", "kind": "meal", "portable": true}
  ],
  "cook_appliances": [["fry", "stove"], ["roast", "oven"], ["grill", "toaster"]],
  "put_targets": {
    "red potato": ["fridge", "kitchen cupboard", "trash can", "dishwasher", "counter", "dining chair", "shoe cabinet", "key holder"],
    "yellow potato": ["fridge", "kitchen cupboard", "trash can", "dishwasher", "counter", "dining chair", "shoe cabinet", "key holder"],
    "red apple": ["fridge", "kitchen cupboard", "trash can", "dishwasher", "counter", "dining chair", "shoe cabinet", "key holder"],
    "yellow apple": ["fridge", "kitchen cupboard", "trash can", "dishwasher", "counter", "dining chair", "shoe cabinet", "key holder"],
    "green apple": ["fridge", "kitchen cupboard", "trash can", "dishwasher", "counter", "dining chair", "shoe cabinet", "key holder"],
    "parsley": ["fridge", "kitchen cupboard", "trash can", "dishwasher", "counter", "dining chair", "shoe cabinet", "key holder"],
    "cilantro": ["fridge", "kitchen cupboard", "trash can", "dishwasher", "counter", "dining chair", "shoe cabinet", "key holder"],
    "knife": ["cutlery drawer", "kitchen cupboard", "dishwasher", "trash can", "counter", "dining chair", "shoe cabinet", "key holder"],
    "cookbook": ["counter", "dining chair", "kitchen cupboard", "trash can", "dishwasher", "shoe cabinet", "key holder"],
    "meal": ["counter", "dining chair", "fridge", "trash can", "dishwasher", "shoe cabinet", "key holder"]
  }
}
)lma3json";
  return text;
}

}  // namespace lma3
