#include "lma3/trajectory.hpp"

#include <json.hpp>

namespace lma3 {

using nlohmann::json;

std::vector<GroundEvent> all_events(const Trajectory& traj) {
  std::vector<GroundEvent> out;
  for (const auto& step : traj.steps)
    for (const auto& e : step.events) out.push_back(e);
  return out;
}

std::string describe_event(const Scenario& sc, const GroundEvent& e) {
  switch (e.kind) {
    case EventKind::Moved:
      return "go to the " + e.object;
    case EventKind::Opened:
      return "open the " + e.object;
    case EventKind::Closed:
      return "close the " + e.object;
    case EventKind::PickedUp:
      return "pick up the " + e.object;
    case EventKind::Put: {
      const ObjectSpec* dest = sc.find_object(e.detail);
      bool inside = dest && dest->container;
      return "put the " + e.object + (inside ? " in the " : " on the ") + e.detail;
    }
    case EventKind::Cut: {
      if (e.detail == "sliced") return "slice the " + e.object;
      if (e.detail == "diced") return "dice the " + e.object;
      return "chop the " + e.object;
    }
    case EventKind::Cooked: {
      if (e.detail == "fried") return "fry the " + e.object;
      if (e.detail == "roasted") return "roast the " + e.object;
      return "grill the " + e.object;
    }
    case EventKind::Ate:
      return "eat the " + e.object;
    case EventKind::ReadCookbook:
      return "read the " + e.object;
    case EventKind::PreparedMeal:
      return "prepare the " + e.object;
  }
  return "";
}

namespace {

json event_to_obj(const GroundEvent& e) {
  return {{"step", e.step},
          {"kind", event_kind_name(e.kind)},
          {"object", e.object},
          {"detail", e.detail}};
}

GroundEvent event_from_obj(const json& j) {
  GroundEvent e;
  e.step = j.at("step").get<int>();
  auto kind = event_kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw std::runtime_error("unknown event kind in json");
  e.kind = *kind;
  e.object = j.at("object").get<std::string>();
  e.detail = j.at("detail").get<std::string>();
  return e;
}

}  // namespace

std::string ground_event_to_json(const GroundEvent& e) { return event_to_obj(e).dump(); }

GroundEvent ground_event_from_json(const std::string& text) {
  return event_from_obj(json::parse(text));
}

std::string trajectory_to_json(const Trajectory& traj) {
  json j;
  j["episode"] = traj.episode;
  j["initial_observation"] = traj.initial_observation;
  j["steps"] = json::array();
  for (const auto& step : traj.steps) {
    json js;
    js["action"] = step.action;
    js["observation"] = step.observation;
    js["events"] = json::array();
    for (const auto& e : step.events) js["events"].push_back(event_to_obj(e));
    j["steps"].push_back(std::move(js));
  }
  return j.dump();
}

Trajectory trajectory_from_json(const std::string& text) {
  json j = json::parse(text);
  Trajectory traj;
  traj.episode = j.at("episode").get<long>();
  traj.initial_observation = j.at("initial_observation").get<std::string>();
  for (const auto& js : j.at("steps")) {
    TrajectoryStep step;
    step.action = js.at("action").get<std::string>();
    step.observation = js.at("observation").get<std::string>();
    for (const auto& je : js.at("events")) step.events.push_back(event_from_obj(je));
    traj.steps.push_back(std::move(step));
  }
  return traj;
}

}  // namespace lma3
