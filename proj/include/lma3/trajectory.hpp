#pragma once

#include "lma3/world.hpp"

#include <string>
#include <vector>

namespace lma3 {

struct TrajectoryStep {
  std::string action;       // command as submitted
  std::string observation;  // what came back
  std::vector<GroundEvent> events;

  bool operator==(const TrajectoryStep&) const = default;
};

struct Trajectory {
  long episode = 0;
  std::string initial_observation;  // room description shown before step 1
  std::vector<TrajectoryStep> steps;

  bool operator==(const Trajectory&) const = default;
};

std::vector<GroundEvent> all_events(const Trajectory& traj);

// Imperative phrase for what an event achieved: "slice the parsley",
// "put the knife in the cutlery drawer", "go to the kitchen". This is the
// shared vocabulary between relabeled goals and the hand-coded goal list.
std::string describe_event(const Scenario& sc, const GroundEvent& e);

std::string ground_event_to_json(const GroundEvent& e);
GroundEvent ground_event_from_json(const std::string& text);

std::string trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const std::string& text);

}  // namespace lma3
