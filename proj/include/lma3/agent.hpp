#pragma once

#include "lma3/gateway.hpp"
#include "lma3/prompts.hpp"
#include "lma3/registry.hpp"
#include "lma3/trajectory.hpp"
#include "lma3/world.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lma3 {

// The autotelic loop: pick a goal, replay what the registry knows about it,
// explore past the end, then let the relabeler and reward judge mine the
// episode for newly mastered goals.

struct AgentConfig {
  int episodes = 2000;
  int bootstrap_episodes = 4000;  // episodes before the goal generator wakes up
  double epsilon = 0.2;           // chance of truncating the final scripted segment
  int max_instructions = 60;      // registry sample offered to the goal generator
  int snapshot_every = 100;       // resumable checkpoint cadence; 0 disables
  bool use_goal_generator = true;
  bool oracle_components = false;  // ground-truth relabel/reward instead of LM calls
  // Non-empty: bootstrap episodes draw the main goal from this fixed pool
  // instead of the registry (the hardcoded-goal baseline).
  std::vector<std::string> goal_pool;
  PromptVariant relabel_variant = PromptVariant::RelabelCotTips;
  PromptVariant reward_variant = PromptVariant::RewardCot;
  PromptVariant goalgen_variant = PromptVariant::GoalGenCot;
  std::string model = "oracle";
  double relabel_temperature = 0.9;
  double reward_temperature = 0.0;
  double goalgen_temperature = 0.9;
  int max_tokens = 1024;
};

enum class PlanKind { Random, Bootstrap, Generated };

const char* plan_kind_name(PlanKind k);

struct EpisodePlan {
  PlanKind kind = PlanKind::Random;
  std::string main_goal;              // canonical; empty for Random
  std::vector<std::string> subgoals;  // Generated only: 2..4 registry goals, in order
  bool goalgen_fallback = false;      // a generator attempt that fell back to bootstrap
};

// Episode 1 explores at random. Bootstrap episodes replay a uniform registry
// goal (or a pool goal when one is configured). Past the bootstrap horizon the
// goal generator composes registry goals; unparsable proposals fall back to a
// bootstrap pick. The generator is the only caller of the gateway here.
EpisodePlan select_plan(int episode, const GoalRegistry& reg, const AgentConfig& cfg,
                        const Trajectory* last_traj, Gateway* gw, std::mt19937& rng, int seed);

struct ExecutionStats {
  size_t planned = 0;   // scripted actions after any truncation
  size_t executed = 0;  // scripted actions actually submitted
  size_t tail = 0;      // rarity-sampled actions after the script ran out
  bool truncated = false;
};

// Replays the plan's registry sequences, with probability epsilon cutting the
// final sequence at a uniform position, then fills the remaining horizon by
// sampling admissible actions with weight 1/occurrences (unseen counts as 1).
// Every submitted action bumps its occurrence count.
Trajectory execute_plan(Environment& env, const EpisodePlan& plan, GoalRegistry& reg,
                        const AgentConfig& cfg, std::mt19937& rng, long episode,
                        ExecutionStats* stats = nullptr);

struct VerifiedGoal {
  std::string goal;
  int step = 0;
  std::string source;  // main | subgoal | relabel
};

struct EpisodeOutcome {
  std::vector<RelabeledGoal> candidates;  // what the relabeler proposed
  std::vector<VerifiedGoal> verified;     // what the reward judge confirmed
  bool main_achieved = false;
  int new_goals = 0;  // registry insertions this episode
};

// One relabel call, then one reward call covering the main goal, any subgoals
// and every relabel candidate (deduplicated, first source wins). Confirmed
// main and relabel goals land in the registry with the length-t action prefix;
// confirmed subgoals only bump achieved counts. Each confirmation appends a
// replay record (the prefix with reward 1 at its last step) to replay_log.
EpisodeOutcome process_episode(const Scenario& sc, const Trajectory& traj,
                               const EpisodePlan& plan, const AgentConfig& cfg,
                               GoalRegistry& reg, Gateway* gw, int seed,
                               std::ostream* replay_log);

struct SeedRunConfig {
  AgentConfig agent;
  std::filesystem::path out_dir;  // this seed's directory
  int seed = 1;
  int progress_every = 0;  // print a line every N episodes; 0 silences
  std::ostream* progress = nullptr;
};

struct SeedRunResult {
  int episodes_completed = 0;
  int resumed_from = 0;  // snapshot episode the run continued after; 0 = fresh
  GoalRegistry registry;
  std::string error;  // non-empty when the seed aborted
};

// Runs episodes for one seed, streaming trajectories.jsonl and replay.jsonl
// and checkpointing snapshot.json every snapshot_every episodes (atomically).
// When a snapshot exists the run resumes after it, truncating both logs to the
// snapshot episode first, so a killed run finishes with byte-identical state.
// registry.json is written at the end.
SeedRunResult run_seed(const Scenario& sc, const SeedRunConfig& cfg, Gateway& gw);

std::filesystem::path seed_directory(const std::filesystem::path& root, int seed);

struct ExperimentConfig {
  AgentConfig agent;
  std::vector<int> seeds;
  std::filesystem::path out_dir;
  std::filesystem::path cache_file;  // empty: out_dir/cache.jsonl
  GatewayMode mode = GatewayMode::Normal;
  std::shared_ptr<Backend> backend;  // empty: scripted oracle
  int workers = 4;
  int progress_every = 0;
  std::ostream* progress = nullptr;
};

struct ExperimentResult {
  std::map<int, SeedRunResult> seeds;
  long backend_calls = 0;
};

// Runs all seeds on a worker pool sharing one response cache; each seed gets
// its own gateway and audit log. A seed that throws is recorded with its
// error and the rest keep going; its snapshots stay on disk for a later
// resume.
ExperimentResult run_experiment(const Scenario& sc, const ExperimentConfig& cfg);

// The five experiment arms: the full agent, the ablations, and the
// oracle-components baseline with the hand-coded goal pool.
enum class Condition { Lma3, NoTips, NoGoalgenNoTips, NoCotNoTips, OracleBaseline };

const char* condition_name(Condition c);
std::optional<Condition> condition_from_name(const std::string& name);
void apply_condition(Condition c, AgentConfig& cfg);

}  // namespace lma3
