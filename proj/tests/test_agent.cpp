#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lma3/agent.hpp"
#include "lma3/goal_text.hpp"
#include "lma3/oracle_eval.hpp"
#include "lma3/registry.hpp"
#include "lma3/sampling.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

using namespace lma3;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const Scenario& sc() {
  static Scenario s = default_scenario();
  return s;
}

fs::path temp_dir(const std::string& stem) {
  static std::atomic<int> counter{0};
  auto dir = fs::temp_directory_path() / "lma3_agent_tests" /
             (stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> jsonl_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

Gateway oracle_gateway(const fs::path& dir) {
  auto cache = std::make_shared<ResponseCache>(dir / "cache.jsonl");
  auto backend = std::make_shared<OracleBackend>(sc());
  return Gateway(cache, backend, GatewayOptions{});
}

// Backend whose completions are a fixed playlist, for forcing bad responses.
class PlaylistBackend : public Backend {
 public:
  explicit PlaylistBackend(std::vector<std::string> lines) : lines_(std::move(lines)) {}
  ChatResponse complete(const ChatRequest&) override {
    std::string content = next_ < lines_.size() ? lines_[next_] : std::string("nothing");
    next_++;
    return {content, "playlist", 0, false};
  }
  std::string name() const override { return "playlist"; }

 private:
  std::vector<std::string> lines_;
  size_t next_ = 0;
};

Trajectory short_walk() {
  Environment env(sc());
  Trajectory traj;
  traj.episode = 1;
  traj.initial_observation = env.reset();
  for (const char* action : {"move south", "open the fridge"}) {
    StepResult r = env.step(action);
    traj.steps.push_back({action, r.observation, r.events});
  }
  return traj;
}

}  // namespace

TEST_CASE("registry keeps the shortest sequence per goal") {
  GoalRegistry reg;
  CHECK(reg.size() == 0);
  CHECK_FALSE(reg.contains("go to the kitchen"));
  CHECK(reg.find("go to the kitchen") == nullptr);

  CHECK(reg.upsert("go to the kitchen", {"a", "b", "c"}, 2));
  REQUIRE(reg.contains("go to the kitchen"));
  const SkillEntry* e = reg.find("go to the kitchen");
  REQUIRE(e != nullptr);
  CHECK(e->actions == std::vector<std::string>{"a", "b", "c"});
  CHECK(e->first_episode == 2);
  CHECK(e->achieved_count == 0);

  reg.record_achievement("go to the kitchen");
  reg.record_achievement("go to the kitchen");
  CHECK(reg.find("go to the kitchen")->achieved_count == 2);

  // Strictly shorter replaces; provenance and counters survive.
  CHECK(reg.upsert("go to the kitchen", {"a", "b"}, 7));
  e = reg.find("go to the kitchen");
  CHECK(e->actions == std::vector<std::string>{"a", "b"});
  CHECK(e->first_episode == 2);
  CHECK(e->achieved_count == 2);

  // Same length or longer is ignored even when the actions differ.
  CHECK_FALSE(reg.upsert("go to the kitchen", {"x", "y"}, 9));
  CHECK_FALSE(reg.upsert("go to the kitchen", {"x", "y", "z"}, 9));
  CHECK(reg.find("go to the kitchen")->actions == std::vector<std::string>{"a", "b"});

  reg.record_achievement("never registered");  // silently ignored
  CHECK_FALSE(reg.contains("never registered"));

  CHECK(reg.upsert("eat the parsley", {"p"}, 3));
  CHECK(reg.goal_texts() == std::vector<std::string>{"eat the parsley", "go to the kitchen"});
  CHECK(reg.size() == 2);
}

TEST_CASE("registry occurrence counts start at zero and accumulate") {
  GoalRegistry reg;
  CHECK(reg.occurrence("move south") == 0);
  reg.count_occurrence("move south");
  reg.count_occurrence("move south");
  reg.count_occurrence("open the fridge");
  CHECK(reg.occurrence("move south") == 2);
  CHECK(reg.occurrence("open the fridge") == 1);
  CHECK(reg.occurrences().size() == 2);
}

TEST_CASE("registry serialization round-trips byte for byte") {
  GoalRegistry reg;
  reg.upsert("go to the kitchen", {"move south"}, 1);
  reg.upsert("slice the parsley", {"move south", "open the fridge"}, 4);
  reg.record_achievement("slice the parsley");
  reg.count_occurrence("move south");
  reg.count_occurrence("move south");
  reg.count_occurrence("open the fridge");

  std::string text = reg.to_json();
  CHECK(text.back() == '\n');
  GoalRegistry back = GoalRegistry::from_json(text);
  CHECK(back == reg);
  CHECK(back.to_json() == text);

  json doc = json::parse(text);
  CHECK(doc["goals"].size() == 2);
  CHECK(doc["goals"]["slice the parsley"]["achieved_count"] == 1);
  CHECK(doc["goals"]["go to the kitchen"]["first_episode"] == 1);
  CHECK(doc["occurrences"]["move south"] == 2);

  GoalRegistry other = back;
  other.count_occurrence("move south");
  CHECK_FALSE(other == reg);
}

TEST_CASE("sampling primitives are deterministic and well ranged") {
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    double u = unit_draw(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  std::set<size_t> seen;
  for (int i = 0; i < 5000; ++i) {
    size_t v = uniform_index(rng, 7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK_THROWS_AS(uniform_index(rng, 0), std::invalid_argument);

  std::mt19937 a(3), b(3);
  auto sample1 = sample_indices(a, 50, 10);
  auto sample2 = sample_indices(b, 50, 10);
  CHECK(sample1 == sample2);
  CHECK(sample1.size() == 10);
  CHECK(std::set<size_t>(sample1.begin(), sample1.end()).size() == 10);
  CHECK(sample_indices(a, 3, 99).size() == 3);

  CHECK_THROWS_AS(weighted_index(rng, {}), std::invalid_argument);
  CHECK_THROWS_AS(weighted_index(rng, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(weighted_index(rng, {1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("weighted sampling matches its target distribution") {
  // Occurrence counts 1 and 3 give rarity weights 1 and 1/3: probabilities
  // 3/4 and 1/4. Total variation over 100k draws should be well under 0.01.
  std::mt19937 rng(91);
  std::vector<double> weights{1.0, 1.0 / 3.0};
  const int draws = 100000;
  int first = 0;
  for (int i = 0; i < draws; ++i)
    if (weighted_index(rng, weights) == 0) first++;
  double p0 = static_cast<double>(first) / draws;
  double tv = 0.5 * (std::abs(p0 - 0.75) + std::abs((1.0 - p0) - 0.25));
  CHECK(tv <= 0.01);
}

TEST_CASE("plan selection follows the schedule") {
  AgentConfig cfg;
  std::mt19937 rng(5);

  GoalRegistry empty;
  CHECK(select_plan(1, empty, cfg, nullptr, nullptr, rng, 1).kind == PlanKind::Random);
  CHECK(select_plan(2, empty, cfg, nullptr, nullptr, rng, 1).kind == PlanKind::Random);

  GoalRegistry reg;
  reg.upsert("a goal", {"x"}, 1);
  reg.upsert("b goal", {"x"}, 1);
  reg.upsert("c goal", {"x"}, 1);
  reg.upsert("d goal", {"x"}, 1);

  // Episode 1 explores even when skills exist.
  CHECK(select_plan(1, reg, cfg, nullptr, nullptr, rng, 1).kind == PlanKind::Random);

  std::set<std::string> picked;
  for (int i = 0; i < 400; ++i) {
    EpisodePlan plan = select_plan(2 + i, reg, cfg, nullptr, nullptr, rng, 1);
    REQUIRE(plan.kind == PlanKind::Bootstrap);
    CHECK(reg.contains(plan.main_goal));
    CHECK(plan.subgoals.empty());
    picked.insert(plan.main_goal);
  }
  CHECK(picked.size() == 4);  // uniform draw visits everything

  // A configured pool overrides the registry for bootstrap picks.
  AgentConfig pool_cfg = cfg;
  pool_cfg.goal_pool = {"pool one", "pool two"};
  std::set<std::string> pool_picked;
  for (int i = 0; i < 50; ++i) {
    EpisodePlan plan = select_plan(2, empty, pool_cfg, nullptr, nullptr, rng, 1);
    REQUIRE(plan.kind == PlanKind::Bootstrap);
    pool_picked.insert(plan.main_goal);
  }
  CHECK(pool_picked == std::set<std::string>{"pool one", "pool two"});
}

TEST_CASE("goal generator composes registry skills after the bootstrap phase") {
  auto dir = temp_dir("goalgen");
  Gateway gw = oracle_gateway(dir);

  AgentConfig cfg;
  cfg.bootstrap_episodes = 3;
  GoalRegistry reg;
  reg.upsert("go to the kitchen", {"move south"}, 1);
  reg.upsert("open the fridge", {"move south", "open the fridge"}, 2);
  reg.upsert("go to the corridor", {"move south", "move north"}, 2);
  Trajectory last = short_walk();

  // Within the bootstrap phase nothing touches the gateway.
  std::mt19937 rng(55);
  for (int ep = 2; ep <= 3; ++ep) {
    CHECK(select_plan(ep, reg, cfg, &last, &gw, rng, 1).kind == PlanKind::Bootstrap);
  }
  CHECK(gw.backend_calls() == 0);

  std::mt19937 rng1(55), rng2(55);
  EpisodePlan plan1 = select_plan(4, reg, cfg, &last, &gw, rng1, 1);
  EpisodePlan plan2 = select_plan(4, reg, cfg, &last, &gw, rng2, 1);
  REQUIRE(plan1.kind == PlanKind::Generated);
  CHECK_FALSE(plan1.main_goal.empty());
  REQUIRE(plan1.subgoals.size() >= 2);
  REQUIRE(plan1.subgoals.size() <= 4);
  for (const auto& sg : plan1.subgoals) CHECK(reg.contains(sg));
  // Same rng state means the same instruction sample, prompt and proposal.
  CHECK(plan1.main_goal == plan2.main_goal);
  CHECK(plan1.subgoals == plan2.subgoals);
  CHECK(gw.backend_calls() == 1);  // second call was a cache hit

  // Missing prerequisites degrade to a bootstrap pick without a call.
  Trajectory empty_traj;
  CHECK(select_plan(4, reg, cfg, &empty_traj, &gw, rng1, 1).kind == PlanKind::Bootstrap);
  CHECK(select_plan(4, GoalRegistry{}, cfg, &last, &gw, rng1, 1).kind == PlanKind::Random);
  AgentConfig no_gen = cfg;
  no_gen.use_goal_generator = false;
  CHECK(select_plan(4, reg, no_gen, &last, &gw, rng1, 1).kind == PlanKind::Bootstrap);
  CHECK(gw.backend_calls() == 1);

  // An unparsable proposal falls back to bootstrap and says so.
  auto bad_cache = std::make_shared<ResponseCache>(dir / "bad_cache.jsonl");
  auto bad = std::make_shared<PlaylistBackend>(std::vector<std::string>{"word salad"});
  Gateway bad_gw(bad_cache, bad, GatewayOptions{});
  EpisodePlan fallback = select_plan(4, reg, cfg, &last, &bad_gw, rng1, 1);
  CHECK(fallback.kind == PlanKind::Bootstrap);
  CHECK(fallback.goalgen_fallback);
}

TEST_CASE("plan execution replays the script then explores by rarity") {
  GoalRegistry reg;
  reg.upsert("go to the kitchen", {"move south"}, 1);
  AgentConfig cfg;
  cfg.epsilon = 0.0;
  Environment env(sc());
  std::mt19937 rng(17);

  ExecutionStats stats;
  EpisodePlan plan{PlanKind::Bootstrap, "go to the kitchen", {}, false};
  Trajectory traj = execute_plan(env, plan, reg, cfg, rng, 9, &stats);
  CHECK(traj.episode == 9);
  REQUIRE(traj.steps.size() == static_cast<size_t>(sc().horizon));
  CHECK(traj.steps[0].action == "move south");
  CHECK(stats.planned == 1);
  CHECK(stats.executed == 1);
  CHECK(stats.tail == static_cast<size_t>(sc().horizon) - 1);
  CHECK_FALSE(stats.truncated);
  CHECK(reg.occurrence("move south") >= 1);
  long total = 0;
  for (const auto& [action, n] : reg.occurrences()) total += n;
  CHECK(total == sc().horizon);

  // Generated plans concatenate each subgoal's sequence in order.
  GoalRegistry reg2;
  reg2.upsert("go to the kitchen", {"move south"}, 1);
  reg2.upsert("go to the corridor", {"move south", "move north"}, 1);
  EpisodePlan chain{PlanKind::Generated, "a tour",
                    {"go to the kitchen", "go to the corridor"}, false};
  Environment env2(sc());
  Trajectory traj2 = execute_plan(env2, chain, reg2, cfg, rng, 1, &stats);
  REQUIRE(traj2.steps.size() >= 3);
  CHECK(traj2.steps[0].action == "move south");
  CHECK(traj2.steps[1].action == "move south");
  CHECK(traj2.steps[2].action == "move north");
  CHECK(stats.planned == 3);
  CHECK_FALSE(stats.truncated);
}

TEST_CASE("final sequence truncation fires at the configured rate") {
  GoalRegistry reg;
  reg.upsert("open the fridge", {"move south", "open the fridge", "move north"}, 1);
  EpisodePlan plan{PlanKind::Bootstrap, "open the fridge", {}, false};

  AgentConfig always;
  always.epsilon = 1.0;
  std::mt19937 rng(23);
  for (int i = 0; i < 20; ++i) {
    Environment env(sc());
    ExecutionStats stats;
    GoalRegistry scratch = reg;
    execute_plan(env, plan, scratch, always, rng, 1, &stats);
    CHECK(stats.truncated);
    CHECK(stats.planned < 3);  // at least one action dropped
  }

  AgentConfig fifth;
  fifth.epsilon = 0.2;
  int truncated = 0;
  const int runs = 2000;
  for (int i = 0; i < runs; ++i) {
    Environment env(sc());
    ExecutionStats stats;
    GoalRegistry scratch = reg;
    execute_plan(env, plan, scratch, fifth, rng, 1, &stats);
    if (stats.truncated) truncated++;
  }
  double rate = static_cast<double>(truncated) / runs;
  CHECK(rate > 0.16);
  CHECK(rate < 0.24);

  // Random plans have no script to truncate.
  AgentConfig cfg;
  cfg.epsilon = 1.0;
  Environment env(sc());
  ExecutionStats stats;
  GoalRegistry scratch;
  Trajectory traj = execute_plan(env, EpisodePlan{}, scratch, cfg, rng, 1, &stats);
  CHECK(traj.steps.size() == static_cast<size_t>(sc().horizon));
  CHECK(stats.planned == 0);
  CHECK_FALSE(stats.truncated);
}

TEST_CASE("episode processing stores verified goals with their prefixes") {
  auto dir = temp_dir("process");
  Gateway gw = oracle_gateway(dir);
  AgentConfig cfg;
  cfg.epsilon = 0.0;

  GoalRegistry reg;
  std::mt19937 rng(31);
  Environment env(sc());
  Trajectory traj = execute_plan(env, EpisodePlan{}, reg, cfg, rng, 1, nullptr);

  std::ostringstream replay_log;
  EpisodeOutcome out =
      process_episode(sc(), traj, EpisodePlan{}, cfg, reg, &gw, 1, &replay_log);

  REQUIRE_FALSE(out.candidates.empty());
  CHECK(out.candidates.size() <= 10);
  CHECK_FALSE(out.main_achieved);
  REQUIRE_FALSE(out.verified.empty());
  CHECK(out.new_goals == static_cast<int>(reg.size()));
  for (const auto& v : out.verified) {
    CHECK(v.source == "relabel");
    const SkillEntry* e = reg.find(v.goal);
    REQUIRE(e != nullptr);
    REQUIRE(e->actions.size() == static_cast<size_t>(v.step));
    for (size_t i = 0; i < e->actions.size(); ++i) CHECK(e->actions[i] == traj.steps[i].action);
    CHECK(e->achieved_count >= 1);
    CHECK(e->first_episode == 1);
  }

  // Replay records carry the rewarded prefix.
  std::istringstream lines(replay_log.str());
  std::string line;
  size_t records = 0;
  while (std::getline(lines, line)) {
    json rec = json::parse(line);
    CHECK(rec["episode"] == 1);
    CHECK(rec["source"] == "relabel");
    int step = rec["step"].get<int>();
    REQUIRE(rec["actions"].size() == static_cast<size_t>(step));
    REQUIRE(rec["rewards"].size() == static_cast<size_t>(step));
    CHECK(rec["rewards"].back() == 1);
    for (int i = 0; i + 1 < step; ++i) CHECK(rec["rewards"][i] == 0);
    CHECK(rec["actions"][0] == traj.steps[0].action);
    records++;
  }
  CHECK(records == out.verified.size());
}

TEST_CASE("main and subgoal verdicts update the registry differently") {
  auto dir = temp_dir("sources");
  Gateway gw = oracle_gateway(dir);
  AgentConfig cfg;
  cfg.epsilon = 0.0;

  GoalRegistry reg;
  reg.upsert("go to the kitchen", {"move south"}, 1);
  reg.upsert("go to the corridor", {"move south", "move north"}, 1);

  SUBCASE("achieved main goal is re-verified and counted") {
    EpisodePlan plan{PlanKind::Bootstrap, "go to the kitchen", {}, false};
    Environment env(sc());
    std::mt19937 rng(41);
    Trajectory traj = execute_plan(env, plan, reg, cfg, rng, 2, nullptr);
    EpisodeOutcome out = process_episode(sc(), traj, plan, cfg, reg, &gw, 1, nullptr);
    CHECK(out.main_achieved);
    bool main_seen = false;
    for (const auto& v : out.verified)
      if (v.goal == "go to the kitchen") {
        CHECK(v.source == "main");
        main_seen = true;
      }
    CHECK(main_seen);
    CHECK(reg.find("go to the kitchen")->achieved_count == 1);
  }

  SUBCASE("subgoals only bump achieved counts") {
    EpisodePlan plan{PlanKind::Generated, "patrol the rooms",
                     {"go to the kitchen", "go to the corridor"}, false};
    Environment env(sc());
    std::mt19937 rng(43);
    Trajectory traj = execute_plan(env, plan, reg, cfg, rng, 2, nullptr);
    EpisodeOutcome out = process_episode(sc(), traj, plan, cfg, reg, &gw, 1, nullptr);

    // The made-up composite goal never happened, so the main goal fails while
    // both subgoals verify.
    CHECK_FALSE(out.main_achieved);
    CHECK_FALSE(reg.contains("patrol the rooms"));
    CHECK(reg.find("go to the kitchen")->achieved_count == 1);
    CHECK(reg.find("go to the corridor")->achieved_count == 1);
    // Sequences stay put even though the corridor completion step equals the
    // stored length (subgoal verdicts never rewrite sequences).
    CHECK(reg.find("go to the corridor")->actions ==
          std::vector<std::string>{"move south", "move north"});
    for (const auto& v : out.verified) {
      if (v.goal == "go to the kitchen") CHECK(v.source == "subgoal");
      if (v.goal == "go to the corridor") CHECK(v.source == "subgoal");
    }
  }
}

TEST_CASE("verdicts with impossible steps are discarded") {
  auto dir = temp_dir("bogus");
  auto cache = std::make_shared<ResponseCache>(dir / "cache.jsonl");
  auto backend = std::make_shared<PlaylistBackend>(std::vector<std::string>{
      "- teleport home (step 99).\n",
      "- teleport home. Answer: yes (step 99).\n",
  });
  Gateway gw(cache, backend, GatewayOptions{});

  AgentConfig cfg;
  GoalRegistry reg;
  std::mt19937 rng(47);
  Environment env(sc());
  Trajectory traj = execute_plan(env, EpisodePlan{}, reg, cfg, rng, 1, nullptr);
  GoalRegistry before = reg;
  EpisodeOutcome out = process_episode(sc(), traj, EpisodePlan{}, cfg, reg, &gw, 1, nullptr);
  CHECK(out.candidates.size() == 1);
  CHECK(out.verified.empty());
  CHECK(reg == before);
}

TEST_CASE("single seed run writes logs, snapshots and a registry") {
  auto dir = temp_dir("run_seed");
  Gateway gw = oracle_gateway(dir);
  SeedRunConfig cfg;
  cfg.agent.episodes = 30;
  cfg.agent.snapshot_every = 10;
  cfg.out_dir = dir / "seed_1";
  cfg.seed = 1;

  SeedRunResult result = run_seed(sc(), cfg, gw);
  CHECK(result.error.empty());
  CHECK(result.episodes_completed == 30);
  CHECK(result.resumed_from == 0);
  CHECK(result.registry.size() > 0);

  auto lines = jsonl_lines(cfg.out_dir / "trajectories.jsonl");
  REQUIRE(lines.size() == 30);
  CHECK(lines.front()["episode"] == 1);
  CHECK(lines.front()["plan"]["kind"] == "random");
  CHECK(lines.back()["episode"] == 30);
  CHECK(lines.back()["plan"]["kind"] == "bootstrap");
  CHECK(lines[5]["trajectory"]["steps"].size() == static_cast<size_t>(sc().horizon));

  CHECK_FALSE(jsonl_lines(cfg.out_dir / "replay.jsonl").empty());

  CHECK(slurp(cfg.out_dir / "registry.json") == result.registry.to_json());
  json snap = json::parse(slurp(cfg.out_dir / "snapshot.json"));
  CHECK(snap["episode"] == 30);
  CHECK(GoalRegistry::from_json(snap["registry"].dump()) == result.registry);

  // Identical seed and config reproduce the run byte for byte.
  auto dir2 = temp_dir("run_seed_again");
  Gateway gw2 = oracle_gateway(dir2);
  SeedRunConfig cfg2 = cfg;
  cfg2.out_dir = dir2 / "seed_1";
  SeedRunResult result2 = run_seed(sc(), cfg2, gw2);
  CHECK(slurp(cfg2.out_dir / "registry.json") == slurp(cfg.out_dir / "registry.json"));
  CHECK(slurp(cfg2.out_dir / "trajectories.jsonl") == slurp(cfg.out_dir / "trajectories.jsonl"));
  CHECK(slurp(cfg2.out_dir / "replay.jsonl") == slurp(cfg.out_dir / "replay.jsonl"));

  // A different seed explores differently.
  auto dir3 = temp_dir("run_seed_other");
  Gateway gw3 = oracle_gateway(dir3);
  SeedRunConfig cfg3 = cfg;
  cfg3.out_dir = dir3 / "seed_2";
  cfg3.seed = 2;
  run_seed(sc(), cfg3, gw3);
  CHECK(slurp(cfg3.out_dir / "registry.json") != slurp(cfg.out_dir / "registry.json"));
}

TEST_CASE("an interrupted run resumes to the same final state") {
  // Control: one uninterrupted 40-episode run.
  auto control_dir = temp_dir("resume_control");
  Gateway control_gw = oracle_gateway(control_dir);
  SeedRunConfig control;
  control.agent.episodes = 40;
  control.agent.snapshot_every = 10;
  control.out_dir = control_dir / "seed_3";
  control.seed = 3;
  run_seed(sc(), control, control_gw);

  // Reconstruct the on-disk state of the same run killed between episodes 25
  // and 26: logs through episode 25 (the last line torn mid-write), snapshot
  // from episode 20. Determinism lets two shorter runs stand in for the
  // killed process.
  auto upto20_dir = temp_dir("resume_upto20");
  Gateway gw20 = oracle_gateway(upto20_dir);
  SeedRunConfig upto20 = control;
  upto20.agent.episodes = 20;
  upto20.out_dir = upto20_dir / "seed_3";
  run_seed(sc(), upto20, gw20);

  auto upto25_dir = temp_dir("resume_upto25");
  Gateway gw25 = oracle_gateway(upto25_dir);
  SeedRunConfig upto25 = control;
  upto25.agent.episodes = 25;
  upto25.out_dir = upto25_dir / "seed_3";
  run_seed(sc(), upto25, gw25);

  auto crash_dir = temp_dir("resume_crash");
  auto crashed = crash_dir / "seed_3";
  fs::create_directories(crashed);
  fs::copy_file(upto25.out_dir / "trajectories.jsonl", crashed / "trajectories.jsonl");
  fs::copy_file(upto25.out_dir / "replay.jsonl", crashed / "replay.jsonl");
  fs::copy_file(upto20.out_dir / "snapshot.json", crashed / "snapshot.json");
  {
    std::ofstream torn(crashed / "trajectories.jsonl", std::ios::app | std::ios::binary);
    torn << "{\"episode\": 26, \"plan\": {\"ki";  // killed mid-append
  }

  Gateway resume_gw = oracle_gateway(crash_dir);
  SeedRunConfig resume = control;
  resume.out_dir = crashed;
  SeedRunResult resumed = run_seed(sc(), resume, resume_gw);
  CHECK(resumed.resumed_from == 20);
  CHECK(resumed.episodes_completed == 40);

  CHECK(slurp(crashed / "registry.json") == slurp(control.out_dir / "registry.json"));
  CHECK(slurp(crashed / "trajectories.jsonl") ==
        slurp(control.out_dir / "trajectories.jsonl"));
  CHECK(slurp(crashed / "replay.jsonl") == slurp(control.out_dir / "replay.jsonl"));

  // Re-running the finished directory changes nothing.
  Gateway idem_gw = oracle_gateway(crash_dir);
  SeedRunResult again = run_seed(sc(), resume, idem_gw);
  CHECK(again.resumed_from == 40);
  CHECK(slurp(crashed / "registry.json") == slurp(control.out_dir / "registry.json"));
}

TEST_CASE("experiment driver fans seeds out over a shared cache") {
  auto out = temp_dir("experiment");
  ExperimentConfig cfg;
  cfg.agent.episodes = 8;
  cfg.agent.snapshot_every = 4;
  cfg.seeds = {1, 2, 3};
  cfg.out_dir = out;
  cfg.workers = 3;

  ExperimentResult result = run_experiment(sc(), cfg);
  REQUIRE(result.seeds.size() == 3);
  for (int seed : cfg.seeds) {
    const SeedRunResult& r = result.seeds.at(seed);
    CHECK(r.error.empty());
    CHECK(r.episodes_completed == 8);
    CHECK(r.registry.size() > 0);
    auto dir = seed_directory(out, seed);
    CHECK(fs::exists(dir / "trajectories.jsonl"));
    CHECK(fs::exists(dir / "replay.jsonl"));
    CHECK(fs::exists(dir / "registry.json"));
    CHECK(fs::exists(dir / "calls.jsonl"));
  }
  CHECK(fs::exists(out / "cache.jsonl"));
  CHECK(result.backend_calls > 0);

  // Worker count must not affect results.
  auto serial = temp_dir("experiment_serial");
  ExperimentConfig serial_cfg = cfg;
  serial_cfg.out_dir = serial;
  serial_cfg.workers = 1;
  run_experiment(sc(), serial_cfg);
  for (int seed : cfg.seeds) {
    CHECK(slurp(seed_directory(out, seed) / "registry.json") ==
          slurp(seed_directory(serial, seed) / "registry.json"));
  }
}

TEST_CASE("condition presets wire the arms correctly") {
  CHECK(condition_from_name("lma3") == Condition::Lma3);
  CHECK(condition_from_name("no_tips") == Condition::NoTips);
  CHECK(condition_from_name("no_goalgen_no_tips") == Condition::NoGoalgenNoTips);
  CHECK(condition_from_name("no_cot_no_tips") == Condition::NoCotNoTips);
  CHECK(condition_from_name("oracle_baseline") == Condition::OracleBaseline);
  CHECK_FALSE(condition_from_name("mystery").has_value());
  for (Condition c : {Condition::Lma3, Condition::NoTips, Condition::NoGoalgenNoTips,
                      Condition::NoCotNoTips, Condition::OracleBaseline})
    CHECK(condition_from_name(condition_name(c)) == c);

  AgentConfig cfg;
  apply_condition(Condition::Lma3, cfg);
  CHECK(cfg.relabel_variant == PromptVariant::RelabelCotTips);
  CHECK(cfg.reward_variant == PromptVariant::RewardCot);
  CHECK(cfg.goalgen_variant == PromptVariant::GoalGenCot);
  CHECK(cfg.use_goal_generator);
  CHECK_FALSE(cfg.oracle_components);
  CHECK(cfg.goal_pool.empty());

  apply_condition(Condition::NoTips, cfg);
  CHECK(cfg.relabel_variant == PromptVariant::RelabelCot);
  CHECK(cfg.use_goal_generator);

  apply_condition(Condition::NoGoalgenNoTips, cfg);
  CHECK(cfg.relabel_variant == PromptVariant::RelabelCot);
  CHECK_FALSE(cfg.use_goal_generator);

  apply_condition(Condition::NoCotNoTips, cfg);
  CHECK(cfg.relabel_variant == PromptVariant::RelabelBase);
  CHECK(cfg.reward_variant == PromptVariant::RewardBase);
  CHECK(cfg.goalgen_variant == PromptVariant::GoalGenBase);
  CHECK(cfg.use_goal_generator);

  apply_condition(Condition::OracleBaseline, cfg);
  CHECK(cfg.oracle_components);
  CHECK_FALSE(cfg.use_goal_generator);
  REQUIRE(cfg.goal_pool.size() == 69);
  for (const auto& g : cfg.goal_pool) CHECK(g == canonical_goal(g));
}

TEST_CASE("oracle baseline bootstraps from the pool without gateway calls") {
  auto dir = temp_dir("baseline");
  Gateway gw = oracle_gateway(dir);
  SeedRunConfig cfg;
  apply_condition(Condition::OracleBaseline, cfg.agent);
  cfg.agent.episodes = 12;
  cfg.agent.snapshot_every = 6;
  cfg.out_dir = dir / "seed_1";
  cfg.seed = 1;

  SeedRunResult result = run_seed(sc(), cfg, gw);
  CHECK(result.error.empty());
  CHECK(gw.backend_calls() == 0);  // ground-truth components bypass the LM
  CHECK(result.registry.size() > 0);

  std::set<std::string> pool(cfg.agent.goal_pool.begin(), cfg.agent.goal_pool.end());
  auto lines = jsonl_lines(cfg.out_dir / "trajectories.jsonl");
  REQUIRE(lines.size() == 12);
  CHECK(lines[0]["plan"]["kind"] == "random");
  for (size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i]["plan"]["kind"] == "bootstrap");
    CHECK(pool.count(lines[i]["plan"]["main_goal"].get<std::string>()) == 1);
  }
}
