#include "lma3/agent.hpp"

#include "lma3/goal_text.hpp"
#include "lma3/oracle_eval.hpp"
#include "lma3/sampling.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lma3 {

using nlohmann::json;
using nlohmann::ordered_json;

const char* plan_kind_name(PlanKind k) {
  switch (k) {
    case PlanKind::Random: return "random";
    case PlanKind::Bootstrap: return "bootstrap";
    case PlanKind::Generated: return "generated";
  }
  return "random";
}

namespace {

EpisodePlan bootstrap_pick(const GoalRegistry& reg, const AgentConfig& cfg, std::mt19937& rng) {
  if (!cfg.goal_pool.empty()) {
    const auto& pool = cfg.goal_pool;
    return {PlanKind::Bootstrap, pool[uniform_index(rng, pool.size())], {}, false};
  }
  if (reg.size() == 0) return {PlanKind::Random, "", {}, false};
  auto texts = reg.goal_texts();
  return {PlanKind::Bootstrap, texts[uniform_index(rng, texts.size())], {}, false};
}

}  // namespace

EpisodePlan select_plan(int episode, const GoalRegistry& reg, const AgentConfig& cfg,
                        const Trajectory* last_traj, Gateway* gw, std::mt19937& rng, int seed) {
  if (episode <= 1) return {PlanKind::Random, "", {}, false};

  bool generator_phase = cfg.use_goal_generator && episode > cfg.bootstrap_episodes;
  if (!generator_phase) return bootstrap_pick(reg, cfg, rng);
  if (reg.size() == 0 || gw == nullptr || last_traj == nullptr || last_traj->steps.empty())
    return bootstrap_pick(reg, cfg, rng);

  auto texts = reg.goal_texts();
  size_t want = std::min<size_t>({static_cast<size_t>(std::max(1, cfg.max_instructions)),
                                  texts.size(), 60});
  std::vector<std::string> instructions;
  instructions.reserve(want);
  for (size_t i : sample_indices(rng, texts.size(), want)) instructions.push_back(texts[i]);

  ChatRequest req;
  req.model = cfg.model;
  req.messages = {{"user", render_goalgen_prompt(cfg.goalgen_variant, *last_traj, instructions)}};
  req.temperature = cfg.goalgen_temperature;
  req.max_tokens = cfg.max_tokens;
  req.oracle.role = OracleRole::Goalgen;
  req.oracle.instructions = instructions;

  ChatResponse res = gw->complete(req, {"goalgen", episode, seed});
  if (auto proposal = parse_goalgen_response(res.content, instructions))
    return {PlanKind::Generated, proposal->goal, proposal->subgoals, false};

  EpisodePlan fallback = bootstrap_pick(reg, cfg, rng);
  fallback.goalgen_fallback = true;
  return fallback;
}

Trajectory execute_plan(Environment& env, const EpisodePlan& plan, GoalRegistry& reg,
                        const AgentConfig& cfg, std::mt19937& rng, long episode,
                        ExecutionStats* stats) {
  Trajectory traj;
  traj.episode = episode;
  traj.initial_observation = env.reset();

  std::vector<std::string> script;
  size_t final_segment = 0;
  if (plan.kind == PlanKind::Bootstrap) {
    if (const SkillEntry* e = reg.find(plan.main_goal)) {
      script = e->actions;
      final_segment = script.size();
    }
  } else if (plan.kind == PlanKind::Generated) {
    for (const auto& sg : plan.subgoals) {
      const SkillEntry* e = reg.find(sg);
      if (e == nullptr || e->actions.empty()) continue;
      script.insert(script.end(), e->actions.begin(), e->actions.end());
      final_segment = e->actions.size();
    }
  }

  bool truncated = false;
  if (final_segment > 0 && unit_draw(rng) < cfg.epsilon) {
    // Keep a uniform prefix of the last sequence; at least one action drops.
    size_t keep = uniform_index(rng, final_segment);
    script.resize(script.size() - final_segment + keep);
    truncated = true;
  }

  size_t executed = 0;
  for (const auto& action : script) {
    if (env.done()) break;
    StepResult r = env.step(action);
    traj.steps.push_back({action, r.observation, r.events});
    reg.count_occurrence(action);
    executed++;
  }

  size_t tail = 0;
  std::vector<double> weights;
  while (!env.done()) {
    auto options = env.admissible();
    weights.clear();
    weights.reserve(options.size());
    for (const auto& a : options)
      weights.push_back(1.0 / static_cast<double>(std::max(1L, reg.occurrence(a))));
    const std::string& action = options[weighted_index(rng, weights)];
    StepResult r = env.step(action);
    traj.steps.push_back({action, r.observation, r.events});
    reg.count_occurrence(action);
    tail++;
  }

  if (stats != nullptr) *stats = {script.size(), executed, tail, truncated};
  return traj;
}

namespace {

std::vector<std::string> action_prefix(const Trajectory& traj, int step) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(step));
  for (int i = 0; i < step; ++i) out.push_back(traj.steps[static_cast<size_t>(i)].action);
  return out;
}

void append_replay_record(std::ostream& out, const Trajectory& traj, const VerifiedGoal& v) {
  ordered_json rec;
  rec["episode"] = traj.episode;
  rec["goal"] = v.goal;
  rec["source"] = v.source;
  rec["step"] = v.step;
  ordered_json actions = ordered_json::array();
  ordered_json observations = ordered_json::array();
  ordered_json rewards = ordered_json::array();
  for (int i = 0; i < v.step; ++i) {
    const auto& s = traj.steps[static_cast<size_t>(i)];
    actions.push_back(s.action);
    observations.push_back(s.observation);
    rewards.push_back(i + 1 == v.step ? 1 : 0);
  }
  rec["actions"] = std::move(actions);
  rec["observations"] = std::move(observations);
  rec["rewards"] = std::move(rewards);
  out << rec.dump() << "\n";
  out.flush();
}

}  // namespace

EpisodeOutcome process_episode(const Scenario& sc, const Trajectory& traj,
                               const EpisodePlan& plan, const AgentConfig& cfg,
                               GoalRegistry& reg, Gateway* gw, int seed,
                               std::ostream* replay_log) {
  if (!cfg.oracle_components && gw == nullptr)
    throw std::invalid_argument("process_episode: LM components need a gateway");

  EpisodeOutcome out;
  const int episode = static_cast<int>(traj.episode);

  if (cfg.oracle_components) {
    out.candidates = oracle_relabel(sc, traj);
  } else {
    ChatRequest req;
    req.model = cfg.model;
    req.messages = {{"user", render_relabel_prompt(cfg.relabel_variant, traj)}};
    req.temperature = cfg.relabel_temperature;
    req.max_tokens = cfg.max_tokens;
    req.oracle.role = OracleRole::Relabel;
    req.oracle.events = all_events(traj);
    out.candidates = parse_relabel_response(gw->complete(req, {"relabel", episode, seed}).content);
  }

  // One judgement batch: main goal first, then subgoals, then candidates.
  // Duplicates keep their first (highest-priority) source.
  struct Item {
    std::string goal;
    std::string source;
  };
  std::vector<Item> items;
  auto push_unique = [&items](const std::string& goal, const char* source) {
    if (goal.empty()) return;
    for (const auto& it : items)
      if (same_goal(it.goal, goal)) return;
    items.push_back({canonical_goal(goal), source});
  };
  if (plan.kind != PlanKind::Random) push_unique(plan.main_goal, "main");
  for (const auto& sg : plan.subgoals) push_unique(sg, "subgoal");
  for (const auto& c : out.candidates) push_unique(c.description, "relabel");
  if (items.empty()) return out;

  std::vector<std::string> goals;
  goals.reserve(items.size());
  for (const auto& it : items) goals.push_back(it.goal);

  std::vector<RewardVerdict> verdicts;
  if (cfg.oracle_components) {
    verdicts = oracle_reward(sc, traj, goals);
  } else {
    ChatRequest req;
    req.model = cfg.model;
    req.messages = {{"user", render_reward_prompt(cfg.reward_variant, traj, goals)}};
    req.temperature = cfg.reward_temperature;
    req.max_tokens = cfg.max_tokens;
    req.oracle.role = OracleRole::Reward;
    req.oracle.events = all_events(traj);
    req.oracle.goals = goals;
    verdicts =
        parse_reward_response(gw->complete(req, {"reward", episode, seed}).content, goals);
  }

  for (size_t i = 0; i < items.size(); ++i) {
    const RewardVerdict& v = verdicts[i];
    if (!v.achieved || !v.step.has_value()) continue;
    int step = *v.step;
    if (step < 1 || static_cast<size_t>(step) > traj.steps.size()) continue;  // bogus claim

    const Item& item = items[i];
    if (item.source == "subgoal") {
      reg.record_achievement(item.goal);
    } else {
      if (!reg.contains(item.goal)) out.new_goals++;
      reg.upsert(item.goal, action_prefix(traj, step), episode);
      reg.record_achievement(item.goal);
    }
    if (item.source == "main") out.main_achieved = true;

    VerifiedGoal verified{item.goal, step, item.source};
    if (replay_log != nullptr) append_replay_record(*replay_log, traj, verified);
    out.verified.push_back(std::move(verified));
  }
  return out;
}

namespace {

std::mutex progress_mu;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

// Drops log lines from episodes after `keep`, plus any partial tail line a
// killed process left behind.
void truncate_jsonl(const std::filesystem::path& path, long keep) {
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path, std::ios::binary);
  std::string line;
  std::string kept;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      json doc = json::parse(line);
      if (doc.at("episode").get<long>() > keep) continue;
    } catch (const json::exception&) {
      continue;
    }
    kept += line;
    kept += '\n';
  }
  in.close();
  atomic_write(path, kept);
}

std::optional<Trajectory> last_logged_trajectory(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  std::string line;
  std::string last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  if (last.empty()) return std::nullopt;
  try {
    json doc = json::parse(last);
    return trajectory_from_json(doc.at("trajectory").dump());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_snapshot(const std::filesystem::path& path, int episode, const std::mt19937& rng,
                    const GoalRegistry& reg) {
  std::ostringstream rng_state;
  rng_state << rng;
  ordered_json doc;
  doc["episode"] = episode;
  doc["rng"] = rng_state.str();
  doc["registry"] = ordered_json::parse(reg.to_json());
  atomic_write(path, doc.dump(2) + "\n");
}

}  // namespace

SeedRunResult run_seed(const Scenario& sc, const SeedRunConfig& cfg, Gateway& gw) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const fs::path traj_path = cfg.out_dir / "trajectories.jsonl";
  const fs::path replay_path = cfg.out_dir / "replay.jsonl";
  const fs::path snapshot_path = cfg.out_dir / "snapshot.json";
  const fs::path registry_path = cfg.out_dir / "registry.json";

  SeedRunResult result;
  GoalRegistry reg;
  std::mt19937 rng(static_cast<std::mt19937::result_type>(cfg.seed));
  int start = 1;
  std::optional<Trajectory> last_traj;

  if (fs::exists(snapshot_path)) {
    json snap = json::parse(read_file(snapshot_path));
    int at = snap.at("episode").get<int>();
    if (at >= 1) {
      reg = GoalRegistry::from_json(snap.at("registry").dump());
      std::istringstream state(snap.at("rng").get<std::string>());
      state >> rng;
      truncate_jsonl(traj_path, at);
      truncate_jsonl(replay_path, at);
      last_traj = last_logged_trajectory(traj_path);
      start = at + 1;
      result.resumed_from = at;
    }
  }

  std::ofstream traj_out(traj_path, std::ios::binary | std::ios::app);
  std::ofstream replay_out(replay_path, std::ios::binary | std::ios::app);
  Environment env(sc);

  for (int episode = start; episode <= cfg.agent.episodes; ++episode) {
    EpisodePlan plan = select_plan(episode, reg, cfg.agent,
                                   last_traj.has_value() ? &*last_traj : nullptr, &gw, rng,
                                   cfg.seed);
    ExecutionStats stats;
    Trajectory traj = execute_plan(env, plan, reg, cfg.agent, rng, episode, &stats);
    EpisodeOutcome outcome =
        process_episode(sc, traj, plan, cfg.agent, reg, &gw, cfg.seed, &replay_out);

    ordered_json line;
    line["episode"] = episode;
    line["plan"] = {{"kind", plan_kind_name(plan.kind)},
                    {"main_goal", plan.main_goal},
                    {"subgoals", plan.subgoals},
                    {"goalgen_fallback", plan.goalgen_fallback}};
    line["truncated"] = stats.truncated;
    ordered_json verified = ordered_json::array();
    for (const auto& v : outcome.verified)
      verified.push_back({{"goal", v.goal}, {"source", v.source}, {"step", v.step}});
    line["verified"] = std::move(verified);
    line["trajectory"] = ordered_json::parse(trajectory_to_json(traj));
    traj_out << line.dump() << "\n";
    traj_out.flush();

    last_traj = std::move(traj);
    if (cfg.agent.snapshot_every > 0 && episode % cfg.agent.snapshot_every == 0)
      write_snapshot(snapshot_path, episode, rng, reg);

    if (cfg.progress != nullptr && cfg.progress_every > 0 &&
        episode % cfg.progress_every == 0) {
      std::lock_guard<std::mutex> lock(progress_mu);
      *cfg.progress << "[seed " << cfg.seed << "] episode " << episode << "/"
                    << cfg.agent.episodes << " goals=" << reg.size()
                    << " lm_calls=" << gw.backend_calls() << "\n";
      cfg.progress->flush();
    }
  }

  if (start <= cfg.agent.episodes) write_snapshot(snapshot_path, cfg.agent.episodes, rng, reg);
  atomic_write(registry_path, reg.to_json());

  result.episodes_completed = std::max(cfg.agent.episodes, result.resumed_from);
  result.registry = std::move(reg);
  return result;
}

std::filesystem::path seed_directory(const std::filesystem::path& root, int seed) {
  return root / ("seed_" + std::to_string(seed));
}

ExperimentResult run_experiment(const Scenario& sc, const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  fs::path cache_file = cfg.cache_file.empty() ? cfg.out_dir / "cache.jsonl" : cfg.cache_file;
  auto cache = std::make_shared<ResponseCache>(cache_file);
  std::shared_ptr<Backend> backend =
      cfg.backend != nullptr ? cfg.backend : std::make_shared<OracleBackend>(sc);

  ExperimentResult result;
  std::mutex result_mu;
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < cfg.seeds.size();) {
      int seed = cfg.seeds[i];
      fs::path dir = seed_directory(cfg.out_dir, seed);
      fs::create_directories(dir);

      GatewayOptions options;
      options.mode = cfg.mode;
      options.audit_path = dir / "calls.jsonl";
      options.jitter_seed = static_cast<std::uint64_t>(seed);
      Gateway gw(cache, backend, std::move(options));

      SeedRunConfig seed_cfg{cfg.agent, dir, seed, cfg.progress_every, cfg.progress};
      SeedRunResult seed_result;
      try {
        seed_result = run_seed(sc, seed_cfg, gw);
      } catch (const std::exception& e) {
        seed_result.error = e.what();  // snapshots stay behind for a resume
      }

      std::lock_guard<std::mutex> lock(result_mu);
      result.backend_calls += gw.backend_calls();
      result.seeds[seed] = std::move(seed_result);
    }
  };

  size_t thread_count = std::min<size_t>(std::max(1, cfg.workers), cfg.seeds.size());
  std::vector<std::thread> threads;
  threads.reserve(thread_count);
  for (size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return result;
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::Lma3: return "lma3";
    case Condition::NoTips: return "no_tips";
    case Condition::NoGoalgenNoTips: return "no_goalgen_no_tips";
    case Condition::NoCotNoTips: return "no_cot_no_tips";
    case Condition::OracleBaseline: return "oracle_baseline";
  }
  return "lma3";
}

std::optional<Condition> condition_from_name(const std::string& name) {
  for (Condition c : {Condition::Lma3, Condition::NoTips, Condition::NoGoalgenNoTips,
                      Condition::NoCotNoTips, Condition::OracleBaseline})
    if (name == condition_name(c)) return c;
  return std::nullopt;
}

void apply_condition(Condition c, AgentConfig& cfg) {
  cfg.oracle_components = false;
  cfg.use_goal_generator = true;
  cfg.goal_pool.clear();
  switch (c) {
    case Condition::Lma3:
      cfg.relabel_variant = PromptVariant::RelabelCotTips;
      cfg.reward_variant = PromptVariant::RewardCot;
      cfg.goalgen_variant = PromptVariant::GoalGenCot;
      break;
    case Condition::NoTips:
      cfg.relabel_variant = PromptVariant::RelabelCot;
      cfg.reward_variant = PromptVariant::RewardCot;
      cfg.goalgen_variant = PromptVariant::GoalGenCot;
      break;
    case Condition::NoGoalgenNoTips:
      cfg.relabel_variant = PromptVariant::RelabelCot;
      cfg.reward_variant = PromptVariant::RewardCot;
      cfg.use_goal_generator = false;
      break;
    case Condition::NoCotNoTips:
      cfg.relabel_variant = PromptVariant::RelabelBase;
      cfg.reward_variant = PromptVariant::RewardBase;
      cfg.goalgen_variant = PromptVariant::GoalGenBase;
      break;
    case Condition::OracleBaseline:
      cfg.oracle_components = true;
      cfg.use_goal_generator = false;
      for (const auto& g : evaluation_goals()) cfg.goal_pool.push_back(canonical_goal(g));
      break;
  }
}

}  // namespace lma3
