// Experiment driver: multi-seed runs, evaluation, the interaction-free
// finetune sweep, diversity reports and replay verification, all over the
// per-seed artifact layout written by the agent loop.

#include "lma3/agent.hpp"
#include "lma3/diversity.hpp"
#include "lma3/evaluation.hpp"
#include "lma3/goal_text.hpp"
#include "lma3/oracle_eval.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace lma3;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

// "1..5", "2,4,9" or a single number; duplicates collapse, order kept.
std::vector<int> parse_seed_spec(const std::string& spec) {
  std::vector<int> seeds;
  auto add = [&seeds](int s) {
    if (s < 0) throw std::invalid_argument("seed must be non-negative: " + std::to_string(s));
    if (std::find(seeds.begin(), seeds.end(), s) == seeds.end()) seeds.push_back(s);
  };
  std::stringstream parts(spec);
  std::string token;
  while (std::getline(parts, token, ',')) {
    if (token.empty()) continue;
    size_t dots = token.find("..");
    try {
      if (dots == std::string::npos) {
        add(std::stoi(token));
      } else {
        int lo = std::stoi(token.substr(0, dots));
        int hi = std::stoi(token.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("descending seed range: " + token);
        for (int s = lo; s <= hi; ++s) add(s);
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad seed spec token: " + token);
    }
  }
  if (seeds.empty()) throw std::invalid_argument("seed spec names no seeds: " + spec);
  return seeds;
}

// A run directory holds seed_<n> subdirectories; a seed directory holds the
// artifacts directly. Either is accepted wherever a run is expected.
std::vector<fs::path> find_seed_dirs(const fs::path& run) {
  if (fs::exists(run / "registry.json") || fs::exists(run / "trajectories.jsonl"))
    return {run};
  std::vector<std::pair<long, fs::path>> found;
  if (fs::is_directory(run)) {
    for (const auto& entry : fs::directory_iterator(run)) {
      if (!entry.is_directory()) continue;
      std::string name = entry.path().filename().string();
      if (name.rfind("seed_", 0) != 0) continue;
      try {
        found.emplace_back(std::stol(name.substr(5)), entry.path());
      } catch (const std::exception&) {
      }
    }
  }
  if (found.empty())
    throw std::runtime_error("no run artifacts under " + run.string() +
                             " (expected registry.json or seed_* directories)");
  std::sort(found.begin(), found.end());
  std::vector<fs::path> dirs;
  dirs.reserve(found.size());
  for (auto& [seed, path] : found) dirs.push_back(path);
  return dirs;
}

int seed_of_dir(const fs::path& dir) {
  std::string name = dir.filename().string();
  if (name.rfind("seed_", 0) == 0) {
    try {
      return std::stoi(name.substr(5));
    } catch (const std::exception&) {
    }
  }
  return 0;
}

GoalRegistry load_registry(const fs::path& file) {
  return GoalRegistry::from_json(read_file(file));
}

struct BackendChoice {
  std::shared_ptr<Backend> backend;
  GatewayMode mode = GatewayMode::Normal;
};

BackendChoice choose_backend(const std::string& name, const Scenario& sc) {
  if (name == "oracle") return {std::make_shared<OracleBackend>(sc), GatewayMode::Normal};
  if (name == "cache-replay")
    // Replay never consults the backend; any backend serves as a placeholder.
    return {std::make_shared<OracleBackend>(sc), GatewayMode::CacheOnly};
  if (name == "remote") {
    const char* base = std::getenv("LMA3_API_BASE");
    if (base == nullptr || *base == '\0')
      throw std::invalid_argument("backend remote needs LMA3_API_BASE");
    HttpConfig http;
    http.base_url = base;
    if (const char* key = std::getenv("LMA3_API_KEY")) http.api_key = key;
    return {std::make_shared<HttpBackend>(std::move(http)), GatewayMode::Normal};
  }
  throw std::invalid_argument("unknown backend: " + name +
                              " (expected oracle, remote or cache-replay)");
}

std::string default_model(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("LMA3_MODEL"); env != nullptr && *env != '\0') return env;
  return "oracle";
}

std::string fixed6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// ---------------------------------------------------------------- run ----

struct RunOptions {
  std::string config_file;
  std::string condition = "lma3";
  std::string seeds = "1";
  int episodes = 2000;
  std::string backend = "oracle";
  std::string model;
  std::string out;
  std::string cache;
  int workers = 4;
  double epsilon = 0.2;
  int bootstrap_episodes = 4000;
  int max_instructions = 60;
  int snapshot_every = 100;
  int max_tokens = 1024;
  int progress_every = 1;
};

// Config file values fill in anything the command line left at its default.
void merge_config_file(const CLI::App* cmd, RunOptions& opts) {
  if (opts.config_file.empty()) return;
  json doc = json::parse(read_file(opts.config_file));
  auto unset = [cmd](const std::string& flag) { return cmd->count(flag) == 0; };
  auto take_str = [&](const char* key, const char* flag, std::string& into) {
    if (doc.contains(key) && unset(flag)) into = doc.at(key).get<std::string>();
  };
  auto take_int = [&](const char* key, const char* flag, int& into) {
    if (doc.contains(key) && unset(flag)) into = doc.at(key).get<int>();
  };
  take_str("condition", "--condition", opts.condition);
  if (doc.contains("seeds") && unset("--seeds")) {
    if (doc.at("seeds").is_array()) {
      std::string joined;
      for (const auto& s : doc.at("seeds")) {
        if (!joined.empty()) joined += ',';
        joined += std::to_string(s.get<int>());
      }
      opts.seeds = joined;
    } else {
      opts.seeds = doc.at("seeds").get<std::string>();
    }
  }
  take_int("episodes", "--episodes", opts.episodes);
  take_str("backend", "--backend", opts.backend);
  take_str("model", "--model", opts.model);
  take_str("out", "--out", opts.out);
  take_str("cache", "--cache", opts.cache);
  take_int("workers", "--workers", opts.workers);
  if (doc.contains("epsilon") && unset("--epsilon")) opts.epsilon = doc.at("epsilon").get<double>();
  take_int("bootstrap_episodes", "--bootstrap-episodes", opts.bootstrap_episodes);
  take_int("max_instructions", "--max-instructions", opts.max_instructions);
  take_int("snapshot_every", "--snapshot-every", opts.snapshot_every);
  take_int("max_tokens", "--max-tokens", opts.max_tokens);
  take_int("progress_every", "--progress-every", opts.progress_every);
}

int cmd_run(const CLI::App* cmd, RunOptions opts) {
  merge_config_file(cmd, opts);
  if (opts.out.empty()) {
    std::cerr << "run: --out is required (flag or config file)\n";
    return 1;
  }
  auto condition = condition_from_name(opts.condition);
  if (!condition) {
    std::cerr << "run: unknown condition " << opts.condition << "\n";
    return 1;
  }

  Scenario sc = default_scenario();
  ExperimentConfig cfg;
  apply_condition(*condition, cfg.agent);
  cfg.agent.episodes = opts.episodes;
  cfg.agent.epsilon = opts.epsilon;
  cfg.agent.bootstrap_episodes = opts.bootstrap_episodes;
  cfg.agent.max_instructions = opts.max_instructions;
  cfg.agent.snapshot_every = opts.snapshot_every;
  cfg.agent.max_tokens = opts.max_tokens;
  cfg.agent.model = default_model(opts.model);
  cfg.seeds = parse_seed_spec(opts.seeds);
  cfg.out_dir = opts.out;
  if (!opts.cache.empty()) cfg.cache_file = opts.cache;
  BackendChoice backend = choose_backend(opts.backend, sc);
  cfg.backend = backend.backend;
  cfg.mode = backend.mode;
  cfg.workers = opts.workers;
  cfg.progress_every = opts.progress_every;
  cfg.progress = &std::cout;

  fs::create_directories(cfg.out_dir);
  {
    nlohmann::ordered_json effective;
    effective["condition"] = opts.condition;
    effective["seeds"] = cfg.seeds;
    effective["episodes"] = opts.episodes;
    effective["backend"] = opts.backend;
    effective["model"] = cfg.agent.model;
    effective["epsilon"] = opts.epsilon;
    effective["bootstrap_episodes"] = opts.bootstrap_episodes;
    effective["max_instructions"] = opts.max_instructions;
    effective["snapshot_every"] = opts.snapshot_every;
    effective["max_tokens"] = opts.max_tokens;
    write_file(cfg.out_dir / "config.json", effective.dump(2) + "\n");
  }

  ExperimentResult result = run_experiment(sc, cfg);
  bool failed = false;
  for (int seed : cfg.seeds) {
    const SeedRunResult& r = result.seeds.at(seed);
    if (!r.error.empty()) {
      std::cerr << "seed " << seed << " failed: " << r.error << "\n";
      failed = true;
      continue;
    }
    std::cout << "seed " << seed << ": episodes=" << r.episodes_completed
              << " goals=" << r.registry.size();
    if (r.resumed_from > 0) std::cout << " (resumed after episode " << r.resumed_from << ")";
    std::cout << "\n";
  }
  std::cout << "backend calls: " << result.backend_calls << "\n";
  return failed ? 1 : 0;
}

// --------------------------------------------------------------- eval ----

struct EvalOptions {
  std::string run;
  std::string judge = "oracle";
  std::string goals = "eval";  // eval = the 69-goal set, self = the registry's own goals
  int sample_cap = 200;
  int sample_seed = 1;
  std::string backend = "oracle";
  std::string model;
  std::string cache;
  bool finetuned = false;
  std::string confusion_csv;
};

int cmd_eval(const EvalOptions& opts) {
  if (!opts.confusion_csv.empty()) {
    ConfusionReport rep = confusion_from_csv(read_file(opts.confusion_csv));
    std::cout << "samples: " << rep.true_positives + rep.false_positives + rep.true_negatives +
                     rep.false_negatives
              << " (TP " << rep.true_positives << ", FP " << rep.false_positives << ", TN "
              << rep.true_negatives << ", FN " << rep.false_negatives << ")\n";
    std::cout << "false positive rate: " << fixed6(rep.false_positive_rate) << "\n";
    std::cout << "false negative rate: " << fixed6(rep.false_negative_rate) << "\n";
    if (opts.run.empty()) return 0;
  }
  if (opts.run.empty()) {
    std::cerr << "eval: --run is required unless only --confusion is used\n";
    return 1;
  }

  Scenario sc = default_scenario();
  auto seed_dirs = find_seed_dirs(opts.run);
  const std::string registry_file = opts.finetuned ? "registry_finetuned.json" : "registry.json";
  const std::string report_file =
      opts.goals == "self" ? "success_report_self.csv" : "success_report.csv";

  std::shared_ptr<ResponseCache> cache;
  BackendChoice backend;
  if (opts.judge == "lm") {
    fs::path cache_file =
        opts.cache.empty() ? fs::path(opts.run) / "cache.jsonl" : fs::path(opts.cache);
    cache = std::make_shared<ResponseCache>(cache_file);
    backend = choose_backend(opts.backend, sc);
  } else if (opts.judge != "oracle") {
    std::cerr << "eval: unknown judge " << opts.judge << " (expected oracle or lm)\n";
    return 1;
  }

  double rate_sum = 0;
  for (const fs::path& dir : seed_dirs) {
    GoalRegistry reg = load_registry(dir / registry_file);
    std::vector<std::string> goals;
    if (opts.goals == "self") {
      std::mt19937 rng(static_cast<std::mt19937::result_type>(opts.sample_seed));
      goals = sample_goals(reg.goal_texts(), static_cast<size_t>(std::max(0, opts.sample_cap)),
                           rng);
    } else {
      goals = evaluation_goals();
    }

    SuccessReport report;
    if (opts.judge == "lm") {
      GatewayOptions gw_opts;
      gw_opts.audit_path = dir / "eval_calls.jsonl";
      Gateway gw(cache, backend.backend, std::move(gw_opts));
      LmJudgeConfig judge;
      judge.model = default_model(opts.model);
      report = evaluate_success_lm(sc, reg, goals, gw, judge, seed_of_dir(dir));
    } else {
      report = evaluate_success(sc, reg, goals);
    }

    write_file(dir / report_file, success_report_csv(report));
    std::cout << dir.filename().string() << ": success " << fixed6(report.success_rate) << " ("
              << report.achieved_count << "/" << report.rows.size() << ")\n";
    rate_sum += report.success_rate;
  }
  std::cout << "mean success: " << fixed6(rate_sum / static_cast<double>(seed_dirs.size()))
            << " over " << seed_dirs.size() << " seed(s)\n";
  return 0;
}

// ----------------------------------------------------------- finetune ----

// Share of the 69 evaluation goals the registry has a verified sequence for.
// Every entry was confirmed by the reward judge at insert time and the world
// is deterministic, so coverage equals replayed success without spending a
// single environment step here.
double eval_coverage(const GoalRegistry& reg) {
  int covered = 0;
  for (const auto& goal : evaluation_goals())
    if (reg.contains(canonical_goal(goal))) covered++;
  return static_cast<double>(covered) / static_cast<double>(evaluation_goals().size());
}

int cmd_finetune(const std::string& run) {
  Scenario sc = default_scenario();
  auto seed_dirs = find_seed_dirs(run);

  std::ostringstream csv;
  csv << "seed,goals_before,goals_after,success_before,success_after\n";
  for (const fs::path& dir : seed_dirs) {
    GoalRegistry before = load_registry(dir / "registry.json");
    auto archive = load_trajectory_archive(dir / "trajectories.jsonl");
    GoalRegistry after = oracle_finetune(sc, archive, before);
    write_file(dir / "registry_finetuned.json", after.to_json());

    double cov_before = eval_coverage(before);
    double cov_after = eval_coverage(after);
    csv << seed_of_dir(dir) << ',' << before.size() << ',' << after.size() << ','
        << fixed6(cov_before) << ',' << fixed6(cov_after) << '\n';
    std::cout << dir.filename().string() << ": goals " << before.size() << " -> " << after.size()
              << ", success " << fixed6(cov_before) << " -> " << fixed6(cov_after) << "\n";
  }

  fs::path report_dir = seed_dirs.size() == 1 ? seed_dirs[0] : fs::path(run);
  write_file(report_dir / "finetune_report.csv", csv.str());
  return 0;
}

// ------------------------------------------------------------- report ----

struct SeedAnalysis {
  std::string condition;
  int seed = 0;
  std::set<std::string> goals;
  DiversityReport diversity;
  double unique_ratio = 0.0;
  std::optional<double> unique_novelty;
};

void write_timeseries(const fs::path& seed_dir, std::vector<std::string>& final_goals) {
  std::ifstream in(seed_dir / "trajectories.jsonl", std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + (seed_dir / "trajectories.jsonl").string());

  std::ostringstream csv;
  csv << "episode,n_goals,d0,d1,h_index,conjunction_ratio,category_ratio\n";
  std::set<std::string> seen;
  std::vector<std::string> goals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception&) {
      continue;  // torn tail
    }
    for (const auto& v : doc.at("verified")) {
      std::string goal = v.at("goal").get<std::string>();
      if (seen.insert(goal).second) goals.push_back(goal);
    }
    DiversityReport row = diversity_report(goals);
    csv << doc.at("episode").get<long>() << ',' << row.n_goals << ',' << fixed6(row.d0) << ','
        << fixed6(row.d1) << ',' << row.h_index << ',' << fixed6(row.conjunction_ratio) << ','
        << fixed6(row.category_ratio) << '\n';
  }
  write_file(seed_dir / "diversity_timeseries.csv", csv.str());
  final_goals = std::move(goals);
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& values) {
  if (values.empty()) return {};
  double sum = 0;
  for (double v : values) sum += v;
  double mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

int cmd_report(std::vector<std::string> runs, const std::string& out) {
  // Same directory twice would double-count seeds in the uniqueness pool.
  std::vector<fs::path> run_dirs;
  for (const auto& r : runs) {
    fs::path canon = fs::weakly_canonical(r);
    if (std::find(run_dirs.begin(), run_dirs.end(), canon) == run_dirs.end())
      run_dirs.push_back(canon);
  }

  std::vector<SeedAnalysis> seeds;
  std::map<std::string, std::set<std::string>> per_seed_sets;
  for (const fs::path& run : run_dirs) {
    std::string condition = run.filename().string();
    for (const fs::path& dir : find_seed_dirs(run)) {
      SeedAnalysis a;
      a.condition = condition;
      a.seed = seed_of_dir(dir);
      std::vector<std::string> goals;
      write_timeseries(dir, goals);
      a.goals = std::set<std::string>(goals.begin(), goals.end());
      a.diversity = diversity_report(goals);
      per_seed_sets[condition + "/seed_" + std::to_string(a.seed)] = a.goals;
      seeds.push_back(std::move(a));
    }
  }

  // Uniqueness is judged against every seed of every condition given here.
  if (per_seed_sets.size() >= 2) {
    auto uniqueness = unique_goals(per_seed_sets);
    std::vector<std::string> corpus;
    for (const auto& [key, set] : per_seed_sets) corpus.insert(corpus.end(), set.begin(), set.end());
    TrigramEmbedder embedder;
    for (auto& a : seeds) {
      const SeedUniqueness& u = uniqueness.at(a.condition + "/seed_" + std::to_string(a.seed));
      a.unique_ratio = u.ratio;
      if (corpus.size() >= 2) a.unique_novelty = mean_unique_novelty(u.unique, corpus, embedder);
    }
  }

  for (const fs::path& run : run_dirs) {
    std::string condition = run.filename().string();
    std::ostringstream csv;
    csv << "seed,n_goals,n_unique,unique_ratio,mean_unique_novelty\n";
    for (const auto& a : seeds) {
      if (a.condition != condition) continue;
      size_t n_unique = static_cast<size_t>(std::lround(a.unique_ratio * a.goals.size()));
      csv << a.seed << ',' << a.goals.size() << ',' << n_unique << ',' << fixed6(a.unique_ratio)
          << ',';
      if (a.unique_novelty.has_value()) csv << fixed6(*a.unique_novelty);
      csv << '\n';
    }
    write_file(run / "uniqueness.csv", csv.str());
  }

  // Cross-condition aggregate table.
  struct Metric {
    const char* name;
    std::optional<double> (*get)(const SeedAnalysis&);
  };
  const Metric metrics[] = {
      {"n_goals",
       [](const SeedAnalysis& a) {
         return std::optional<double>(static_cast<double>(a.diversity.n_goals));
       }},
      {"d0", [](const SeedAnalysis& a) { return std::optional<double>(a.diversity.d0); }},
      {"d1", [](const SeedAnalysis& a) { return std::optional<double>(a.diversity.d1); }},
      {"h_index",
       [](const SeedAnalysis& a) {
         return std::optional<double>(static_cast<double>(a.diversity.h_index));
       }},
      {"conjunction_ratio",
       [](const SeedAnalysis& a) { return std::optional<double>(a.diversity.conjunction_ratio); }},
      {"category_ratio",
       [](const SeedAnalysis& a) { return std::optional<double>(a.diversity.category_ratio); }},
      {"unique_ratio", [](const SeedAnalysis& a) { return std::optional<double>(a.unique_ratio); }},
      // Seeds with no unique goals have no novelty to average; they are left
      // out rather than counted as zero.
      {"unique_novelty", [](const SeedAnalysis& a) { return a.unique_novelty; }},
  };

  std::vector<std::string> conditions;
  for (const fs::path& run : run_dirs) conditions.push_back(run.filename().string());

  std::ostringstream csv;
  csv << "condition,metric,mean,std\n";
  std::ostringstream table;
  table << std::left << std::setw(22) << "condition";
  for (const Metric& m : metrics) table << std::setw(20) << m.name;
  table << '\n';
  for (const std::string& condition : conditions) {
    table << std::left << std::setw(22) << condition;
    for (const Metric& m : metrics) {
      std::vector<double> values;
      for (const auto& a : seeds)
        if (a.condition == condition)
          if (auto v = m.get(a)) values.push_back(*v);
      MeanStd ms = mean_std(values);
      csv << condition << ',' << m.name << ',' << fixed6(ms.mean) << ',' << fixed6(ms.std) << '\n';
      char cell[64];
      std::snprintf(cell, sizeof(cell), "%.2f±%.2f", ms.mean, ms.std);
      table << std::setw(20) << cell;
    }
    table << '\n';
  }

  fs::create_directories(out);
  write_file(fs::path(out) / "report.csv", csv.str());
  std::cout << table.str();
  return 0;
}

// ------------------------------------------------------------- replay ----

int cmd_replay(const std::string& run) {
  Scenario sc = default_scenario();
  long bad_records = 0;
  for (const fs::path& dir : find_seed_dirs(run)) {
    long records = 0, mismatches = 0;
    fs::path replay_file = dir / "replay.jsonl";
    if (fs::exists(replay_file)) {
      std::ifstream in(replay_file, std::ios::binary);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec;
        try {
          rec = json::parse(line);
        } catch (const json::exception&) {
          continue;
        }
        records++;
        Environment env(sc);
        env.reset();
        bool ok = rec.at("actions").size() == rec.at("observations").size();
        for (size_t i = 0; ok && i < rec.at("actions").size(); ++i) {
          StepResult r = env.step(rec.at("actions")[i].get<std::string>());
          if (r.observation != rec.at("observations")[i].get<std::string>()) ok = false;
        }
        if (!ok) {
          mismatches++;
          std::cerr << dir.filename().string() << ": replay mismatch for goal "
                    << rec.value("goal", std::string("?")) << " (episode "
                    << rec.value("episode", 0L) << ")\n";
        }
      }
    }

    long sequences = 0, unconfirmed = 0;
    fs::path registry_file = dir / "registry.json";
    if (fs::exists(registry_file)) {
      GoalRegistry reg = load_registry(registry_file);
      for (const auto& [goal, entry] : reg.entries()) {
        sequences++;
        ReplayCheck check = replay_and_check(sc, entry.actions, goal);
        if (!check.achieved) unconfirmed++;
      }
    }

    std::cout << dir.filename().string() << ": " << records << " replay records ("
              << mismatches << " mismatched), " << sequences << " registry sequences ("
              << unconfirmed << " not confirmed by the ground-truth judge)\n";
    bad_records += mismatches;
  }
  return bad_records > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autotelic kitchen-world agent: runs, evaluation and reports"};
  app.require_subcommand(1);

  RunOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "Run episodes for one or more seeds");
  run->add_option("--config", run_opts.config_file, "JSON config file; flags override it");
  run->add_option("--condition", run_opts.condition,
                  "lma3 | no_tips | no_goalgen_no_tips | no_cot_no_tips | oracle_baseline");
  run->add_option("--seeds", run_opts.seeds, "Seed list: 1..5 or 1,2,3 (default 1)");
  run->add_option("--episodes", run_opts.episodes, "Episodes per seed");
  run->add_option("--backend", run_opts.backend, "oracle | remote | cache-replay");
  run->add_option("--model", run_opts.model, "Model id (default $LMA3_MODEL or oracle)");
  run->add_option("--out", run_opts.out, "Output directory");
  run->add_option("--cache", run_opts.cache, "Response cache file (default <out>/cache.jsonl)");
  run->add_option("--workers", run_opts.workers, "Parallel seeds");
  run->add_option("--epsilon", run_opts.epsilon, "Final-sequence truncation probability");
  run->add_option("--bootstrap-episodes", run_opts.bootstrap_episodes,
                  "Episodes before the goal generator activates");
  run->add_option("--max-instructions", run_opts.max_instructions,
                  "Registry goals offered to the goal generator");
  run->add_option("--snapshot-every", run_opts.snapshot_every, "Checkpoint cadence in episodes");
  run->add_option("--max-tokens", run_opts.max_tokens, "Completion budget per call");
  run->add_option("--progress-every", run_opts.progress_every,
                  "Progress line cadence (0 silences)");

  EvalOptions eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "Replay registries against goal sets");
  eval->add_option("--run", eval_opts.run, "Run directory (or a single seed directory)");
  eval->add_option("--judge", eval_opts.judge, "oracle | lm");
  eval->add_option("--goals", eval_opts.goals,
                   "eval = the 69 hand-coded goals, self = the registry's own goals");
  eval->add_option("--sample-cap", eval_opts.sample_cap, "Self-eval sample size cap");
  eval->add_option("--sample-seed", eval_opts.sample_seed, "Self-eval sample seed");
  eval->add_option("--backend", eval_opts.backend, "Backend for the lm judge");
  eval->add_option("--model", eval_opts.model, "Model id for the lm judge");
  eval->add_option("--cache", eval_opts.cache, "Cache file for the lm judge");
  eval->add_flag("--finetuned", eval_opts.finetuned, "Evaluate registry_finetuned.json");
  eval->add_option("--confusion", eval_opts.confusion_csv,
                   "human,model CSV; prints false positive/negative rates");

  std::string finetune_run;
  CLI::App* finetune = app.add_subcommand(
      "finetune", "Mine archived trajectories with the ground-truth relabeler");
  finetune->add_option("--run", finetune_run, "Run directory")->required();

  std::vector<std::string> report_runs;
  std::string report_out = ".";
  CLI::App* report = app.add_subcommand("report", "Diversity and uniqueness tables");
  report->add_option("--runs", report_runs, "Run directories, one per condition")->required();
  report->add_option("--out", report_out, "Directory for the cross-condition report");

  std::string replay_run;
  CLI::App* replay = app.add_subcommand("replay", "Verify logged replays against the world");
  replay->add_option("--run", replay_run, "Run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run, run_opts);
    if (eval->parsed()) return cmd_eval(eval_opts);
    if (finetune->parsed()) return cmd_finetune(finetune_run);
    if (report->parsed()) return cmd_report(report_runs, report_out);
    if (replay->parsed()) return cmd_replay(replay_run);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
