#include "lma3/gateway.hpp"
#include "lma3/oracle_eval.hpp"
#include "lma3/trajectory.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace lma3 {

const char* oracle_role_name(OracleRole role) {
  switch (role) {
    case OracleRole::Relabel: return "relabel";
    case OracleRole::Reward: return "reward";
    case OracleRole::Goalgen: return "goalgen";
  }
  return "relabel";
}

namespace {

// Mirrors the LM relabeler's cap: the first ten distinct achievements, each
// formatted the way the few-shot examples teach the model to answer.
std::string scripted_relabel(const Scenario& sc, const std::vector<GroundEvent>& events) {
  std::ostringstream out;
  std::set<std::string> seen;
  for (const auto& e : events) {
    std::string desc = describe_event(sc, e);
    if (!seen.insert(desc).second) continue;
    out << "- " << desc << " (step " << e.step << ").\n";
    if (seen.size() == 10) break;
  }
  return out.str();
}

std::string scripted_reward(const Scenario& sc, const OracleContext& ctx) {
  std::ostringstream out;
  for (const auto& goal : ctx.goals) {
    std::string echo = goal;
    if (echo.empty() || (echo.back() != '.' && echo.back() != '!' && echo.back() != '?'))
      echo += '.';
    auto step = oracle_completion_step(sc, goal, ctx.events);
    if (step)
      out << "- " << echo << " Answer: yes (step " << *step << ").\n";
    else
      out << "- " << echo << " Answer: no.\n";
  }
  return out.str();
}

std::string scripted_goalgen(const OracleContext& ctx, std::uint64_t seed) {
  size_t n = ctx.instructions.size();
  if (n == 0) return "Answer: goal: none. instructions: none.";

  std::mt19937_64 rng(seed);
  size_t want = 2 + rng() % 3;  // 2..4 subgoals
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<size_t> picks;
  for (size_t i = 0; i < n && picks.size() < want; ++i) picks.push_back(order[i]);
  while (picks.size() < 2) picks.push_back(picks.empty() ? 0 : picks.back());

  std::ostringstream composed;
  for (size_t i = 0; i < picks.size(); ++i) {
    if (i) composed << ", then ";
    composed << ctx.instructions[picks[i]];
  }

  std::ostringstream out;
  out << "Answer: goal: " << composed.str() << ". instructions: ";
  for (size_t i = 0; i < picks.size(); ++i) {
    if (i) out << "; ";
    out << ctx.instructions[picks[i]] << " (#" << picks[i] + 1 << ")";
  }
  out << ".";
  return out.str();
}

}  // namespace

std::string oracle_complete(const Scenario& sc, OracleRole role, const OracleContext& ctx,
                            std::uint64_t sample_seed) {
  switch (role) {
    case OracleRole::Relabel: return scripted_relabel(sc, ctx.events);
    case OracleRole::Reward: return scripted_reward(sc, ctx);
    case OracleRole::Goalgen: return scripted_goalgen(ctx, sample_seed);
  }
  return "";
}

ChatResponse OracleBackend::complete(const ChatRequest& req) {
  if (!req.oracle.role)
    throw GatewayError("oracle backend called without an oracle role", false);
  std::uint64_t seed = fnv1a64(request_fingerprint(req));
  ChatResponse res;
  res.content = oracle_complete(sc_, *req.oracle.role, req.oracle, seed);
  res.backend_tag = "oracle";
  size_t chars = res.content.size();
  for (const auto& m : req.messages) chars += m.content.size();
  res.token_estimate = static_cast<int>(chars / 4);
  return res;
}

}  // namespace lma3
