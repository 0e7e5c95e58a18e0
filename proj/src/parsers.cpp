#include "lma3/prompts.hpp"

#include "lma3/goal_text.hpp"

#include <algorithm>
#include <cctype>

// Completions come back from a sampled language model, so none of this can
// assume well-formed input. The rule throughout: salvage what matches the
// requested format, drop the rest, never throw.

namespace lma3 {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  lines.push_back(current);
  return lines;
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool contains_ci(const std::string& haystack, const std::string& lowered_needle) {
  return lowercase_copy(haystack).find(lowered_needle) != std::string::npos;
}

// Last run of digits in the string, if any.
std::optional<int> last_integer(const std::string& s) {
  int value = 0;
  bool found = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t j = i;
      long v = 0;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        v = v * 10 + (s[j] - '0');
        if (v > 1000000) v = 1000000;
        ++j;
      }
      value = static_cast<int>(v);
      found = true;
      i = j - 1;
    }
  }
  if (!found) return std::nullopt;
  return value;
}

// Index of the line after the last line that ends with "Answer:", or 0.
size_t after_answer_marker(const std::vector<std::string>& lines) {
  size_t start = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string t = trim(lines[i]);
    if (t == "Answer:" || (t.size() >= 7 && t.compare(t.size() - 7, 7, "Answer:") == 0))
      start = i + 1;
  }
  return start;
}

size_t longest_common_substring(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  size_t best = 0;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::vector<RelabeledGoal> parse_relabel_response(const std::string& response) {
  std::vector<std::string> lines = split_lines(response);
  size_t start = after_answer_marker(lines);

  std::vector<RelabeledGoal> out;
  std::vector<std::string> seen;  // lowercased descriptions
  bool first_candidate = true;
  for (size_t i = start; i < lines.size() && out.size() < 10; ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) continue;
    // Reasoning that never reached an "Answer:" line is not a goal list.
    if (lowercase_copy(line).rfind("reasoning", 0) == 0 ||
        lowercase_copy(line).rfind("let's think", 0) == 0)
      continue;
    bool dashed = line[0] == '-';
    if (dashed) line = trim(line.substr(1));
    // The base prompt ends with a dangling "-", so the first line of the
    // completion legitimately arrives without its dash.
    if (!dashed && !first_candidate) continue;
    first_candidate = false;
    if (line.empty()) continue;

    // Find the last parenthesised group mentioning a step.
    size_t group_open = std::string::npos, group_close = std::string::npos;
    for (size_t open = line.find('('); open != std::string::npos;
         open = line.find('(', open + 1)) {
      size_t close = line.find(')', open + 1);
      if (close == std::string::npos) break;
      if (contains_ci(line.substr(open, close - open + 1), "step")) {
        group_open = open;
        group_close = close;
      }
    }
    if (group_open == std::string::npos) continue;
    auto step = last_integer(line.substr(group_open, group_close - group_open + 1));
    if (!step || *step <= 0) continue;

    std::string description = canonical_goal(line.substr(0, group_open));
    if (description.empty()) continue;
    std::string key = lowercase_copy(description);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    out.push_back({description, *step});
  }
  return out;
}

std::vector<RewardVerdict> parse_reward_response(const std::string& response,
                                                 const std::vector<std::string>& goals) {
  struct Candidate {
    std::string prefix;  // text before the reasoning/answer, for matching
    RewardVerdict verdict;
  };
  std::vector<Candidate> candidates;
  for (const std::string& raw : split_lines(response)) {
    size_t anchor = raw.rfind("Answer:");
    if (anchor == std::string::npos) continue;
    std::string tail = lowercase_copy(trim(raw.substr(anchor + 7)));
    bool yes = tail.rfind("yes", 0) == 0;
    bool no = tail.rfind("no", 0) == 0;
    if (!yes && !no) continue;

    Candidate c;
    size_t cut = std::min(raw.find("Reasoning:"), raw.find("Answer:"));
    std::string prefix = trim(raw.substr(0, cut));
    if (!prefix.empty() && prefix[0] == '-') prefix = trim(prefix.substr(1));
    c.prefix = lowercase_copy(prefix);
    if (yes) {
      auto step = last_integer(tail);
      if (step && *step > 0) c.verdict = {true, *step};
      // A yes with no usable step stays un-achieved: there is no way to cut
      // a positive sub-trajectory without a completion step.
    }
    candidates.push_back(std::move(c));
  }

  std::vector<RewardVerdict> out(goals.size());
  if (candidates.size() == goals.size()) {
    for (size_t i = 0; i < goals.size(); ++i) out[i] = candidates[i].verdict;
    return out;
  }
  // Count mismatch: match each goal to the closest verdict line.
  for (size_t i = 0; i < goals.size(); ++i) {
    std::string key = lowercase_copy(canonical_goal(goals[i]));
    size_t best_len = 0, best_at = 0;
    for (size_t j = 0; j < candidates.size(); ++j) {
      size_t len = longest_common_substring(key, candidates[j].prefix);
      if (len > best_len) {
        best_len = len;
        best_at = j;
      }
    }
    if (!candidates.empty() && best_len * 2 >= key.size()) out[i] = candidates[best_at].verdict;
  }
  return out;
}

std::optional<GoalProposal> parse_goalgen_response(const std::string& response,
                                                   const std::vector<std::string>& instructions) {
  size_t region_start = 0;
  size_t anchor = response.rfind("Answer:");
  if (anchor != std::string::npos) region_start = anchor + 7;
  std::string region = response.substr(region_start);

  size_t gpos = region.find("goal:");
  if (gpos == std::string::npos) return std::nullopt;
  size_t ipos = region.find("instructions:", gpos);
  if (ipos == std::string::npos) return std::nullopt;

  std::string goal = trim(region.substr(gpos + 5, ipos - gpos - 5));
  goal = canonical_goal(goal);
  if (goal.empty()) return std::nullopt;

  std::string items = region.substr(ipos + 13);
  size_t nl = items.find('\n');
  if (nl != std::string::npos) items = items.substr(0, nl);

  GoalProposal proposal;
  proposal.goal = goal;
  size_t item_start = 0;
  while (item_start <= items.size()) {
    size_t semi = items.find(';', item_start);
    std::string item = items.substr(
        item_start, semi == std::string::npos ? std::string::npos : semi - item_start);
    size_t hash = item.rfind('#');
    if (hash != std::string::npos) {
      size_t j = hash + 1;
      long k = 0;
      bool digits = false;
      while (j < item.size() && std::isdigit(static_cast<unsigned char>(item[j]))) {
        k = k * 10 + (item[j] - '0');
        digits = true;
        ++j;
      }
      // References outside the offered list are hallucinations; drop them.
      if (digits && k >= 1 && k <= static_cast<long>(instructions.size())) {
        proposal.instruction_indices.push_back(static_cast<int>(k));
        proposal.subgoals.push_back(instructions[k - 1]);
      }
    }
    if (semi == std::string::npos) break;
    item_start = semi + 1;
  }

  if (proposal.instruction_indices.size() < 2 || proposal.instruction_indices.size() > 4)
    return std::nullopt;
  return proposal;
}

}  // namespace lma3
