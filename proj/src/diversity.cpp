#include "lma3/diversity.hpp"

#include "lma3/gateway.hpp"  // fnv1a64 for trigram hashing

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace lma3 {

namespace {

// ---- Porter stemmer -------------------------------------------------------
// Straight implementation of the 1980 algorithm; operates on lowercase words.

bool is_consonant(const std::string& w, size_t i) {
  char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
  if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

// Number of VC sequences in w[0..len).
int measure(const std::string& w, size_t len) {
  int m = 0;
  size_t i = 0;
  while (i < len && is_consonant(w, i)) ++i;
  while (i < len) {
    while (i < len && !is_consonant(w, i)) ++i;
    if (i == len) break;
    ++m;
    while (i < len && is_consonant(w, i)) ++i;
  }
  return m;
}

bool has_vowel(const std::string& w, size_t len) {
  for (size_t i = 0; i < len; ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

bool double_consonant(const std::string& w) {
  size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// consonant-vowel-consonant ending where the final consonant is not w, x, y.
bool cvc_end(const std::string& w, size_t len) {
  if (len < 3) return false;
  if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) || !is_consonant(w, len - 1))
    return false;
  char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, const char* suffix) {
  size_t n = std::string(suffix).size();
  return w.size() >= n && w.compare(w.size() - n, n, suffix) == 0;
}

// Replaces `suffix` by `replacement` when the remaining stem has measure > m.
bool replace_if_measure(std::string& w, const char* suffix, const char* replacement, int m) {
  if (!ends_with(w, suffix)) return false;
  size_t stem_len = w.size() - std::string(suffix).size();
  if (measure(w, stem_len) <= m) return true;  // matched, condition failed: stop scanning
  w = w.substr(0, stem_len) + replacement;
  return true;
}

void porter_step1(std::string& w) {
  // 1a: plurals
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (!ends_with(w, "ss") && ends_with(w, "s")) {
    w.resize(w.size() - 1);
  }

  // 1b: -eed / -ed / -ing
  bool cleanup = false;
  if (ends_with(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
  } else if (ends_with(w, "ed") && has_vowel(w, w.size() - 2)) {
    w.resize(w.size() - 2);
    cleanup = true;
  } else if (ends_with(w, "ing") && has_vowel(w, w.size() - 3)) {
    w.resize(w.size() - 3);
    cleanup = true;
  }
  if (cleanup) {
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
      w += 'e';
    } else if (double_consonant(w) && !ends_with(w, "l") && !ends_with(w, "s") &&
               !ends_with(w, "z")) {
      w.resize(w.size() - 1);
    } else if (measure(w, w.size()) == 1 && cvc_end(w, w.size())) {
      w += 'e';
    }
  }

  // 1c: y -> i after a vowel
  if (ends_with(w, "y") && has_vowel(w, w.size() - 1)) w[w.size() - 1] = 'i';
}

void porter_step2(std::string& w) {
  static const std::pair<const char*, const char*> rules[] = {
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
      {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
      {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
      {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"}};
  for (const auto& [suffix, repl] : rules)
    if (replace_if_measure(w, suffix, repl, 0)) return;
}

void porter_step3(std::string& w) {
  static const std::pair<const char*, const char*> rules[] = {
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
  for (const auto& [suffix, repl] : rules)
    if (replace_if_measure(w, suffix, repl, 0)) return;
}

void porter_step4(std::string& w) {
  static const char* suffixes[] = {"al",   "ance", "ence", "er",  "ic",  "able", "ible",
                                   "ant",  "ement", "ment", "ent", "ion", "ou",   "ism",
                                   "ate",  "iti",  "ous",  "ive", "ize"};
  for (const char* suffix : suffixes) {
    if (!ends_with(w, suffix)) continue;
    size_t stem_len = w.size() - std::string(suffix).size();
    if (std::string(suffix) == "ion" && stem_len > 0 && w[stem_len - 1] != 's' &&
        w[stem_len - 1] != 't')
      return;
    if (measure(w, stem_len) > 1) w.resize(stem_len);
    return;
  }
}

void porter_step5(std::string& w) {
  // 5a: drop a final e
  if (ends_with(w, "e")) {
    int m = measure(w, w.size() - 1);
    if (m > 1 || (m == 1 && !cvc_end(w, w.size() - 1))) w.resize(w.size() - 1);
  }
  // 5b: -ll -> -l for long words
  if (ends_with(w, "ll") && measure(w, w.size()) > 1) w.resize(w.size() - 1);
}

}  // namespace

std::string porter_stem(const std::string& word) {
  std::string w = word;
  std::transform(w.begin(), w.end(), w.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (w.size() <= 2) return w;
  porter_step1(w);
  porter_step2(w);
  porter_step3(w);
  porter_step4(w);
  porter_step5(w);
  return w;
}

std::string stem_of(const std::string& goal_text) {
  size_t i = 0;
  while (i < goal_text.size()) {
    // next token of letters/apostrophes
    while (i < goal_text.size() && !std::isalpha(static_cast<unsigned char>(goal_text[i]))) ++i;
    size_t start = i;
    while (i < goal_text.size() &&
           (std::isalpha(static_cast<unsigned char>(goal_text[i])) || goal_text[i] == '\''))
      ++i;
    if (i == start) break;
    std::string token = goal_text.substr(start, i - start);
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (token == "the" || token == "a" || token == "an") continue;
    return porter_stem(token);
  }
  return "";
}

StemDistribution stem_distribution(const std::vector<std::string>& goals) {
  StemDistribution dist;
  for (const auto& g : goals) {
    std::string stem = stem_of(g);
    if (stem.empty()) continue;
    ++dist.counts[stem];
    ++dist.total;
  }
  return dist;
}

double hill_number(const StemDistribution& dist, double q) {
  if (dist.counts.empty() || dist.total <= 0)
    throw std::invalid_argument("hill_number needs a non-empty distribution");
  if (q < 0) throw std::invalid_argument("hill_number needs q >= 0");

  if (std::abs(q - 1.0) < 1e-12) {
    double entropy = 0.0;
    for (const auto& [stem, count] : dist.counts) {
      double p = static_cast<double>(count) / static_cast<double>(dist.total);
      entropy -= p * std::log(p);
    }
    return std::exp(entropy);
  }
  double sum = 0.0;
  for (const auto& [stem, count] : dist.counts) {
    double p = static_cast<double>(count) / static_cast<double>(dist.total);
    sum += std::pow(p, q);
  }
  return std::pow(sum, 1.0 / (1.0 - q));
}

int stem_h_index(const StemDistribution& dist) {
  std::vector<long> counts;
  counts.reserve(dist.counts.size());
  for (const auto& [stem, count] : dist.counts) counts.push_back(count);
  std::sort(counts.rbegin(), counts.rend());
  int h = 0;
  for (size_t i = 0; i < counts.size(); ++i)
    if (counts[i] >= static_cast<long>(i + 1)) h = static_cast<int>(i + 1);
  return h;
}

namespace {

std::vector<std::string> words_of(const std::string& text) {
  std::vector<std::string> words;
  std::string current;
  for (char raw : text) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalpha(c)) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(current);
  return words;
}

bool has_word(const std::vector<std::string>& words, const std::string& target) {
  return std::find(words.begin(), words.end(), target) != words.end();
}

bool has_phrase(const std::vector<std::string>& words, const std::string& first,
                const std::string& second) {
  for (size_t i = 0; i + 1 < words.size(); ++i)
    if (words[i] == first && words[i + 1] == second) return true;
  return false;
}

}  // namespace

AbstractionRatios abstraction_counts(const std::vector<std::string>& goals) {
  AbstractionRatios ratios;
  if (goals.empty()) return ratios;
  long conjunction = 0;
  long category = 0;
  for (const auto& g : goals) {
    auto words = words_of(g);
    if (has_word(words, "and") || has_word(words, "two") || has_word(words, "three") ||
        has_phrase(words, "several", "times"))
      ++conjunction;
    for (const char* w : {"ingredients", "items", "container", "somewhere", "fruit",
                          "vegetable", "tool"}) {
      if (has_word(words, w)) {
        ++category;
        break;
      }
    }
  }
  ratios.conjunction = static_cast<double>(conjunction) / static_cast<double>(goals.size());
  ratios.category = static_cast<double>(category) / static_cast<double>(goals.size());
  return ratios;
}

DiversityReport diversity_report(const std::vector<std::string>& goals) {
  DiversityReport report;
  report.n_goals = static_cast<long>(goals.size());
  StemDistribution dist = stem_distribution(goals);
  if (!dist.counts.empty()) {
    report.d0 = hill_number(dist, 0.0);
    report.d1 = hill_number(dist, 1.0);
    report.h_index = stem_h_index(dist);
  }
  AbstractionRatios ratios = abstraction_counts(goals);
  report.conjunction_ratio = ratios.conjunction;
  report.category_ratio = ratios.category;
  return report;
}

std::map<std::string, SeedUniqueness> unique_goals(
    const std::map<std::string, std::set<std::string>>& per_seed) {
  if (per_seed.size() < 2)
    throw std::invalid_argument("uniqueness needs at least two seeds");
  std::map<std::string, SeedUniqueness> out;
  for (const auto& [seed, goals] : per_seed) {
    SeedUniqueness u;
    for (const auto& g : goals) {
      bool elsewhere = false;
      for (const auto& [other, other_goals] : per_seed) {
        if (other == seed) continue;
        if (other_goals.count(g)) {
          elsewhere = true;
          break;
        }
      }
      if (!elsewhere) u.unique.insert(g);
    }
    u.ratio = goals.empty()
                  ? 0.0
                  : static_cast<double>(u.unique.size()) / static_cast<double>(goals.size());
    out[seed] = u;
  }
  return out;
}

std::vector<double> TrigramEmbedder::embed(const std::string& text) const {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::vector<double> v(kDimensions, 0.0);
  if (lower.size() < 3) {
    v[fnv1a64(lower) % kDimensions] += 1.0;
  } else {
    for (size_t i = 0; i + 3 <= lower.size(); ++i)
      v[fnv1a64(std::string_view(lower).substr(i, 3)) % kDimensions] += 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0)
    for (double& x : v) x /= norm;
  return v;
}

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cosine_distance needs equal dimensions");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 1.0;
  double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
  cosine = std::clamp(cosine, -1.0, 1.0);
  return 1.0 - cosine;
}

double novelty(const std::string& goal, const std::vector<std::string>& corpus,
               const EmbeddingProvider& embedder) {
  if (corpus.size() < 2) throw std::invalid_argument("novelty needs a corpus of at least 2");
  std::vector<double> g = embedder.embed(goal);
  double best = 2.0;
  bool skipped_self = false;
  bool compared = false;
  for (const auto& other : corpus) {
    if (!skipped_self && other == goal) {
      skipped_self = true;  // one exact occurrence is the goal itself
      continue;
    }
    compared = true;
    best = std::min(best, cosine_distance(g, embedder.embed(other)));
  }
  if (!compared) throw std::invalid_argument("novelty needs a neighbour to compare against");
  return best;
}

std::optional<double> mean_unique_novelty(const std::set<std::string>& unique,
                                          const std::vector<std::string>& corpus,
                                          const EmbeddingProvider& embedder) {
  if (unique.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& g : unique) sum += novelty(g, corpus, embedder);
  return sum / static_cast<double>(unique.size());
}

}  // namespace lma3
