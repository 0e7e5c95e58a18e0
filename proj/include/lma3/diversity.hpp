#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lma3 {

// Repertoire analysis for discovered goals: stem-level diversity indices,
// abstraction-word ratios, cross-seed uniqueness, and embedding novelty.

// Classic Porter suffix stripping for a single lowercase word.
std::string porter_stem(const std::string& word);

// Stem of the first content word: lowercases, drops leading articles and
// punctuation, Porter-stems the first remaining token. Empty input or
// article-only input yields an empty stem.
std::string stem_of(const std::string& goal_text);

struct StemDistribution {
  std::map<std::string, long> counts;
  long total = 0;
};

StemDistribution stem_distribution(const std::vector<std::string>& goals);

// Hill diversity of order q over stem frequencies. q=0 counts stems, q=1 is
// exp of Shannon entropy, larger q leans on abundant stems. Throws
// std::invalid_argument for an empty distribution or q < 0.
double hill_number(const StemDistribution& dist, double q);

// Largest h such that at least h stems each cover at least h goals.
int stem_h_index(const StemDistribution& dist);

struct AbstractionRatios {
  double conjunction = 0.0;  // "and", "two", "three", "several times"
  double category = 0.0;     // "ingredients", "items", "container", ...
};

AbstractionRatios abstraction_counts(const std::vector<std::string>& goals);

struct DiversityReport {
  long n_goals = 0;
  double d0 = 0.0;
  double d1 = 0.0;
  int h_index = 0;
  double conjunction_ratio = 0.0;
  double category_ratio = 0.0;
};

DiversityReport diversity_report(const std::vector<std::string>& goals);

struct SeedUniqueness {
  std::set<std::string> unique;  // goals no other seed discovered
  double ratio = 0.0;            // |unique| / |seed's goals|, 0 for empty seeds
};

// Per-seed goals nobody else found, over every provided seed/condition set.
std::map<std::string, SeedUniqueness> unique_goals(
    const std::map<std::string, std::set<std::string>>& per_seed);

// Deterministic sentence embedding: hashed character trigrams, 512
// dimensions, unit length. Pluggable so a remote encoder can replace it.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<double> embed(const std::string& text) const = 0;
};

class TrigramEmbedder : public EmbeddingProvider {
 public:
  static constexpr size_t kDimensions = 512;
  std::vector<double> embed(const std::string& text) const override;
};

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b);

// Distance from `goal` to its nearest neighbour in `corpus`, skipping one
// exact occurrence of the goal itself. Throws std::invalid_argument when
// fewer than two entries are available to compare against.
double novelty(const std::string& goal, const std::vector<std::string>& corpus,
               const EmbeddingProvider& embedder);

// Mean novelty of a seed's unique goals against the full corpus; nullopt when
// the seed has no unique goals.
std::optional<double> mean_unique_novelty(const std::set<std::string>& unique,
                                          const std::vector<std::string>& corpus,
                                          const EmbeddingProvider& embedder);

}  // namespace lma3
