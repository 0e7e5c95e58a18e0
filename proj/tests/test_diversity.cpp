#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lma3/diversity.hpp"
#include "lma3/oracle_eval.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace lma3;

TEST_CASE("porter stemmer reference words") {
  const std::pair<const char*, const char*> cases[] = {
      {"caresses", "caress"}, {"ponies", "poni"},       {"ties", "ti"},
      {"caress", "caress"},   {"cats", "cat"},          {"feed", "feed"},
      {"agreed", "agre"},     {"plastered", "plaster"}, {"bled", "bled"},
      {"motoring", "motor"},  {"sing", "sing"},         {"conflated", "conflat"},
      {"troubled", "troubl"}, {"sized", "size"},       {"hopping", "hop"},
      {"tanned", "tan"},      {"falling", "fall"},      {"hissing", "hiss"},
      {"fizzed", "fizz"},     {"failing", "fail"},      {"filing", "file"},
      {"happy", "happi"},     {"sky", "sky"},           {"relational", "relat"},
      {"conditional", "condit"}, {"rational", "ration"}, {"feudalism", "feudal"},
      {"effective", "effect"}, {"hopeful", "hope"},     {"goodness", "good"},
      {"formative", "form"},  {"adoption", "adopt"},    {"adjustable", "adjust"},
      {"defensible", "defens"}, {"irritant", "irrit"},  {"replacement", "replac"},
      {"dependent", "depend"}, {"probate", "probat"},   {"rate", "rate"},
      {"cease", "ceas"},      {"controlling", "control"}, {"roll", "roll"},
      {"cutting", "cut"},     {"roasted", "roast"},     {"slice", "slice"},
      {"sliced", "slice"},    {"dicing", "dice"},       {"grilled", "grill"},
      {"eating", "eat"},      {"cooking", "cook"},      {"preparing", "prepar"},
  };
  for (const auto& [input, expected] : cases) {
    CAPTURE(std::string(input));
    CHECK(porter_stem(input) == expected);
  }
}

TEST_CASE("stem_of takes the first content word") {
  CHECK(stem_of("cutting the apple") == "cut");
  CHECK(stem_of("Slice the red potato") == "slice");
  CHECK(stem_of("roasted a white onion") == "roast");
  CHECK(stem_of("the apple") == "appl");
  CHECK(stem_of("an open door") == "open");
  CHECK(stem_of("A    grilled potato") == "grill");
  CHECK(stem_of("  - pick up the knife") == "pick");
  CHECK(stem_of("") == "");
  CHECK(stem_of("the a an") == "");
  CHECK(stem_of("...!") == "");
}

TEST_CASE("stem_of is idempotent on the evaluation goals") {
  for (const auto& goal : evaluation_goals()) {
    CAPTURE(goal);
    std::string stem = stem_of(goal);
    CHECK_FALSE(stem.empty());
    CHECK(stem_of(stem + " the thing") == stem);
  }
}

namespace {

StemDistribution from_counts(const std::vector<long>& counts) {
  StemDistribution dist;
  for (size_t i = 0; i < counts.size(); ++i) {
    dist.counts["stem" + std::to_string(i)] = counts[i];
    dist.total += counts[i];
  }
  return dist;
}

double hill_oracle(const StemDistribution& dist, double q) {
  if (q == 1.0) {
    double h = 0.0;
    for (const auto& [s, c] : dist.counts) {
      double p = static_cast<double>(c) / dist.total;
      h -= p * std::log(p);
    }
    return std::exp(h);
  }
  double sum = 0.0;
  for (const auto& [s, c] : dist.counts) {
    double p = static_cast<double>(c) / dist.total;
    sum += std::pow(p, q);
  }
  return std::pow(sum, 1.0 / (1.0 - q));
}

int h_index_oracle(const std::vector<long>& counts) {
  int best = 0;
  for (size_t h = 1; h <= counts.size(); ++h) {
    size_t covered = 0;
    for (long c : counts)
      if (c >= static_cast<long>(h)) ++covered;
    if (covered >= h) best = static_cast<int>(h);
  }
  return best;
}

}  // namespace

TEST_CASE("hill numbers match the direct-summation oracle") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> n_stems(1, 40);
  std::uniform_int_distribution<long> count(1, 50);
  std::uniform_real_distribution<double> q_pick(0.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<long> counts(n_stems(rng));
    for (auto& c : counts) c = count(rng);
    StemDistribution dist = from_counts(counts);
    double q = q_pick(rng);
    if (std::abs(q - 1.0) < 1e-9) q = 2.0;
    CHECK(hill_number(dist, q) == doctest::Approx(hill_oracle(dist, q)).epsilon(1e-9));
  }
}

TEST_CASE("hill numbers: richness, perplexity, and the pinned example") {
  for (int k : {1, 2, 5, 17}) {
    StemDistribution uniform = from_counts(std::vector<long>(k, 3));
    for (double q : {0.0, 1.0, 2.0}) {
      CAPTURE(k);
      CAPTURE(q);
      CHECK(hill_number(uniform, q) == doctest::Approx(k).epsilon(1e-9));
    }
  }

  StemDistribution skew = from_counts({2, 1});
  CHECK(hill_number(skew, 0.0) == 2.0);
  CHECK(hill_number(skew, 1.0) == doctest::Approx(1.889882).epsilon(1e-6));
  CHECK(std::abs(hill_number(skew, 1.0) - 1.8899) < 1e-4);

  CHECK_THROWS_AS(hill_number(StemDistribution{}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hill_number(skew, -0.5), std::invalid_argument);
}

TEST_CASE("hill numbers are monotone in q and continuous at q=1") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> n_stems(2, 30);
  std::uniform_int_distribution<long> count(1, 40);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<long> counts(n_stems(rng));
    for (auto& c : counts) c = count(rng);
    StemDistribution dist = from_counts(counts);

    double prev = hill_number(dist, 0.0);
    for (double q : {0.5, 0.999999, 1.0, 1.000001, 1.5, 2.0, 3.0}) {
      double cur = hill_number(dist, q);
      CHECK(cur <= prev + 1e-9);
      prev = cur;
    }
    double at_one = hill_number(dist, 1.0);
    CHECK(std::abs(hill_number(dist, 1.0 - 1e-6) - at_one) < 1e-3);
    CHECK(std::abs(hill_number(dist, 1.0 + 1e-6) - at_one) < 1e-3);
  }
}

TEST_CASE("stem h-index") {
  CHECK(stem_h_index(from_counts({5, 4, 4, 2, 1})) == 3);
  CHECK(stem_h_index(from_counts({100})) == 1);
  CHECK(stem_h_index(from_counts({4, 4, 4, 4})) == 4);
  CHECK(stem_h_index(StemDistribution{}) == 0);

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> n_stems(1, 50);
  std::uniform_int_distribution<long> count(1, 60);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<long> counts(n_stems(rng));
    for (auto& c : counts) c = count(rng);
    CHECK(stem_h_index(from_counts(counts)) == h_index_oracle(counts));
  }
}

TEST_CASE("abstraction word ratios") {
  auto r = abstraction_counts({"cook two red ingredients"});
  CHECK(r.conjunction == 1.0);
  CHECK(r.category == 1.0);

  r = abstraction_counts({"slice the red potato"});
  CHECK(r.conjunction == 0.0);
  CHECK(r.category == 0.0);

  r = abstraction_counts({"open the container and the fridge", "open the fridge"});
  CHECK(r.conjunction == 0.5);
  CHECK(r.category == 0.5);

  // Whole words only; substrings must not count.
  r = abstraction_counts({"pick up the android", "a twofold plan", "place it somewhere"});
  CHECK(r.conjunction == 0.0);
  CHECK(r.category == doctest::Approx(1.0 / 3.0));

  r = abstraction_counts({"do it several times", "do it several good times"});
  CHECK(r.conjunction == 0.5);

  r = abstraction_counts({"THIS AND THAT"});
  CHECK(r.conjunction == 1.0);

  r = abstraction_counts({});
  CHECK(r.conjunction == 0.0);
  CHECK(r.category == 0.0);
}

TEST_CASE("per-seed unique goals") {
  std::map<std::string, std::set<std::string>> seeds = {
      {"A", {"g1", "g2"}},
      {"B", {"g2", "g3"}},
  };
  auto out = unique_goals(seeds);
  CHECK(out["A"].unique == std::set<std::string>{"g1"});
  CHECK(out["A"].ratio == 0.5);
  CHECK(out["B"].unique == std::set<std::string>{"g3"});

  std::map<std::string, std::set<std::string>> identical = {
      {"A", {"g1", "g2"}}, {"B", {"g1", "g2"}}, {"C", {"g1", "g2"}}};
  for (const auto& [seed, u] : unique_goals(identical)) {
    CHECK(u.unique.empty());
    CHECK(u.ratio == 0.0);
  }

  std::map<std::string, std::set<std::string>> disjoint = {{"A", {"g1"}}, {"B", {"g2"}}};
  for (const auto& [seed, u] : unique_goals(disjoint)) CHECK(u.ratio == 1.0);

  std::map<std::string, std::set<std::string>> with_empty = {{"A", {"g1"}}, {"B", {}}};
  CHECK(unique_goals(with_empty)["B"].ratio == 0.0);

  CHECK_THROWS_AS(unique_goals({{"A", {"g1"}}}), std::invalid_argument);
}

TEST_CASE("trigram embeddings are unit vectors") {
  TrigramEmbedder embedder;
  for (const char* text : {"slice the red potato", "a", "", "open the fridge",
                           "You are hungry! Let's cook a delicious meal."}) {
    auto v = embedder.embed(text);
    REQUIRE(v.size() == TrigramEmbedder::kDimensions);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-9);
  }
  CHECK(embedder.embed("Open The FRIDGE") == embedder.embed("open the fridge"));
}

TEST_CASE("novelty distances") {
  TrigramEmbedder embedder;

  CHECK(novelty("g", {"g", "g", "other"}, embedder) == 0.0);

  CHECK(cosine_distance(embedder.embed("same text"), embedder.embed("same text")) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cosine_distance(embedder.embed("abcde"), embedder.embed("vwxyz")) ==
        doctest::Approx(1.0).epsilon(1e-12));

  double near = novelty("slice the red potato", {"slice the red potato.", "open the fridge"},
                        embedder);
  double far = novelty("slice the red potato", {"open the fridge", "close the oven"}, embedder);
  CHECK(near < far);

  CHECK_THROWS_AS(novelty("g", {"only one"}, embedder), std::invalid_argument);

  auto mean = mean_unique_novelty({"slice the red potato"},
                                  {"slice the red potato", "open the fridge"}, embedder);
  REQUIRE(mean.has_value());
  CHECK(*mean > 0.0);
  CHECK(mean_unique_novelty({}, {"a", "b"}, embedder) == std::nullopt);
}

TEST_CASE("diversity report is permutation invariant") {
  std::vector<std::string> goals = {"slice the red potato", "slice the parsley",
                                    "open the fridge",      "open the trash can",
                                    "cook two red ingredients", "pick up the knife"};
  DiversityReport a = diversity_report(goals);

  std::mt19937 rng(3);
  std::shuffle(goals.begin(), goals.end(), rng);
  DiversityReport b = diversity_report(goals);

  CHECK(a.n_goals == b.n_goals);
  CHECK(a.d0 == b.d0);
  CHECK(a.d1 == b.d1);
  CHECK(a.h_index == b.h_index);
  CHECK(a.conjunction_ratio == b.conjunction_ratio);
  CHECK(a.category_ratio == b.category_ratio);

  CHECK(a.n_goals == 6);
  CHECK(a.d0 == 4.0);  // slice, open, cook, pick
  CHECK(a.d1 >= 1.0);
  CHECK(a.d1 <= a.d0);
  CHECK(a.h_index == 2);

  DiversityReport empty = diversity_report({});
  CHECK(empty.n_goals == 0);
  CHECK(empty.d0 == 0.0);
  CHECK(empty.h_index == 0);
}
