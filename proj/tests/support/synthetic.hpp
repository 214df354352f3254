#pragma once

// Constructed corpora shared by the unit and acceptance suites.

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sptk/annotate.hpp"
#include "sptk/core.hpp"
#include "sptk/embeddings.hpp"
#include "sptk/eval.hpp"
#include "sptk/extract.hpp"

namespace support {

inline std::string fixture(const std::string& name) { return std::string(SPTK_FIXTURE_DIR) + "/" + name; }

// Two verbs, each attested with its own two nouns only.
struct Planted {
  sptk::Lexicon lexicon;
  std::vector<sptk::SPPair> instances;  // 1,000 dobj instances
  std::vector<sptk::SPPair> positives;  // the four planted pairs
};

inline Planted planted_corpus() {
  using sptk::Relation;
  using sptk::SPPair;
  Planted p{sptk::Lexicon({"alpha", "beta"}, {"x", "y", "u", "v"}, {}), {}, {}};
  p.positives = {SPPair(Relation::Dobj, "alpha", "x"), SPPair(Relation::Dobj, "alpha", "y"),
                 SPPair(Relation::Dobj, "beta", "u"), SPPair(Relation::Dobj, "beta", "v")};
  for (int i = 0; i < 250; ++i) {
    for (const auto& q : p.positives) p.instances.push_back(q);
  }
  return p;
}

// Three verbs over three noun classes. Each verb is attested with two nouns
// of its own class and one frequent noun of another class (noise). Gold marks
// every in-class noun plausible and every out-of-class noun implausible.
struct Discrepancy {
  sptk::Lexicon lexicon;
  sptk::CountTable counts;
  sptk::EmbeddingTable embeddings{3};
  sptk::GoldSet gold;
  std::vector<sptk::SPPair> test_pairs;  // every attested pair
};

inline Discrepancy discrepancy_scenario() {
  using sptk::Relation;
  using sptk::SPPair;
  Discrepancy d;
  const std::vector<std::pair<std::string, std::vector<double>>> vectors = {
      {"apple", {1.0, 0.10, 0.05}}, {"bread", {0.95, 0.05, 0.10}}, {"rice", {1.0, 0.0, 0.15}},
      {"soup", {0.9, 0.15, 0.0}},   {"water", {0.05, 1.0, 0.1}},   {"milk", {0.1, 0.95, 0.0}},
      {"tea", {0.0, 1.0, 0.05}},    {"juice", {0.15, 0.9, 0.1}},   {"book", {0.1, 0.0, 1.0}},
      {"letter", {0.0, 0.1, 0.95}}, {"novel", {0.05, 0.05, 1.0}},  {"poem", {0.1, 0.1, 0.9}}};
  std::set<std::string> nouns;
  for (const auto& [w, v] : vectors) {
    d.embeddings.add(w, Eigen::Map<const Eigen::VectorXd>(v.data(), 3));
    nouns.insert(w);
  }
  d.lexicon = sptk::Lexicon({"eat", "drink", "read"}, nouns, {});

  const std::vector<std::tuple<std::string, std::string, int>> attested = {
      {"eat", "apple", 50},  {"eat", "bread", 5},  {"eat", "book", 30},
      {"drink", "water", 40}, {"drink", "milk", 3}, {"drink", "letter", 20},
      {"read", "book", 40},  {"read", "poem", 2},  {"read", "soup", 15}};
  for (const auto& [h, n, c] : attested) {
    d.counts.add(SPPair(Relation::Dobj, h, n), c);
    d.test_pairs.emplace_back(Relation::Dobj, h, n);
  }

  const std::vector<std::tuple<std::string, std::string, double>> gold = {
      {"eat", "apple", 9.5},    {"eat", "bread", 9.25},   {"eat", "rice", 8.75},
      {"eat", "soup", 8.5},     {"eat", "water", 2.0},    {"eat", "milk", 2.5},
      {"eat", "tea", 1.5},      {"eat", "juice", 2.25},   {"eat", "book", 0.25},
      {"eat", "letter", 0.0},   {"eat", "novel", 0.5},    {"eat", "poem", 0.75},
      {"drink", "water", 9.75}, {"drink", "milk", 9.5},   {"drink", "tea", 9.25},
      {"drink", "juice", 9.0},  {"drink", "apple", 1.0},  {"drink", "bread", 0.5},
      {"drink", "rice", 0.25},  {"drink", "soup", 3.5},   {"drink", "book", 0.0},
      {"drink", "letter", 0.25}, {"drink", "novel", 0.0}, {"drink", "poem", 0.5},
      {"read", "book", 9.75},   {"read", "novel", 9.5},   {"read", "poem", 9.0},
      {"read", "letter", 9.25}, {"read", "apple", 0.0},   {"read", "bread", 0.25},
      {"read", "rice", 0.5},    {"read", "soup", 0.25},   {"read", "water", 0.0},
      {"read", "milk", 0.5},    {"read", "tea", 0.75},    {"read", "juice", 0.25}};
  for (const auto& [h, n, v] : gold) d.gold.add(SPPair(Relation::Dobj, h, n), sptk::Plausibility(v));
  return d;
}

// Three annotators over five dobj pairs with partial overlap: a rates all
// five, b the first four, c the last four.
inline std::vector<sptk::RawRating> three_annotators() {
  using sptk::Relation;
  using sptk::SPPair;
  const std::vector<std::string> deps = {"meal", "apple", "stone", "idea", "cloud"};
  const std::vector<std::tuple<std::string, std::size_t, int>> table = {
      {"a", 0, 5}, {"a", 1, 4}, {"a", 2, 2}, {"a", 3, 1}, {"a", 4, 3},
      {"b", 0, 4}, {"b", 1, 5}, {"b", 2, 1}, {"b", 3, 2},
      {"c", 1, 4}, {"c", 2, 3}, {"c", 3, 1}, {"c", 4, 1}};
  std::vector<sptk::RawRating> out;
  for (const auto& [who, d, r] : table) {
    out.push_back({who, SPPair(Relation::Dobj, "eat", deps[d]), r, false, {}});
  }
  return out;
}

}  // namespace support
