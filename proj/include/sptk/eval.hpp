#pragma once

#include <array>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sptk/core.hpp"
#include "sptk/scorers.hpp"

namespace sptk {

struct GoldEntry {
  SPPair pair;
  Plausibility plausibility;
};

// Human plausibility judgements, unique per pair, kept in insertion order.
class GoldSet {
 public:
  // Throws Error(DuplicatePair) if the pair is already present.
  void add(const SPPair& pair, Plausibility plausibility);

  const std::vector<GoldEntry>& entries() const { return entries_; }
  std::vector<GoldEntry> relation(Relation r) const;
  std::optional<double> find(const SPPair& pair) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // The gold plausibilities as a lookup scorer.
  TableModel as_model() const;

 private:
  std::vector<GoldEntry> entries_;
  std::unordered_map<SPPair, std::size_t, SPPairHash> index_;
};

inline constexpr const char* kGoldHeader = "#sp10k v1";

// `relation<TAB>head<TAB>dependent<TAB>plausibility` with a `#sp10k v1`
// header. Errors carry the offending line number.
GoldSet load_gold(const std::string& path);
void save_gold(const GoldSet& gold, const std::string& path,
               const std::vector<std::pair<std::string, std::string>>& metadata = {});

enum class PairOrder {
  // nsubj, amod and nsubj_amod lines list the dependent first ("people eat",
  // "fresh air"); dobj and dobj_amod list the head first ("ask question").
  Natural,
  HeadFirst,
};

// Converts a directory of per-relation files (`dobj.txt`, `nsubj_amod.txt`, or
// the same stems with an `_annotation` suffix), each line holding two words
// and a 0-10 score separated by whitespace, into a GoldSet.
GoldSet import_sp10k(const std::string& directory, PairOrder order = PairOrder::Natural);

enum class MissingPolicy { Drop, Floor };
std::string_view to_string(MissingPolicy p);
MissingPolicy parse_missing_policy(std::string_view name);

struct RelationReport {
  Relation relation;
  std::size_t pairs = 0;    // gold pairs for this relation
  std::size_t scored = 0;   // pairs the model did not abstain on
  double coverage = 0.0;    // scored / pairs
  std::optional<double> rho;       // under the report's policy
  std::optional<double> rho_drop;  // always over scored pairs only
  std::optional<double> rho_floor;
};

struct EvalReport {
  MissingPolicy policy = MissingPolicy::Floor;
  std::vector<RelationReport> relations;  // canonical relation order, gold relations only
  // Unweighted mean of the defined per-relation rho values.
  std::optional<double> overall;
  std::size_t relations_in_overall = 0;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Scores for every gold pair of one relation, with missing values imputed as
// (minimum observed score - 1). Returns nullopt if nothing was scored.
std::optional<std::vector<double>> floor_imputed_scores(const ScoreModel& model,
                                                        std::span<const GoldEntry> entries);

EvalReport evaluate(const ScoreModel& model, const GoldSet& gold,
                    MissingPolicy policy = MissingPolicy::Floor);

// Paired bootstrap: resample aligned positions with replacement and recompute
// delta = rho(a, gold) - rho(b, gold). Returns the one-sided p-value for "a is
// better", counting a zero delta as half. Resamples with a constant vector
// are discarded. Throws Error(InsufficientData) for fewer than 10 pairs.
double significance(std::span<const double> model_a, std::span<const double> model_b,
                    std::span<const double> gold, std::size_t resamples, std::uint64_t seed);

// Mean over positives of 1 (positive scored higher than a random confounder
// of the same part of speech), 0.5 (tie or a missing score) or 0.
double pseudo_disambiguation(const ScoreModel& model, std::span<const SPPair> test_pairs,
                             const Lexicon& vocabulary, std::uint64_t seed);

}  // namespace sptk
