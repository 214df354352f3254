#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sptk/core.hpp"

namespace sptk {

struct RawRating {
  std::string annotator_id;
  SPPair pair;
  int rating = 3;  // 1..5
  bool is_checkpoint = false;
  std::set<int> checkpoint_expected;  // non-empty iff is_checkpoint

  // Throws Error(MalformedInput) when the invariants above do not hold.
  void validate() const;
};

// CSV: annotator_id,relation,head,dependent,rating,is_checkpoint,expected
// with `expected` as `|`-joined integers (empty unless a checkpoint). A first
// line starting with "annotator_id" is treated as a header.
std::vector<RawRating> load_ratings(const std::string& path);
void save_ratings(std::span<const RawRating> ratings, const std::string& path);

inline constexpr std::size_t kSurveyPairs = 100;
inline constexpr std::size_t kSurveyCheckpoints = 3;

struct SurveyQuestion {
  SPPair pair;
  std::string text;
  bool is_checkpoint = false;
};

struct Survey {
  Relation relation;
  std::vector<SurveyQuestion> questions;

  nlohmann::json to_json() const;
};

// The question wording for one pair.
std::string question_text(const SPPair& pair);

// The five answer options, best first: "Perfectly match (5)" .. "It's not
// applicable at all (1)".
const std::vector<std::string>& rating_options();

// 100 pairs plus 3 checkpoints, all of one relation, in a seeded random order.
Survey generate_survey(std::span<const SPPair> pairs, std::span<const SPPair> checkpoints,
                       std::uint64_t seed);

struct Rejection {
  std::string annotator_id;
  std::string reason;
};

struct FilterResult {
  std::vector<RawRating> kept;
  std::vector<Rejection> rejected;  // sorted by annotator id
};

// A rule inspects all ratings of one annotator and returns a reason to reject.
using AnnotatorRule =
    std::function<std::optional<std::string>(std::span<const RawRating> ratings)>;

// Rejects an annotator who answered any checkpoint outside its expected set.
AnnotatorRule checkpoint_rule();
// Rejects an annotator whose non-checkpoint ratings for some relation (one
// survey covers one relation) are all identical across at least
// `min_ratings` questions.
AnnotatorRule zero_variance_rule(std::size_t min_ratings = 2);

std::vector<AnnotatorRule> default_rules();

FilterResult filter_annotations(std::span<const RawRating> ratings,
                                const std::vector<AnnotatorRule>& rules = default_rules());

// (mean - 1) * 2.5, mapping the 1-5 scale onto 0-10.
double scale_rating(double mean_rating);

struct Aggregation {
  std::map<SPPair, double> plausibility;       // pairs with enough ratings
  std::map<SPPair, std::size_t> insufficient;  // pair -> number of ratings
};

// Averages the non-checkpoint ratings of each pair.
Aggregation aggregate(std::span<const RawRating> kept, std::size_t min_ratings = 10);

struct IaaResult {
  std::map<Relation, double> per_relation;
  std::map<Relation, std::size_t> annotators;  // annotators that contributed
  // Unweighted mean of the per-relation values.
  double overall = 0.0;

  nlohmann::json to_json() const;
};

// Leave-one-out agreement: for each annotator, Spearman between their
// ratings and the mean rating of all other annotators on the same pairs,
// averaged over annotators. Annotators with fewer than two shared pairs, or
// with a constant side, are left out. Throws Error(InsufficientData) if no
// relation has a usable annotator.
IaaResult iaa(std::span<const RawRating> kept);

// Agreement over one set of ratings regardless of relation; nullopt if no
// annotator is usable.
std::optional<double> leave_one_out_agreement(std::span<const RawRating> ratings,
                                              std::size_t* annotators_used = nullptr);

}  // namespace sptk
