#pragma once

#include <array>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sptk/core.hpp"
#include "sptk/eval.hpp"

namespace sptk {

struct OMCSTriplet {
  std::vector<std::string> start;
  std::string relation;
  std::vector<std::string> end;

  // Throws Error(MalformedInput) on an empty phrase or relation.
  void validate() const;
  std::string start_text() const;
  std::string end_text() const;

  friend bool operator==(const OMCSTriplet&, const OMCSTriplet&) = default;
};

// Lowercases and splits a phrase on whitespace.
std::vector<std::string> tokenize_phrase(std::string_view phrase);

// Possible base forms of an inflected English token, the token itself first.
// Over-generates on purpose: the result is only used as a set of match keys.
std::vector<std::string> lemma_candidates(std::string_view token);

// TSV `start<TAB>relation<TAB>end`; `#` lines are comments.
std::vector<OMCSTriplet> load_omcs(const std::string& path);
void save_omcs(const std::vector<OMCSTriplet>& triplets, const std::string& path);

struct ConceptNetImportStats {
  std::size_t lines = 0;
  std::size_t kept = 0;
  std::size_t duplicates = 0;
};

// Streams a ConceptNet 5 assertions CSV (tab-separated: uri, relation, start,
// end, json info) and writes the English edges contributed through OMCS in
// the TSV format above, dropping exact duplicates.
ConceptNetImportStats import_conceptnet(const std::string& csv_path, const std::string& out_path);

enum class MatchKind { None, Partial, Exact };
std::string_view to_string(MatchKind k);

struct MatchResult {
  SPPair pair;
  MatchKind kind = MatchKind::None;
  std::optional<OMCSTriplet> witness;
};

// Immutable after construction.
class OMCSIndex {
 public:
  explicit OMCSIndex(std::vector<OMCSTriplet> triplets, bool lemmatize = true);

  const std::vector<OMCSTriplet>& triplets() const { return triplets_; }
  bool lemmatize() const { return lemmatize_; }

  // Exact if a triplet's start and end are single tokens matching the two
  // words of the pair, in either orientation; otherwise Partial if the start
  // contains one word as a token and the end contains the other; otherwise
  // None. The witness is the lowest-numbered matching triplet.
  MatchResult match(const SPPair& pair) const;

  struct Witness {
    std::size_t triplet;
    MatchKind kind;  // Exact or Partial
  };
  // Every triplet that matches the pair, each classified on its own.
  std::vector<Witness> witnesses(const SPPair& pair) const;

 private:
  struct Side {
    std::set<std::string> forms;
    bool single = false;
  };
  MatchKind classify(std::size_t id, const std::string& a, const std::string& b) const;

  std::vector<OMCSTriplet> triplets_;
  bool lemmatize_;
  std::vector<Side> starts_;
  std::vector<Side> ends_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_form_;
};

MatchResult match_pair(const SPPair& pair, const OMCSIndex& index);

enum class PlausibilityGroup { Perfect, Good, Normal, Unusual, Impossible };

inline constexpr std::array<PlausibilityGroup, 5> kAllGroups = {
    PlausibilityGroup::Perfect, PlausibilityGroup::Good, PlausibilityGroup::Normal,
    PlausibilityGroup::Unusual, PlausibilityGroup::Impossible};

std::string_view to_string(PlausibilityGroup g);

// Perfect [8,10], Good [6,8), Normal [4,6), Unusual [2,4), Impossible [0,2).
PlausibilityGroup plausibility_group(double plausibility);

struct GroupCoverage {
  PlausibilityGroup group;
  std::size_t pairs = 0;
  std::size_t exact = 0;
  std::size_t partial = 0;
  double exact_percent = 0.0;
  double partial_percent = 0.0;
};

std::vector<GroupCoverage> coverage_by_group(const GoldSet& gold, const OMCSIndex& index);
nlohmann::json coverage_to_json(const std::vector<GroupCoverage>& rows);
std::string coverage_to_text(const std::vector<GroupCoverage>& rows);

struct MatrixCell {
  std::size_t exact = 0;
  std::size_t partial = 0;
  std::size_t total() const { return exact + partial; }
};

struct RelationMatrix {
  std::vector<std::string> omcs_relations;  // sorted
  std::map<Relation, std::map<std::string, MatrixCell>> cells;

  MatrixCell cell(Relation r, const std::string& omcs_relation) const;
  std::size_t total() const;

  // Rows `kind,sp_relation,<counts>` for kind in exact, partial and total,
  // one column per OMCS relation.
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

// Counts every (pair, matching triplet) tuple in the cell of the pair's
// relation and the triplet's relation.
RelationMatrix relation_matrix(const GoldSet& gold, const OMCSIndex& index);

}  // namespace sptk
