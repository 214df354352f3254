#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sptk/conllu.hpp"
#include "sptk/core.hpp"

namespace sptk {

struct ExtractOptions {
  // Count nsubjpass / nsubj:pass edges as NSUBJ.
  bool include_passive_subjects = false;
};

// All SP pairs attested in one sentence. One pair per matching edge (or edge
// composition for the two-hop relations); duplicates are kept.
std::vector<SPPair> extract_pairs(const Sentence& sentence, const ExtractOptions& options = {});

// Per-relation counts C_r(h,d) with exact marginals C_r(h).
class CountTable {
 public:
  struct HeadEntry {
    std::uint64_t total = 0;
    std::unordered_map<std::string, std::uint64_t> dependents;
  };
  using RelationTable = std::unordered_map<std::string, HeadEntry>;

  void add(const SPPair& pair, std::uint64_t count = 1);
  void merge(const CountTable& other);

  std::uint64_t count(const SPPair& pair) const;
  std::uint64_t count(Relation r, const std::string& head, const std::string& dependent) const;
  std::uint64_t head_total(Relation r, const std::string& head) const;
  std::uint64_t instances(Relation r) const { return instances_[index(r)]; }
  std::size_t unique_pairs(Relation r) const;
  const RelationTable& table(Relation r) const { return tables_[index(r)]; }
  const HeadEntry* head(Relation r, const std::string& head) const;
  bool empty() const;

  // Dependents of a head, most frequent first (ties by lemma).
  std::vector<std::pair<std::string, std::uint64_t>> ranked_dependents(
      Relation r, const std::string& head) const;
  // Heads of a relation by C_r(h), most frequent first (ties by lemma).
  std::vector<std::pair<std::string, std::uint64_t>> ranked_heads(Relation r) const;

  friend bool operator==(const CountTable& a, const CountTable& b);

 private:
  static std::size_t index(Relation r) { return static_cast<std::size_t>(r); }

  std::array<RelationTable, 5> tables_;
  std::array<std::uint64_t, 5> instances_{};
};

CountTable build_counts(const std::vector<Sentence>& corpus, const ExtractOptions& options = {});
CountTable build_counts(ConlluReader& reader, const ExtractOptions& options = {});

// Reads the stream in blocks of `block_size` sentences and extracts them on
// `threads` workers. The result is identical to build_counts(reader).
CountTable build_counts_parallel(ConlluReader& reader, unsigned threads,
                                 const ExtractOptions& options = {},
                                 std::size_t block_size = 4096);

inline constexpr const char* kCountsHeader = "#sp-counts v1";

// `relation<TAB>head<TAB>dependent<TAB>count`, sorted by relation (canonical
// order), head, descending count, dependent. `metadata` lines are written as
// `#key<TAB>value` after the header.
void save_counts(const CountTable& counts, const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& metadata = {});
CountTable load_counts(const std::string& path);

enum class CandidateSource { Frequent, Random };
std::string_view to_string(CandidateSource s);

struct Candidate {
  SPPair pair;
  CandidateSource source;
};

struct CandidateOptions {
  std::size_t heads_per_relation = 500;
  std::size_t frequent_per_head = 2;
  std::size_t random_per_head = 2;
  std::uint64_t seed = 0;
};

// Picks the most frequent heads (restricted to the lexicon's head POS when
// that set is non-empty), each with its most frequent dependents and random
// dependents from the lexicon pool of the dependent POS.
std::vector<Candidate> generate_candidates(const CountTable& counts, const Lexicon& lexicon,
                                           Relation relation,
                                           const CandidateOptions& options);

// `relation<TAB>head<TAB>dependent<TAB>source` after `#key<TAB>value` metadata lines.
void save_candidates(const std::vector<Candidate>& candidates, const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& metadata = {});

}  // namespace sptk
