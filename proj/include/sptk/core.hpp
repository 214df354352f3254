#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sptk {

inline constexpr const char* kVersion = "1.0.0";

enum class ErrorCode {
  UnknownRelation,
  InvalidPair,
  MalformedInput,
  EmptyEmbeddingFile,
  InconsistentDimension,
  ZeroNorm,
  PoolTooSmall,
  LengthMismatch,
  ConstantInput,
  DuplicatePair,
  ScoreOutOfRange,
  InsufficientData,
  MixedRelations,
  UntrainedRelation,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this type. `file`/`line` are
// filled in for errors that come from parsing an input file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string file = {},
        std::size_t line = 0);

  ErrorCode code() const { return code_; }
  // The message without the file/line/code prefix that what() carries.
  const std::string& message() const { return message_; }
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::string file_;
  std::size_t line_;
};

enum class Relation : std::uint8_t { Dobj, Nsubj, Amod, DobjAmod, NsubjAmod };

inline constexpr std::array<Relation, 5> kAllRelations = {
    Relation::Dobj, Relation::Nsubj, Relation::Amod, Relation::DobjAmod,
    Relation::NsubjAmod};

std::string_view to_string(Relation r);
Relation parse_relation(std::string_view name);

enum class PartOfSpeech : std::uint8_t { Verb, Noun, Adjective };

std::string_view to_string(PartOfSpeech pos);

// POS of the head / dependent slot for a relation.
PartOfSpeech head_pos(Relation r);
PartOfSpeech dependent_pos(Relation r);

std::string to_lower(std::string_view s);

// A (relation, head, dependent) triple. Lemmas are lowercased on construction.
class SPPair {
 public:
  SPPair(Relation relation, std::string_view head, std::string_view dependent);

  Relation relation() const { return relation_; }
  const std::string& head() const { return head_; }
  const std::string& dependent() const { return dependent_; }

  friend bool operator==(const SPPair&, const SPPair&) = default;
  friend auto operator<=>(const SPPair&, const SPPair&) = default;

 private:
  Relation relation_;
  std::string head_;
  std::string dependent_;
};

struct SPPairHash {
  std::size_t operator()(const SPPair& p) const noexcept;
};

class Plausibility {
 public:
  explicit Plausibility(double value);
  double value() const { return value_; }

  static constexpr double kMin = 0.0;
  static constexpr double kMax = 10.0;

 private:
  double value_;
};

// The vocabulary partition into verbs, nouns and adjectives.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::set<std::string> verbs, std::set<std::string> nouns,
          std::set<std::string> adjectives);

  const std::set<std::string>& words(PartOfSpeech pos) const;
  bool contains(PartOfSpeech pos, const std::string& lemma) const;
  bool contains(const std::string& lemma) const;
  std::size_t size() const;

 private:
  std::set<std::string> verbs_;
  std::set<std::string> nouns_;
  std::set<std::string> adjectives_;
};

// Lexicon file: `pos<TAB>lemma` per line with pos in {verb, noun, adj}.
Lexicon load_lexicon(const std::string& path);
void save_lexicon(const Lexicon& lexicon, const std::string& path);

std::vector<std::string_view> split(std::string_view line, char sep);

}  // namespace sptk
