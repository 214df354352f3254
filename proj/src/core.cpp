#include "sptk/core.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace sptk {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::EmptyEmbeddingFile: return "EmptyEmbeddingFile";
    case ErrorCode::InconsistentDimension: return "InconsistentDimension";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::PoolTooSmall: return "PoolTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::DuplicatePair: return "DuplicatePair";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::MixedRelations: return "MixedRelations";
    case ErrorCode::UntrainedRelation: return "UntrainedRelation";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_error(ErrorCode code, const std::string& message,
                         const std::string& file, std::size_t line) {
  std::string out;
  if (!file.empty()) {
    out += file;
    if (line > 0) out += ":" + std::to_string(line);
    out += ": ";
  }
  out += to_string(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::string file,
             std::size_t line)
    : std::runtime_error(format_error(code, message, file, line)),
      code_(code),
      message_(message),
      file_(std::move(file)),
      line_(line) {}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Dobj: return "dobj";
    case Relation::Nsubj: return "nsubj";
    case Relation::Amod: return "amod";
    case Relation::DobjAmod: return "dobj_amod";
    case Relation::NsubjAmod: return "nsubj_amod";
  }
  return "?";
}

Relation parse_relation(std::string_view name) {
  const std::string lowered = to_lower(name);
  for (Relation r : kAllRelations) {
    if (lowered == to_string(r)) return r;
  }
  throw Error(ErrorCode::UnknownRelation,
              "unknown relation '" + std::string(name) + "'");
}

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::Verb: return "verb";
    case PartOfSpeech::Noun: return "noun";
    case PartOfSpeech::Adjective: return "adj";
  }
  return "?";
}

PartOfSpeech head_pos(Relation r) {
  return r == Relation::Amod ? PartOfSpeech::Noun : PartOfSpeech::Verb;
}

PartOfSpeech dependent_pos(Relation r) {
  switch (r) {
    case Relation::Dobj:
    case Relation::Nsubj: return PartOfSpeech::Noun;
    default: return PartOfSpeech::Adjective;
  }
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

namespace {

void check_lemma(std::string_view lemma, const char* slot) {
  if (lemma.empty()) {
    throw Error(ErrorCode::InvalidPair, std::string(slot) + " lemma is empty");
  }
  if (lemma.find_first_of("\t\n\r") != std::string_view::npos) {
    throw Error(ErrorCode::InvalidPair, std::string(slot) + " lemma '" +
                                            std::string(lemma) +
                                            "' contains a tab or newline");
  }
}

}  // namespace

SPPair::SPPair(Relation relation, std::string_view head, std::string_view dependent)
    : relation_(relation), head_(to_lower(head)), dependent_(to_lower(dependent)) {
  check_lemma(head_, "head");
  check_lemma(dependent_, "dependent");
}

std::size_t SPPairHash::operator()(const SPPair& p) const noexcept {
  std::size_t h = std::hash<std::string>{}(p.head());
  h ^= std::hash<std::string>{}(p.dependent()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(p.relation()) * 0x100000001b3ULL;
  return h;
}

Plausibility::Plausibility(double value) : value_(value) {
  if (!(value >= kMin && value <= kMax)) {
    throw Error(ErrorCode::ScoreOutOfRange,
                "plausibility " + std::to_string(value) + " outside [0,10]");
  }
}

Lexicon::Lexicon(std::set<std::string> verbs, std::set<std::string> nouns,
                 std::set<std::string> adjectives)
    : verbs_(std::move(verbs)), nouns_(std::move(nouns)), adjectives_(std::move(adjectives)) {
  auto overlap = [](const std::set<std::string>& a, const std::set<std::string>& b)
      -> std::optional<std::string> {
    for (const auto& w : a) {
      if (b.count(w)) return w;
    }
    return std::nullopt;
  };
  for (auto [a, b] : {std::pair{&verbs_, &nouns_}, std::pair{&verbs_, &adjectives_},
                      std::pair{&nouns_, &adjectives_}}) {
    if (auto w = overlap(*a, *b)) {
      throw Error(ErrorCode::InvalidConfig,
                  "lexicon word '" + *w + "' appears under two parts of speech");
    }
  }
}

const std::set<std::string>& Lexicon::words(PartOfSpeech pos) const {
  switch (pos) {
    case PartOfSpeech::Verb: return verbs_;
    case PartOfSpeech::Noun: return nouns_;
    case PartOfSpeech::Adjective: return adjectives_;
  }
  return verbs_;
}

bool Lexicon::contains(PartOfSpeech pos, const std::string& lemma) const {
  return words(pos).count(lemma) > 0;
}

bool Lexicon::contains(const std::string& lemma) const {
  return verbs_.count(lemma) || nouns_.count(lemma) || adjectives_.count(lemma);
}

std::size_t Lexicon::size() const {
  return verbs_.size() + nouns_.size() + adjectives_.size();
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open lexicon", path);
  std::set<std::string> verbs, nouns, adjectives;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[1].empty()) {
      throw Error(ErrorCode::MalformedInput, "expected 'pos<TAB>lemma'", path, line_no);
    }
    const std::string pos = to_lower(fields[0]);
    std::string lemma = to_lower(fields[1]);
    if (pos == "verb") {
      verbs.insert(std::move(lemma));
    } else if (pos == "noun") {
      nouns.insert(std::move(lemma));
    } else if (pos == "adj" || pos == "adjective") {
      adjectives.insert(std::move(lemma));
    } else {
      throw Error(ErrorCode::MalformedInput, "unknown part of speech '" + pos + "'", path,
                  line_no);
    }
  }
  return Lexicon(std::move(verbs), std::move(nouns), std::move(adjectives));
}

void save_lexicon(const Lexicon& lexicon, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write lexicon", path);
  for (PartOfSpeech pos : {PartOfSpeech::Verb, PartOfSpeech::Noun, PartOfSpeech::Adjective}) {
    for (const auto& w : lexicon.words(pos)) out << to_string(pos) << '\t' << w << '\n';
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace sptk
