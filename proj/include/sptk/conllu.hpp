#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace sptk {

struct Token {
  int index = 0;       // 1-based position in the sentence
  std::string lemma;   // lowercased
  std::string upos;
  int head_index = 0;  // 0 = root
  std::string deprel;
};

// Tokens are stored in index order: tokens[i].index == i + 1.
using Sentence = std::vector<Token>;

// Throws Error(MalformedInput) if ids are not contiguous 1..n or a head is out
// of range / self-referential.
void validate_sentence(const Sentence& sentence);

enum class MalformedPolicy { FailFast, SkipAndLog };

// Streaming CoNLL-U reader. Only ID, LEMMA, UPOS, HEAD and DEPREL are used;
// multiword ranges (3-4) and empty nodes (3.1) are skipped. A missing lemma
// ("_") falls back to the lowercased FORM.
class ConlluReader {
 public:
  using Logger = std::function<void(const std::string&)>;

  ConlluReader(std::istream& in, std::string source_name,
               MalformedPolicy policy = MalformedPolicy::FailFast, Logger logger = {});

  // Next well-formed sentence, or nullopt at end of stream.
  std::optional<Sentence> next();

  std::size_t sentences_read() const { return sentences_read_; }
  std::size_t sentences_skipped() const { return sentences_skipped_; }

 private:
  std::istream& in_;
  std::string source_;
  MalformedPolicy policy_;
  Logger logger_;
  std::size_t line_no_ = 0;
  std::size_t sentences_read_ = 0;
  std::size_t sentences_skipped_ = 0;
};

}  // namespace sptk
