#include "sptk/conllu.hpp"

#include <charconv>

#include "sptk/core.hpp"

namespace sptk {

void validate_sentence(const Sentence& sentence) {
  const int n = static_cast<int>(sentence.size());
  for (int i = 0; i < n; ++i) {
    const Token& t = sentence[i];
    if (t.index != i + 1) {
      throw Error(ErrorCode::MalformedInput,
                  "token ids are not contiguous at id " + std::to_string(t.index));
    }
    if (t.head_index < 0 || t.head_index > n) {
      throw Error(ErrorCode::MalformedInput,
                  "head " + std::to_string(t.head_index) + " out of range for token " +
                      std::to_string(t.index));
    }
    if (t.head_index == t.index) {
      throw Error(ErrorCode::MalformedInput,
                  "token " + std::to_string(t.index) + " is its own head");
    }
  }
}

namespace {

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct LineError {
  std::size_t line;
  std::string message;
};

}  // namespace

ConlluReader::ConlluReader(std::istream& in, std::string source_name, MalformedPolicy policy,
                           Logger logger)
    : in_(in), source_(std::move(source_name)), policy_(policy), logger_(std::move(logger)) {}

std::optional<Sentence> ConlluReader::next() {
  std::string line;
  while (true) {
    Sentence sentence;
    std::optional<LineError> error;
    std::size_t first_line = 0;
    bool saw_content = false;

    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) {
        if (saw_content) break;
        continue;
      }
      if (!saw_content) first_line = line_no_;
      saw_content = true;
      if (line[0] == '#' || error) continue;

      auto cols = split(line, '\t');
      if (cols.size() != 10) {
        error = LineError{line_no_, "expected 10 tab-separated columns, found " +
                                        std::to_string(cols.size())};
        continue;
      }
      const std::string_view id = cols[0];
      if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
        continue;
      }
      auto index = parse_int(id);
      auto head = parse_int(cols[6]);
      if (!index || *index < 1) {
        error = LineError{line_no_, "bad token id '" + std::string(id) + "'"};
        continue;
      }
      if (!head || *head < 0) {
        error = LineError{line_no_, "bad head '" + std::string(cols[6]) + "'"};
        continue;
      }
      if (*index != static_cast<int>(sentence.size()) + 1) {
        error = LineError{line_no_, "token id " + std::to_string(*index) +
                                        " is not contiguous"};
        continue;
      }
      if (*head == *index) {
        error = LineError{line_no_, "token " + std::to_string(*index) + " is its own head"};
        continue;
      }
      Token t;
      t.index = *index;
      std::string_view lemma = cols[2];
      if (lemma == "_" || lemma.empty()) lemma = cols[1];
      t.lemma = to_lower(lemma);
      t.upos = std::string(cols[3]);
      t.head_index = *head;
      t.deprel = std::string(cols[7]);
      sentence.push_back(std::move(t));
    }

    if (!saw_content) return std::nullopt;

    if (!error) {
      for (const Token& t : sentence) {
        if (t.head_index > static_cast<int>(sentence.size())) {
          error = LineError{first_line, "head " + std::to_string(t.head_index) +
                                            " of token " + std::to_string(t.index) +
                                            " is out of range"};
          break;
        }
      }
    }

    if (!error) {
      ++sentences_read_;
      return sentence;
    }
    if (policy_ == MalformedPolicy::FailFast) {
      throw Error(ErrorCode::MalformedInput, error->message, source_, error->line);
    }
    ++sentences_skipped_;
    if (logger_) {
      logger_(source_ + ":" + std::to_string(error->line) + ": skipped sentence: " +
              error->message);
    }
  }
}

}  // namespace sptk
