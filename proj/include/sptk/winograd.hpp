#pragma once

#include <json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sptk/core.hpp"
#include "sptk/scorers.hpp"

namespace sptk {

enum class Role { Subject, Object };
std::string_view to_string(Role r);
Role parse_role(std::string_view name);

struct Mention {
  std::string surface;
  std::string lemma;
};

struct WinogradQuestion {
  std::string id;
  std::string sentence;  // display only
  std::string verb;
  std::string adjective;
  Mention candidate_subject;
  Mention candidate_object;
  Role gold = Role::Subject;

  // Throws Error(MalformedInput) on empty fields or identical candidates.
  void validate() const;
};

inline constexpr int kQuestionsSchemaVersion = 1;

// {"schema_version": 1, "questions": [{"id", "sentence", "verb", "adjective",
//   "subject": {"surface", "lemma"}, "object": {...}, "gold": "subject"|"object"}]}
std::vector<WinogradQuestion> load_questions(const std::string& path);
std::vector<WinogradQuestion> questions_from_json(const nlohmann::json& j,
                                                  const std::string& source = {});
nlohmann::json questions_to_json(std::span<const WinogradQuestion> questions);

enum class Outcome { Correct, Wrong, NA };
std::string_view to_string(Outcome o);

struct Prediction {
  std::string question_id;
  Outcome outcome = Outcome::NA;
  std::optional<double> subject_score;  // nsubj_amod(verb, adjective)
  std::optional<double> object_score;   // dobj_amod(verb, adjective)
  std::optional<Role> predicted;
};

// Picks the role whose two-hop score is strictly higher; no prediction when
// either score is missing or the two are equal.
Prediction resolve(const WinogradQuestion& q, const ScoreModel& model);

struct Accuracy {
  std::size_t correct = 0;
  std::size_t wrong = 0;
  std::size_t na = 0;
  std::optional<double> ap;  // correct / (correct + wrong); undefined without predictions
  double ao = 0.0;           // (correct + na / 2) / total

  std::size_t total() const { return correct + wrong + na; }
  nlohmann::json to_json() const;
};

Accuracy accuracy_from_counts(std::size_t correct, std::size_t wrong, std::size_t na);
// Throws Error(InsufficientData) for an empty list.
Accuracy score_accuracy(std::span<const Prediction> predictions);

// One line per question: id,verb,adjective,subject_score,object_score,predicted,gold,outcome
std::string predictions_to_csv(std::span<const WinogradQuestion> questions,
                               std::span<const Prediction> predictions);

}  // namespace sptk
