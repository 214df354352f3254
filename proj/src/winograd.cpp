#include "sptk/winograd.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "text.hpp"

namespace sptk {

std::string_view to_string(Role r) { return r == Role::Subject ? "subject" : "object"; }

Role parse_role(std::string_view name) {
  const std::string n = to_lower(name);
  if (n == "subject") return Role::Subject;
  if (n == "object") return Role::Object;
  throw Error(ErrorCode::MalformedInput, "unknown role '" + std::string(name) + "'");
}

void WinogradQuestion::validate() const {
  if (id.empty()) throw Error(ErrorCode::MalformedInput, "question without id");
  if (verb.empty() || adjective.empty()) {
    throw Error(ErrorCode::MalformedInput, "question " + id + " lacks verb or adjective");
  }
  if (candidate_subject.lemma.empty() || candidate_object.lemma.empty()) {
    throw Error(ErrorCode::MalformedInput, "question " + id + " lacks a candidate lemma");
  }
  if (to_lower(candidate_subject.surface) == to_lower(candidate_object.surface) &&
      candidate_subject.lemma == candidate_object.lemma) {
    throw Error(ErrorCode::MalformedInput, "question " + id + " has identical candidates");
  }
}

namespace {

Mention mention_from_json(const nlohmann::json& j) {
  Mention c;
  c.lemma = to_lower(j.at("lemma").get<std::string>());
  c.surface = j.contains("surface") ? j.at("surface").get<std::string>() : c.lemma;
  return c;
}

}  // namespace

std::vector<WinogradQuestion> questions_from_json(const nlohmann::json& j, const std::string& source) {
  if (!j.is_object() || !j.contains("schema_version") || !j.contains("questions")) {
    throw Error(ErrorCode::MalformedInput, "expected an object with schema_version and questions", source);
  }
  if (j["schema_version"] != kQuestionsSchemaVersion) {
    throw Error(ErrorCode::MalformedInput,
                "unsupported schema_version " + j["schema_version"].dump(), source);
  }
  std::vector<WinogradQuestion> out;
  std::set<std::string> ids;
  std::size_t i = 0;
  for (const auto& item : j["questions"]) {
    ++i;
    try {
      WinogradQuestion q;
      const auto& id = item.at("id");
      q.id = id.is_string() ? id.get<std::string>() : id.dump();
      q.sentence = item.value("sentence", std::string());
      q.verb = to_lower(item.at("verb").get<std::string>());
      q.adjective = to_lower(item.at("adjective").get<std::string>());
      q.candidate_subject = mention_from_json(item.at("subject"));
      q.candidate_object = mention_from_json(item.at("object"));
      q.gold = parse_role(item.at("gold").get<std::string>());
      q.validate();
      if (!ids.insert(q.id).second) throw Error(ErrorCode::MalformedInput, "duplicate id " + q.id);
      out.push_back(std::move(q));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedInput, "question #" + std::to_string(i) + ": " + e.what(), source);
    } catch (const Error& e) {
      throw Error(e.code(), "question #" + std::to_string(i) + ": " + e.message(), source);
    }
  }
  return out;
}

std::vector<WinogradQuestion> load_questions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open questions file", path);
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::MalformedInput, "invalid JSON", path);
  return questions_from_json(j, path);
}

nlohmann::json questions_to_json(std::span<const WinogradQuestion> questions) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& q : questions) {
    list.push_back({{"id", q.id},
                    {"sentence", q.sentence},
                    {"verb", q.verb},
                    {"adjective", q.adjective},
                    {"subject", {{"surface", q.candidate_subject.surface}, {"lemma", q.candidate_subject.lemma}}},
                    {"object", {{"surface", q.candidate_object.surface}, {"lemma", q.candidate_object.lemma}}},
                    {"gold", std::string(to_string(q.gold))}});
  }
  return {{"schema_version", kQuestionsSchemaVersion}, {"questions", std::move(list)}};
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Correct: return "correct";
    case Outcome::Wrong: return "wrong";
    case Outcome::NA: return "na";
  }
  return "na";
}

Prediction resolve(const WinogradQuestion& q, const ScoreModel& model) {
  Prediction p;
  p.question_id = q.id;
  p.subject_score = model.score(SPPair(Relation::NsubjAmod, q.verb, q.adjective));
  p.object_score = model.score(SPPair(Relation::DobjAmod, q.verb, q.adjective));
  if (!p.subject_score || !p.object_score || *p.subject_score == *p.object_score) {
    p.outcome = Outcome::NA;
    return p;
  }
  p.predicted = *p.subject_score > *p.object_score ? Role::Subject : Role::Object;
  p.outcome = *p.predicted == q.gold ? Outcome::Correct : Outcome::Wrong;
  return p;
}

Accuracy accuracy_from_counts(std::size_t correct, std::size_t wrong, std::size_t na) {
  Accuracy a{correct, wrong, na, std::nullopt, 0.0};
  if (correct + wrong > 0) a.ap = static_cast<double>(correct) / static_cast<double>(correct + wrong);
  if (a.total() > 0) {
    a.ao = (static_cast<double>(correct) + static_cast<double>(na) / 2.0) / static_cast<double>(a.total());
  }
  return a;
}

Accuracy score_accuracy(std::span<const Prediction> predictions) {
  if (predictions.empty()) throw Error(ErrorCode::InsufficientData, "no predictions to score");
  std::size_t c = 0, w = 0, na = 0;
  for (const auto& p : predictions) {
    switch (p.outcome) {
      case Outcome::Correct: ++c; break;
      case Outcome::Wrong: ++w; break;
      case Outcome::NA: ++na; break;
    }
  }
  return accuracy_from_counts(c, w, na);
}

nlohmann::json Accuracy::to_json() const {
  nlohmann::json j = {{"correct", correct}, {"wrong", wrong}, {"na", na}, {"total", total()}, {"Ao", ao}};
  j["Ap"] = ap ? nlohmann::json(*ap) : nlohmann::json("undefined");
  return j;
}

std::string predictions_to_csv(std::span<const WinogradQuestion> questions,
                               std::span<const Prediction> predictions) {
  if (questions.size() != predictions.size()) {
    throw Error(ErrorCode::LengthMismatch, "questions and predictions differ in length");
  }
  auto score = [](const std::optional<double>& s) {
    return s ? detail::format_fixed(*s, 6) : std::string("NA");
  };
  std::ostringstream os;
  os << "id,verb,adjective,subject_score,object_score,predicted,gold,outcome\n";
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const auto& q = questions[i];
    const auto& p = predictions[i];
    os << q.id << ',' << q.verb << ',' << q.adjective << ',' << score(p.subject_score) << ','
       << score(p.object_score) << ',' << (p.predicted ? to_string(*p.predicted) : "none") << ','
       << to_string(q.gold) << ',' << to_string(p.outcome) << '\n';
  }
  return os.str();
}

}  // namespace sptk
