#include "sptk/annotate.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "sptk/random.hpp"
#include "sptk/stats.hpp"
#include "text.hpp"

namespace sptk {

void RawRating::validate() const {
  if (rating < 1 || rating > 5) {
    throw Error(ErrorCode::MalformedInput, "rating " + std::to_string(rating) + " outside 1..5");
  }
  if (is_checkpoint && checkpoint_expected.empty()) {
    throw Error(ErrorCode::MalformedInput, "checkpoint rating without an expected set");
  }
  if (!is_checkpoint && !checkpoint_expected.empty()) {
    throw Error(ErrorCode::MalformedInput, "expected set on a non-checkpoint rating");
  }
  for (int e : checkpoint_expected) {
    if (e < 1 || e > 5) {
      throw Error(ErrorCode::MalformedInput, "expected value " + std::to_string(e) + " outside 1..5");
    }
  }
  if (annotator_id.empty()) throw Error(ErrorCode::MalformedInput, "empty annotator id");
}

namespace {

constexpr const char* kRatingsHeader = "annotator_id,relation,head,dependent,rating,is_checkpoint,expected";

bool parse_bool(std::string_view s, bool& out) {
  const std::string v = to_lower(detail::trim(s));
  if (v == "1" || v == "true" || v == "yes") {
    out = true;
    return true;
  }
  if (v == "0" || v == "false" || v == "no" || v.empty()) {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

std::vector<RawRating> load_ratings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open ratings file", path);
  std::vector<RawRating> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    if (line_no == 1 && line.rfind("annotator_id", 0) == 0) continue;
    auto f = split(line, ',');
    if (f.size() != 7) throw Error(ErrorCode::MalformedInput, "expected 7 columns", path, line_no);
    try {
      auto rating = detail::parse_int(detail::trim(f[4]));
      if (!rating) throw Error(ErrorCode::MalformedInput, "bad rating '" + std::string(f[4]) + "'");
      bool checkpoint = false;
      if (!parse_bool(f[5], checkpoint)) {
        throw Error(ErrorCode::MalformedInput, "bad is_checkpoint '" + std::string(f[5]) + "'");
      }
      std::set<int> expected;
      const auto expected_field = detail::trim(f[6]);
      if (!expected_field.empty()) {
        for (auto v : split(expected_field, '|')) {
          auto e = detail::parse_int(detail::trim(v));
          if (!e) throw Error(ErrorCode::MalformedInput, "bad expected value '" + std::string(v) + "'");
          expected.insert(static_cast<int>(*e));
        }
      }
      RawRating r{std::string(detail::trim(f[0])),
                  SPPair(parse_relation(detail::trim(f[1])), detail::trim(f[2]), detail::trim(f[3])),
                  static_cast<int>(*rating), checkpoint, std::move(expected)};
      r.validate();
      out.push_back(std::move(r));
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), path, line_no);
    }
  }
  return out;
}

void save_ratings(std::span<const RawRating> ratings, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write ratings file", path);
  out << kRatingsHeader << '\n';
  for (const auto& r : ratings) {
    out << r.annotator_id << ',' << to_string(r.pair.relation()) << ',' << r.pair.head() << ','
        << r.pair.dependent() << ',' << r.rating << ',' << (r.is_checkpoint ? 1 : 0) << ',';
    bool first = true;
    for (int e : r.checkpoint_expected) {
      if (!first) out << '|';
      out << e;
      first = false;
    }
    out << '\n';
  }
}

std::string question_text(const SPPair& pair) {
  const std::string& h = pair.head();
  const std::string& d = pair.dependent();
  const std::string prefix = "How suitable do you think it is if we use ";
  switch (pair.relation()) {
    case Relation::Dobj:
      return prefix + d + " as the object of the verb " + h + "?";
    case Relation::Nsubj:
      return prefix + d + " as the subject of the verb " + h + "?";
    case Relation::Amod:
      return prefix + d + " to describe the noun " + h + "?";
    case Relation::DobjAmod:
      return prefix + d + " to describe the object of the verb " + h + "?";
    case Relation::NsubjAmod:
      return prefix + d + " to describe the subject of the verb " + h + "?";
  }
  return {};
}

const std::vector<std::string>& rating_options() {
  static const std::vector<std::string> options = {
      "Perfectly match (5)", "Make sense (4)", "Normal (3)", "Seems weird (2)",
      "It's not applicable at all (1)"};
  return options;
}

Survey generate_survey(std::span<const SPPair> pairs, std::span<const SPPair> checkpoints,
                       std::uint64_t seed) {
  if (pairs.size() != kSurveyPairs) {
    throw Error(ErrorCode::InvalidConfig, "a survey needs exactly " + std::to_string(kSurveyPairs) +
                                              " pairs, got " + std::to_string(pairs.size()));
  }
  if (checkpoints.size() != kSurveyCheckpoints) {
    throw Error(ErrorCode::InvalidConfig,
                "a survey needs exactly " + std::to_string(kSurveyCheckpoints) +
                    " checkpoints, got " + std::to_string(checkpoints.size()));
  }
  const Relation r = pairs.front().relation();
  auto check = [&](const SPPair& p) {
    if (p.relation() != r) {
      throw Error(ErrorCode::MixedRelations,
                  "survey mixes " + std::string(to_string(r)) + " and " +
                      std::string(to_string(p.relation())));
    }
  };
  Survey survey{r, {}};
  survey.questions.reserve(pairs.size() + checkpoints.size());
  for (const auto& p : pairs) {
    check(p);
    survey.questions.push_back({p, question_text(p), false});
  }
  for (const auto& p : checkpoints) {
    check(p);
    survey.questions.push_back({p, question_text(p), true});
  }
  Rng rng(seed);
  shuffle(survey.questions, rng);
  return survey;
}

nlohmann::json Survey::to_json() const {
  nlohmann::json j;
  j["relation"] = std::string(to_string(relation));
  j["instructions"] = {
      "Rate how natural each word combination is in everyday English.",
      "For multi-word expressions, judge the combination as a whole.",
      "Pick exactly one option per question."};
  j["options"] = rating_options();
  nlohmann::json examples = nlohmann::json::array();
  nlohmann::json questions = nlohmann::json::array();
  std::size_t index = 0;
  for (const auto& q : this->questions) {
    nlohmann::json item = {{"index", index++},
                           {"head", q.pair.head()},
                           {"dependent", q.pair.dependent()},
                           {"text", q.text},
                           {"checkpoint", q.is_checkpoint}};
    if (q.is_checkpoint) examples.push_back({{"head", q.pair.head()}, {"dependent", q.pair.dependent()},
                                              {"text", q.text}});
    questions.push_back(std::move(item));
  }
  j["examples"] = std::move(examples);
  j["questions"] = std::move(questions);
  return j;
}

AnnotatorRule checkpoint_rule() {
  return [](std::span<const RawRating> ratings) -> std::optional<std::string> {
    for (const auto& r : ratings) {
      if (r.is_checkpoint && !r.checkpoint_expected.count(r.rating)) {
        return "checkpoint (" + r.pair.head() + ", " + r.pair.dependent() + ") answered " +
               std::to_string(r.rating);
      }
    }
    return std::nullopt;
  };
}

AnnotatorRule zero_variance_rule(std::size_t min_ratings) {
  return [min_ratings](std::span<const RawRating> ratings) -> std::optional<std::string> {
    std::map<Relation, std::set<int>> values;
    std::map<Relation, std::size_t> counts;
    for (const auto& r : ratings) {
      if (r.is_checkpoint) continue;
      values[r.pair.relation()].insert(r.rating);
      ++counts[r.pair.relation()];
    }
    for (const auto& [rel, n] : counts) {
      if (n >= min_ratings && values[rel].size() == 1) {
        return "all " + std::to_string(n) + " " + std::string(to_string(rel)) + " ratings are " +
               std::to_string(*values[rel].begin());
      }
    }
    return std::nullopt;
  };
}

std::vector<AnnotatorRule> default_rules() { return {checkpoint_rule(), zero_variance_rule()}; }

FilterResult filter_annotations(std::span<const RawRating> ratings,
                                const std::vector<AnnotatorRule>& rules) {
  std::map<std::string, std::vector<RawRating>> by_annotator;
  for (const auto& r : ratings) by_annotator[r.annotator_id].push_back(r);
  std::set<std::string> rejected_ids;
  FilterResult result;
  for (const auto& [id, own] : by_annotator) {
    for (const auto& rule : rules) {
      if (auto reason = rule(own)) {
        result.rejected.push_back({id, *reason});
        rejected_ids.insert(id);
        break;
      }
    }
  }
  for (const auto& r : ratings) {
    if (!rejected_ids.count(r.annotator_id)) result.kept.push_back(r);
  }
  return result;
}

double scale_rating(double mean_rating) { return (mean_rating - 1.0) * 2.5; }

Aggregation aggregate(std::span<const RawRating> kept, std::size_t min_ratings) {
  std::map<SPPair, std::pair<double, std::size_t>> sums;
  for (const auto& r : kept) {
    if (r.is_checkpoint) continue;
    auto& [sum, n] = sums.try_emplace(r.pair, 0.0, 0).first->second;
    sum += r.rating;
    ++n;
  }
  Aggregation out;
  for (const auto& [pair, acc] : sums) {
    const auto& [sum, n] = acc;
    if (n >= min_ratings && n > 0) {
      out.plausibility.emplace(pair, std::clamp(scale_rating(sum / static_cast<double>(n)), 0.0, 10.0));
    } else {
      out.insufficient.emplace(pair, n);
    }
  }
  return out;
}

std::optional<double> leave_one_out_agreement(std::span<const RawRating> ratings,
                                              std::size_t* annotators_used) {
  // annotator -> pair -> mean of that annotator's ratings of the pair
  std::map<std::string, std::map<SPPair, double>> table;
  {
    std::map<std::string, std::map<SPPair, std::pair<double, int>>> acc;
    for (const auto& r : ratings) {
      if (r.is_checkpoint) continue;
      auto& [sum, n] = acc[r.annotator_id].try_emplace(r.pair, 0.0, 0).first->second;
      sum += r.rating;
      ++n;
    }
    for (const auto& [id, pairs] : acc) {
      for (const auto& [pair, s] : pairs) table[id][pair] = s.first / s.second;
    }
  }
  std::map<SPPair, std::pair<double, int>> totals;
  for (const auto& [id, pairs] : table) {
    for (const auto& [pair, v] : pairs) {
      auto& [sum, n] = totals.try_emplace(pair, 0.0, 0).first->second;
      sum += v;
      ++n;
    }
  }
  double sum_rho = 0.0;
  std::size_t used = 0;
  for (const auto& [id, pairs] : table) {
    std::vector<double> own, rest;
    for (const auto& [pair, v] : pairs) {
      const auto& [sum, n] = totals.at(pair);
      if (n < 2) continue;
      own.push_back(v);
      rest.push_back((sum - v) / (n - 1));
    }
    if (own.size() < 2) continue;
    try {
      sum_rho += spearman(own, rest);
      ++used;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConstantInput) throw;
    }
  }
  if (annotators_used) *annotators_used = used;
  if (used == 0) return std::nullopt;
  return sum_rho / static_cast<double>(used);
}

IaaResult iaa(std::span<const RawRating> kept) {
  std::map<Relation, std::vector<RawRating>> by_relation;
  for (const auto& r : kept) by_relation[r.pair.relation()].push_back(r);
  IaaResult result;
  for (const auto& [rel, ratings] : by_relation) {
    std::size_t used = 0;
    if (auto v = leave_one_out_agreement(ratings, &used)) {
      result.per_relation[rel] = *v;
      result.annotators[rel] = used;
    }
  }
  if (result.per_relation.empty()) {
    throw Error(ErrorCode::InsufficientData,
                "agreement needs at least two annotators sharing at least two pairs");
  }
  double sum = 0.0;
  for (const auto& [rel, v] : result.per_relation) sum += v;
  result.overall = sum / static_cast<double>(result.per_relation.size());
  return result;
}

nlohmann::json IaaResult::to_json() const {
  nlohmann::json j;
  nlohmann::json rels = nlohmann::json::object();
  for (const auto& [rel, v] : per_relation) {
    rels[std::string(to_string(rel))] = {{"rho", v}, {"annotators", annotators.at(rel)}};
  }
  j["relations"] = std::move(rels);
  j["overall"] = overall;
  return j;
}

}  // namespace sptk
