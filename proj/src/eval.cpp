#include "sptk/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sptk/random.hpp"
#include "sptk/stats.hpp"
#include "text.hpp"

namespace sptk {

void GoldSet::add(const SPPair& pair, Plausibility plausibility) {
  if (index_.count(pair)) {
    throw Error(ErrorCode::DuplicatePair, "duplicate pair (" + std::string(to_string(pair.relation())) +
                                              ", " + pair.head() + ", " + pair.dependent() + ")");
  }
  index_.emplace(pair, entries_.size());
  entries_.push_back({pair, plausibility});
}

std::vector<GoldEntry> GoldSet::relation(Relation r) const {
  std::vector<GoldEntry> out;
  for (const auto& e : entries_) {
    if (e.pair.relation() == r) out.push_back(e);
  }
  return out;
}

std::optional<double> GoldSet::find(const SPPair& pair) const {
  auto it = index_.find(pair);
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].plausibility.value();
}

TableModel GoldSet::as_model() const {
  TableModel model;
  for (const auto& e : entries_) model.set(e.pair, e.plausibility.value());
  return model;
}

using detail::format_fixed;
using detail::parse_double;

GoldSet load_gold(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open gold file", path);
  GoldSet gold;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 4) throw Error(ErrorCode::MalformedInput, "expected 4 columns", path, line_no);
    auto value = parse_double(f[3]);
    if (!value) {
      throw Error(ErrorCode::MalformedInput, "bad plausibility '" + std::string(f[3]) + "'", path,
                  line_no);
    }
    try {
      gold.add(SPPair(parse_relation(f[0]), f[1], f[2]), Plausibility(*value));
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), path, line_no);
    }
  }
  return gold;
}

void save_gold(const GoldSet& gold, const std::string& path,
               const std::vector<std::pair<std::string, std::string>>& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write gold file", path);
  out << kGoldHeader << '\n';
  for (const auto& [key, value] : metadata) out << '#' << key << '\t' << value << '\n';
  for (const auto& e : gold.entries()) {
    out << to_string(e.pair.relation()) << '\t' << e.pair.head() << '\t' << e.pair.dependent()
        << '\t' << detail::format_shortest(e.plausibility.value()) << '\n';
  }
}

GoldSet import_sp10k(const std::string& directory, PairOrder order) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw Error(ErrorCode::Io, "not a directory", directory);
  }
  GoldSet gold;
  std::size_t files = 0;
  for (Relation r : kAllRelations) {
    const std::string name(to_string(r));
    fs::path found;
    for (const auto& candidate : {name + ".txt", name + "_annotation.txt", name + ".tsv", name}) {
      if (fs::is_regular_file(fs::path(directory) / candidate)) {
        found = fs::path(directory) / candidate;
        break;
      }
    }
    if (found.empty()) continue;
    ++files;
    const bool dependent_first =
        order == PairOrder::Natural &&
        (r == Relation::Nsubj || r == Relation::Amod || r == Relation::NsubjAmod);
    std::ifstream in(found, std::ios::binary);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream fields(line);
      std::vector<std::string> tokens;
      for (std::string t; fields >> t;) tokens.push_back(t);
      if (tokens.empty() || tokens[0][0] == '#') continue;
      if (tokens.size() != 3) {
        throw Error(ErrorCode::MalformedInput, "expected 'word word score'", found.string(),
                    line_no);
      }
      auto value = parse_double(tokens[2]);
      if (!value) {
        if (line_no == 1) continue;  // column header
        throw Error(ErrorCode::MalformedInput, "bad score '" + tokens[2] + "'", found.string(),
                    line_no);
      }
      const std::string& head = dependent_first ? tokens[1] : tokens[0];
      const std::string& dep = dependent_first ? tokens[0] : tokens[1];
      try {
        gold.add(SPPair(r, head, dep), Plausibility(*value));
      } catch (const Error& e) {
        throw Error(e.code(), e.message(), found.string(), line_no);
      }
    }
  }
  if (files == 0) {
    throw Error(ErrorCode::Io, "no per-relation annotation files found", directory);
  }
  return gold;
}

std::string_view to_string(MissingPolicy p) { return p == MissingPolicy::Drop ? "drop" : "floor"; }

MissingPolicy parse_missing_policy(std::string_view name) {
  const std::string lowered = to_lower(name);
  if (lowered == "drop") return MissingPolicy::Drop;
  if (lowered == "floor") return MissingPolicy::Floor;
  throw Error(ErrorCode::InvalidConfig, "unknown missing-score policy '" + std::string(name) + "'");
}

std::optional<std::vector<double>> floor_imputed_scores(const ScoreModel& model,
                                                        std::span<const GoldEntry> entries) {
  std::vector<std::optional<double>> raw;
  raw.reserve(entries.size());
  std::optional<double> lowest;
  for (const auto& e : entries) {
    raw.push_back(model.score(e.pair));
    if (raw.back() && (!lowest || *raw.back() < *lowest)) lowest = raw.back();
  }
  if (!lowest) return std::nullopt;
  std::vector<double> out;
  out.reserve(raw.size());
  for (const auto& s : raw) out.push_back(s ? *s : *lowest - 1.0);
  return out;
}

namespace {

std::optional<double> try_spearman(std::span<const double> x, std::span<const double> y) {
  try {
    return spearman(x, y);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

EvalReport evaluate(const ScoreModel& model, const GoldSet& gold, MissingPolicy policy) {
  EvalReport report;
  report.policy = policy;
  double sum = 0.0;
  for (Relation r : kAllRelations) {
    const auto entries = gold.relation(r);
    if (entries.empty()) continue;
    RelationReport rr;
    rr.relation = r;
    rr.pairs = entries.size();

    std::vector<double> scored_model, scored_gold, all_gold;
    std::vector<std::optional<double>> raw;
    for (const auto& e : entries) {
      raw.push_back(model.score(e.pair));
      all_gold.push_back(e.plausibility.value());
      if (raw.back()) {
        scored_model.push_back(*raw.back());
        scored_gold.push_back(e.plausibility.value());
      }
    }
    rr.scored = scored_model.size();
    rr.coverage = static_cast<double>(rr.scored) / static_cast<double>(rr.pairs);
    rr.rho_drop = try_spearman(scored_model, scored_gold);
    if (!scored_model.empty()) {
      const double lowest = *std::min_element(scored_model.begin(), scored_model.end());
      std::vector<double> imputed;
      for (const auto& s : raw) imputed.push_back(s ? *s : lowest - 1.0);
      rr.rho_floor = try_spearman(imputed, all_gold);
    }
    rr.rho = policy == MissingPolicy::Drop ? rr.rho_drop : rr.rho_floor;
    if (rr.rho) {
      sum += *rr.rho;
      ++report.relations_in_overall;
    }
    report.relations.push_back(rr);
  }
  if (report.relations_in_overall > 0) {
    report.overall = sum / static_cast<double>(report.relations_in_overall);
  }
  return report;
}

nlohmann::json EvalReport::to_json() const {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) -> json { return v ? json(*v) : json(nullptr); };
  json rels = json::object();
  for (const auto& r : relations) {
    rels[std::string(to_string(r.relation))] = {
        {"pairs", r.pairs},       {"scored", r.scored},       {"coverage", r.coverage},
        {"rho", opt(r.rho)},      {"rho_drop", opt(r.rho_drop)}, {"rho_floor", opt(r.rho_floor)},
        {"defined", r.rho.has_value()}};
  }
  return json{{"policy", std::string(to_string(policy))},
              {"relations", rels},
              {"overall", opt(overall)},
              {"relations_in_overall", relations_in_overall}};
}

std::string EvalReport::to_text() const {
  auto cell = [](const std::optional<double>& v) { return v ? format_fixed(*v, 2) : std::string("undef"); };
  std::ostringstream os;
  os << std::left << std::setw(12) << "relation" << std::right << std::setw(8) << "rho"
     << std::setw(10) << "rho_drop" << std::setw(10) << "coverage" << std::setw(8) << "pairs"
     << '\n';
  for (const auto& r : relations) {
    os << std::left << std::setw(12) << to_string(r.relation) << std::right << std::setw(8)
       << cell(r.rho) << std::setw(10) << cell(r.rho_drop) << std::setw(10)
       << format_fixed(r.coverage, 3) << std::setw(8) << r.pairs << '\n';
  }
  os << std::left << std::setw(12) << "overall" << std::right << std::setw(8) << cell(overall)
     << "   (policy: " << to_string(policy) << ")\n";
  return os.str();
}

double significance(std::span<const double> model_a, std::span<const double> model_b,
                    std::span<const double> gold, std::size_t resamples, std::uint64_t seed) {
  if (model_a.size() != gold.size() || model_b.size() != gold.size()) {
    throw Error(ErrorCode::LengthMismatch, "significance inputs are not aligned");
  }
  if (gold.size() < 10) {
    throw Error(ErrorCode::InsufficientData,
                "significance needs at least 10 aligned pairs, got " + std::to_string(gold.size()));
  }
  if (resamples == 0) throw Error(ErrorCode::InvalidConfig, "resamples must be positive");

  Rng rng(seed);
  const std::size_t n = gold.size();
  std::vector<double> a(n), b(n), g(n);
  double worse = 0.0;
  std::size_t valid = 0;
  for (std::size_t s = 0; s < resamples; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(uniform_index(rng, n));
      a[i] = model_a[k];
      b[i] = model_b[k];
      g[i] = gold[k];
    }
    const auto ra = try_spearman(a, g);
    const auto rb = try_spearman(b, g);
    if (!ra || !rb) continue;
    ++valid;
    const double delta = *ra - *rb;
    if (delta < 0.0) {
      worse += 1.0;
    } else if (delta == 0.0) {
      worse += 0.5;
    }
  }
  if (valid == 0) {
    throw Error(ErrorCode::InsufficientData, "every bootstrap resample was degenerate");
  }
  return worse / static_cast<double>(valid);
}

double pseudo_disambiguation(const ScoreModel& model, std::span<const SPPair> test_pairs,
                             const Lexicon& vocabulary, std::uint64_t seed) {
  if (test_pairs.empty()) throw Error(ErrorCode::InsufficientData, "no test pairs");

  std::unordered_set<SPPair, SPPairHash> positives(test_pairs.begin(), test_pairs.end());
  std::array<std::vector<std::string>, 3> pools;
  for (PartOfSpeech pos : {PartOfSpeech::Verb, PartOfSpeech::Noun, PartOfSpeech::Adjective}) {
    const auto& ws = vocabulary.words(pos);
    pools[static_cast<std::size_t>(pos)].assign(ws.begin(), ws.end());
  }

  // Dependents attested with each (relation, head) that fall inside the pool.
  std::map<std::pair<Relation, std::string>, std::size_t> blocked;
  for (const SPPair& p : positives) {
    if (vocabulary.contains(dependent_pos(p.relation()), p.dependent())) {
      ++blocked[{p.relation(), p.head()}];
    }
  }

  Rng rng(seed);
  double total = 0.0;
  for (const SPPair& p : test_pairs) {
    const auto& pool = pools[static_cast<std::size_t>(dependent_pos(p.relation()))];
    const std::size_t excluded = blocked[{p.relation(), p.head()}];
    if (pool.size() <= excluded) {
      throw Error(ErrorCode::PoolTooSmall,
                  "no confounder available for head '" + p.head() + "' (" +
                      std::string(to_string(p.relation())) + ")");
    }
    std::optional<SPPair> confounder;
    do {
      confounder.emplace(p.relation(), p.head(), pool[uniform_index(rng, pool.size())]);
    } while (positives.count(*confounder));

    const auto pos_score = model.score(p);
    const auto neg_score = model.score(*confounder);
    if (!pos_score || !neg_score || *pos_score == *neg_score) {
      total += 0.5;
    } else if (*pos_score > *neg_score) {
      total += 1.0;
    }
  }
  return total / static_cast<double>(test_pairs.size());
}

}  // namespace sptk
