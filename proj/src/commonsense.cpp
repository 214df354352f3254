#include "sptk/commonsense.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "text.hpp"

namespace sptk {

void OMCSTriplet::validate() const {
  if (start.empty() || end.empty()) throw Error(ErrorCode::MalformedInput, "empty triplet phrase");
  if (relation.empty()) throw Error(ErrorCode::MalformedInput, "empty triplet relation");
}

namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

void push_unique(std::vector<std::string>& out, std::string s) {
  if (s.size() < 2) return;
  if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
}

// Adds `stem` and, for doubled final consonants (stopp-, runn-), the undoubled form.
void push_stem(std::vector<std::string>& out, const std::string& stem) {
  push_unique(out, stem);
  push_unique(out, stem + "e");
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1])) {
    push_unique(out, stem.substr(0, n - 1));
  }
}

const std::unordered_map<std::string, std::string>& irregular_forms() {
  static const std::unordered_map<std::string, std::string> table = {
      {"is", "be"},       {"are", "be"},      {"was", "be"},      {"were", "be"},
      {"am", "be"},       {"been", "be"},     {"being", "be"},    {"has", "have"},
      {"had", "have"},    {"does", "do"},     {"did", "do"},      {"done", "do"},
      {"went", "go"},     {"gone", "go"},     {"ate", "eat"},     {"eaten", "eat"},
      {"made", "make"},   {"took", "take"},   {"taken", "take"},  {"got", "get"},
      {"gave", "give"},   {"given", "give"},  {"saw", "see"},     {"seen", "see"},
      {"came", "come"},   {"found", "find"},  {"told", "tell"},   {"said", "say"},
      {"thought", "think"}, {"bought", "buy"}, {"brought", "bring"}, {"sang", "sing"},
      {"sung", "sing"},   {"wrote", "write"}, {"written", "write"}, {"drank", "drink"},
      {"drunk", "drink"}, {"ran", "run"},     {"knew", "know"},   {"known", "know"},
      {"men", "man"},     {"women", "woman"}, {"children", "child"}, {"people", "person"},
      {"feet", "foot"},   {"teeth", "tooth"}, {"mice", "mouse"},  {"geese", "goose"},
      {"better", "good"}, {"best", "good"},   {"worse", "bad"},   {"worst", "bad"}};
  return table;
}

}  // namespace

std::string OMCSTriplet::start_text() const { return join(start); }
std::string OMCSTriplet::end_text() const { return join(end); }

std::vector<std::string> tokenize_phrase(std::string_view phrase) {
  std::vector<std::string> out;
  std::istringstream in{std::string(phrase)};
  std::string token;
  while (in >> token) out.push_back(to_lower(token));
  return out;
}

std::vector<std::string> lemma_candidates(std::string_view token) {
  const std::string t = to_lower(token);
  std::vector<std::string> out{t};
  if (auto it = irregular_forms().find(t); it != irregular_forms().end()) push_unique(out, it->second);
  const auto ends = [&](std::string_view suffix) {
    return t.size() > suffix.size() + 1 && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  const auto cut = [&](std::size_t n) { return t.substr(0, t.size() - n); };
  if (ends("ies") || ends("ied")) push_unique(out, cut(3) + "y");
  if (ends("es")) push_unique(out, cut(2));
  if (ends("s") && !ends("ss")) push_unique(out, cut(1));
  if (ends("ed")) {
    push_stem(out, cut(2));
  }
  if (ends("ing")) push_stem(out, cut(3));
  return out;
}

std::vector<OMCSTriplet> load_omcs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open triplet file", path);
  std::vector<OMCSTriplet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 3) throw Error(ErrorCode::MalformedInput, "expected 3 columns", path, line_no);
    OMCSTriplet t{tokenize_phrase(f[0]), std::string(detail::trim(f[1])), tokenize_phrase(f[2])};
    try {
      t.validate();
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), path, line_no);
    }
    out.push_back(std::move(t));
  }
  return out;
}

void save_omcs(const std::vector<OMCSTriplet>& triplets, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write triplet file", path);
  for (const auto& t : triplets) out << t.start_text() << '\t' << t.relation << '\t' << t.end_text() << '\n';
}

namespace {

// "/c/en/ice_cream/n/..." -> "ice cream"; nullopt for other languages.
std::optional<std::string> english_concept(std::string_view uri) {
  constexpr std::string_view prefix = "/c/en/";
  if (uri.substr(0, prefix.size()) != prefix) return std::nullopt;
  uri.remove_prefix(prefix.size());
  uri = uri.substr(0, uri.find('/'));
  if (uri.empty()) return std::nullopt;
  std::string text(uri);
  std::replace(text.begin(), text.end(), '_', ' ');
  return to_lower(text);
}

bool from_omcs(std::string_view info) {
  // Cheap prefilter before parsing the JSON column.
  if (info.find("omcs") == std::string_view::npos) return false;
  auto j = nlohmann::json::parse(info, nullptr, false);
  if (j.is_discarded() || !j.contains("sources") || !j["sources"].is_array()) return false;
  for (const auto& source : j["sources"]) {
    for (const char* key : {"contributor", "activity"}) {
      if (source.contains(key) && source[key].is_string()) {
        const auto& v = source[key].get_ref<const std::string&>();
        if (v.rfind("/s/contributor/omcs", 0) == 0 || v.rfind("/s/activity/omcs", 0) == 0) return true;
      }
    }
  }
  return false;
}

}  // namespace

ConceptNetImportStats import_conceptnet(const std::string& csv_path, const std::string& out_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open ConceptNet dump", csv_path);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write triplet file", out_path);
  ConceptNetImportStats stats;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line, '\t');
    if (f.size() != 5) {
      throw Error(ErrorCode::MalformedInput, "expected 5 tab-separated columns", csv_path, stats.lines);
    }
    if (f[1].substr(0, 3) != "/r/") continue;
    auto start = english_concept(f[2]);
    auto end = english_concept(f[3]);
    if (!start || !end || !from_omcs(f[4])) continue;
    std::string record = *start + '\t' + std::string(f[1].substr(3)) + '\t' + *end;
    if (!seen.insert(record).second) {
      ++stats.duplicates;
      continue;
    }
    out << record << '\n';
    ++stats.kept;
  }
  return stats;
}

std::string_view to_string(MatchKind k) {
  switch (k) {
    case MatchKind::None: return "none";
    case MatchKind::Partial: return "partial";
    case MatchKind::Exact: return "exact";
  }
  return "none";
}

OMCSIndex::OMCSIndex(std::vector<OMCSTriplet> triplets, bool lemmatize)
    : triplets_(std::move(triplets)), lemmatize_(lemmatize) {
  starts_.reserve(triplets_.size());
  ends_.reserve(triplets_.size());
  auto side = [&](const std::vector<std::string>& phrase) {
    Side s;
    s.single = phrase.size() == 1;
    for (const auto& token : phrase) {
      if (lemmatize_) {
        for (auto& c : lemma_candidates(token)) s.forms.insert(std::move(c));
      } else {
        s.forms.insert(to_lower(token));
      }
    }
    return s;
  };
  for (std::size_t i = 0; i < triplets_.size(); ++i) {
    triplets_[i].validate();
    starts_.push_back(side(triplets_[i].start));
    ends_.push_back(side(triplets_[i].end));
    std::set<std::string> forms = starts_.back().forms;
    forms.insert(ends_.back().forms.begin(), ends_.back().forms.end());
    for (const auto& f : forms) by_form_[f].push_back(i);
  }
}

MatchKind OMCSIndex::classify(std::size_t id, const std::string& a, const std::string& b) const {
  const Side& s = starts_[id];
  const Side& e = ends_[id];
  const bool ab = s.forms.count(a) && e.forms.count(b);
  const bool ba = s.forms.count(b) && e.forms.count(a);
  if (!ab && !ba) return MatchKind::None;
  return (s.single && e.single) ? MatchKind::Exact : MatchKind::Partial;
}

std::vector<OMCSIndex::Witness> OMCSIndex::witnesses(const SPPair& pair) const {
  std::vector<Witness> out;
  auto ia = by_form_.find(pair.head());
  auto ib = by_form_.find(pair.dependent());
  if (ia == by_form_.end() || ib == by_form_.end()) return out;
  // Both lists are ascending; walk their intersection.
  const auto& la = ia->second;
  const auto& lb = ib->second;
  std::size_t i = 0, j = 0;
  while (i < la.size() && j < lb.size()) {
    if (la[i] < lb[j]) {
      ++i;
    } else if (lb[j] < la[i]) {
      ++j;
    } else {
      const MatchKind k = classify(la[i], pair.head(), pair.dependent());
      if (k != MatchKind::None) out.push_back({la[i], k});
      ++i;
      ++j;
    }
  }
  return out;
}

MatchResult OMCSIndex::match(const SPPair& pair) const {
  MatchResult result{pair, MatchKind::None, std::nullopt};
  const auto all = witnesses(pair);
  for (const auto& w : all) {
    if (w.kind == MatchKind::Exact) {
      result.kind = MatchKind::Exact;
      result.witness = triplets_[w.triplet];
      return result;
    }
  }
  if (!all.empty()) {
    result.kind = MatchKind::Partial;
    result.witness = triplets_[all.front().triplet];
  }
  return result;
}

MatchResult match_pair(const SPPair& pair, const OMCSIndex& index) { return index.match(pair); }

std::string_view to_string(PlausibilityGroup g) {
  switch (g) {
    case PlausibilityGroup::Perfect: return "perfect";
    case PlausibilityGroup::Good: return "good";
    case PlausibilityGroup::Normal: return "normal";
    case PlausibilityGroup::Unusual: return "unusual";
    case PlausibilityGroup::Impossible: return "impossible";
  }
  return "impossible";
}

PlausibilityGroup plausibility_group(double plausibility) {
  if (!(plausibility >= 0.0 && plausibility <= 10.0)) {
    throw Error(ErrorCode::ScoreOutOfRange, "plausibility outside [0,10]");
  }
  if (plausibility >= 8.0) return PlausibilityGroup::Perfect;
  if (plausibility >= 6.0) return PlausibilityGroup::Good;
  if (plausibility >= 4.0) return PlausibilityGroup::Normal;
  if (plausibility >= 2.0) return PlausibilityGroup::Unusual;
  return PlausibilityGroup::Impossible;
}

std::vector<GroupCoverage> coverage_by_group(const GoldSet& gold, const OMCSIndex& index) {
  std::vector<GroupCoverage> rows;
  for (auto g : kAllGroups) rows.push_back({g});
  for (const auto& e : gold.entries()) {
    auto& row = rows[static_cast<std::size_t>(plausibility_group(e.plausibility.value()))];
    ++row.pairs;
    switch (index.match(e.pair).kind) {
      case MatchKind::Exact: ++row.exact; break;
      case MatchKind::Partial: ++row.partial; break;
      case MatchKind::None: break;
    }
  }
  for (auto& row : rows) {
    if (row.pairs == 0) continue;
    row.exact_percent = 100.0 * static_cast<double>(row.exact) / static_cast<double>(row.pairs);
    row.partial_percent = 100.0 * static_cast<double>(row.partial) / static_cast<double>(row.pairs);
  }
  return rows;
}

nlohmann::json coverage_to_json(const std::vector<GroupCoverage>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"group", std::string(to_string(r.group))},
                   {"pairs", r.pairs},
                   {"exact", r.exact},
                   {"exact_percent", r.exact_percent},
                   {"partial", r.partial},
                   {"partial_percent", r.partial_percent}});
  }
  return out;
}

std::string coverage_to_text(const std::vector<GroupCoverage>& rows) {
  std::ostringstream os;
  os << "group\tpairs\texact\texact%\tpartial\tpartial%\n";
  for (const auto& r : rows) {
    os << to_string(r.group) << '\t' << r.pairs << '\t' << r.exact << '\t'
       << detail::format_fixed(r.exact_percent, 2) << '\t' << r.partial << '\t'
       << detail::format_fixed(r.partial_percent, 2) << '\n';
  }
  return os.str();
}

MatrixCell RelationMatrix::cell(Relation r, const std::string& omcs_relation) const {
  auto row = cells.find(r);
  if (row == cells.end()) return {};
  auto it = row->second.find(omcs_relation);
  return it == row->second.end() ? MatrixCell{} : it->second;
}

std::size_t RelationMatrix::total() const {
  std::size_t n = 0;
  for (const auto& [r, row] : cells) {
    for (const auto& [rel, c] : row) n += c.total();
  }
  return n;
}

std::string RelationMatrix::to_csv() const {
  std::ostringstream os;
  os << "kind,sp_relation";
  for (const auto& rel : omcs_relations) os << ',' << rel;
  os << '\n';
  for (const char* kind : {"exact", "partial", "total"}) {
    for (Relation r : kAllRelations) {
      os << kind << ',' << to_string(r);
      for (const auto& rel : omcs_relations) {
        const MatrixCell c = cell(r, rel);
        const std::string_view k = kind;
        os << ',' << (k == "exact" ? c.exact : k == "partial" ? c.partial : c.total());
      }
      os << '\n';
    }
  }
  return os.str();
}

nlohmann::json RelationMatrix::to_json() const {
  nlohmann::json j;
  j["omcs_relations"] = omcs_relations;
  nlohmann::json rows = nlohmann::json::object();
  for (Relation r : kAllRelations) {
    nlohmann::json row = nlohmann::json::object();
    for (const auto& rel : omcs_relations) {
      const MatrixCell c = cell(r, rel);
      row[rel] = {{"exact", c.exact}, {"partial", c.partial}, {"total", c.total()}};
    }
    rows[std::string(to_string(r))] = std::move(row);
  }
  j["cells"] = std::move(rows);
  j["total"] = total();
  return j;
}

RelationMatrix relation_matrix(const GoldSet& gold, const OMCSIndex& index) {
  RelationMatrix m;
  std::set<std::string> labels;
  for (const auto& t : index.triplets()) labels.insert(t.relation);
  m.omcs_relations.assign(labels.begin(), labels.end());
  for (const auto& e : gold.entries()) {
    for (const auto& w : index.witnesses(e.pair)) {
      auto& c = m.cells[e.pair.relation()][index.triplets()[w.triplet].relation];
      if (w.kind == MatchKind::Exact) {
        ++c.exact;
      } else {
        ++c.partial;
      }
    }
  }
  return m;
}

}  // namespace sptk
