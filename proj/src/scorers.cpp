#include "sptk/scorers.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace sptk {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::PP: return "pp";
    case Backend::DS: return "ds";
    case Backend::NN: return "nn";
    case Backend::Table: return "table";
  }
  return "?";
}

std::optional<double> pp_score(const CountTable& counts, const SPPair& pair) {
  const auto* entry = counts.head(pair.relation(), pair.head());
  if (!entry || entry->total == 0) return std::nullopt;
  auto it = entry->dependents.find(pair.dependent());
  const std::uint64_t c = it == entry->dependents.end() ? 0 : it->second;
  return static_cast<double>(c) / static_cast<double>(entry->total);
}

std::optional<double> ds_score(const CountTable& counts, const EmbeddingTable& embeddings,
                               const SPPair& pair) {
  const auto* entry = counts.head(pair.relation(), pair.head());
  if (!entry || entry->dependents.empty()) return std::nullopt;
  const auto target = embeddings.find(pair.dependent());
  if (!target) return std::nullopt;

  // Sum in lemma order so the result does not depend on hash-map layout.
  std::vector<std::pair<const std::string*, std::uint64_t>> attested;
  attested.reserve(entry->dependents.size());
  for (const auto& [dep, c] : entry->dependents) attested.emplace_back(&dep, c);
  std::sort(attested.begin(), attested.end(),
            [](const auto& a, const auto& b) { return *a.first < *b.first; });

  double weighted = 0.0;
  double normaliser = 0.0;
  for (const auto& [dep, c] : attested) {
    const auto other = embeddings.find(*dep);
    if (!other) continue;
    const double w = static_cast<double>(c);
    weighted += w * cosine(*target, *other);
    normaliser += w;
  }
  if (normaliser == 0.0) return std::nullopt;
  return weighted / normaliser;
}

std::optional<double> TableModel::score(const SPPair& pair) const {
  auto it = scores_.find(pair);
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

TableModel load_score_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open score table", path);
  TableModel model;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() < 4) throw Error(ErrorCode::MalformedInput, "expected 4 columns", path, line_no);
    if (f[3] == "NA") continue;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), value);
    if (ec != std::errc() || ptr != f[3].data() + f[3].size()) {
      throw Error(ErrorCode::MalformedInput, "bad score '" + std::string(f[3]) + "'", path,
                  line_no);
    }
    try {
      model.set(SPPair(parse_relation(f[0]), f[1], f[2]), value);
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), path, line_no);
    }
  }
  return model;
}

}  // namespace sptk
