#include "sptk/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "sptk/core.hpp"

namespace sptk {

bool EmbeddingTable::add(const std::string& word, const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (dim_ == 0) dim_ = v.size();
  if (v.size() != dim_ || dim_ == 0) {
    throw Error(ErrorCode::InconsistentDimension,
                "vector for '" + word + "' has dimension " + std::to_string(v.size()) +
                    ", expected " + std::to_string(dim_));
  }
  if (!v.allFinite()) {
    throw Error(ErrorCode::MalformedInput, "vector for '" + word + "' has NaN/Inf components");
  }
  if (index_.count(word)) return false;
  index_.emplace(word, words_.size());
  words_.push_back(word);
  data_.insert(data_.end(), v.data(), v.data() + v.size());
  return true;
}

std::optional<EmbeddingTable::ConstVector> EmbeddingTable::find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return ConstVector(data_.data() + it->second * dim_, dim_);
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open embeddings", path);
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  Eigen::VectorXd v;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, ' ');
    fields.erase(std::remove_if(fields.begin(), fields.end(),
                                [](std::string_view f) { return f.empty(); }),
                 fields.end());
    if (fields.size() < 2) {
      throw Error(ErrorCode::MalformedInput, "expected a word followed by components", path,
                  line_no);
    }
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(fields[i].data(), fields[i].data() + fields[i].size(), x);
      if (ec != std::errc() || ptr != fields[i].data() + fields[i].size()) {
        throw Error(ErrorCode::MalformedInput,
                    "bad component '" + std::string(fields[i]) + "'", path, line_no);
      }
      values.push_back(x);
    }
    v = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    try {
      table.add(to_lower(fields[0]), v);
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), path, line_no);
    }
  }
  if (table.size() == 0) {
    throw Error(ErrorCode::EmptyEmbeddingFile, "no vectors; dimension undeterminable", path);
  }
  return table;
}

double cosine_impl(double dot, double norm_a_sq, double norm_b_sq) {
  if (norm_a_sq == 0.0 || norm_b_sq == 0.0) {
    throw Error(ErrorCode::ZeroNorm, "cosine of a zero-norm vector");
  }
  const double c = dot / std::sqrt(norm_a_sq * norm_b_sq);
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace sptk
