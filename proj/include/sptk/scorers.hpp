#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "sptk/core.hpp"
#include "sptk/embeddings.hpp"
#include "sptk/extract.hpp"

namespace sptk {

enum class Backend { PP, DS, NN, Table };

std::string_view to_string(Backend b);

// Maps an SP pair to a plausibility score. An empty optional means the model
// has no knowledge of the pair, which is distinct from a low score.
class ScoreModel {
 public:
  virtual ~ScoreModel() = default;
  virtual Backend backend() const = 0;
  virtual std::optional<double> score(const SPPair& pair) const = 0;
};

// C_r(h,d) / C_r(h); missing when the head was never seen with the relation.
std::optional<double> pp_score(const CountTable& counts, const SPPair& pair);

// Frequency-weighted mean cosine between d and the dependents attested with
// (r, h). Attested dependents without a vector are left out of both the sum
// and the normaliser.
std::optional<double> ds_score(const CountTable& counts, const EmbeddingTable& embeddings,
                               const SPPair& pair);

class PosteriorProbabilityModel final : public ScoreModel {
 public:
  explicit PosteriorProbabilityModel(std::shared_ptr<const CountTable> counts)
      : counts_(std::move(counts)) {}
  Backend backend() const override { return Backend::PP; }
  std::optional<double> score(const SPPair& pair) const override {
    return pp_score(*counts_, pair);
  }

 private:
  std::shared_ptr<const CountTable> counts_;
};

class DistributionalSimilarityModel final : public ScoreModel {
 public:
  DistributionalSimilarityModel(std::shared_ptr<const CountTable> counts,
                                std::shared_ptr<const EmbeddingTable> embeddings)
      : counts_(std::move(counts)), embeddings_(std::move(embeddings)) {}
  Backend backend() const override { return Backend::DS; }
  std::optional<double> score(const SPPair& pair) const override {
    return ds_score(*counts_, *embeddings_, pair);
  }

 private:
  std::shared_ptr<const CountTable> counts_;
  std::shared_ptr<const EmbeddingTable> embeddings_;
};

// Fixed lookup table, e.g. human plausibilities used as a scorer or scores
// precomputed elsewhere.
class TableModel final : public ScoreModel {
 public:
  TableModel() = default;
  explicit TableModel(std::unordered_map<SPPair, double, SPPairHash> scores)
      : scores_(std::move(scores)) {}
  Backend backend() const override { return Backend::Table; }
  std::optional<double> score(const SPPair& pair) const override;
  void set(const SPPair& pair, double value) { scores_[pair] = value; }
  std::size_t size() const { return scores_.size(); }

 private:
  std::unordered_map<SPPair, double, SPPairHash> scores_;
};

// Reads `relation<TAB>head<TAB>dependent<TAB>score` lines ('#' lines and
// `NA` scores are skipped). Accepts gold files and `score` output alike.
TableModel load_score_table(const std::string& path);

}  // namespace sptk
