#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sptk/core.hpp"
#include "sptk/scorers.hpp"

namespace sptk {

struct NNConfig {
  int embedding_dim = 50;
  int hidden_dim = 100;
  double margin = 1.0;
  int negatives_per_positive = 1;
  int epochs = 10;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;

  // Throws Error(InvalidConfig) when a field is out of range.
  void validate() const;
  friend bool operator==(const NNConfig&, const NNConfig&) = default;
};

// Two-layer scorer over the concatenated embeddings [v_h, v_d]:
//   s(h, d) = w2 . tanh(W1 [v_h; v_d] + b1) + b2
struct RelationNetwork {
  Eigen::MatrixXd embeddings;      // vocabulary x embedding_dim
  Eigen::MatrixXd hidden_weights;  // hidden_dim x 2*embedding_dim
  Eigen::VectorXd hidden_bias;
  Eigen::VectorXd output_weights;
  double output_bias = 0.0;
  std::vector<double> epoch_loss;  // mean hinge loss per training epoch

  double forward(Eigen::Index head, Eigen::Index dependent) const;
};

class NeuralModel final : public ScoreModel {
 public:
  NeuralModel(NNConfig config, std::vector<std::string> vocabulary,
              std::map<Relation, RelationNetwork> networks);

  Backend backend() const override { return Backend::NN; }
  // Missing for out-of-vocabulary lemmas; throws Error(UntrainedRelation) if
  // the pair's relation has no network.
  std::optional<double> score(const SPPair& pair) const override;

  const NNConfig& config() const { return config_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::map<Relation, RelationNetwork>& networks() const { return networks_; }
  std::optional<Eigen::Index> word_index(const std::string& lemma) const;

 private:
  NNConfig config_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, Eigen::Index> index_;
  std::map<Relation, RelationNetwork> networks_;
};

// Trains one network per relation present in `corpus_pairs` with the margin
// ranking loss max(0, margin - s(h,d+) + s(h,d-)), corrupting the dependent
// with a word of the same part of speech that was never attested with h.
// Embeddings and weights are updated jointly by plain SGD. Deterministic for
// a given seed and input order.
NeuralModel nn_train(const std::vector<SPPair>& corpus_pairs, const NNConfig& config,
                     const Lexicon& vocabulary);

std::optional<double> nn_score(const NeuralModel& model, const SPPair& pair);

// `run_config`, when given, is stored verbatim next to the weights.
void save_nn_model(const NeuralModel& model, const std::string& path,
                   const nlohmann::json& run_config = nullptr);
NeuralModel load_nn_model(const std::string& path);

}  // namespace sptk
