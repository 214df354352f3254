#include "sptk/nn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <unordered_set>

#include "sptk/random.hpp"

namespace sptk {

void NNConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::InvalidConfig, "NN config: " + what);
  };
  if (embedding_dim <= 0) fail("embedding_dim must be positive");
  if (hidden_dim <= 0) fail("hidden_dim must be positive");
  if (!(margin > 0.0)) fail("margin must be positive");
  if (negatives_per_positive <= 0) fail("negatives_per_positive must be positive");
  if (epochs < 0) fail("epochs must be non-negative");
  if (!(learning_rate > 0.0)) fail("learning_rate must be positive");
}

double RelationNetwork::forward(Eigen::Index head, Eigen::Index dependent) const {
  const Eigen::Index e = embeddings.cols();
  Eigen::VectorXd hidden = hidden_bias;
  hidden.noalias() += hidden_weights.leftCols(e) * embeddings.row(head).transpose();
  hidden.noalias() += hidden_weights.rightCols(e) * embeddings.row(dependent).transpose();
  return output_weights.dot(hidden.array().tanh().matrix()) + output_bias;
}

NeuralModel::NeuralModel(NNConfig config, std::vector<std::string> vocabulary,
                         std::map<Relation, RelationNetwork> networks)
    : config_(config), vocabulary_(std::move(vocabulary)), networks_(std::move(networks)) {
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    index_.emplace(vocabulary_[i], static_cast<Eigen::Index>(i));
  }
}

std::optional<Eigen::Index> NeuralModel::word_index(const std::string& lemma) const {
  auto it = index_.find(lemma);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> NeuralModel::score(const SPPair& pair) const {
  auto net = networks_.find(pair.relation());
  if (net == networks_.end()) {
    throw Error(ErrorCode::UntrainedRelation,
                "no network trained for relation " + std::string(to_string(pair.relation())));
  }
  const auto h = word_index(pair.head());
  const auto d = word_index(pair.dependent());
  if (!h || !d) return std::nullopt;
  return net->second.forward(*h, *d);
}

std::optional<double> nn_score(const NeuralModel& model, const SPPair& pair) {
  return model.score(pair);
}

namespace {

void fill_uniform(Eigen::MatrixXd& m, double bound, Rng& rng) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = (2.0 * uniform_real(rng) - 1.0) * bound;
  }
}

struct Instance {
  Eigen::Index head;
  Eigen::Index dependent;
};

// The output layer starts at zero, so an untrained network scores every pair
// identically; the first updates move w2, after which the hidden layer and
// embeddings receive gradient.
RelationNetwork init_network(Eigen::Index vocab_size, const NNConfig& config, Rng& rng) {
  RelationNetwork net;
  net.embeddings.resize(vocab_size, config.embedding_dim);
  fill_uniform(net.embeddings, 1.0, rng);
  net.hidden_weights.resize(config.hidden_dim, 2 * config.embedding_dim);
  const double xavier = std::sqrt(6.0 / (config.hidden_dim + 2.0 * config.embedding_dim));
  fill_uniform(net.hidden_weights, xavier, rng);
  net.hidden_bias = Eigen::VectorXd::Zero(config.hidden_dim);
  net.output_weights = Eigen::VectorXd::Zero(config.hidden_dim);
  net.output_bias = 0.0;
  return net;
}

class Trainer {
 public:
  Trainer(RelationNetwork& net, double lr) : net_(net), lr_(lr) {
    const Eigen::Index e = net.embeddings.cols();
    input_pos_.resize(2 * e);
    input_neg_.resize(2 * e);
  }

  // One SGD step on a (positive, negative) pair; returns the hinge loss.
  double step(Eigen::Index head, Eigen::Index pos, Eigen::Index neg, double margin) {
    const Eigen::Index e = net_.embeddings.cols();
    input_pos_ << net_.embeddings.row(head).transpose(), net_.embeddings.row(pos).transpose();
    input_neg_ << net_.embeddings.row(head).transpose(), net_.embeddings.row(neg).transpose();

    act_pos_ = (net_.hidden_weights * input_pos_ + net_.hidden_bias).array().tanh().matrix();
    act_neg_ = (net_.hidden_weights * input_neg_ + net_.hidden_bias).array().tanh().matrix();
    const double s_pos = net_.output_weights.dot(act_pos_) + net_.output_bias;
    const double s_neg = net_.output_weights.dot(act_neg_) + net_.output_bias;
    const double loss = margin - s_pos + s_neg;
    if (loss <= 0.0) return 0.0;

    // dL/ds+ = -1, dL/ds- = +1; the output bias cancels.
    delta_pos_ = (-net_.output_weights.array() * (1.0 - act_pos_.array().square())).matrix();
    delta_neg_ = (net_.output_weights.array() * (1.0 - act_neg_.array().square())).matrix();
    grad_in_pos_.noalias() = net_.hidden_weights.transpose() * delta_pos_;
    grad_in_neg_.noalias() = net_.hidden_weights.transpose() * delta_neg_;

    net_.output_weights -= lr_ * (act_neg_ - act_pos_);
    net_.hidden_weights.noalias() -= lr_ * (delta_pos_ * input_pos_.transpose());
    net_.hidden_weights.noalias() -= lr_ * (delta_neg_ * input_neg_.transpose());
    net_.hidden_bias -= lr_ * (delta_pos_ + delta_neg_);

    net_.embeddings.row(head) -= lr_ * (grad_in_pos_.head(e) + grad_in_neg_.head(e)).transpose();
    net_.embeddings.row(pos) -= lr_ * grad_in_pos_.tail(e).transpose();
    net_.embeddings.row(neg) -= lr_ * grad_in_neg_.tail(e).transpose();
    return loss;
  }

 private:
  RelationNetwork& net_;
  double lr_;
  Eigen::VectorXd input_pos_, input_neg_, act_pos_, act_neg_;
  Eigen::VectorXd delta_pos_, delta_neg_, grad_in_pos_, grad_in_neg_;
};

}  // namespace

NeuralModel nn_train(const std::vector<SPPair>& corpus_pairs, const NNConfig& config,
                     const Lexicon& vocabulary) {
  config.validate();
  if (corpus_pairs.empty()) {
    throw Error(ErrorCode::InsufficientData, "no training pairs");
  }

  std::vector<std::string> words;
  for (PartOfSpeech pos : {PartOfSpeech::Verb, PartOfSpeech::Noun, PartOfSpeech::Adjective}) {
    const auto& ws = vocabulary.words(pos);
    words.insert(words.end(), ws.begin(), ws.end());
  }
  std::sort(words.begin(), words.end());
  std::unordered_map<std::string, Eigen::Index> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], static_cast<Eigen::Index>(i));

  std::map<Relation, std::vector<Instance>> instances;
  for (const SPPair& p : corpus_pairs) {
    auto h = index.find(p.head());
    auto d = index.find(p.dependent());
    if (h == index.end() || d == index.end()) {
      throw Error(ErrorCode::InvalidConfig,
                  "training pair (" + p.head() + ", " + p.dependent() +
                      ") has a lemma outside the vocabulary");
    }
    instances[p.relation()].push_back({h->second, d->second});
  }

  Rng rng(config.seed);
  std::map<Relation, RelationNetwork> networks;
  for (auto& [relation, data] : instances) {
    const auto& pool_words = vocabulary.words(dependent_pos(relation));
    std::vector<Eigen::Index> pool;
    for (const auto& w : pool_words) pool.push_back(index.at(w));
    if (pool.empty()) {
      throw Error(ErrorCode::PoolTooSmall,
                  "no " + std::string(to_string(dependent_pos(relation))) +
                      " words to draw negatives from");
    }

    std::unordered_map<Eigen::Index, std::unordered_set<Eigen::Index>> attested;
    for (const Instance& inst : data) attested[inst.head].insert(inst.dependent);
    for (const auto& [head, deps] : attested) {
      std::size_t free = 0;
      for (Eigen::Index w : pool) free += deps.count(w) ? 0 : 1;
      if (free == 0) {
        throw Error(ErrorCode::PoolTooSmall,
                    "every candidate negative is attested with head '" + words[head] + "'");
      }
    }

    RelationNetwork net = init_network(static_cast<Eigen::Index>(words.size()), config, rng);
    Trainer trainer(net, config.learning_rate);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      shuffle(order, rng);
      double total = 0.0;
      std::size_t steps = 0;
      for (std::size_t i : order) {
        const Instance& inst = data[i];
        const auto& seen = attested[inst.head];
        for (int k = 0; k < config.negatives_per_positive; ++k) {
          Eigen::Index neg;
          do {
            neg = pool[uniform_index(rng, pool.size())];
          } while (seen.count(neg));
          total += trainer.step(inst.head, inst.dependent, neg, config.margin);
          ++steps;
        }
      }
      net.epoch_loss.push_back(total / static_cast<double>(steps));
    }
    networks.emplace(relation, std::move(net));
  }
  return NeuralModel(config, std::move(words), std::move(networks));
}

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", flat}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto flat = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(flat.size()) != rows * cols) {
    throw Error(ErrorCode::MalformedInput, "matrix data size does not match its shape");
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = flat[static_cast<std::size_t>(i * cols + c)];
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

void save_nn_model(const NeuralModel& model, const std::string& path, const json& run_config) {
  const NNConfig& c = model.config();
  json j;
  j["format"] = "sptk-nn";
  j["version"] = 1;
  j["config"] = {{"embedding_dim", c.embedding_dim}, {"hidden_dim", c.hidden_dim},
                 {"margin", c.margin},
                 {"negatives_per_positive", c.negatives_per_positive},
                 {"epochs", c.epochs},
                 {"learning_rate", c.learning_rate},
                 {"seed", c.seed},
                 {"activation", "tanh"},
                 {"optimizer", "sgd"}};
  j["vocabulary"] = model.vocabulary();
  json nets = json::object();
  for (const auto& [relation, net] : model.networks()) {
    nets[std::string(to_string(relation))] = {
        {"embeddings", matrix_to_json(net.embeddings)},
        {"hidden_weights", matrix_to_json(net.hidden_weights)},
        {"hidden_bias", vector_to_json(net.hidden_bias)},
        {"output_weights", vector_to_json(net.output_weights)},
        {"output_bias", net.output_bias},
        {"epoch_loss", net.epoch_loss}};
  }
  j["networks"] = nets;
  if (!run_config.is_null()) j["run_config"] = run_config;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write model", path);
  out << j.dump() << '\n';
}

NeuralModel load_nn_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open model", path);
  try {
    const json j = json::parse(in);
    if (j.at("format") != "sptk-nn" || j.at("version") != 1) {
      throw Error(ErrorCode::MalformedInput, "not an sptk-nn v1 model", path);
    }
    const json& jc = j.at("config");
    NNConfig c;
    c.embedding_dim = jc.at("embedding_dim").get<int>();
    c.hidden_dim = jc.at("hidden_dim").get<int>();
    c.margin = jc.at("margin").get<double>();
    c.negatives_per_positive = jc.at("negatives_per_positive").get<int>();
    c.epochs = jc.at("epochs").get<int>();
    c.learning_rate = jc.at("learning_rate").get<double>();
    c.seed = jc.at("seed").get<std::uint64_t>();
    auto vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    std::map<Relation, RelationNetwork> networks;
    for (const auto& [name, jn] : j.at("networks").items()) {
      RelationNetwork net;
      net.embeddings = matrix_from_json(jn.at("embeddings"));
      net.hidden_weights = matrix_from_json(jn.at("hidden_weights"));
      net.hidden_bias = vector_from_json(jn.at("hidden_bias"));
      net.output_weights = vector_from_json(jn.at("output_weights"));
      net.output_bias = jn.at("output_bias").get<double>();
      net.epoch_loss = jn.at("epoch_loss").get<std::vector<double>>();
      if (net.embeddings.rows() != static_cast<Eigen::Index>(vocabulary.size())) {
        throw Error(ErrorCode::MalformedInput, "embedding rows do not match vocabulary", path);
      }
      networks.emplace(parse_relation(name), std::move(net));
    }
    return NeuralModel(c, std::move(vocabulary), std::move(networks));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, e.what(), path);
  }
}

}  // namespace sptk
