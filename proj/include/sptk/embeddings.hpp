#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sptk {

// Word vectors of one fixed dimension, stored contiguously.
class EmbeddingTable {
 public:
  using ConstVector = Eigen::Map<const Eigen::VectorXd>;

  explicit EmbeddingTable(Eigen::Index dim = 0) : dim_(dim) {}

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  bool contains(const std::string& word) const { return index_.count(word) > 0; }

  // Returns false (and leaves the table unchanged) if `word` is already present.
  // Throws on a dimension mismatch or a non-finite component.
  bool add(const std::string& word, const Eigen::Ref<const Eigen::VectorXd>& v);

  std::optional<ConstVector> find(const std::string& word) const;

  const std::vector<std::string>& words() const { return words_; }

 private:
  Eigen::Index dim_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
};

// GloVe text format: `word v1 ... vd`, space separated. Duplicate words keep
// the first occurrence. Words are lowercased.
EmbeddingTable load_embeddings(const std::string& path);

double cosine_impl(double dot, double norm_a_sq, double norm_b_sq);

// Cosine similarity in [-1, 1]. Throws Error(ZeroNorm) if either vector is zero.
template <typename A, typename B>
double cosine(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return cosine_impl(a.dot(b), a.squaredNorm(), b.squaredNorm());
}

}  // namespace sptk
