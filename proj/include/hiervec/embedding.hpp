#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hiervec {

using MatrixXfRM =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Vocabulary-indexed dense matrix of pretrained vectors, V rows x dim cols.
// Storage is 32-bit; downstream arithmetic promotes to double.
struct EmbeddingMatrix {
  std::vector<std::string> vocab;
  int dim = 0;
  MatrixXfRM data;
  std::unordered_map<std::string, int> index;

  int rows() const { return static_cast<int>(vocab.size()); }
  std::optional<int> row_of(const std::string& word) const;
  std::optional<Eigen::VectorXd> lookup(const std::string& word) const;
  Eigen::VectorXd row_as_double(int r) const;
  void rebuild_index();
};

std::unordered_set<std::string> load_vocab_filter(const std::string& path);

EmbeddingMatrix load_word2vec_binary(
    const std::string& path,
    const std::unordered_set<std::string>* restrict = nullptr);

EmbeddingMatrix load_glove_text(
    const std::string& path,
    const std::unordered_set<std::string>* restrict = nullptr);

void save_word2vec_binary(const EmbeddingMatrix& m, const std::string& path);
void save_glove_text(const EmbeddingMatrix& m, const std::string& path);

}  // namespace hiervec
