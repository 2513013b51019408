#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hiervec/embedding.hpp"
#include "hiervec/lexicon.hpp"

namespace hiervec {

enum class Variant { Absolute, Interpretable, L2 };

const char* variant_name(Variant v);
Variant parse_variant(const std::string& s);

// Denominator used for each class row: the class word count (mean vector)
// or the embedding vocabulary size. ClassMean is the default subspace;
// VocabCount is available for fidelity experiments.
enum class RowScaling { ClassMean, VocabCount };

// 8 x L matrix whose row i is the averaged vector of class i, with the
// pseudoinverse of its transpose cached for projection.
struct TransitionMatrix {
  Eigen::MatrixXd rows;    // 8 x L
  Eigen::MatrixXd pinv_t;  // 8 x L, pseudoinverse of rows^T
  std::array<int, kNumPos> source_counts{};
};

TransitionMatrix build_transition_matrix(
    const EmbeddingMatrix& m, const PosLexicon& lex,
    RowScaling scaling = RowScaling::ClassMean);

struct SyntacticRepr {
  Eigen::Matrix<double, kNumPos, 1> coords;
  Variant variant = Variant::Absolute;
};

SyntacticRepr project(const Eigen::VectorXd& word_vec,
                      const TransitionMatrix& C);

SyntacticRepr normalize_interpretable(const SyntacticRepr& s);
SyntacticRepr normalize_l2(const SyntacticRepr& s);

struct SyntacticTable {
  std::vector<std::string> words;
  Eigen::MatrixXd coords;  // N x 8
  Variant variant = Variant::Absolute;
  std::unordered_map<std::string, int> index;

  int rows() const { return static_cast<int>(words.size()); }
  std::optional<SyntacticRepr> lookup(const std::string& word) const;
  void rebuild_index();
};

// One representation per word of m (or per word of word_set when given),
// in vocabulary order.
SyntacticTable project_all(
    const EmbeddingMatrix& m, const TransitionMatrix& C, Variant variant,
    const std::unordered_set<std::string>* word_set = nullptr);

// word<TAB>8 floats<TAB>variant
void save_syntactic_text(const SyntacticTable& t, const std::string& path);
SyntacticTable load_syntactic_text(const std::string& path);

void save_syntactic_binary(const SyntacticTable& t, const std::string& path);
SyntacticTable load_syntactic_binary(const std::string& path);

}  // namespace hiervec
