#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hiervec/embedding.hpp"
#include "hiervec/syntax.hpp"

namespace hiervec {

enum class HierKind { Overcomplete, Weighted };

const char* kind_name(HierKind k);
HierKind parse_kind(const std::string& s);

// Generic word -> dense vector table used by composition and evaluation.
struct VectorTable {
  std::vector<std::string> words;
  Eigen::MatrixXd data;  // N x D
  std::unordered_map<std::string, int> index;

  int rows() const { return static_cast<int>(words.size()); }
  int dim() const { return static_cast<int>(data.cols()); }
  std::optional<int> row_of(const std::string& word) const;
  std::optional<Eigen::VectorXd> lookup(const std::string& word) const;
  void rebuild_index();
};

VectorTable to_table(const EmbeddingMatrix& m);

// Kronecker product s (x) r: block i of length L equals coords[i] * r,
// blocks in canonical class order.
Eigen::VectorXd overcomplete(const SyntacticRepr& s, const Eigen::VectorXd& r);

// Element-wise weighted average: mean(coords) * r.
Eigen::VectorXd weighted(const SyntacticRepr& s, const Eigen::VectorXd& r);

struct ComposeStats {
  int missing = 0;  // words of reps without an embedding row, and vice versa
};

// One composite per word of reps that also has an embedding row,
// in the reps' word order.
VectorTable compose_all(const SyntacticTable& reps, const EmbeddingMatrix& m,
                        HierKind kind, ComposeStats* stats = nullptr);

// word<TAB>floats
void save_vector_table(const VectorTable& t, const std::string& path);
VectorTable load_vector_table(const std::string& path);

}  // namespace hiervec
