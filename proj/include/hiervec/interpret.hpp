#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hiervec/hierarchical.hpp"
#include "hiervec/syntax.hpp"

namespace hiervec {

// word -> gold class label set, labels as canonical class indices sorted
// ascending (canonical order is also the tie-break order).
struct PosOracle {
  std::unordered_map<std::string, std::vector<int>> entries;
  std::vector<int> label_universe;  // sorted distinct labels present
};

// word<TAB>label[,label...]
PosOracle load_oracle_tsv(const std::string& path);

// Index of the coordinate equal to the maximum (1.0 for Interpretable);
// ties broken by lowest canonical index. Requires the Interpretable variant.
int predict_label(const SyntacticRepr& s);

struct ConfusionMatrix {
  std::vector<std::string> row_names;  // gold classes
  std::vector<std::string> col_names;  // predicted classes (+ "other")
  Eigen::MatrixXi counts;
  int total() const { return counts.sum(); }
  int trace() const;
  double accuracy() const;  // trace / total
  double precision(int c) const;
  double recall(int c) const;
  double f1(int c) const;
};

enum class ClassificationMode { Partial, Complete };

// Partial: single-label words only. Complete: all words, correct when the
// prediction is in the gold set; wrong predictions are attributed to the
// first gold label in canonical order. Predictions outside the oracle's
// label universe land in the "other" column.
ConfusionMatrix word_classification(const SyntacticTable& reps,
                                    const PosOracle& oracle,
                                    ClassificationMode mode);

// fine tag -> canonical class index, from a two-column TSV.
std::unordered_map<std::string, int> load_tag_map(const std::string& path);

// word<TAB>fine-tag corpus conflated through the mapping into an oracle.
PosOracle conflate_tags(
    const std::vector<std::pair<std::string, std::string>>& tagged,
    const std::unordered_map<std::string, int>& mapping);

std::vector<std::pair<std::string, std::string>> load_tagged_tsv(
    const std::string& path);

// k highest-valued words per canonical dimension from Absolute coordinates,
// ties by token order.
std::array<std::vector<std::pair<std::string, double>>, kNumPos>
top_k_per_dimension(const SyntacticTable& reps, int k);

// 2D projection of the sampled words, written as CSV (word,x,y,label)
// and an SVG scatter colored per class.
void export_space_2d(const VectorTable& vecs,
                     const std::vector<std::pair<std::string, int>>& sample,
                     const std::string& csv_path,
                     const std::string& svg_path);

// Mean inter-centroid distance over mean intra-class spread.
double centroid_separation_ratio(const Eigen::MatrixXd& points,
                                 const std::vector<int>& labels);

}  // namespace hiervec
