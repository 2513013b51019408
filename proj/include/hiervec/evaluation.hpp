#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "hiervec/classifier.hpp"
#include "hiervec/datasets.hpp"
#include "hiervec/hierarchical.hpp"

namespace hiervec {

// Mean of the vectors of in-vocabulary tokens; all-OOV input yields the
// zero vector with the flag set.
Eigen::VectorXd sentence_features(const std::vector<std::string>& tokens,
                                 const VectorTable& vecs,
                                 bool* all_oov = nullptr);

struct TaskResult {
  std::string task;
  double accuracy = 0.0;  // percent
  std::string model;
  int train_n = 0, val_n = 0, test_n = 0;
  int skipped = 0;       // items dropped (e.g. non-3-token phrases)
  int zero_features = 0; // all-OOV feature rows across the splits
};

TaskResult run_classification(const std::string& name,
                              const LabeledTextDataset& ds,
                              const VectorTable& vecs,
                              const TrainOptions& opts);

// Same as run_classification but phrases must be exactly 3 tokens;
// others are skipped and counted.
TaskResult run_np_bracketing(const LabeledTextDataset& ds,
                             const VectorTable& vecs,
                             const TrainOptions& opts);

// Unsupervised cosine rule over the whole dataset: positive iff
// cosine(attribute, concept1) - cosine(attribute, concept2) > theta.
// Triplets with any OOV word are predicted negative and counted.
TaskResult run_discriminative(const std::vector<Triplet>& triplets,
                              const VectorTable& vecs, double theta = 0.0);

struct SimilarityResult {
  double rho_percent = 0.0;
  int used_pairs = 0, total_pairs = 0;
};

SimilarityResult run_word_similarity(const SimilarityDataset& ds,
                                     const VectorTable& vecs);

struct TTestResult {
  double t = 0.0;
  double p = 0.5;
};

// Nadeau-Bengio corrected paired t-test over per-run score differences
// a_i - b_i; p is the lower-tail probability with k-1 degrees of freedom.
TTestResult corrected_paired_ttest(const std::vector<double>& a,
                                   const std::vector<double>& b,
                                   double n_train, double n_test);

struct SignificanceRow {
  double mean_a = 0, sd_a = 0, mean_b = 0, sd_b = 0;
  double t = 0, p = 0.5;
  std::vector<double> runs_a, runs_b;
};

// k random resamplings of the pooled documents at the dataset's split
// ratio; each run trains and tests both vector sets on the same resample.
SignificanceRow significance_protocol(const LabeledTextDataset& ds,
                                      const VectorTable& vecs_a,
                                      const VectorTable& vecs_b, int k,
                                      uint64_t seed, const TrainOptions& opts);

// Builds vectors per word-list size n and re-runs the task.
using VecsBuilder = std::function<VectorTable(int n)>;
std::vector<std::pair<int, double>> size_sweep(
    const std::vector<int>& sizes, const VecsBuilder& builder,
    const std::function<double(const VectorTable&)>& task);

}  // namespace hiervec
