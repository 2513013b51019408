#include "hiervec/evaluation.hpp"

#include <cmath>
#include <limits>

#include "hiervec/error.hpp"
#include "hiervec/linalg.hpp"

namespace hiervec {

Eigen::VectorXd sentence_features(const std::vector<std::string>& tokens,
                                  const VectorTable& vecs, bool* all_oov) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(vecs.dim());
  int count = 0;
  for (const auto& tok : tokens) {
    auto r = vecs.row_of(tok);
    if (!r) continue;
    sum += vecs.data.row(*r).transpose();
    ++count;
  }
  if (all_oov) *all_oov = count == 0;
  if (count == 0) return sum;
  return sum / static_cast<double>(count);
}

namespace {

void featurize(const std::vector<LabeledDoc>& docs, const VectorTable& vecs,
               Eigen::MatrixXd* X, std::vector<int>* y, int* zero_flags) {
  *X = Eigen::MatrixXd(static_cast<Eigen::Index>(docs.size()), vecs.dim());
  y->clear();
  for (size_t i = 0; i < docs.size(); ++i) {
    bool all_oov = false;
    X->row(static_cast<Eigen::Index>(i)) =
        sentence_features(docs[i].tokens, vecs, &all_oov).transpose();
    if (all_oov) ++(*zero_flags);
    y->push_back(docs[i].label);
  }
}

double run_splits(const std::vector<LabeledDoc>& train,
                  const std::vector<LabeledDoc>& val,
                  const std::vector<LabeledDoc>& test, int n_classes,
                  const VectorTable& vecs, const TrainOptions& opts,
                  std::string* model_desc, int* zero_flags) {
  Eigen::MatrixXd Xtr, Xval, Xte;
  std::vector<int> ytr, yval, yte;
  int zeros = 0;
  featurize(train, vecs, &Xtr, &ytr, &zeros);
  featurize(val, vecs, &Xval, &yval, &zeros);
  featurize(test, vecs, &Xte, &yte, &zeros);
  if (zero_flags) *zero_flags += zeros;
  LinearModel model = train_linear(opts, Xtr, ytr, Xval, yval, n_classes);
  if (model_desc) *model_desc = model.desc;
  return 100.0 * accuracy(model, Xte, yte);
}

}  // namespace

TaskResult run_classification(const std::string& name,
                              const LabeledTextDataset& ds,
                              const VectorTable& vecs,
                              const TrainOptions& opts) {
  TaskResult res;
  res.task = name;
  res.train_n = static_cast<int>(ds.train.size());
  res.val_n = static_cast<int>(ds.val.size());
  res.test_n = static_cast<int>(ds.test.size());
  res.accuracy = run_splits(ds.train, ds.val, ds.test,
                            static_cast<int>(ds.class_names.size()), vecs,
                            opts, &res.model, &res.zero_features);
  return res;
}

TaskResult run_np_bracketing(const LabeledTextDataset& ds,
                             const VectorTable& vecs,
                             const TrainOptions& opts) {
  LabeledTextDataset filtered;
  filtered.class_names = ds.class_names;
  int skipped = 0;
  auto keep = [&skipped](const std::vector<LabeledDoc>& src,
                         std::vector<LabeledDoc>* dst) {
    for (const auto& d : src) {
      if (d.tokens.size() == 3) dst->push_back(d);
      else ++skipped;
    }
  };
  keep(ds.train, &filtered.train);
  keep(ds.val, &filtered.val);
  keep(ds.test, &filtered.test);
  TaskResult res = run_classification("np_bracketing", filtered, vecs, opts);
  res.skipped = skipped;
  return res;
}

TaskResult run_discriminative(const std::vector<Triplet>& triplets,
                              const VectorTable& vecs, double theta) {
  TaskResult res;
  res.task = "discriminative";
  res.test_n = static_cast<int>(triplets.size());
  int correct = 0;
  for (const auto& t : triplets) {
    auto a = vecs.lookup(t.attribute);
    auto c1 = vecs.lookup(t.concept1);
    auto c2 = vecs.lookup(t.concept2);
    int pred = 0;
    if (a && c1 && c2) {
      pred = cosine(*a, *c1) - cosine(*a, *c2) > theta ? 1 : 0;
    } else {
      ++res.skipped;  // OOV triplet, predicted negative
    }
    if (pred == t.label) ++correct;
  }
  res.accuracy = 100.0 * correct / static_cast<double>(triplets.size());
  res.model = "cosine-threshold";
  return res;
}

SimilarityResult run_word_similarity(const SimilarityDataset& ds,
                                     const VectorTable& vecs) {
  SimilarityResult res;
  res.total_pairs = static_cast<int>(ds.pairs.size());
  std::vector<double> human, model;
  for (const auto& [w1, w2, score] : ds.pairs) {
    auto v1 = vecs.lookup(w1);
    auto v2 = vecs.lookup(w2);
    if (!v1 || !v2) continue;
    human.push_back(score);
    model.push_back(cosine(*v1, *v2));
  }
  res.used_pairs = static_cast<int>(human.size());
  if (res.used_pairs < 2)
    throw Error("word similarity: fewer than 2 in-vocabulary pairs");
  res.rho_percent = 100.0 * spearman_rho(human, model);
  return res;
}

TTestResult corrected_paired_ttest(const std::vector<double>& a,
                                   const std::vector<double>& b,
                                   double n_train, double n_test) {
  if (a.size() != b.size()) throw Error("corrected_paired_ttest: length mismatch");
  const size_t k = a.size();
  if (k < 2) throw Error("corrected_paired_ttest: need at least 2 runs");
  if (n_train <= 0) throw Error("corrected_paired_ttest: n_train must be positive");
  double mean = 0.0;
  for (size_t i = 0; i < k; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(k);
  double var = 0.0;
  for (size_t i = 0; i < k; ++i) {
    const double d = a[i] - b[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(k - 1);

  TTestResult res;
  if (var == 0.0) {
    if (mean == 0.0) {
      res.t = 0.0;
      res.p = 0.5;
    } else {
      res.t = mean > 0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
      res.p = mean > 0 ? 1.0 : 0.0;
    }
    return res;
  }
  const double correction = 1.0 / static_cast<double>(k) + n_test / n_train;
  res.t = mean / std::sqrt(correction * var);
  res.p = student_t_cdf(res.t, static_cast<int>(k) - 1);
  return res;
}

SignificanceRow significance_protocol(const LabeledTextDataset& ds,
                                      const VectorTable& vecs_a,
                                      const VectorTable& vecs_b, int k,
                                      uint64_t seed,
                                      const TrainOptions& opts) {
  if (k < 2) throw Error("significance_protocol: need at least 2 runs");
  std::vector<LabeledDoc> pool;
  pool.insert(pool.end(), ds.train.begin(), ds.train.end());
  pool.insert(pool.end(), ds.val.begin(), ds.val.end());
  pool.insert(pool.end(), ds.test.begin(), ds.test.end());
  const size_t n_train = ds.train.size();
  const size_t n_val = ds.val.size();
  const int n_classes = static_cast<int>(ds.class_names.size());

  SignificanceRow row;
  for (int run = 0; run < k; ++run) {
    auto order = shuffled_indices(pool.size(),
                                  seed + 0x9e3779b9ULL * (run + 1));
    std::vector<LabeledDoc> train, val, test;
    for (size_t i = 0; i < pool.size(); ++i) {
      const LabeledDoc& d = pool[order[i]];
      if (i < n_train) train.push_back(d);
      else if (i < n_train + n_val) val.push_back(d);
      else test.push_back(d);
    }
    row.runs_a.push_back(run_splits(train, val, test, n_classes, vecs_a, opts,
                                    nullptr, nullptr));
    row.runs_b.push_back(run_splits(train, val, test, n_classes, vecs_b, opts,
                                    nullptr, nullptr));
  }

  auto mean_sd = [](const std::vector<double>& v, double* mean, double* sd) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    s = v.size() > 1 ? std::sqrt(s / static_cast<double>(v.size() - 1)) : 0.0;
    *mean = m;
    *sd = s;
  };
  mean_sd(row.runs_a, &row.mean_a, &row.sd_a);
  mean_sd(row.runs_b, &row.mean_b, &row.sd_b);
  const size_t n_test = pool.size() - n_train - n_val;
  TTestResult t = corrected_paired_ttest(row.runs_a, row.runs_b,
                                         static_cast<double>(n_train + n_val),
                                         static_cast<double>(n_test));
  row.t = t.t;
  row.p = t.p;
  return row;
}

std::vector<std::pair<int, double>> size_sweep(
    const std::vector<int>& sizes, const VecsBuilder& builder,
    const std::function<double(const VectorTable&)>& task) {
  if (sizes.empty()) throw Error("size_sweep: empty size list");
  std::vector<std::pair<int, double>> out;
  for (int n : sizes) out.emplace_back(n, task(builder(n)));
  return out;
}

}  // namespace hiervec
