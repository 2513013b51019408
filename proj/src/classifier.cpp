#include "hiervec/classifier.hpp"

#include <cmath>

#include "hiervec/datasets.hpp"
#include "hiervec/error.hpp"

namespace hiervec {

namespace {

const char* loss_name(Loss l) {
  return l == Loss::Logistic ? "logistic" : "hinge";
}

}  // namespace

LinearModel fit_logistic(const Eigen::MatrixXd& X, const std::vector<int>& y,
                         int n_classes, double l2, int epochs, double lr) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n == 0) throw Error("fit_logistic: empty training set");
  LinearModel m;
  m.loss = Loss::Logistic;
  m.l2 = l2;
  m.W = Eigen::MatrixXd::Zero(n_classes, d);
  m.b = Eigen::VectorXd::Zero(n_classes);

  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, n_classes);
  for (Eigen::Index i = 0; i < n; ++i) onehot(i, y[static_cast<size_t>(i)]) = 1.0;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    Eigen::MatrixXd Z = X * m.W.transpose();
    Z.rowwise() += m.b.transpose();
    // row-wise softmax, shifted for stability
    Eigen::VectorXd rowmax = Z.rowwise().maxCoeff();
    Z.colwise() -= rowmax;
    Eigen::MatrixXd P = Z.array().exp().matrix();
    Eigen::VectorXd rowsum = P.rowwise().sum();
    P.array().colwise() /= rowsum.array();

    Eigen::MatrixXd diff = P - onehot;
    Eigen::MatrixXd gW = diff.transpose() * X / static_cast<double>(n) +
                         l2 * m.W;
    Eigen::VectorXd gb = diff.colwise().sum().transpose() /
                         static_cast<double>(n);
    const double step = lr / (1.0 + 0.01 * epoch);
    m.W -= step * gW;
    m.b -= step * gb;
    if (!m.W.allFinite() || !m.b.allFinite())
      throw Error("fit_logistic: non-finite parameters at epoch " +
                  std::to_string(epoch) + " (lr=" + std::to_string(lr) +
                  ", l2=" + std::to_string(l2) + ")");
  }
  m.desc = std::string(loss_name(m.loss)) + " l2=" + std::to_string(l2);
  return m;
}

LinearModel fit_svm(const Eigen::MatrixXd& X, const std::vector<int>& y,
                    int n_classes, double l2, int epochs, double lr,
                    uint64_t seed) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (n == 0) throw Error("fit_svm: empty training set");
  LinearModel m;
  m.loss = Loss::Hinge;
  m.l2 = l2;
  m.W = Eigen::MatrixXd::Zero(n_classes, d);
  m.b = Eigen::VectorXd::Zero(n_classes);

  for (int k = 0; k < n_classes; ++k) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    double b = 0.0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
      auto order = shuffled_indices(static_cast<size_t>(n),
                                    seed + 1315423911ULL * (epoch + 1) + k);
      const double step = lr / (1.0 + 0.1 * epoch);
      for (size_t idx : order) {
        const double target = y[idx] == k ? 1.0 : -1.0;
        const auto x = X.row(static_cast<Eigen::Index>(idx));
        const double margin = target * (x.dot(w) + b);
        w *= (1.0 - step * l2);
        if (margin < 1.0) {
          w += step * target * x.transpose();
          b += step * target;
        }
      }
    }
    if (!w.allFinite() || !std::isfinite(b))
      throw Error("fit_svm: non-finite parameters for class " +
                  std::to_string(k));
    m.W.row(k) = w.transpose();
    m.b(k) = b;
  }
  m.desc = std::string(loss_name(m.loss)) + " l2=" + std::to_string(l2);
  return m;
}

int predict(const LinearModel& m, const Eigen::VectorXd& x) {
  Eigen::VectorXd scores = m.W * x + m.b;
  Eigen::Index best = 0;
  scores.maxCoeff(&best);
  return static_cast<int>(best);
}

double accuracy(const LinearModel& m, const Eigen::MatrixXd& X,
                const std::vector<int>& y) {
  if (X.rows() == 0) return 0.0;
  int correct = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    if (predict(m, X.row(i).transpose()) == y[static_cast<size_t>(i)])
      ++correct;
  return static_cast<double>(correct) / static_cast<double>(X.rows());
}

LinearModel train_linear(const TrainOptions& opts, const Eigen::MatrixXd& Xtr,
                         const std::vector<int>& ytr,
                         const Eigen::MatrixXd& Xval,
                         const std::vector<int>& yval, int n_classes) {
  if (n_classes < 2) throw Error("train_linear: need at least 2 classes");
  {
    bool multi = false;
    for (int label : ytr)
      if (label != ytr[0]) { multi = true; break; }
    if (!multi) throw Error("train_linear: single-class training set");
  }
  LinearModel best;
  double best_val = -1.0;
  for (Loss loss : opts.losses) {
    for (double l2 : opts.l2_grid) {
      LinearModel cand =
          loss == Loss::Logistic
              ? fit_logistic(Xtr, ytr, n_classes, l2, opts.epochs, opts.lr)
              : fit_svm(Xtr, ytr, n_classes, l2, opts.epochs, opts.lr,
                        opts.seed);
      const double val =
          Xval.rows() > 0 ? accuracy(cand, Xval, yval)
                          : accuracy(cand, Xtr, ytr);
      if (val > best_val) {
        best_val = val;
        best = std::move(cand);
      }
    }
  }
  return best;
}

}  // namespace hiervec
