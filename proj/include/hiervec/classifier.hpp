#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace hiervec {

enum class Loss { Logistic, Hinge };

struct LinearModel {
  Eigen::MatrixXd W;  // classes x D
  Eigen::VectorXd b;  // classes
  Loss loss = Loss::Logistic;
  double l2 = 0.0;
  std::string desc;
};

struct TrainOptions {
  int epochs = 200;
  double lr = 0.5;
  std::vector<double> l2_grid = {1e-4, 1e-3, 1e-2};
  std::vector<Loss> losses = {Loss::Logistic, Loss::Hinge};
  uint64_t seed = 0;
};

// Multinomial logistic regression: cross-entropy + L2, full-batch gradient
// descent with a fixed 1/(1+epoch) schedule.
LinearModel fit_logistic(const Eigen::MatrixXd& X,
                         const std::vector<int>& y, int n_classes, double l2,
                         int epochs, double lr);

// One-vs-rest linear SVM: hinge + L2, SGD with deterministic epoch shuffles.
LinearModel fit_svm(const Eigen::MatrixXd& X, const std::vector<int>& y,
                    int n_classes, double l2, int epochs, double lr,
                    uint64_t seed);

int predict(const LinearModel& m, const Eigen::VectorXd& x);
double accuracy(const LinearModel& m, const Eigen::MatrixXd& X,
                const std::vector<int>& y);

// Fits every (loss, l2) cell of the grid and returns the model with the
// highest validation accuracy (first in grid order on ties).
LinearModel train_linear(const TrainOptions& opts, const Eigen::MatrixXd& Xtr,
                         const std::vector<int>& ytr,
                         const Eigen::MatrixXd& Xval,
                         const std::vector<int>& yval, int n_classes);

}  // namespace hiervec
