#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace hiervec {

struct SvdResult {
  Eigen::MatrixXd U;   // m x r
  Eigen::VectorXd S;   // r, non-increasing
  Eigen::MatrixXd Vt;  // r x n
};

SvdResult svd(const Eigen::MatrixXd& M);

// Moore-Penrose pseudoinverse via SVD. Singular values below
// max(m,n) * sigma_max * eps are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& M);

struct ConditionNumber {
  double value = 0.0;
  bool exceeds_cap = false;
  double cap = 1e5;
  std::string str() const;
};

// sigma_max / (smallest singular value > tol). If no singular value
// exceeds tol, or the ratio exceeds cap, the result is reported as "> cap".
ConditionNumber condition_number(const Eigen::VectorXd& S, double tol,
                                 double cap = 1e5);

// Zero-vector arguments yield 0 by definition.
double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Fractional (average) ranks, 1-based.
std::vector<double> average_ranks(const std::vector<double>& x);

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

// Rows centered and projected onto the top-2 right singular vectors.
Eigen::MatrixXd pca_2d(const Eigen::MatrixXd& X);

// Lower-tail probability P(T <= t) for Student's t with df degrees of freedom.
double student_t_cdf(double t, int df);

// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace hiervec
