#include "hiervec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hiervec/error.hpp"

namespace hiervec {

SvdResult svd(const Eigen::MatrixXd& M) {
  if (!M.allFinite()) throw Error("svd: non-finite input");
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(M,
      Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out;
  out.U = dec.matrixU();
  out.S = dec.singularValues();
  out.Vt = dec.matrixV().transpose();
  return out;
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& M) {
  if (!M.allFinite()) throw Error("pseudoinverse: non-finite input");
  SvdResult d = svd(M);
  const double eps = std::numeric_limits<double>::epsilon();
  const double sigma_max = d.S.size() > 0 ? d.S(0) : 0.0;
  const double tol =
      static_cast<double>(std::max(M.rows(), M.cols())) * sigma_max * eps;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(d.S.size());
  for (Eigen::Index i = 0; i < d.S.size(); ++i) {
    if (d.S(i) > tol) inv(i) = 1.0 / d.S(i);
  }
  return d.Vt.transpose() * inv.asDiagonal() * d.U.transpose();
}

std::string ConditionNumber::str() const {
  if (exceeds_cap) return "> " + std::to_string(static_cast<long long>(cap));
  return std::to_string(value);
}

ConditionNumber condition_number(const Eigen::VectorXd& S, double tol,
                                 double cap) {
  if (S.size() == 0) throw Error("condition_number: empty singular values");
  if (S.maxCoeff() <= 0.0) throw Error("condition_number: all-zero spectrum");
  ConditionNumber out;
  out.cap = cap;
  double eff_min = -1.0;
  for (Eigen::Index i = S.size() - 1; i >= 0; --i) {
    if (S(i) > tol) {
      eff_min = S(i);
      break;
    }
  }
  if (eff_min <= 0.0) {
    out.exceeds_cap = true;
    out.value = cap;
    return out;
  }
  out.value = S(0) / eff_min;
  out.exceeds_cap = out.value > cap;
  return out;
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw Error("cosine: length mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

std::vector<double> average_ranks(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    // ties share the average of positions i..j (1-based)
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("spearman_rho: length mismatch");
  if (x.size() < 2) throw Error("spearman_rho: need at least 2 points");
  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  const size_t n = rx.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error("spearman_rho: constant input series");
  return sxy / std::sqrt(sxx * syy);
}

Eigen::MatrixXd pca_2d(const Eigen::MatrixXd& X) {
  if (X.cols() < 2) throw Error("pca_2d: need at least 2 columns");
  if (X.rows() < 2) throw Error("pca_2d: need at least 2 rows");
  Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
  SvdResult d = svd(centered);
  return centered * d.Vt.topRows(2).transpose();
}

namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double betacf(double a, double b, double x) {
  const double fpmin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-14) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log(1.0 - x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, int df) {
  if (df < 1) throw Error("student_t_cdf: df must be >= 1");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double v = static_cast<double>(df);
  const double x = v / (v + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(v / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

}  // namespace hiervec
