#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pslab::stats {

/// The design matrix does not have full column rank.
class SingularDesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RegressionFit {
  std::vector<std::string> labels;
  std::vector<double> coefficients;
  double r_squared{0.0};
  double adj_r_squared{0.0};
  double residual_ss{0.0};
  double total_ss{0.0};
  std::vector<double> fitted;
  std::vector<double> residuals;

  [[nodiscard]] std::size_t observations() const noexcept { return fitted.size(); }
};

namespace detail {

inline void fill_goodness(RegressionFit& fit, std::span<const double> y, std::size_t columns) {
  const std::size_t n = y.size();
  double mean = 0.0;
  for (const double v : y) mean += v;
  mean /= static_cast<double>(n);
  fit.total_ss = 0.0;
  fit.residual_ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.total_ss += (y[i] - mean) * (y[i] - mean);
    fit.residual_ss += fit.residuals[i] * fit.residuals[i];
  }
  // No variation to explain: reported as 0.
  if (fit.total_ss == 0.0) {
    fit.r_squared = 0.0;
    fit.adj_r_squared = 0.0;
    return;
  }
  fit.r_squared = std::clamp(1.0 - fit.residual_ss / fit.total_ss, 0.0, 1.0);
  // A saturated fit has no residual degrees of freedom; adjusted R^2 falls
  // back to R^2.
  if (n > columns) {
    fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * static_cast<double>(n - 1) /
                                  static_cast<double>(n - columns);
  } else {
    fit.adj_r_squared = fit.r_squared;
  }
}

// Least squares on a column-equilibrated copy of `design`; returns the
// coefficients in the caller's scaling.
inline Eigen::VectorXd solve_scaled(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (scale(j) == 0.0) throw SingularDesignError("ols: design column " + std::to_string(j) + " is zero");
  }
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(1e-12);
  if (qr.rank() < scaled.cols()) {
    throw SingularDesignError("ols: design matrix is rank deficient (rank " +
                              std::to_string(qr.rank()) + " of " + std::to_string(scaled.cols()) + ")");
  }
  return qr.solve(y).cwiseQuotient(scale);
}

}  // namespace detail

/// Ordinary least squares of `y` on the columns of `design` (the caller adds
/// an intercept column when wanted). Solved by column-pivoted Householder QR
/// after scaling each column to unit norm.
inline RegressionFit ols_fit(const Eigen::MatrixXd& design, std::span<const double> y,
                             std::vector<std::string> labels = {}) {
  const auto rows = static_cast<std::size_t>(design.rows());
  const auto cols = static_cast<std::size_t>(design.cols());
  if (rows != y.size()) throw std::invalid_argument("ols: design rows and responses differ");
  if (cols == 0) throw std::invalid_argument("ols: empty design");
  if (rows < cols) throw std::invalid_argument("ols: fewer observations than regressors");

  const Eigen::VectorXd response = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  const Eigen::VectorXd beta = detail::solve_scaled(design, response);
  const Eigen::VectorXd fitted = design * beta;

  RegressionFit fit;
  fit.labels = std::move(labels);
  if (fit.labels.empty()) {
    for (std::size_t j = 0; j < cols; ++j) fit.labels.push_back("x" + std::to_string(j));
  }
  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.fitted.assign(fitted.data(), fitted.data() + fitted.size());
  fit.residuals.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) fit.residuals[i] = y[i] - fit.fitted[i];
  detail::fill_goodness(fit, y, cols);
  return fit;
}

/// y = b0 + b1 * n log2 n.
inline RegressionFit fit_nlogn(std::span<const double> n, std::span<const double> y) {
  if (n.size() != y.size()) throw std::invalid_argument("fit_nlogn: size mismatch");
  if (n.size() < 3) throw std::invalid_argument("fit_nlogn: need at least 3 points");
  Eigen::MatrixXd design(static_cast<Eigen::Index>(n.size()), 2);
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] >= 2.0)) throw std::invalid_argument("fit_nlogn: n must be >= 2");
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = n[i] * std::log2(n[i]);
  }
  return ols_fit(design, y, {"1", "n*log2(n)"});
}

/// Evaluates a polynomial with coefficients in ascending powers.
inline double poly_eval(std::span<const double> coefficients, double x) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Least-squares polynomial of degree `degree`. The fit runs on
/// t = (x - center) / halfwidth and the coefficients are expanded back to
/// powers of x, ascending.
inline RegressionFit fit_poly(std::span<const double> x, std::span<const double> y, int degree) {
  if (degree < 1) throw std::invalid_argument("fit_poly: degree must be >= 1");
  if (x.size() != y.size()) throw std::invalid_argument("fit_poly: size mismatch");
  const auto terms = static_cast<std::size_t>(degree) + 1;
  if (x.size() < terms) throw std::invalid_argument("fit_poly: need at least degree + 1 points");
  if (std::set<double>(x.begin(), x.end()).size() < terms) {
    throw std::invalid_argument("fit_poly: need at least degree + 1 distinct x values");
  }

  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double center = 0.5 * (*lo + *hi);
  const double halfwidth = 0.5 * (*hi - *lo);

  const auto rows = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(terms));
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = (x[static_cast<std::size_t>(i)] - center) / halfwidth;
    double power = 1.0;
    for (std::size_t j = 0; j < terms; ++j) {
      design(i, static_cast<Eigen::Index>(j)) = power;
      power *= t;
    }
  }
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < terms; ++j) labels.push_back(j == 0 ? "1" : "x^" + std::to_string(j));
  RegressionFit fit = ols_fit(design, y, std::move(labels));

  // sum_j b_j ((x - c) / h)^j  ->  sum_k a_k x^k
  const std::vector<double> in_t = fit.coefficients;
  std::vector<double> in_x(terms, 0.0);
  for (std::size_t j = 0; j < terms; ++j) {
    const double bj = in_t[j] / std::pow(halfwidth, static_cast<double>(j));
    double binom = 1.0;  // C(j, k)
    for (std::size_t k = 0; k <= j; ++k) {
      in_x[k] += bj * binom * std::pow(-center, static_cast<double>(j - k));
      binom = binom * static_cast<double>(j - k) / static_cast<double>(k + 1);
    }
  }
  fit.coefficients = std::move(in_x);
  return fit;
}

struct DegreeReport {
  int degree{0};
  double r_squared{0.0};
  double adj_r_squared{0.0};
};

struct DegreeSelection {
  int chosen{0};
  std::vector<DegreeReport> report;
};

inline constexpr double kDefaultDegreeEpsilon = 0.005;

/// Picks the smallest degree d such that raising the degree further, one
/// step at a time up to `max_degree`, never gains `epsilon` or more in
/// adjusted R^2.
inline DegreeSelection select_degree(std::span<const double> x, std::span<const double> y, int max_degree,
                                     double epsilon = kDefaultDegreeEpsilon) {
  if (max_degree < 2) throw std::invalid_argument("select_degree: max degree must be >= 2");
  DegreeSelection sel;
  for (int d = 1; d <= max_degree; ++d) {
    const auto fit = fit_poly(x, y, d);
    sel.report.push_back({d, fit.r_squared, fit.adj_r_squared});
  }
  sel.chosen = max_degree;
  for (int d = 1; d <= max_degree; ++d) {
    bool settled = true;
    for (int e = d; e < max_degree; ++e) {
      const double gain = sel.report[static_cast<std::size_t>(e)].adj_r_squared -
                          sel.report[static_cast<std::size_t>(e - 1)].adj_r_squared;
      if (!(gain < epsilon)) {
        settled = false;
        break;
      }
    }
    if (settled) {
      sel.chosen = d;
      break;
    }
  }
  return sel;
}

}  // namespace pslab::stats
