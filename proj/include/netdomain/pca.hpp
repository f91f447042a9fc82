#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netdomain {

struct PcaResult {
  std::size_t dims = 0;
  std::vector<std::size_t> used_cols;        // columns that survived (nonzero variance)
  std::vector<std::vector<double>> scores;   // one row per input row
  std::vector<std::vector<double>> components;  // dims x used_cols
  std::vector<double> explained_variance_fraction;
};

// Standardize to zero mean / unit variance (zero-variance columns dropped),
// then project onto the leading principal axes. Each axis is oriented so its
// largest-magnitude loading is positive.
inline PcaResult pca_embed(const std::vector<std::vector<double>>& rows, std::size_t dims = 2) {
  const std::size_t n = rows.size();
  if (n < 2) throw std::invalid_argument("pca_embed: need at least 2 rows");
  const std::size_t d_in = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != d_in) throw std::invalid_argument("pca_embed: ragged input");

  std::vector<double> mean(d_in, 0.0), var(d_in, 0.0);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < d_in; ++c) mean[c] += r[c];
  for (double& m : mean) m /= static_cast<double>(n);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < d_in; ++c) {
      const double d = r[c] - mean[c];
      var[c] += d * d;
    }

  PcaResult out;
  for (std::size_t c = 0; c < d_in; ++c)
    if (var[c] > 0) out.used_cols.push_back(c);
  const std::size_t d = out.used_cols.size();
  if (d < 1) throw std::invalid_argument("pca_embed: all columns constant");
  if (dims > d) dims = d;
  out.dims = dims;

  Eigen::MatrixXd z(n, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t src = out.used_cols[c];
      z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          (rows[r][src] - mean[src]) / std::sqrt(var[src] / static_cast<double>(n - 1));
    }

  Eigen::MatrixXd cov = (z.transpose() * z) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("pca_embed: eigendecomposition failed");

  // eigenvalues come back ascending
  const auto& evals = solver.eigenvalues();
  const auto& evecs = solver.eigenvectors();
  double total = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) total += std::max(0.0, evals(i));

  out.components.resize(dims, std::vector<double>(d));
  out.explained_variance_fraction.resize(dims);
  for (std::size_t k = 0; k < dims; ++k) {
    const Eigen::Index src = static_cast<Eigen::Index>(d - 1 - k);
    Eigen::VectorXd v = evecs.col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    for (std::size_t c = 0; c < d; ++c) out.components[k][c] = v(static_cast<Eigen::Index>(c));
    out.explained_variance_fraction[k] =
        total > 0 ? std::max(0.0, evals(src)) / total : 0.0;
  }

  out.scores.resize(n, std::vector<double>(dims));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < dims; ++k) {
      double s = 0;
      for (std::size_t c = 0; c < d; ++c)
        s += z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
             out.components[k][c];
      out.scores[r][k] = s;
    }
  return out;
}

}  // namespace netdomain
