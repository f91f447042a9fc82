#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netdomain/dataset.hpp"

namespace netdomain {

enum class CorrelationMethod { pearson, spearman };

inline const char* to_string(CorrelationMethod m) {
  return m == CorrelationMethod::pearson ? "pearson" : "spearman";
}

struct CorrelationMatrix {
  std::vector<std::string> feature_ids;
  std::vector<double> coeff;          // k*k, symmetric, diagonal 1
  std::vector<std::uint8_t> defined;  // 0 where a zero-variance pair
  CorrelationMethod method = CorrelationMethod::pearson;

  std::size_t size() const { return feature_ids.size(); }
  double at(std::size_t i, std::size_t j) const { return coeff[i * size() + j]; }
  bool is_defined(std::size_t i, std::size_t j) const { return defined[i * size() + j] != 0; }
};

namespace detail {

// Sample Pearson coefficient; nullopt when either side has zero variance.
inline std::optional<double> pearson_pair(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0 || syy <= 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Average ranks, ties get the mean of their rank range.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline std::vector<std::vector<double>> extract_columns(const FeatureMatrix& m,
                                                        const std::vector<std::size_t>& rows,
                                                        const std::vector<std::size_t>& cols) {
  if (rows.size() < 2)
    throw std::invalid_argument("correlation: need at least 2 rows");
  std::vector<std::vector<double>> out(cols.size(), std::vector<double>(rows.size()));
  for (std::size_t ci = 0; ci < cols.size(); ++ci)
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
      if (m.is_missing(rows[ri], cols[ci]))
        throw std::invalid_argument("correlation: missing cell in feature '" +
                                    m.col_ids[cols[ci]] + "'");
      out[ci][ri] = m.at(rows[ri], cols[ci]);
    }
  return out;
}

inline CorrelationMatrix correlation_from_columns(std::vector<std::vector<double>> columns,
                                                  std::vector<std::string> ids,
                                                  CorrelationMethod method) {
  if (method == CorrelationMethod::spearman)
    for (auto& col : columns) col = average_ranks(col);
  const std::size_t k = columns.size();
  CorrelationMatrix cm;
  cm.feature_ids = std::move(ids);
  cm.method = method;
  cm.coeff.assign(k * k, 0.0);
  cm.defined.assign(k * k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    cm.coeff[i * k + i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      auto r = pearson_pair(columns[i], columns[j]);
      const double v = r.value_or(0.0);
      const std::uint8_t ok = r.has_value() ? 1 : 0;
      cm.coeff[i * k + j] = cm.coeff[j * k + i] = v;
      cm.defined[i * k + j] = cm.defined[j * k + i] = ok;
    }
  }
  return cm;
}

}  // namespace detail

inline CorrelationMatrix pearson_matrix(const FeatureMatrix& m,
                                        const std::vector<std::size_t>& rows,
                                        const std::vector<std::size_t>& cols) {
  std::vector<std::string> ids;
  for (std::size_t c : cols) ids.push_back(m.col_ids[c]);
  return detail::correlation_from_columns(detail::extract_columns(m, rows, cols),
                                          std::move(ids), CorrelationMethod::pearson);
}

inline CorrelationMatrix spearman_matrix(const FeatureMatrix& m,
                                         const std::vector<std::size_t>& rows,
                                         const std::vector<std::size_t>& cols) {
  std::vector<std::string> ids;
  for (std::size_t c : cols) ids.push_back(m.col_ids[c]);
  return detail::correlation_from_columns(detail::extract_columns(m, rows, cols),
                                          std::move(ids), CorrelationMethod::spearman);
}

struct DedupRemoval {
  std::string feature;  // removed
  std::string partner;  // retained feature that triggered the removal
  CorrelationMethod method;
  double coefficient;
};

// Greedy sweep in the matrix's (canonical) order: drop a feature when its
// absolute coefficient against an already-retained one exceeds the
// threshold. Undefined pairs count as zero.
inline std::vector<std::size_t> dedup(const CorrelationMatrix& corr, double threshold,
                                      std::vector<DedupRemoval>* removals = nullptr) {
  std::vector<std::size_t> retained;
  for (std::size_t i = 0; i < corr.size(); ++i) {
    bool drop = false;
    for (std::size_t kept : retained) {
      const double c = corr.is_defined(kept, i) ? corr.at(kept, i) : 0.0;
      if (std::abs(c) > threshold) {
        if (removals)
          removals->push_back({corr.feature_ids[i], corr.feature_ids[kept], corr.method, c});
        drop = true;
        break;
      }
    }
    if (!drop) retained.push_back(i);
  }
  return retained;
}

struct FilterResult {
  std::vector<std::size_t> retained_cols;  // indices into the FeatureMatrix
  std::vector<DedupRemoval> removals;
};

// Pearson dedup at `threshold`, then Spearman dedup over the survivors.
// `candidate_cols` must already be in canonical order with the domain's
// excluded features removed.
inline FilterResult filter_domain(const FeatureMatrix& m,
                                  const std::vector<std::size_t>& domain_rows,
                                  const std::vector<std::size_t>& candidate_cols,
                                  double threshold = 0.9) {
  if (candidate_cols.empty())
    throw std::invalid_argument("filter_domain: no candidate features");
  FilterResult res;
  CorrelationMatrix pm = pearson_matrix(m, domain_rows, candidate_cols);
  std::vector<std::size_t> stage1;
  for (std::size_t i : dedup(pm, threshold, &res.removals))
    stage1.push_back(candidate_cols[i]);
  CorrelationMatrix sm = spearman_matrix(m, domain_rows, stage1);
  for (std::size_t i : dedup(sm, threshold, &res.removals))
    res.retained_cols.push_back(stage1[i]);
  return res;
}

}  // namespace netdomain
