#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "netdomain/random.hpp"

namespace netdomain {

// Row-major feature table with an explicit missing mask. catalog_width
// remembers the full catalog size so the network-missing rule keeps its
// denominator after globally excluded columns are removed.
struct FeatureMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> domains;  // aligned with row_ids
  std::vector<std::string> col_ids;
  std::vector<double> values;
  std::vector<std::uint8_t> missing;
  std::size_t catalog_width = 0;

  std::size_t n_rows() const { return row_ids.size(); }
  std::size_t n_cols() const { return col_ids.size(); }
  std::size_t idx(std::size_t r, std::size_t c) const { return r * n_cols() + c; }
  double at(std::size_t r, std::size_t c) const { return values[idx(r, c)]; }
  bool is_missing(std::size_t r, std::size_t c) const { return missing[idx(r, c)] != 0; }

  std::optional<std::size_t> col_index(const std::string& id) const {
    auto it = std::find(col_ids.begin(), col_ids.end(), id);
    if (it == col_ids.end()) return std::nullopt;
    return static_cast<std::size_t>(it - col_ids.begin());
  }

  bool operator==(const FeatureMatrix&) const = default;
};

struct PolicyConfig {
  double network_missing_max = 0.20;          // strictly-more-than drops a row
  double feature_missing_max_per_domain = 0.20;  // valid < 1-x excludes per domain
  double constant_fraction = 0.80;            // strictly-more-than excludes
  int min_domain_size = 10;
  std::uint64_t rng_seed = 0;

  void validate() const {
    for (double f : {network_missing_max, feature_missing_max_per_domain, constant_fraction})
      if (!(f > 0.0 && f < 1.0))
        throw std::invalid_argument("policy fractions must lie in (0,1)");
    if (min_domain_size < 1)
      throw std::invalid_argument("min_domain_size must be >= 1");
  }
};

struct DroppedRow {
  std::string network_id;
  double missing_fraction;
};

struct FallbackCell {
  std::string network_id;
  std::string feature_id;
  std::string action;  // "median" or "unresolved"
};

struct PolicyAudit {
  std::vector<std::string> merged_domains;  // relabeled to "other"
  std::vector<DroppedRow> dropped_rows;
  std::map<std::string, std::vector<std::string>> sparse_excluded;    // domain -> features
  std::map<std::string, std::vector<std::string>> constant_excluded;  // domain -> features
  std::vector<std::string> global_constant_excluded;
  std::vector<FallbackCell> fallback_cells;
};

inline std::vector<std::string> merge_small_domains(std::vector<std::string> domains,
                                                    int min_domain_size,
                                                    std::vector<std::string>* merged = nullptr) {
  std::map<std::string, int> count;
  for (const auto& d : domains) ++count[d];
  for (auto& d : domains) {
    if (count[d] < min_domain_size && d != "other") {
      if (merged && std::find(merged->begin(), merged->end(), d) == merged->end())
        merged->push_back(d);
      d = "other";
    }
  }
  return domains;
}

// Rows missing strictly more than `threshold` of the catalog columns go.
inline FeatureMatrix drop_sparse_networks(const FeatureMatrix& m, double threshold,
                                          std::vector<DroppedRow>* dropped = nullptr) {
  const double width = static_cast<double>(m.catalog_width ? m.catalog_width : m.n_cols());
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    std::size_t miss = 0;
    for (std::size_t c = 0; c < m.n_cols(); ++c) miss += m.missing[m.idx(r, c)];
    const double frac = static_cast<double>(miss) / width;
    if (frac > threshold) {
      if (dropped) dropped->push_back({m.row_ids[r], frac});
    } else {
      keep.push_back(r);
    }
  }
  if (keep.empty()) throw std::runtime_error("drop_sparse_networks: no rows left");
  FeatureMatrix out;
  out.col_ids = m.col_ids;
  out.catalog_width = m.catalog_width;
  out.values.reserve(keep.size() * m.n_cols());
  out.missing.reserve(keep.size() * m.n_cols());
  for (std::size_t r : keep) {
    out.row_ids.push_back(m.row_ids[r]);
    out.domains.push_back(m.domains[r]);
    for (std::size_t c = 0; c < m.n_cols(); ++c) {
      out.values.push_back(m.values[m.idx(r, c)]);
      out.missing.push_back(m.missing[m.idx(r, c)]);
    }
  }
  return out;
}

// Features valid on less than 1-threshold of a domain's rows are excluded
// from that domain's downstream tasks ("at least 80%" reads inclusive).
inline std::map<std::string, std::set<std::string>> drop_sparse_features_per_domain(
    const FeatureMatrix& m, double threshold) {
  std::map<std::string, std::vector<std::size_t>> rows_of;
  for (std::size_t r = 0; r < m.n_rows(); ++r) rows_of[m.domains[r]].push_back(r);
  std::map<std::string, std::set<std::string>> excluded;
  for (const auto& [domain, rows] : rows_of) {
    for (std::size_t c = 0; c < m.n_cols(); ++c) {
      std::size_t valid = 0;
      for (std::size_t r : rows) valid += m.missing[m.idx(r, c)] ? 0 : 1;
      const double valid_frac = static_cast<double>(valid) / static_cast<double>(rows.size());
      if (valid_frac < 1.0 - threshold) excluded[domain].insert(m.col_ids[c]);
    }
  }
  return excluded;
}

// Linear-interpolation quantiles at p*(n-1) over the sorted values.
inline std::pair<double, double> quartiles(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("quartiles: empty input");
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.75)};
}

inline double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Missing cells become uniform draws from [Q1, Q3] of the domain's valid
// values. The draw is keyed by (seed, network id, feature id), so row order
// and parallel assembly cannot change it. Groups with fewer than 4 valid
// values fall back to the domain median; with none, the cell stays missing.
inline FeatureMatrix impute(const FeatureMatrix& m, std::uint64_t seed,
                            std::vector<FallbackCell>* fallbacks = nullptr) {
  FeatureMatrix out = m;
  std::map<std::string, std::vector<std::size_t>> rows_of;
  for (std::size_t r = 0; r < m.n_rows(); ++r) rows_of[m.domains[r]].push_back(r);
  for (const auto& [domain, rows] : rows_of) {
    for (std::size_t c = 0; c < m.n_cols(); ++c) {
      std::vector<std::size_t> holes;
      std::vector<double> valid;
      for (std::size_t r : rows) {
        if (m.is_missing(r, c)) holes.push_back(r);
        else valid.push_back(m.at(r, c));
      }
      if (holes.empty()) continue;
      const bool use_quartiles = valid.size() >= 4;
      double q1 = 0, q3 = 0, med = 0;
      if (use_quartiles) std::tie(q1, q3) = quartiles(valid);
      else if (!valid.empty()) med = median(valid);
      for (std::size_t r : holes) {
        if (valid.empty()) {
          if (fallbacks) fallbacks->push_back({m.row_ids[r], m.col_ids[c], "unresolved"});
          continue;
        }
        double v;
        if (use_quartiles) {
          Rng rng(derive_seed(seed, std::string_view("impute"),
                              fnv1a64(m.row_ids[r]), fnv1a64(m.col_ids[c])));
          v = q1 == q3 ? q1 : rng.uniform(q1, q3);
        } else {
          v = med;
          if (fallbacks) fallbacks->push_back({m.row_ids[r], m.col_ids[c], "median"});
        }
        out.values[out.idx(r, c)] = v;
        out.missing[out.idx(r, c)] = 0;
      }
    }
  }
  return out;
}

namespace detail {

// "Constant" compares values rounded to 12 significant digits.
inline std::string constant_key(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

inline double most_frequent_fraction(const FeatureMatrix& m,
                                     const std::vector<std::size_t>& rows, std::size_t c) {
  std::unordered_map<std::string, std::size_t> freq;
  std::size_t best = 0;
  for (std::size_t r : rows) {
    const std::size_t k = ++freq[m.is_missing(r, c) ? std::string("<missing>")
                                                    : constant_key(m.at(r, c))];
    best = std::max(best, k);
  }
  return static_cast<double>(best) / static_cast<double>(rows.size());
}

}  // namespace detail

struct ConstantExclusions {
  std::set<std::string> global;
  std::map<std::string, std::set<std::string>> per_domain;
};

inline ConstantExclusions drop_constant_features(const FeatureMatrix& m,
                                                 double constant_fraction) {
  ConstantExclusions out;
  std::map<std::string, std::vector<std::size_t>> rows_of;
  std::vector<std::size_t> all;
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    rows_of[m.domains[r]].push_back(r);
    all.push_back(r);
  }
  for (std::size_t c = 0; c < m.n_cols(); ++c) {
    if (detail::most_frequent_fraction(m, all, c) > constant_fraction)
      out.global.insert(m.col_ids[c]);
    for (const auto& [domain, rows] : rows_of)
      if (detail::most_frequent_fraction(m, rows, c) > constant_fraction)
        out.per_domain[domain].insert(m.col_ids[c]);
  }
  return out;
}

inline FeatureMatrix remove_columns(const FeatureMatrix& m,
                                    const std::set<std::string>& col_ids) {
  if (col_ids.empty()) return m;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < m.n_cols(); ++c)
    if (!col_ids.count(m.col_ids[c])) keep.push_back(c);
  FeatureMatrix out;
  out.row_ids = m.row_ids;
  out.domains = m.domains;
  out.catalog_width = m.catalog_width;
  for (std::size_t c : keep) out.col_ids.push_back(m.col_ids[c]);
  out.values.reserve(m.n_rows() * keep.size());
  out.missing.reserve(m.n_rows() * keep.size());
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t c : keep) {
      out.values.push_back(m.values[m.idx(r, c)]);
      out.missing.push_back(m.missing[m.idx(r, c)]);
    }
  return out;
}

// Seeded uniform cap per domain; smaller domains pass through whole.
// Returns retained row indices in ascending order.
inline std::vector<std::size_t> undersample(const std::vector<std::string>& domains,
                                            const std::vector<std::string>& row_ids,
                                            std::size_t cap, std::uint64_t seed) {
  if (cap < 1) throw std::invalid_argument("undersample: cap must be >= 1");
  std::map<std::string, std::vector<std::size_t>> rows_of;
  for (std::size_t r = 0; r < domains.size(); ++r) rows_of[domains[r]].push_back(r);
  std::vector<std::size_t> retained;
  for (auto& [domain, rows] : rows_of) {
    if (rows.size() > cap) {
      // canonical order first so the draw is independent of row order
      std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
        return row_ids[a] < row_ids[b];
      });
      Rng rng(derive_seed(seed, std::string_view("undersample"), fnv1a64(domain)));
      rng.shuffle(rows);
      rows.resize(cap);
    }
    retained.insert(retained.end(), rows.begin(), rows.end());
  }
  std::sort(retained.begin(), retained.end());
  return retained;
}

struct PolicyOutcome {
  FeatureMatrix matrix;
  std::map<std::string, std::set<std::string>> per_domain_excluded;
  PolicyAudit audit;
};

// Fixed policy chain. The second merge pass exists because a row drop can
// push a domain below min_domain_size; without it the chain would not be
// idempotent on its own output.
inline PolicyOutcome apply_policies(const FeatureMatrix& input, const PolicyConfig& cfg) {
  cfg.validate();
  PolicyOutcome out;
  FeatureMatrix m = input;
  if (m.catalog_width == 0) m.catalog_width = m.n_cols();

  m.domains = merge_small_domains(m.domains, cfg.min_domain_size, &out.audit.merged_domains);
  m = drop_sparse_networks(m, cfg.network_missing_max, &out.audit.dropped_rows);
  m.domains = merge_small_domains(m.domains, cfg.min_domain_size, &out.audit.merged_domains);

  auto sparse = drop_sparse_features_per_domain(m, cfg.feature_missing_max_per_domain);
  for (const auto& [domain, feats] : sparse)
    out.audit.sparse_excluded[domain].assign(feats.begin(), feats.end());

  m = impute(m, cfg.rng_seed, &out.audit.fallback_cells);

  ConstantExclusions constants = drop_constant_features(m, cfg.constant_fraction);
  for (const auto& [domain, feats] : constants.per_domain)
    out.audit.constant_excluded[domain].assign(feats.begin(), feats.end());
  out.audit.global_constant_excluded.assign(constants.global.begin(), constants.global.end());
  m = remove_columns(m, constants.global);

  out.per_domain_excluded = sparse;
  for (const auto& [domain, feats] : constants.per_domain)
    out.per_domain_excluded[domain].insert(feats.begin(), feats.end());
  // globally removed columns no longer exist; drop them from the metadata
  for (auto& [domain, feats] : out.per_domain_excluded)
    for (const auto& g : constants.global) feats.erase(g);

  out.matrix = std::move(m);
  return out;
}

}  // namespace netdomain
