#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "netdomain/correlation.hpp"
#include "netdomain/forest.hpp"
#include "netdomain/thread_pool.hpp"

namespace netdomain {

// Feature ids are indices into the Samples feature columns, kept sorted.
struct ComboScore {
  std::vector<int> features;
  double mean_f1 = 0.0;
  std::vector<double> fold_scores;
};

namespace detail {

inline void rank_combo_scores(std::vector<ComboScore>& scores) {
  std::stable_sort(scores.begin(), scores.end(), [](const ComboScore& a, const ComboScore& b) {
    if (a.mean_f1 != b.mean_f1) return a.mean_f1 > b.mean_f1;
    return a.features < b.features;  // canonical order breaks ties
  });
}

}  // namespace detail

inline std::vector<ComboScore> evaluate_combos(const Samples& s,
                                               const std::vector<std::vector<int>>& combos,
                                               const CVConfig& cv, const ForestParams& params,
                                               int jobs = 1) {
  if (combos.empty()) throw std::invalid_argument("evaluate_combos: no combos");
  std::vector<ComboScore> scores(combos.size());
  parallel_for(combos.size(), jobs, [&](std::size_t i) {
    EvalResult r = evaluate(s, combos[i], cv, params);
    scores[i] = {combos[i], r.mean_f1, std::move(r.fold_scores)};
  });
  detail::rank_combo_scores(scores);
  return scores;
}

inline std::vector<ComboScore> rank_singletons(const Samples& s,
                                               const std::vector<int>& candidates,
                                               const CVConfig& cv, const ForestParams& params,
                                               int jobs = 1) {
  if (candidates.empty()) throw std::invalid_argument("rank_singletons: no candidates");
  std::vector<std::vector<int>> combos;
  combos.reserve(candidates.size());
  for (int f : candidates) combos.push_back({f});
  return evaluate_combos(s, combos, cv, params, jobs);
}

struct ComboEnumeration {
  std::vector<std::vector<int>> pairs;
  std::vector<std::vector<int>> triplets;
};

// All unordered pairs and triples of the finalists, canonically sorted.
inline ComboEnumeration enumerate_combos(std::vector<int> top) {
  std::sort(top.begin(), top.end());
  ComboEnumeration out;
  const std::size_t k = top.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      out.pairs.push_back({top[i], top[j]});
      for (std::size_t l = j + 1; l < k; ++l) out.triplets.push_back({top[i], top[j], top[l]});
    }
  std::sort(out.pairs.begin(), out.pairs.end());
  std::sort(out.triplets.begin(), out.triplets.end());
  return out;
}

struct OverlapResult {
  double percentage = 0.0;
  std::size_t candidates_before_dedup = 0;  // 10 pairs x 13 completions = 130
  std::size_t extension_set_size = 0;       // after dedup
  std::size_t intersection_size = 0;
};

// Extensions of the top-10 pairs by the finalists they do not contain,
// intersected with the top-130 ranked triplets; the percentage keeps the
// fixed 130 base even when extensions coincide.
inline OverlapResult consistency_overlap(const std::vector<ComboScore>& ranked_pairs,
                                         const std::vector<ComboScore>& ranked_triplets,
                                         const std::vector<int>& top_features) {
  constexpr std::size_t top_pairs = 10;
  constexpr std::size_t top_triplets = 130;
  if (ranked_pairs.size() < top_pairs)
    throw std::invalid_argument("consistency_overlap: need at least 10 ranked pairs");
  if (ranked_triplets.size() < top_triplets)
    throw std::invalid_argument("consistency_overlap: need at least 130 ranked triplets");

  OverlapResult out;
  std::set<std::vector<int>> extensions;
  for (std::size_t p = 0; p < top_pairs; ++p) {
    const auto& pair = ranked_pairs[p].features;
    for (int f : top_features) {
      if (f == pair[0] || f == pair[1]) continue;
      std::vector<int> t = {pair[0], pair[1], f};
      std::sort(t.begin(), t.end());
      extensions.insert(std::move(t));
      ++out.candidates_before_dedup;
    }
  }
  std::set<std::vector<int>> best;
  for (std::size_t i = 0; i < top_triplets; ++i) best.insert(ranked_triplets[i].features);
  for (const auto& t : extensions)
    if (best.count(t)) ++out.intersection_size;
  out.extension_set_size = extensions.size();
  out.percentage = 100.0 * static_cast<double>(out.intersection_size) /
                   static_cast<double>(top_triplets);
  return out;
}

// Features whose within-domain |Pearson| against `target_col` exceeds the
// threshold; computed over the pre-dedup feature set, never listing the
// target itself.
inline std::vector<std::string> correlated_alternates(const FeatureMatrix& m,
                                                      const std::vector<std::size_t>& domain_rows,
                                                      std::size_t target_col,
                                                      const std::vector<std::size_t>& candidate_cols,
                                                      double threshold = 0.9) {
  std::vector<double> target(domain_rows.size());
  for (std::size_t i = 0; i < domain_rows.size(); ++i) {
    if (m.is_missing(domain_rows[i], target_col))
      throw std::invalid_argument("correlated_alternates: missing cell in target feature");
    target[i] = m.at(domain_rows[i], target_col);
  }
  std::vector<std::string> out;
  std::vector<double> other(domain_rows.size());
  for (std::size_t c : candidate_cols) {
    if (c == target_col) continue;
    bool complete = true;
    for (std::size_t i = 0; i < domain_rows.size() && complete; ++i) {
      complete = !m.is_missing(domain_rows[i], c);
      if (complete) other[i] = m.at(domain_rows[i], c);
    }
    if (!complete) continue;
    auto r = detail::pearson_pair(target, other);
    if (r && std::abs(*r) > threshold) out.push_back(m.col_ids[c]);
  }
  return out;
}

inline ComboScore evaluate_named_combo(const Samples& s, const std::vector<int>& features,
                                       const CVConfig& cv, const ForestParams& params) {
  if (features.empty()) throw std::invalid_argument("evaluate_named_combo: empty combo");
  std::vector<int> sorted = features;
  std::sort(sorted.begin(), sorted.end());
  for (int f : sorted)
    if (f < 0 || f >= static_cast<int>(s.features.size()))
      throw std::invalid_argument("evaluate_named_combo: unknown feature index");
  EvalResult r = evaluate(s, sorted, cv, params);
  return {sorted, r.mean_f1, std::move(r.fold_scores)};
}

struct SelectionOptions {
  int top_k = 15;
  int max_combo_size = 3;
  int jobs = 1;
};

struct SelectionOutcome {
  std::vector<ComboScore> singlets;   // ranked, all candidates
  std::vector<ComboScore> pairs;      // ranked
  std::vector<ComboScore> triplets;   // ranked
  std::vector<int> finalists;         // top-k singlet features, canonical order
  std::optional<OverlapResult> overlap;
  ComboScore winner;                  // best mean F1; ties -> smaller, earlier
};

// The modified forward selection: rank singletons, then evaluate every pair
// and triple drawn from the finalists rather than greedily extending the
// best pair.
inline SelectionOutcome run_selection(const Samples& s, const std::vector<int>& candidates,
                                      const CVConfig& cv, const ForestParams& params,
                                      const SelectionOptions& opts = {}) {
  SelectionOutcome out;
  out.singlets = rank_singletons(s, candidates, cv, params, opts.jobs);
  const std::size_t k = std::min<std::size_t>(opts.top_k, out.singlets.size());
  out.finalists.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.finalists.push_back(out.singlets[i].features[0]);
  std::sort(out.finalists.begin(), out.finalists.end());

  ComboEnumeration combos = enumerate_combos(out.finalists);
  if (opts.max_combo_size >= 2 && !combos.pairs.empty())
    out.pairs = evaluate_combos(s, combos.pairs, cv, params, opts.jobs);
  if (opts.max_combo_size >= 3 && !combos.triplets.empty())
    out.triplets = evaluate_combos(s, combos.triplets, cv, params, opts.jobs);

  if (out.pairs.size() >= 10 && out.triplets.size() >= 130)
    out.overlap = consistency_overlap(out.pairs, out.triplets, out.finalists);

  out.winner = out.singlets.front();
  for (const auto* ranked : {&out.pairs, &out.triplets}) {
    if (ranked->empty()) continue;
    const ComboScore& best = ranked->front();
    if (best.mean_f1 > out.winner.mean_f1) out.winner = best;
  }
  return out;
}

}  // namespace netdomain
