#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "netdomain/budget.hpp"
#include "netdomain/graph.hpp"
#include "netdomain/random.hpp"

namespace netdomain {

enum class MeasureKind { scalar, node_distribution, edge_distribution };
enum class CostClass { cheap, polynomial, expensive };

inline const char* to_string(CostClass c) {
  switch (c) {
    case CostClass::cheap: return "cheap";
    case CostClass::polynomial: return "polynomial";
    default: return "expensive";
  }
}

struct MeasureSpec {
  std::string id;
  MeasureKind kind;
  CostClass cost_class;
  bool needs_seed = false;
};

struct EngineOptions {
  int exact_threshold = 5000;  // all-pairs sweeps up to this many nodes
  int sample_sources = 512;    // seeded BFS sources above the threshold
  double iter_tol = 1e-10;     // L-inf convergence gate for iterative measures
  int iter_cap = 10000;
};

using MeasureValue = std::variant<double, std::vector<double>>;

struct MeasureResult {
  std::optional<MeasureValue> value;
  std::optional<MissingReason> missing_reason;
  bool sampled = false;

  bool missing() const { return missing_reason.has_value(); }
};

// mean/min/max on the raw scale plus moments of the distribution normalized
// by its largest absolute value. All-zero input yields zero moments.
struct AggregateSet {
  double mean, min, max, m1, m2, m3, m4;
};

inline AggregateSet aggregate_distribution(const std::vector<double>& values) {
  if (values.empty())
    throw std::invalid_argument("aggregate_distribution: empty input");
  double sum = 0, mn = values[0], mx = values[0], scale = 0;
  for (double v : values) {
    sum += v;
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    scale = std::max(scale, std::abs(v));
  }
  const double n = static_cast<double>(values.size());
  AggregateSet a{sum / n, mn, mx, 0, 0, 0, 0};
  if (scale > 0) {
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (double v : values) {
      const double u = v / scale;
      const double u2 = u * u;
      s1 += u;
      s2 += u2;
      s3 += u2 * u;
      s4 += u2 * u2;
    }
    a.m1 = s1 / n;
    a.m2 = s2 / n;
    a.m3 = s3 / n;
    a.m4 = s4 / n;
  }
  return a;
}

inline const std::array<const char*, 7>& aggregate_suffixes() {
  static const std::array<const char*, 7> s = {"mean", "min", "max",
                                               "m1",   "m2",  "m3", "m4"};
  return s;
}

namespace detail {

// Canonical edge order: (u, v) with u < v, ascending lexicographically.
inline std::vector<std::pair<int, int>> canonical_edges(const Graph& g) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (v > u) e.emplace_back(u, v);
  return e;
}

struct DistanceSweep {
  bool sampled = false;
  std::vector<int> sources;       // BFS sources actually used
  std::vector<double> ecc;        // per source
  std::vector<double> closeness;  // per source
  double avg_dist = 0;
  double efficiency = 0;
  double diameter = 0;
  double radius = 0;
};

struct BrandesResult {
  bool sampled = false;
  std::vector<double> node_bc;  // unordered-pair counts
  std::vector<double> edge_bc;  // aligned with canonical_edges
};

struct CliqueCensus {
  long long maximal_count = 0;
  int clique_number = 0;
};

struct EigenPair {
  double spectral_radius = 0;
  std::vector<double> vec;  // L2-normalized, non-negative
};

inline std::vector<int> sample_nodes(int n, int k, std::uint64_t seed) {
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  if (k >= n) return ids;
  Rng rng(derive_seed(seed, std::string_view("bfs-sources")));
  rng.shuffle(ids);
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Per-graph cache of completed intermediates. A result is published only
// after it finished inside the requesting measure's budget, so a timeout in
// one measure never poisons another.
class MeasureContext {
 public:
  MeasureContext(const Graph& g, std::uint64_t seed, const EngineOptions& opts)
      : g_(g), seed_(seed), opts_(opts) {}

  const Graph& graph() const { return g_; }
  std::uint64_t seed() const { return seed_; }
  const EngineOptions& options() const { return opts_; }

  bool sampled_mode() const { return g_.n > opts_.exact_threshold; }

  const std::vector<std::pair<int, int>>& edges() {
    if (!edges_) edges_ = canonical_edges(g_);
    return *edges_;
  }

  // Common-neighbor count per canonical edge; node triangle counts derive.
  const std::vector<double>& edge_common_neighbors(BudgetGate& gate) {
    if (!edge_cn_) {
      const auto& es = edges();
      gate.charge(es.size() * sizeof(double));
      std::vector<double> cn(es.size());
      for (std::size_t i = 0; i < es.size(); ++i) {
        gate.tick();
        auto [u, v] = es[i];
        const auto& a = g_.adj[u];
        const auto& b = g_.adj[v];
        std::size_t x = 0, y = 0, c = 0;
        while (x < a.size() && y < b.size()) {
          if (a[x] == b[y]) ++c, ++x, ++y;
          else if (a[x] < b[y]) ++x;
          else ++y;
        }
        cn[i] = static_cast<double>(c);
      }
      edge_cn_ = std::move(cn);
    }
    return *edge_cn_;
  }

  const std::vector<double>& node_triangles(BudgetGate& gate) {
    if (!node_tri_) {
      const auto& cn = edge_common_neighbors(gate);
      const auto& es = edges();
      std::vector<double> t(g_.n, 0.0);
      for (std::size_t i = 0; i < es.size(); ++i) {
        t[es[i].first] += cn[i];
        t[es[i].second] += cn[i];
      }
      for (double& x : t) x /= 2.0;
      node_tri_ = std::move(t);
    }
    return *node_tri_;
  }

  const std::vector<int>& core_numbers(BudgetGate& gate) {
    if (!cores_) {
      gate.check();
      cores_ = compute_cores(gate);
    }
    return *cores_;
  }

  const DistanceSweep& distance_sweep(BudgetGate& gate) {
    if (!sweep_) sweep_ = compute_sweep(gate);
    return *sweep_;
  }

  const BrandesResult& brandes(BudgetGate& gate) {
    if (!brandes_) brandes_ = compute_brandes(gate);
    return *brandes_;
  }

  const CliqueCensus& clique_census(BudgetGate& gate) {
    if (!cliques_) cliques_ = compute_cliques(gate);
    return *cliques_;
  }

  const EigenPair& eigen_pair(BudgetGate& gate) {
    if (!eigen_) eigen_ = compute_eigen(gate);
    return *eigen_;
  }

 private:
  std::vector<int> compute_cores(BudgetGate& gate) {
    // Batagelj-Zaversnik bucket peeling, O(n + m).
    const int n = g_.n;
    gate.charge(4u * n * sizeof(int));
    std::vector<int> deg(n), pos(n), order(n), start;
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) {
      deg[v] = g_.degree(v);
      maxdeg = std::max(maxdeg, deg[v]);
    }
    start.assign(maxdeg + 2, 0);
    for (int v = 0; v < n; ++v) ++start[deg[v] + 1];
    for (int d = 1; d <= maxdeg + 1; ++d) start[d] += start[d - 1];
    std::vector<int> fill = start;
    for (int v = 0; v < n; ++v) {
      pos[v] = fill[deg[v]]++;
      order[pos[v]] = v;
    }
    std::vector<int> core = deg;
    for (int i = 0; i < n; ++i) {
      gate.tick();
      int v = order[i];
      for (int u : g_.adj[v]) {
        if (core[u] > core[v]) {
          int du = core[u], pu = pos[u];
          int pw = start[du], w = order[pw];
          if (u != w) {
            std::swap(order[pu], order[pw]);
            pos[u] = pw;
            pos[w] = pu;
          }
          ++start[du];
          --core[u];
        }
      }
    }
    return core;
  }

  DistanceSweep compute_sweep(BudgetGate& gate) {
    const int n = g_.n;
    DistanceSweep s;
    s.sampled = sampled_mode();
    s.sources = s.sampled ? sample_nodes(n, opts_.sample_sources, seed_)
                          : sample_nodes(n, n, seed_);
    gate.charge(2u * n * sizeof(int) + 2u * s.sources.size() * sizeof(double));
    std::vector<int> dist(n), queue(n);
    double sum = 0, sum_inv = 0;
    long long pairs = 0;
    int maxd = 0;
    int min_ecc = std::numeric_limits<int>::max();
    for (int src : s.sources) {
      gate.check();
      std::fill(dist.begin(), dist.end(), -1);
      int head = 0, tail = 0;
      dist[src] = 0;
      queue[tail++] = src;
      long long src_sum = 0;
      int ecc = 0;
      while (head < tail) {
        gate.tick();
        int u = queue[head++];
        for (int v : g_.adj[u]) {
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            queue[tail++] = v;
            src_sum += dist[v];
            sum_inv += 1.0 / dist[v];
            ecc = std::max(ecc, dist[v]);
          }
        }
      }
      sum += static_cast<double>(src_sum);
      pairs += n - 1;
      maxd = std::max(maxd, ecc);
      min_ecc = std::min(min_ecc, ecc);
      s.ecc.push_back(static_cast<double>(ecc));
      s.closeness.push_back(src_sum > 0 ? static_cast<double>(n - 1) / src_sum : 0.0);
    }
    s.avg_dist = pairs > 0 ? sum / static_cast<double>(pairs) : 0.0;
    s.efficiency = pairs > 0 ? sum_inv / static_cast<double>(pairs) : 0.0;
    s.diameter = static_cast<double>(maxd);
    s.radius = static_cast<double>(min_ecc == std::numeric_limits<int>::max() ? 0 : min_ecc);
    return s;
  }

  BrandesResult compute_brandes(BudgetGate& gate) {
    const int n = g_.n;
    const auto& es = edges();
    BrandesResult r;
    r.sampled = sampled_mode();
    std::vector<int> sources = r.sampled
                                   ? sample_nodes(n, opts_.sample_sources, seed_)
                                   : sample_nodes(n, n, seed_);
    gate.charge(es.size() * (sizeof(double) + sizeof(std::uint64_t) + sizeof(int)) +
                5u * n * sizeof(double));
    r.node_bc.assign(n, 0.0);
    r.edge_bc.assign(es.size(), 0.0);
    std::unordered_map<std::uint64_t, int> edge_id;
    edge_id.reserve(es.size() * 2);
    for (std::size_t i = 0; i < es.size(); ++i) {
      auto [u, v] = es[i];
      edge_id[(static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v)] =
          static_cast<int>(i);
    }
    auto eid = [&](int u, int v) {
      if (u > v) std::swap(u, v);
      return edge_id[(static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v)];
    };

    std::vector<int> dist(n), order(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<int>> pred(n);
    for (int src : sources) {
      gate.check();
      std::fill(dist.begin(), dist.end(), -1);
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      for (auto& p : pred) p.clear();
      int head = 0, tail = 0;
      dist[src] = 0;
      sigma[src] = 1;
      order[tail++] = src;
      while (head < tail) {
        gate.tick();
        int u = order[head++];
        for (int v : g_.adj[u]) {
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            order[tail++] = v;
          }
          if (dist[v] == dist[u] + 1) {
            sigma[v] += sigma[u];
            pred[v].push_back(u);
          }
        }
      }
      for (int i = tail - 1; i >= 0; --i) {
        gate.tick();
        int w = order[i];
        for (int p : pred[w]) {
          const double share = sigma[p] / sigma[w] * (1.0 + delta[w]);
          delta[p] += share;
          r.edge_bc[eid(p, w)] += share;
        }
        if (w != src) r.node_bc[w] += delta[w];
      }
    }
    // Each unordered pair is counted from both endpoints in a full sweep.
    double scale = 0.5;
    if (r.sampled && !sources.empty())
      scale *= static_cast<double>(n) / static_cast<double>(sources.size());
    for (double& x : r.node_bc) x *= scale;
    for (double& x : r.edge_bc) x *= scale;
    return r;
  }

  CliqueCensus compute_cliques(BudgetGate& gate) {
    CliqueCensus census;
    if (g_.n == 0) return census;
    gate.charge(3u * g_.n * g_.n);  // rough bound for the recursion sets
    std::vector<int> p(g_.n), x, r;
    for (int v = 0; v < g_.n; ++v) p[v] = v;
    bron_kerbosch(r, p, x, census, gate);
    return census;
  }

  void bron_kerbosch(std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                     CliqueCensus& census, BudgetGate& gate) {
    gate.tick();
    if (p.empty() && x.empty()) {
      ++census.maximal_count;
      census.clique_number = std::max(census.clique_number, static_cast<int>(r.size()));
      return;
    }
    int pivot = -1;
    std::size_t best = 0;
    for (const auto* set : {&p, &x})
      for (int u : *set) {
        std::size_t c = 0;
        for (int w : p)
          if (g_.has_edge(u, w)) ++c;
        if (pivot < 0 || c > best) {
          pivot = u;
          best = c;
        }
      }
    std::vector<int> candidates;
    for (int v : p)
      if (pivot < 0 || !g_.has_edge(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
      std::vector<int> p2, x2;
      for (int w : p)
        if (g_.has_edge(v, w)) p2.push_back(w);
      for (int w : x)
        if (g_.has_edge(v, w)) x2.push_back(w);
      r.push_back(v);
      bron_kerbosch(r, std::move(p2), std::move(x2), census, gate);
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  EigenPair compute_eigen(BudgetGate& gate) {
    // Power iteration on A + I: the shift keeps the Perron root dominant on
    // bipartite graphs. Iterates past the stated tolerance whenever it can;
    // fails the run only if even 'iter_tol' was not reached at the cap.
    const int n = g_.n;
    gate.charge(2u * n * sizeof(double));
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
    double change = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts_.iter_cap && change > 1e-15; ++it) {
      gate.tick();
      for (int v = 0; v < n; ++v) {
        double s = x[v];
        for (int u : g_.adj[v]) s += x[u];
        y[v] = s;
      }
      double norm = 0;
      for (double v : y) norm += v * v;
      norm = std::sqrt(norm);
      if (norm == 0) break;
      change = 0;
      for (int v = 0; v < n; ++v) {
        y[v] /= norm;
        change = std::max(change, std::abs(y[v] - x[v]));
      }
      x.swap(y);
    }
    if (change > opts_.iter_tol && n > 1)
      throw BudgetExceeded{MissingReason::undefined_on_graph};
    double rayleigh = 0;
    for (int v = 0; v < n; ++v) {
      double s = 0;
      for (int u : g_.adj[v]) s += x[u];
      rayleigh += x[v] * s;
    }
    EigenPair e;
    e.spectral_radius = rayleigh;
    e.vec = std::move(x);
    return e;
  }

  const Graph& g_;
  std::uint64_t seed_;
  EngineOptions opts_;
  std::optional<std::vector<std::pair<int, int>>> edges_;
  std::optional<std::vector<double>> edge_cn_;
  std::optional<std::vector<double>> node_tri_;
  std::optional<std::vector<int>> cores_;
  std::optional<DistanceSweep> sweep_;
  std::optional<BrandesResult> brandes_;
  std::optional<CliqueCensus> cliques_;
  std::optional<EigenPair> eigen_;
};

inline std::vector<double> pagerank_values(const Graph& g, double damping,
                                           const EngineOptions& opts, BudgetGate& gate) {
  const int n = g.n;
  gate.charge(2u * n * sizeof(double));
  std::vector<double> x(n, 1.0 / n), y(n);
  const double base = (1.0 - damping) / n;
  double change = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.iter_cap && change > 1e-15; ++it) {
    gate.tick();
    for (int v = 0; v < n; ++v) {
      double s = 0;
      for (int u : g.adj[v]) s += x[u] / g.adj[u].size();
      y[v] = base + damping * s;
    }
    change = 0;
    for (int v = 0; v < n; ++v) change = std::max(change, std::abs(y[v] - x[v]));
    x.swap(y);
  }
  if (change > opts.iter_tol && n > 1)
    throw BudgetExceeded{MissingReason::undefined_on_graph};
  return x;
}

}  // namespace detail

using MeasureFn = std::function<MeasureValue(detail::MeasureContext&, BudgetGate&)>;

struct MeasureDef {
  MeasureSpec spec;
  MeasureFn fn;
};

struct FeatureColumn {
  std::string id;          // e.g. "degree_m2" or "density"
  std::string measure_id;  // owning measure
};

struct FeatureVector {
  std::vector<double> values;                       // aligned to feature columns
  std::vector<std::uint8_t> missing;                // 1 = missing
  std::vector<std::optional<MissingReason>> reason; // set where missing
  std::vector<std::uint8_t> sampled;                // estimate, not exact
};

// Fixed 26-measure core catalog plus user extensions. Catalog order is the
// canonical feature order used everywhere downstream.
class MeasureEngine {
 public:
  static constexpr const char* catalog_version = "core-26/v1";

  MeasureEngine() { register_core(); }

  explicit MeasureEngine(const EngineOptions& opts) : opts_(opts) { register_core(); }

  const EngineOptions& options() const { return opts_; }

  void register_measure(MeasureDef def) {
    if (index_.count(def.spec.id))
      throw std::invalid_argument("duplicate measure id: " + def.spec.id);
    index_[def.spec.id] = defs_.size();
    defs_.push_back(std::move(def));
  }

  std::vector<MeasureSpec> catalog() const {
    std::vector<MeasureSpec> out;
    out.reserve(defs_.size());
    for (const auto& d : defs_) out.push_back(d.spec);
    return out;
  }

  const MeasureSpec& spec(const std::string& id) const {
    return defs_[index_of(id)].spec;
  }

  bool any_seeded() const {
    return std::any_of(defs_.begin(), defs_.end(),
                       [](const MeasureDef& d) { return d.spec.needs_seed; });
  }

  // One column per scalar measure, seven per distribution.
  std::vector<FeatureColumn> feature_columns() const {
    std::vector<FeatureColumn> cols;
    for (const auto& d : defs_) {
      if (d.spec.kind == MeasureKind::scalar) {
        cols.push_back({d.spec.id, d.spec.id});
      } else {
        for (const char* suffix : aggregate_suffixes())
          cols.push_back({d.spec.id + "_" + suffix, d.spec.id});
      }
    }
    return cols;
  }

  MeasureResult run_measure(const Graph& g, const std::string& id, const Budget& budget,
                            std::uint64_t seed) const {
    detail::MeasureContext ctx(g, seed, opts_);
    return run_in_context(ctx, id, budget);
  }

  MeasureResult run_in_context(detail::MeasureContext& ctx, const std::string& id,
                               const Budget& budget) const {
    const MeasureDef& def = defs_[index_of(id)];
    BudgetGate gate(budget);
    MeasureResult res;
    try {
      gate.check();
      res.value = def.fn(ctx, gate);
      res.sampled = is_sampled(def.spec, ctx);
    } catch (const BudgetExceeded& e) {
      res.missing_reason = e.reason;
    }
    return res;
  }

  FeatureVector compute_feature_vector(
      const Graph& g, const std::map<CostClass, Budget>& budgets,
      std::uint64_t seed) const {
    detail::MeasureContext ctx(g, seed, opts_);
    FeatureVector fv;
    for (const auto& def : defs_) {
      Budget b;
      if (auto it = budgets.find(def.spec.cost_class); it != budgets.end()) b = it->second;
      MeasureResult r = run_in_context(ctx, def.spec.id, b);
      append(def.spec, r, fv);
    }
    return fv;
  }

 private:
  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown measure id: " + id);
    return it->second;
  }

  static bool is_sampled(const MeasureSpec& spec, detail::MeasureContext& ctx) {
    return spec.needs_seed && ctx.sampled_mode();
  }

  void append(const MeasureSpec& spec, const MeasureResult& r, FeatureVector& fv) const {
    const int width = spec.kind == MeasureKind::scalar ? 1 : 7;
    if (r.missing()) {
      for (int i = 0; i < width; ++i) {
        fv.values.push_back(std::numeric_limits<double>::quiet_NaN());
        fv.missing.push_back(1);
        fv.reason.push_back(r.missing_reason);
        fv.sampled.push_back(0);
      }
      return;
    }
    if (spec.kind == MeasureKind::scalar) {
      fv.values.push_back(std::get<double>(*r.value));
      fv.missing.push_back(0);
      fv.reason.push_back(std::nullopt);
      fv.sampled.push_back(r.sampled ? 1 : 0);
      return;
    }
    const auto& dist = std::get<std::vector<double>>(*r.value);
    if (dist.empty()) {
      // no edges / no values to summarize: the measure is undefined here
      for (int i = 0; i < 7; ++i) {
        fv.values.push_back(std::numeric_limits<double>::quiet_NaN());
        fv.missing.push_back(1);
        fv.reason.push_back(MissingReason::undefined_on_graph);
        fv.sampled.push_back(0);
      }
      return;
    }
    AggregateSet a = aggregate_distribution(dist);
    for (double v : {a.mean, a.min, a.max, a.m1, a.m2, a.m3, a.m4}) {
      fv.values.push_back(v);
      fv.missing.push_back(0);
      fv.reason.push_back(std::nullopt);
      fv.sampled.push_back(r.sampled ? 1 : 0);
    }
  }

  void register_core();

  EngineOptions opts_;
  std::vector<MeasureDef> defs_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline void MeasureEngine::register_core() {
  using detail::MeasureContext;
  auto scalar = [this](const char* id, CostClass c, MeasureFn fn, bool seeded = false) {
    register_measure({{id, MeasureKind::scalar, c, seeded}, std::move(fn)});
  };
  auto node_dist = [this](const char* id, CostClass c, MeasureFn fn, bool seeded = false) {
    register_measure({{id, MeasureKind::node_distribution, c, seeded}, std::move(fn)});
  };
  auto edge_dist = [this](const char* id, CostClass c, MeasureFn fn, bool seeded = false) {
    register_measure({{id, MeasureKind::edge_distribution, c, seeded}, std::move(fn)});
  };

  scalar("node_count", CostClass::cheap, [](MeasureContext& ctx, BudgetGate&) {
    return MeasureValue{static_cast<double>(ctx.graph().n)};
  });
  scalar("edge_count", CostClass::cheap, [](MeasureContext& ctx, BudgetGate&) {
    return MeasureValue{static_cast<double>(ctx.graph().edge_count())};
  });
  scalar("density", CostClass::cheap, [](MeasureContext& ctx, BudgetGate&) {
    const auto& g = ctx.graph();
    if (g.n <= 1) return MeasureValue{0.0};
    return MeasureValue{2.0 * static_cast<double>(g.edge_count()) /
                        (static_cast<double>(g.n) * (g.n - 1))};
  });
  scalar("transitivity", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    const auto& g = ctx.graph();
    const auto& tri = ctx.node_triangles(gate);
    double triangles = 0, triples = 0;
    for (int v = 0; v < g.n; ++v) {
      triangles += tri[v];
      const double d = g.degree(v);
      triples += d * (d - 1) / 2.0;
    }
    triangles /= 3.0;
    return MeasureValue{triples > 0 ? 3.0 * triangles / triples : 0.0};
  });
  scalar("degree_assortativity", CostClass::polynomial,
         [](MeasureContext& ctx, BudgetGate& gate) {
           const auto& g = ctx.graph();
           double sx = 0, sxx = 0, sxy = 0;
           long long cnt = 0;
           for (const auto& [u, v] : ctx.edges()) {
             gate.tick();
             const double du = g.degree(u), dv = g.degree(v);
             sx += du + dv;
             sxx += du * du + dv * dv;
             sxy += 2.0 * du * dv;
             cnt += 2;
           }
           if (cnt == 0) throw BudgetExceeded{MissingReason::undefined_on_graph};
           const double n = static_cast<double>(cnt);
           const double var = sxx / n - (sx / n) * (sx / n);
           if (var <= 0) throw BudgetExceeded{MissingReason::undefined_on_graph};
           return MeasureValue{(sxy / n - (sx / n) * (sx / n)) / var};
         });
  scalar("triangle_count", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    const auto& tri = ctx.node_triangles(gate);
    double total = 0;
    for (double t : tri) total += t;
    return MeasureValue{total / 3.0};
  });
  scalar("max_core", CostClass::cheap, [](MeasureContext& ctx, BudgetGate& gate) {
    const auto& cores = ctx.core_numbers(gate);
    int mx = 0;
    for (int c : cores) mx = std::max(mx, c);
    return MeasureValue{static_cast<double>(mx)};
  });
  scalar("diameter", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{ctx.distance_sweep(gate).diameter};
  }, true);
  scalar("radius", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{ctx.distance_sweep(gate).radius};
  }, true);
  scalar("avg_shortest_path", CostClass::polynomial,
         [](MeasureContext& ctx, BudgetGate& gate) {
           return MeasureValue{ctx.distance_sweep(gate).avg_dist};
         }, true);
  scalar("clique_number", CostClass::expensive, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{static_cast<double>(ctx.clique_census(gate).clique_number)};
  });
  scalar("spectral_radius", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{ctx.eigen_pair(gate).spectral_radius};
  });
  scalar("maximal_cliques", CostClass::expensive, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{static_cast<double>(ctx.clique_census(gate).maximal_count)};
  });
  scalar("global_efficiency", CostClass::polynomial,
         [](MeasureContext& ctx, BudgetGate& gate) {
           return MeasureValue{ctx.distance_sweep(gate).efficiency};
         }, true);

  node_dist("degree", CostClass::cheap, [](MeasureContext& ctx, BudgetGate&) {
    const auto& g = ctx.graph();
    std::vector<double> d(g.n);
    for (int v = 0; v < g.n; ++v) d[v] = g.degree(v);
    return MeasureValue{std::move(d)};
  });
  node_dist("local_clustering", CostClass::polynomial,
            [](MeasureContext& ctx, BudgetGate& gate) {
              const auto& g = ctx.graph();
              const auto& tri = ctx.node_triangles(gate);
              std::vector<double> c(g.n, 0.0);
              for (int v = 0; v < g.n; ++v) {
                const double d = g.degree(v);
                if (d >= 2) c[v] = 2.0 * tri[v] / (d * (d - 1));
              }
              return MeasureValue{std::move(c)};
            });
  node_dist("core_number", CostClass::cheap, [](MeasureContext& ctx, BudgetGate& gate) {
    const auto& cores = ctx.core_numbers(gate);
    return MeasureValue{std::vector<double>(cores.begin(), cores.end())};
  });
  node_dist("eccentricity", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{ctx.distance_sweep(gate).ecc};
  }, true);
  node_dist("betweenness", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{ctx.brandes(gate).node_bc};
  }, true);
  node_dist("closeness", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{ctx.distance_sweep(gate).closeness};
  }, true);
  node_dist("eigenvector", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{ctx.eigen_pair(gate).vec};
  });
  node_dist("pagerank", CostClass::polynomial, [this](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{detail::pagerank_values(ctx.graph(), 0.85, opts_, gate)};
  });
  node_dist("avg_neighbor_degree", CostClass::cheap, [](MeasureContext& ctx, BudgetGate&) {
    const auto& g = ctx.graph();
    std::vector<double> a(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) {
      if (g.adj[v].empty()) continue;
      double s = 0;
      for (int u : g.adj[v]) s += g.degree(u);
      a[v] = s / g.adj[v].size();
    }
    return MeasureValue{std::move(a)};
  });
  node_dist("node_triangles", CostClass::polynomial,
            [](MeasureContext& ctx, BudgetGate& gate) {
              return MeasureValue{ctx.node_triangles(gate)};
            });

  edge_dist("edge_betweenness", CostClass::expensive,
            [](MeasureContext& ctx, BudgetGate& gate) {
              return MeasureValue{ctx.brandes(gate).edge_bc};
            }, true);
  edge_dist("embeddedness", CostClass::polynomial, [](MeasureContext& ctx, BudgetGate& gate) {
    return MeasureValue{ctx.edge_common_neighbors(gate)};
  });
}

}  // namespace netdomain
