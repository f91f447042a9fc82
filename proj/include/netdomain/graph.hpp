#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netdomain {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Edge list as read from disk: duplicates, self-loops and directions are
// kept verbatim. Internal ids are contiguous, assigned by first appearance;
// the original token of node i is labels[i].
struct RawGraph {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;

  int node_count() const { return static_cast<int>(labels.size()); }
};

// Simple undirected graph. Adjacency lists are sorted, loop-free and
// symmetric. `labels[i]` carries the original token through simplification,
// component extraction and projection.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<std::string> labels;

  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  long long edge_count() const {
    long long s = 0;
    for (const auto& a : adj) s += static_cast<long long>(a.size());
    return s / 2;
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }
};

enum class Side { left, right };

struct BipartitePartition {
  std::vector<Side> side_of;  // indexed by node id
};

enum class ProjectOnto { left, right, larger, smaller };

// Whitespace-separated edge list, one edge per line. Lines starting with
// '#' or '%' are comments; tokens past the second (weights, timestamps)
// are ignored.
inline RawGraph parse_edge_list(std::istream& in) {
  RawGraph raw;
  std::unordered_map<std::string, int> id_of;
  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = id_of.try_emplace(tok, static_cast<int>(raw.labels.size()));
    if (inserted) raw.labels.push_back(tok);
    return it->second;
  };

  std::string line;
  long line_no = 0;
  bool saw_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#' || line[start] == '%') continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a >> b))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected at least 2 tokens");
    saw_content = true;
    raw.edges.emplace_back(intern(a), intern(b));
  }
  if (!saw_content) throw ParseError("empty edge list");
  return raw;
}

inline RawGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

// Drop self-loops, directions and parallel edges. Keeps the node set
// unchanged, so the result may be disconnected or contain isolated nodes.
inline Graph simplify(const RawGraph& raw) {
  Graph g;
  g.n = raw.node_count();
  g.labels = raw.labels;
  g.adj.assign(g.n, {});
  for (auto [u, v] : raw.edges) {
    if (u == v) continue;
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return g;
}

namespace detail {

inline std::vector<int> component_ids(const Graph& g, int& n_components) {
  std::vector<int> comp(g.n, -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.adj[u])
        if (comp[v] < 0) {
          comp[v] = c;
          stack.push_back(v);
        }
    }
    ++c;
  }
  n_components = c;
  return comp;
}

// Induced subgraph on `keep` (any order); nodes are re-indexed in
// ascending old-id order so the result does not depend on traversal.
inline Graph induced_subgraph(const Graph& g, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<int> new_id(g.n, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) new_id[keep[i]] = static_cast<int>(i);
  Graph out;
  out.n = static_cast<int>(keep.size());
  out.adj.assign(out.n, {});
  out.labels.resize(out.n);
  for (int old : keep) {
    int u = new_id[old];
    out.labels[u] = g.labels[old];
    for (int w : g.adj[old])
      if (new_id[w] >= 0) out.adj[u].push_back(new_id[w]);
    std::sort(out.adj[u].begin(), out.adj[u].end());
  }
  return out;
}

}  // namespace detail

inline bool is_connected(const Graph& g) {
  if (g.n == 0) return false;
  int c = 0;
  detail::component_ids(g, c);
  return c == 1;
}

// Largest connected component, re-indexed contiguously. Equal-size ties go
// to the component containing the lexicographically smallest original label,
// which makes the choice independent of node order in the input file.
inline Graph giant_component(const Graph& g) {
  if (g.n == 0) throw std::invalid_argument("giant_component: empty graph");
  int c = 0;
  std::vector<int> comp = detail::component_ids(g, c);
  std::vector<int> size(c, 0);
  for (int v = 0; v < g.n; ++v) ++size[comp[v]];
  std::vector<const std::string*> min_label(c, nullptr);
  for (int v = 0; v < g.n; ++v) {
    auto*& m = min_label[comp[v]];
    if (!m || g.labels[v] < *m) m = &g.labels[v];
  }
  int best = 0;
  for (int i = 1; i < c; ++i) {
    if (size[i] > size[best] ||
        (size[i] == size[best] && *min_label[i] < *min_label[best]))
      best = i;
  }
  std::vector<int> keep;
  keep.reserve(size[best]);
  for (int v = 0; v < g.n; ++v)
    if (comp[v] == best) keep.push_back(v);
  return detail::induced_subgraph(g, keep);
}

// BFS 2-coloring; nullopt when an odd cycle exists. Node 0's side is `left`.
inline std::optional<BipartitePartition> detect_bipartite(const Graph& g) {
  std::vector<int> color(g.n, -1);
  std::queue<int> q;
  for (int s = 0; s < g.n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adj[u]) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  BipartitePartition p;
  p.side_of.resize(g.n);
  for (int v = 0; v < g.n; ++v)
    p.side_of[v] = color[v] == 0 ? Side::left : Side::right;
  return p;
}

// One-mode projection: nodes of the chosen side, an edge whenever two of
// them share at least one neighbor on the other side. Ties between equal
// side sizes resolve to `left`.
inline Graph project_bipartite(const Graph& g, const BipartitePartition& part,
                               ProjectOnto onto) {
  int left_n = 0;
  for (Side s : part.side_of)
    if (s == Side::left) ++left_n;
  int right_n = g.n - left_n;

  Side chosen;
  switch (onto) {
    case ProjectOnto::left: chosen = Side::left; break;
    case ProjectOnto::right: chosen = Side::right; break;
    case ProjectOnto::larger: chosen = right_n > left_n ? Side::right : Side::left; break;
    case ProjectOnto::smaller: chosen = left_n > right_n ? Side::right : Side::left; break;
    default: chosen = Side::left; break;
  }
  int side_n = chosen == Side::left ? left_n : right_n;
  if (side_n == 0) throw std::invalid_argument("project_bipartite: chosen side is empty");

  std::vector<int> new_id(g.n, -1);
  Graph out;
  out.n = side_n;
  out.adj.assign(side_n, {});
  out.labels.reserve(side_n);
  for (int v = 0; v < g.n; ++v) {
    if (part.side_of[v] == chosen) {
      new_id[v] = static_cast<int>(out.labels.size());
      out.labels.push_back(g.labels[v]);
    }
  }
  for (int hub = 0; hub < g.n; ++hub) {
    if (part.side_of[hub] == chosen) continue;
    const auto& nb = g.adj[hub];
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        out.adj[new_id[nb[i]]].push_back(new_id[nb[j]]);
        out.adj[new_id[nb[j]]].push_back(new_id[nb[i]]);
      }
  }
  for (auto& a : out.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return out;
}

}  // namespace netdomain
