#pragma once

/// \file graph.hpp
/// \brief Small simple graphs stored as adjacency bit-rows, plus ear
/// enumeration, ear deletion and ear augmentation.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace earsearch {

inline constexpr int kMaxVertices = 16;

/// Bitmask over vertex indices; bit v set means vertex v is in the set.
using VertexSet = std::uint32_t;

constexpr VertexSet bit(int v) { return VertexSet{1} << v; }
constexpr VertexSet prefix_mask(int n) { return n >= 32 ? ~VertexSet{0} : bit(n) - 1; }
constexpr int popcount(VertexSet s) { return std::popcount(s); }
constexpr int lowest(VertexSet s) { return std::countr_zero(s); }

/// Calls f(v) for every v in s, in increasing order.
template <typename F>
constexpr void for_each_vertex(VertexSet s, F&& f) {
  while (s != 0) {
    int v = lowest(s);
    s &= s - 1;
    f(v);
  }
}

/// Unordered vertex pair, stored with first < second.
struct VertexPair {
  int first = 0;
  int second = 0;

  constexpr VertexPair() = default;
  constexpr VertexPair(int a, int b) : first(std::min(a, b)), second(std::max(a, b)) {}

  constexpr bool contains(int v) const { return first == v || second == v; }
  friend constexpr auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices) {
      throw std::out_of_range("graph order " + std::to_string(n) + " exceeds capacity");
    }
  }

  Graph(int n, std::initializer_list<std::pair<int, int>> edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  static Graph cycle(int k) {
    Graph g(k);
    for (int i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
    return g;
  }

  static Graph path(int k) {
    Graph g(k);
    for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
    return g;
  }

  static Graph complete(int k) {
    Graph g(k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) g.add_edge(i, j);
    return g;
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }
  VertexSet vertices() const { return prefix_mask(n_); }

  VertexSet neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return popcount(adj_[v]); }
  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1U; }

  void add_edge(int u, int v) {
    check_pair(u, v);
    if (has_edge(u, v)) return;
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
    ++m_;
  }

  void remove_edge(int u, int v) {
    check_pair(u, v);
    if (!has_edge(u, v)) return;
    adj_[u] &= ~bit(v);
    adj_[v] &= ~bit(u);
    --m_;
  }

  /// Appends an isolated vertex and returns its index.
  int add_vertex() {
    if (n_ >= kMaxVertices) throw std::out_of_range("graph capacity exceeded");
    adj_[n_] = 0;
    return n_++;
  }

  /// Vertices of degree at least three.
  VertexSet branch_vertices() const {
    VertexSet out = 0;
    for (int v = 0; v < n_; ++v)
      if (degree(v) >= 3) out |= bit(v);
    return out;
  }

  Graph complement() const {
    Graph h(n_);
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (!has_edge(u, v)) h.add_edge(u, v);
    return h;
  }

  /// Returns the graph with vertex v renamed to perm[v].
  Graph relabeled(std::span<const int> perm) const {
    Graph h(n_);
    for (int u = 0; u < n_; ++u)
      for_each_vertex(adj_[u], [&](int v) {
        if (u < v) h.add_edge(perm[u], perm[v]);
      });
    return h;
  }

  /// Deletes every vertex in `removed`; survivors keep their relative order.
  Graph without_vertices(VertexSet removed) const {
    std::array<int, kMaxVertices> remap{};
    int next = 0;
    for (int v = 0; v < n_; ++v) remap[v] = (removed >> v) & 1U ? -1 : next++;
    Graph h(next);
    for (int u = 0; u < n_; ++u) {
      if (remap[u] < 0) continue;
      for_each_vertex(adj_[u] & ~removed, [&](int v) {
        if (u < v) h.add_edge(remap[u], remap[v]);
      });
    }
    return h;
  }

  std::span<const VertexSet> rows() const { return {adj_.data(), static_cast<std::size_t>(n_)}; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && std::equal(a.adj_.begin(), a.adj_.begin() + a.n_, b.adj_.begin());
  }

 private:
  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
      throw std::invalid_argument("invalid vertex pair (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
    }
  }

  int n_ = 0;
  int m_ = 0;
  std::array<VertexSet, kMaxVertices> adj_{};
};

namespace detail {

/// Connectivity and cut-vertex test restricted to the vertices in `live`.
/// Edges leaving `live` are ignored. Returns true iff the induced subgraph has
/// at least three vertices, is connected, and has no cut vertex.
inline bool two_connected_on(std::span<const VertexSet> adj, VertexSet live) {
  if (popcount(live) < 3) return false;

  std::array<int, kMaxVertices> disc{};
  std::array<int, kMaxVertices> low{};
  std::array<int, kMaxVertices> parent{};
  std::array<VertexSet, kMaxVertices> pending{};
  std::array<int, kMaxVertices> stack{};
  disc.fill(-1);

  const int root = lowest(live);
  int time = 0;
  int top = 0;
  int root_children = 0;
  disc[root] = low[root] = time++;
  parent[root] = -1;
  pending[root] = adj[root] & live;
  stack[top++] = root;

  while (top > 0) {
    int u = stack[top - 1];
    if (pending[u] != 0) {
      int w = lowest(pending[u]);
      pending[u] &= pending[u] - 1;
      if (disc[w] < 0) {
        parent[w] = u;
        disc[w] = low[w] = time++;
        pending[w] = adj[w] & live;
        stack[top++] = w;
        if (u == root) ++root_children;
      } else if (w != parent[u]) {
        low[u] = std::min(low[u], disc[w]);
      }
      continue;
    }
    --top;
    int p = parent[u];
    if (p >= 0) {
      low[p] = std::min(low[p], low[u]);
      if (p != root && low[u] >= disc[p]) return false;
    }
  }
  if (time != popcount(live)) return false;
  return root_children == 1;
}

}  // namespace detail

/// True iff g has at least 3 vertices, is connected, and has no cut vertex.
inline bool is_two_connected(const Graph& g) {
  return detail::two_connected_on(g.rows(), g.vertices());
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  VertexSet seen = bit(0);
  VertexSet frontier = seen;
  while (frontier != 0) {
    VertexSet next = 0;
    for_each_vertex(frontier, [&](int v) { next |= g.neighbors(v); });
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == g.vertices();
}

/// Non-increasing degree list.
inline std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

inline bool is_regular(const Graph& g) {
  for (int v = 1; v < g.vertex_count(); ++v)
    if (g.degree(v) != g.degree(0)) return false;
  return true;
}

/// A path x0, x1, ..., xk whose endpoints are branch vertices and whose
/// internal vertices have degree two. Order is the number of internal vertices.
struct Ear {
  VertexPair ends;
  int order = 0;
  std::array<std::uint8_t, kMaxVertices> internal{};  ///< from ends.first to ends.second

  VertexSet internal_set() const {
    VertexSet s = 0;
    for (int i = 0; i < order; ++i) s |= bit(internal[i]);
    return s;
  }
  bool trivial() const { return order == 0; }
};

/// Every ear of a 2-connected graph: each maximal chain of degree-2 vertices
/// between branch vertices, and each edge joining two branch vertices.
/// Cycles have no branch vertex and yield an empty list. The ears partition
/// the edge set.
inline std::vector<Ear> enumerate_ears(const Graph& g) {
  std::vector<Ear> ears;
  const VertexSet branch = g.branch_vertices();
  for_each_vertex(branch, [&](int x) {
    for_each_vertex(g.neighbors(x), [&](int first) {
      Ear ear;
      int prev = x;
      int cur = first;
      while (!((branch >> cur) & 1U)) {
        if (ear.order == kMaxVertices) return;  // unreachable in a 2-connected graph
        ear.internal[ear.order++] = static_cast<std::uint8_t>(cur);
        int next = lowest(g.neighbors(cur) & ~bit(prev));
        prev = cur;
        cur = next;
      }
      // each ear is seen from both ends; keep the walk that starts at the smaller endpoint
      if (cur <= x) return;
      ear.ends = VertexPair(x, cur);
      ears.push_back(ear);
    });
  });
  return ears;
}

/// Throws std::invalid_argument unless `ear` is an ear of g.
inline void check_ear(const Graph& g, const Ear& ear) {
  const auto [x, y] = ear.ends;
  const int n = g.vertex_count();
  auto fail = [] { throw std::invalid_argument("not an ear of the graph"); };
  if (x < 0 || y >= n || x == y || ear.order < 0 || ear.order > n - 2) fail();
  if (g.degree(x) < 3 || g.degree(y) < 3) fail();
  int prev = x;
  for (int i = 0; i < ear.order; ++i) {
    int v = ear.internal[i];
    if (v < 0 || v >= n || g.degree(v) != 2 || !g.has_edge(prev, v)) fail();
    prev = v;
  }
  if (!g.has_edge(prev, y)) fail();
}

/// Removes the internal vertices of the ear (or its single edge when trivial).
/// The result may be separable.
inline Graph ear_delete(const Graph& g, const Ear& ear) {
  check_ear(g, ear);
  if (ear.trivial()) {
    Graph h = g;
    h.remove_edge(ear.ends.first, ear.ends.second);
    return h;
  }
  return g.without_vertices(ear.internal_set());
}

/// Whether g - ear is 2-connected; no copy of the graph is made.
inline bool ear_deletion_two_connected(const Graph& g, const Ear& ear) {
  if (!ear.trivial()) return detail::two_connected_on(g.rows(), g.vertices() & ~ear.internal_set());
  std::array<VertexSet, kMaxVertices> rows{};
  std::copy(g.rows().begin(), g.rows().end(), rows.begin());
  rows[ear.ends.first] &= ~bit(ear.ends.second);
  rows[ear.ends.second] &= ~bit(ear.ends.first);
  return detail::two_connected_on({rows.data(), static_cast<std::size_t>(g.vertex_count())},
                                  g.vertices());
}

/// Adds a path of `order` new vertices between x and y. The new vertices take
/// indices n, n+1, ..., n+order-1, walking from x to y.
inline Graph ear_augment(const Graph& g, int x, int y, int order) {
  const int n = g.vertex_count();
  if (x < 0 || y < 0 || x >= n || y >= n || x == y) {
    throw std::invalid_argument("ear endpoints must be distinct vertices");
  }
  if (order < 0) throw std::invalid_argument("negative ear order");
  if (n + order > kMaxVertices) throw std::out_of_range("ear augmentation exceeds capacity");
  if (order == 0 && g.has_edge(x, y)) {
    throw std::invalid_argument("trivial ear on an existing edge");
  }
  Graph h = g;
  int prev = x;
  for (int i = 0; i < order; ++i) {
    int v = h.add_vertex();
    h.add_edge(prev, v);
    prev = v;
  }
  h.add_edge(prev, y);
  return h;
}

/// The ear that ear_augment(g, x, y, order) appended, as seen in the result.
inline Ear appended_ear(int parent_order, int x, int y, int order) {
  Ear ear;
  ear.ends = VertexPair(x, y);
  ear.order = order;
  for (int i = 0; i < order; ++i) ear.internal[i] = static_cast<std::uint8_t>(parent_order + i);
  if (x > y) std::reverse(ear.internal.begin(), ear.internal.begin() + order);
  return ear;
}

}  // namespace earsearch
