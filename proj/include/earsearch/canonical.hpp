#pragma once

/// \file canonical.hpp
/// \brief Canonical labeling, automorphism generators and vertex-pair orbits
/// by individualization-refinement.
///
/// The search tree is the usual one: the root is the equitable refinement of
/// the degree partition, and each node individualizes one vertex of the first
/// smallest non-singleton cell and refines again. The canonical leaf is the one
/// whose relabeled adjacency rows are lexicographically least. Automorphisms
/// come from pairs of leaves with equal rows; they are used to skip children
/// that lie in the same orbit of the pointwise stabilizer of the current
/// prefix, and to jump back to the first path when a leaf matches the first
/// leaf. Every decision depends only on cell positions and neighbor counts, so
/// the result does not depend on the input labeling.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "graph.hpp"
#include "graph6.hpp"

namespace earsearch {

/// A vertex permutation; entry v is the image of v. Entries past n are unused.
using Permutation = std::array<std::uint8_t, kMaxVertices>;

using AdjacencyRows = std::array<VertexSet, kMaxVertices>;

/// Result of canonical labeling.
struct CanonicalLabeling {
  int n = 0;
  /// label[v] is the canonical position of v (the map pi_G).
  Permutation label{};
  /// Adjacency rows of the canonically relabeled graph; rows past n are zero.
  AdjacencyRows rows{};
  /// Generators of the automorphism group of the input graph.
  std::vector<Permutation> generators;

  Graph canonical_graph() const {
    Graph h(n);
    for (int u = 0; u < n; ++u)
      for_each_vertex(rows[u], [&](int v) {
        if (u < v) h.add_edge(u, v);
      });
    return h;
  }
};

/// Label-invariant encoding of a graph: isomorphic graphs, and only those,
/// have equal keys. Cheaper to compare and hash than the graph6 bytes.
struct CanonicalKey {
  int n = 0;
  AdjacencyRows rows{};

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(k.n);
    for (int i = 0; i < k.n; ++i) {
      h ^= k.rows[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

namespace detail {

class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : g_(g), n_(g.vertex_count()) {}

  CanonicalLabeling run() {
    CanonicalLabeling out;
    out.n = n_;
    if (n_ == 0) return out;
    Partition root;
    root.cell[0] = g_.vertices();
    root.starts = bit(0);
    refine(root, bit(0));
    explore(root, 0);
    for (int v = 0; v < n_; ++v) out.label[v] = best_label_[v];
    out.rows = best_rows_;
    out.generators = std::move(gens_);
    return out;
  }

 private:
  struct Partition {
    std::array<VertexSet, kMaxVertices> cell{};  // valid at start positions only
    VertexSet starts = 0;                        // positions where a cell begins
  };

  bool discrete(const Partition& p) const { return p.starts == prefix_mask(n_); }

  void refine(Partition& p, VertexSet queue) const {
    const auto adj = g_.rows();
    while (queue != 0 && !discrete(p)) {
      const int s = lowest(queue);
      queue &= queue - 1;
      const VertexSet splitter = p.cell[s];
      const VertexSet snapshot = p.starts;
      for_each_vertex(snapshot, [&](int q) {
        const VertexSet c = p.cell[q];
        if ((c & (c - 1)) == 0) return;
        std::array<VertexSet, kMaxVertices + 1> by_count{};
        VertexSet used = 0;
        for_each_vertex(c, [&](int v) {
          const int k = popcount(adj[v] & splitter);
          by_count[k] |= bit(v);
          used |= bit(k);
        });
        if ((used & (used - 1)) == 0) return;
        int pos = q;
        for_each_vertex(used, [&](int k) {
          p.cell[pos] = by_count[k];
          p.starts |= bit(pos);
          queue |= bit(pos);
          pos += popcount(by_count[k]);
        });
      });
    }
  }

  // Returns the depth whose loop should continue; depth - 1 means "carry on
  // in the parent".
  int explore(const Partition& p, int depth) {
    if (discrete(p)) return leaf(p, depth);

    int target = -1;
    int target_size = kMaxVertices + 1;
    for_each_vertex(p.starts, [&](int q) {
      const int size = popcount(p.cell[q]);
      if (size > 1 && size < target_size) {
        target = q;
        target_size = size;
      }
    });

    const VertexSet cell = p.cell[target];
    VertexSet tried = 0;
    for (VertexSet rest = cell; rest != 0; rest &= rest - 1) {
      const int v = lowest(rest);
      if (tried != 0 && in_explored_orbit(v, tried, depth)) continue;
      tried |= bit(v);
      Partition child = p;
      child.cell[target] = bit(v);
      child.cell[target + 1] = cell & ~bit(v);
      child.starts |= bit(target + 1);
      refine(child, bit(target));
      prefix_[depth] = static_cast<std::uint8_t>(v);
      const int resume = explore(child, depth + 1);
      if (resume < depth) return resume;
    }
    return depth - 1;
  }

  // Orbits of the subgroup generated by the known automorphisms that fix
  // prefix_[0..depth) pointwise.
  bool in_explored_orbit(int v, VertexSet tried, int depth) const {
    std::array<std::uint8_t, kMaxVertices> parent{};
    for (int i = 0; i < n_; ++i) parent[i] = static_cast<std::uint8_t>(i);
    auto find = [&](int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    bool any = false;
    for (const auto& gen : gens_) {
      bool fixes = true;
      for (int i = 0; i < depth && fixes; ++i) fixes = gen[prefix_[i]] == prefix_[i];
      if (!fixes) continue;
      any = true;
      for (int x = 0; x < n_; ++x) {
        int a = find(x);
        int b = find(gen[x]);
        if (a != b) parent[std::max(a, b)] = static_cast<std::uint8_t>(std::min(a, b));
      }
    }
    if (!any) return false;
    const int root = find(v);
    bool hit = false;
    for_each_vertex(tried, [&](int u) { hit = hit || find(u) == root; });
    return hit;
  }

  int leaf(const Partition& p, int depth) {
    Permutation label{};
    for_each_vertex(p.starts, [&](int q) { label[lowest(p.cell[q])] = static_cast<std::uint8_t>(q); });
    AdjacencyRows rows{};
    const auto adj = g_.rows();
    for (int u = 0; u < n_; ++u) {
      VertexSet r = 0;
      for_each_vertex(adj[u], [&](int w) { r |= bit(label[w]); });
      rows[label[u]] = r;
    }

    if (!have_first_) {
      have_first_ = true;
      first_label_ = best_label_ = label;
      first_rows_ = best_rows_ = rows;
      first_depth_ = depth;
      first_prefix_ = prefix_;
      return depth - 1;
    }
    if (rows == first_rows_) {
      gens_.push_back(compose(label, first_label_));
      int agree = 0;
      while (agree < depth && agree < first_depth_ && prefix_[agree] == first_prefix_[agree]) ++agree;
      return agree;
    }
    const auto cmp = compare_rows(rows, best_rows_);
    if (cmp == 0) {
      gens_.push_back(compose(label, best_label_));
    } else if (cmp < 0) {
      best_rows_ = rows;
      best_label_ = label;
    }
    return depth - 1;
  }

  int compare_rows(const AdjacencyRows& a, const AdjacencyRows& b) const {
    for (int i = 0; i < n_; ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  // The automorphism taking the vertex labeled i by `reference` to the vertex
  // labeled i by `label`.
  Permutation compose(const Permutation& label, const Permutation& reference) const {
    Permutation inverse{};
    for (int v = 0; v < n_; ++v) inverse[label[v]] = static_cast<std::uint8_t>(v);
    Permutation gamma{};
    for (int v = 0; v < n_; ++v) gamma[v] = inverse[reference[v]];
    return gamma;
  }

  const Graph& g_;
  int n_;
  std::vector<Permutation> gens_;
  Permutation prefix_{};
  Permutation first_prefix_{};
  int first_depth_ = 0;
  bool have_first_ = false;
  Permutation first_label_{};
  Permutation best_label_{};
  AdjacencyRows first_rows_{};
  AdjacencyRows best_rows_{};
};

}  // namespace detail

/// Canonical labeling of g together with generators of Aut(g).
inline CanonicalLabeling canonical_labeling(const Graph& g) { return detail::Canonizer(g).run(); }

inline CanonicalKey canonical_key(const Graph& g) {
  auto lab = canonical_labeling(g);
  return {lab.n, lab.rows};
}

/// Label-invariant byte string plus the canonical permutation.
struct CanonicalForm {
  std::string bytes;  ///< graph6 of the canonically relabeled graph
  Permutation perm{};

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes == b.bytes; }
};

inline CanonicalForm canonical_form(const Graph& g) {
  auto lab = canonical_labeling(g);
  return {to_graph6(lab.canonical_graph()), lab.label};
}

inline std::string canonical_graph6(const Graph& g) { return canonical_form(g).bytes; }

struct AutomorphismGens {
  std::vector<Permutation> gens;
};

inline AutomorphismGens automorphism_generators(const Graph& g) {
  return {canonical_labeling(g).generators};
}

/// Index of the unordered pair {x, y} in graph6 order: (0,1),(0,2),(1,2),(0,3),...
constexpr int pair_index(VertexPair p) { return p.second * (p.second - 1) / 2 + p.first; }

constexpr VertexPair pair_at(int index) {
  int y = 1;
  while ((y + 1) * y / 2 <= index) ++y;
  return VertexPair(index - y * (y - 1) / 2, y);
}

/// Orbits of unordered vertex pairs under a permutation group given by
/// generators. Orbit ids are numbered in order of their least pair index, and
/// reps[i] is that least pair.
struct PairOrbits {
  int n = 0;
  std::vector<int> orbit_id;  ///< indexed by pair_index
  std::vector<VertexPair> reps;

  int orbit_of(VertexPair p) const { return orbit_id[pair_index(p)]; }
  std::size_t size() const { return reps.size(); }
};

inline PairOrbits pair_orbits(int n, const std::vector<Permutation>& gens) {
  PairOrbits out;
  out.n = n;
  const int pairs = n * (n - 1) / 2;
  std::vector<int> parent(pairs);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& gen : gens) {
    for (int i = 0; i < pairs; ++i) {
      const VertexPair p = pair_at(i);
      const int j = pair_index(VertexPair(gen[p.first], gen[p.second]));
      int a = find(i);
      int b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  out.orbit_id.assign(pairs, -1);
  std::vector<int> id_of_root(pairs, -1);
  for (int i = 0; i < pairs; ++i) {
    const int r = find(i);
    if (id_of_root[r] < 0) {
      id_of_root[r] = static_cast<int>(out.reps.size());
      out.reps.push_back(pair_at(i));
    }
    out.orbit_id[i] = id_of_root[r];
  }
  return out;
}

inline PairOrbits vertex_pair_orbits(const Graph& g) {
  return pair_orbits(g.vertex_count(), canonical_labeling(g).generators);
}

/// Whether some element of the group generated by `gens` maps pair a to pair b.
inline bool same_pair_orbit(int n, const std::vector<Permutation>& gens, VertexPair a, VertexPair b) {
  if (a == b) return true;
  const int pairs = n * (n - 1) / 2;
  std::vector<char> seen(pairs, 0);
  std::vector<int> frontier{pair_index(a)};
  seen[frontier.front()] = 1;
  const int target = pair_index(b);
  while (!frontier.empty()) {
    const VertexPair p = pair_at(frontier.back());
    frontier.pop_back();
    for (const auto& gen : gens) {
      const int j = pair_index(VertexPair(gen[p.first], gen[p.second]));
      if (j == target) return true;
      if (!seen[j]) {
        seen[j] = 1;
        frontier.push_back(j);
      }
    }
  }
  return false;
}

}  // namespace earsearch
