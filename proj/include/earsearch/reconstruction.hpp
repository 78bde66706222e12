#pragma once

/// \file reconstruction.hpp
/// \brief Sparse 2-connected graphs for checking edge reconstructibility.
///
/// The family holds 2-connected graphs on at most N vertices with at most
/// 1 + floor(log2 N!) edges; denser graphs are edge reconstructible by the
/// Lovasz-Muller counting bound. Graphs that are detectably edge
/// reconstructible use the default canonical deletion. For every other graph
/// the deletion is chosen from its edge deck, so two graphs with equal decks
/// end up as siblings below the same parent and only siblings are compared.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "engine.hpp"
#include "graph.hpp"
#include "graph6.hpp"

namespace earsearch {

/// 1 + floor(log2(n!)), i.e. the bit length of n!, in exact integer arithmetic.
inline int edge_bound(int n) {
  if (n < 1 || n > 20) throw std::out_of_range("edge_bound supports 1 <= n <= 20");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return static_cast<int>(std::bit_width(f));
}

/// Sorted multiset of the canonical keys of the edge-deleted subgraphs.
struct EdgeDeck {
  std::vector<CanonicalKey> cards;

  friend bool operator==(const EdgeDeck&, const EdgeDeck&) = default;
};

inline EdgeDeck edge_deck(const Graph& g) {
  EdgeDeck deck;
  deck.cards.reserve(g.edge_count());
  for (int u = 0; u < g.vertex_count(); ++u) {
    for_each_vertex(g.neighbors(u) & ~prefix_mask(u + 1), [&](int v) {
      Graph card = g;
      card.remove_edge(u, v);
      deck.cards.push_back(canonical_key(card));
    });
  }
  std::sort(deck.cards.begin(), deck.cards.end());
  return deck;
}

/// True when g is regular, has an ear with two or more internal vertices, or
/// has a branch vertex whose ears are all non-trivial.
inline bool detectably_reconstructible(const Graph& g, std::span<const Ear> ears) {
  if (is_regular(g)) return true;
  for (const Ear& ear : ears)
    if (ear.order >= 2) return true;
  // A trivial ear is exactly an edge between two branch vertices.
  const VertexSet branch = g.branch_vertices();
  bool found = false;
  for_each_vertex(branch, [&](int v) { found = found || (g.neighbors(v) & branch) == 0; });
  return found;
}

inline bool detectably_reconstructible(const Graph& g) {
  return detectably_reconstructible(g, enumerate_ears(g));
}

/// Deck-based canonical deletion for graphs that are not detectably edge
/// reconstructible. Picks the minimum deletable order, then the endpoint
/// degree pair of least multiplicity among those ears (ties: smaller pair),
/// then the least card. For an order-1 ear the card is the lesser of the two
/// graphs obtained by deleting one of its edges. Every ear achieving the least
/// card is returned, so the set is closed under automorphisms.
inline CanonicalDeletion canonical_delete_recon(const Graph& g, std::span<const Ear> ears) {
  CanonicalDeletion out;
  out.orbit_closed = true;
  std::vector<const Ear*> usable;
  int min_order = kMaxVertices + 1;
  for (const Ear& ear : ears) {
    if (ear.order > min_order || !ear_deletion_two_connected(g, ear)) continue;
    if (ear.order < min_order) {
      min_order = ear.order;
      usable.clear();
    }
    usable.push_back(&ear);
  }
  if (usable.empty()) return out;
  out.order = min_order;

  auto degree_pair = [&](const Ear& ear) {
    const int a = g.degree(ear.ends.first);
    const int b = g.degree(ear.ends.second);
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  std::map<std::pair<int, int>, int> multiplicity;
  for (const Ear* ear : usable) ++multiplicity[degree_pair(*ear)];
  auto chosen = multiplicity.begin();
  for (auto it = multiplicity.begin(); it != multiplicity.end(); ++it)
    if (it->second < chosen->second) chosen = it;

  auto card_without = [&](int u, int v) {
    Graph card = g;
    card.remove_edge(u, v);
    return canonical_key(card);
  };
  std::optional<CanonicalKey> best;
  for (const Ear* ear : usable) {
    if (degree_pair(*ear) != chosen->first) continue;
    CanonicalKey card;
    if (ear->order == 0) {
      card = card_without(ear->ends.first, ear->ends.second);
    } else {
      const int mid = ear->internal[0];
      card = std::min(card_without(ear->ends.first, mid), card_without(mid, ear->ends.second));
    }
    if (!best || card < *best) {
      best = card;
      out.pairs.clear();
    }
    if (card == *best) out.pairs.push_back(ear->ends);
  }
  return out;
}

inline CanonicalDeletion canonical_delete_recon(const Graph& g) {
  return canonical_delete_recon(g, enumerate_ears(g));
}

/// Filter-stage tallies for sibling comparison. Each stage counts pairs of
/// non-isomorphic siblings that still agree after that stage.
struct SiblingStats {
  std::uint64_t buckets = 0;         ///< parents with at least two candidates
  std::uint64_t candidates = 0;      ///< non-isomorphic graphs placed in buckets
  std::uint64_t degree_pairs = 0;    ///< equal degree sequences
  std::uint64_t card_degree_pairs = 0;  ///< equal multisets of card degree sequences
  std::uint64_t deck_pairs = 0;      ///< equal edge decks (collisions)

  SiblingStats& operator+=(const SiblingStats& o) {
    buckets += o.buckets;
    candidates += o.candidates;
    degree_pairs += o.degree_pairs;
    card_degree_pairs += o.card_degree_pairs;
    deck_pairs += o.deck_pairs;
    return *this;
  }
};

struct Collision {
  std::string first;   ///< graph6
  std::string second;  ///< graph6
};

namespace detail {

/// Multiset of the degree sequences of all edge-deleted subgraphs; a function
/// of the edge deck alone.
inline std::vector<std::vector<int>> card_degree_sequences(const Graph& g) {
  std::vector<std::vector<int>> out;
  out.reserve(g.edge_count());
  std::vector<int> deg(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
  for (int u = 0; u < g.vertex_count(); ++u) {
    for_each_vertex(g.neighbors(u) & ~prefix_mask(u + 1), [&](int v) {
      std::vector<int> d = deg;
      --d[u];
      --d[v];
      std::sort(d.begin(), d.end(), std::greater<>());
      out.push_back(std::move(d));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Splits `items` into classes of equal key, keeping only classes of size >= 2.
template <typename Key>
std::vector<std::vector<std::size_t>> refine_groups(const std::vector<std::vector<std::size_t>>& groups,
                                                    const std::vector<Key>& keys,
                                                    std::uint64_t& pair_count) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& group : groups) {
    std::map<Key, std::vector<std::size_t>> split;
    for (std::size_t i : group) split[keys[i]].push_back(i);
    for (auto& [key, members] : split) {
      const auto s = static_cast<std::uint64_t>(members.size());
      pair_count += s * (s - 1) / 2;
      if (members.size() >= 2) out.push_back(std::move(members));
    }
  }
  return out;
}

}  // namespace detail

/// Compares siblings in three stages: degree sequence, multiset of card
/// degree sequences, full edge deck. Isomorphic duplicates are merged first.
/// Returns every pair of non-isomorphic graphs with equal edge decks.
inline std::vector<Collision> compare_siblings(std::span<const Graph> bucket, SiblingStats& stats) {
  std::vector<Collision> collisions;
  if (bucket.size() < 2) {
    stats.candidates += bucket.size();
    return collisions;
  }

  std::vector<Graph> unique;
  {
    std::vector<CanonicalKey> seen;
    for (const Graph& g : bucket) {
      CanonicalKey k = canonical_key(g);
      if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
      seen.push_back(k);
      unique.push_back(g);
    }
  }
  stats.candidates += unique.size();
  if (unique.size() < 2) return collisions;
  ++stats.buckets;

  const std::size_t count = unique.size();
  std::vector<std::vector<std::size_t>> groups(1);
  for (std::size_t i = 0; i < count; ++i) groups[0].push_back(i);

  std::vector<std::vector<int>> degrees(count);
  for (std::size_t i = 0; i < count; ++i) degrees[i] = degree_sequence(unique[i]);
  groups = detail::refine_groups(groups, degrees, stats.degree_pairs);
  if (groups.empty()) return collisions;

  std::vector<std::vector<std::vector<int>>> card_degrees(count);
  for (const auto& group : groups)
    for (std::size_t i : group) card_degrees[i] = detail::card_degree_sequences(unique[i]);
  groups = detail::refine_groups(groups, card_degrees, stats.card_degree_pairs);
  if (groups.empty()) return collisions;

  std::vector<std::vector<CanonicalKey>> decks(count);
  for (const auto& group : groups)
    for (std::size_t i : group) decks[i] = edge_deck(unique[i]).cards;
  groups = detail::refine_groups(groups, decks, stats.deck_pairs);
  for (const auto& group : groups)
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b)
        collisions.push_back({to_graph6(unique[group[a]]), to_graph6(unique[group[b]])});
  return collisions;
}

struct ReconConfig {
  int max_n = 3;
  int edge_bound = 0;

  static ReconConfig for_order(int n) { return {n, earsearch::edge_bound(n)}; }

  void validate() const {
    if (max_n < 3 || max_n > kMaxVertices) {
      throw std::invalid_argument("max_n must lie in [3, " + std::to_string(kMaxVertices) + "]");
    }
    if (edge_bound < max_n) throw std::invalid_argument("edge bound below max_n");
  }
};

struct ReconStats {
  std::uint64_t duplicates = 0;     ///< accepted children dropped as isomorphic to a sibling
  std::uint64_t nondetectable = 0;  ///< distinct children that needed deck comparison
  SiblingStats siblings;
  std::vector<Collision> collisions;
};

class ReconstructionFamily {
 public:
  explicit ReconstructionFamily(ReconConfig cfg) : cfg_(cfg) { cfg_.validate(); }

  const ReconConfig& config() const { return cfg_; }
  const ReconStats& stats() const { return stats_; }

  bool is_member(const Graph& g) const {
    return g.vertex_count() <= cfg_.max_n && g.edge_count() <= cfg_.edge_bound;
  }
  bool prune(const Graph& g) const { return g.edge_count() > cfg_.edge_bound; }
  /// Graphs on exactly max_n vertices; smaller ones are still searched and compared.
  bool is_solution(const Graph& g) const { return g.vertex_count() == cfg_.max_n; }
  bool deletion_filter(const Graph&, const Ear&) const { return true; }

  std::optional<CanonicalDeletion> custom_deletion(const Graph& g, std::span<const Ear> ears) const {
    if (detectably_reconstructible(g, ears)) return std::nullopt;
    return canonical_delete_recon(g, ears);
  }

  /// Merges isomorphic siblings (the deck-based deletion can accept one graph
  /// through several non-equivalent ears with equal cards) and compares the
  /// edge decks of the children that are not detectably reconstructible.
  void on_children(const Graph&, std::vector<Child>& children, bool record) {
    std::vector<CanonicalKey> keys;
    std::vector<Graph> bucket;
    std::vector<Child> kept;
    kept.reserve(children.size());
    std::uint64_t dropped = 0;
    for (Child& c : children) {
      if (detectably_reconstructible(c.graph)) {
        kept.push_back(std::move(c));
        continue;
      }
      CanonicalKey k = canonical_key(c.graph);
      if (std::find(keys.begin(), keys.end(), k) != keys.end()) {
        ++dropped;
        continue;
      }
      keys.push_back(k);
      bucket.push_back(c.graph);
      kept.push_back(std::move(c));
    }
    children = std::move(kept);
    if (!record) return;
    stats_.duplicates += dropped;
    stats_.nondetectable += bucket.size();
    auto found = compare_siblings(bucket, stats_.siblings);
    stats_.collisions.insert(stats_.collisions.end(), found.begin(), found.end());
  }

 private:
  ReconConfig cfg_;
  ReconStats stats_;
};

}  // namespace earsearch
