#pragma once

/// \file saturation.hpp
/// \brief Search family and verifiers for uniquely K_r-saturated graphs with
/// no dominating vertex.
///
/// A graph is uniquely K_r-saturated when it has no K_r and adding any missing
/// edge creates exactly one K_r. The search family keeps 2-connected graphs
/// with no K_r in which every missing edge completes at most one K_r; both
/// conditions survive ear deletion, so the family is deletion-closed.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "engine.hpp"
#include "graph.hpp"

namespace earsearch {

/// Number of k-cliques inside `candidates`, stopping once `limit` is reached.
inline int count_cliques(const Graph& g, VertexSet candidates, int k, int limit) {
  if (k == 0) return 1;
  if (popcount(candidates) < k) return 0;
  int total = 0;
  while (candidates != 0 && total < limit) {
    const int v = lowest(candidates);
    candidates &= candidates - 1;
    total += count_cliques(g, candidates & g.neighbors(v), k - 1, limit - total);
  }
  return total;
}

inline bool contains_clique(const Graph& g, int k) { return count_cliques(g, g.vertices(), k, 1) > 0; }

/// Copies of K_r in g + uv that use the edge uv: the (r-2)-cliques in the
/// common neighborhood of u and v. Counting stops at `limit`.
inline int count_kr_completions(const Graph& g, int u, int v, int r, int limit = 1 << 30) {
  if (u == v || g.has_edge(u, v)) {
    throw std::invalid_argument("count_kr_completions needs a non-edge");
  }
  return count_cliques(g, g.neighbors(u) & g.neighbors(v), r - 2, limit);
}

/// Membership in the search family: no K_r, and every non-edge completes at
/// most one K_r.
inline bool is_member_U(const Graph& g, int r) {
  if (contains_clique(g, r)) return false;
  const int n = g.vertex_count();
  for (int a = 0; a < n; ++a) {
    const VertexSet later = g.vertices() & ~g.neighbors(a) & ~prefix_mask(a + 1);
    for (VertexSet rest = later; rest != 0; rest &= rest - 1) {
      if (count_kr_completions(g, a, lowest(rest), r, 2) > 1) return false;
    }
  }
  return true;
}

inline bool has_dominating_vertex(const Graph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == g.vertex_count() - 1) return true;
  return false;
}

inline bool is_uniquely_saturated(const Graph& g, int r) {
  if (contains_clique(g, r)) return false;
  const int n = g.vertex_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!g.has_edge(a, b) && count_kr_completions(g, a, b, r, 2) != 1) return false;
  return true;
}

/// Brute force: no set of k-1 vertices leaves a disconnected graph or a single
/// vertex. Meant for sanity checks on small outputs.
inline bool is_k_connected(const Graph& g, int k) {
  const int n = g.vertex_count();
  if (n < k + 1) return false;
  for (VertexSet s = 0; s < bit(n); ++s) {
    if (popcount(s) != k - 1) continue;
    if (!is_connected(g.without_vertices(s))) return false;
  }
  return true;
}

struct SatConfig {
  int r = 4;
  int max_n = 3;
  bool prune_dominating = true;

  void validate() const {
    if (r < 3) throw std::invalid_argument("clique size r must be at least 3");
    if (max_n < 3 || max_n > kMaxVertices) {
      throw std::invalid_argument("max_n must lie in [3, " + std::to_string(kMaxVertices) + "]");
    }
  }
};

class SaturationFamily {
 public:
  explicit SaturationFamily(SatConfig cfg) : cfg_(cfg) { cfg_.validate(); }

  const SatConfig& config() const { return cfg_; }

  bool is_member(const Graph& g) const {
    return g.vertex_count() <= cfg_.max_n && is_member_U(g, cfg_.r);
  }
  bool prune(const Graph& g) const {
    return !is_member_U(g, cfg_.r) || (cfg_.prune_dominating && has_dominating_vertex(g));
  }
  bool is_solution(const Graph& g) const {
    return !has_dominating_vertex(g) && is_uniquely_saturated(g, cfg_.r);
  }
  bool deletion_filter(const Graph&, const Ear&) const { return true; }

 private:
  SatConfig cfg_;
};

/// Independent re-check of a reported solution.
struct SaturationReport {
  std::vector<int> degrees;
  bool regular = false;
  bool dominating = false;
  bool uniquely_saturated = false;
  /// Completion count -> number of non-edges with that count.
  std::map<int, int> completions;
  /// (r-2)-connectivity; only meaningful with at least r+1 vertices.
  std::optional<bool> connectivity_ok;

  std::string to_string() const {
    std::ostringstream os;
    os << "degrees=";
    for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
    os << " regular=" << (regular ? "yes" : "no") << " dominating=" << (dominating ? "yes" : "no")
       << " unique=" << (uniquely_saturated ? "yes" : "no") << " completions={";
    bool first = true;
    for (auto [count, pairs] : completions) {
      os << (first ? "" : ",") << count << ":" << pairs;
      first = false;
    }
    os << "}";
    if (connectivity_ok) os << " connectivity=" << (*connectivity_ok ? "ok" : "FAIL");
    return os.str();
  }
};

inline SaturationReport verify_saturation(const Graph& g, int r) {
  SaturationReport rep;
  rep.degrees = degree_sequence(g);
  rep.regular = is_regular(g);
  rep.dominating = has_dominating_vertex(g);
  rep.uniquely_saturated = is_uniquely_saturated(g, r);
  const int n = g.vertex_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!g.has_edge(a, b)) ++rep.completions[count_kr_completions(g, a, b, r)];
  if (r >= 4 && n >= r + 1) rep.connectivity_ok = is_k_connected(g, r - 2);
  return rep;
}

}  // namespace earsearch
