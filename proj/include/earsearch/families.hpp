#pragma once

/// \file families.hpp
/// \brief All 2-connected graphs on at most N vertices, optionally with at
/// most E edges.

#include <optional>
#include <stdexcept>
#include <string>

#include "engine.hpp"
#include "graph.hpp"

namespace earsearch {

struct TwoConnConfig {
  int max_n = 3;
  std::optional<int> max_e;
  /// Solutions must have exactly max_n vertices (and max_e edges when set).
  bool exact = false;

  void validate() const {
    if (max_n < 3 || max_n > kMaxVertices) {
      throw std::invalid_argument("max_n must lie in [3, " + std::to_string(kMaxVertices) + "]");
    }
    if (max_e && *max_e < max_n) {
      throw std::invalid_argument("max_e below max_n: no 2-connected graph has fewer edges than vertices");
    }
  }
};

/// A node can be cut when it already has too many edges, or when reaching
/// max_n vertices would need at least max_n - n + 1 more edges than allowed.
inline bool prune_gNE(const Graph& g, const TwoConnConfig& cfg) {
  if (!cfg.max_e) return false;
  const int n = g.vertex_count();
  const int e = g.edge_count();
  if (e > *cfg.max_e) return true;
  return n < cfg.max_n && e + (cfg.max_n - n + 1) > *cfg.max_e;
}

inline bool is_solution_gNE(const Graph& g, const TwoConnConfig& cfg) {
  const int n = g.vertex_count();
  const int e = g.edge_count();
  if (cfg.exact) return n == cfg.max_n && (!cfg.max_e || e == *cfg.max_e);
  return n <= cfg.max_n && (!cfg.max_e || e <= *cfg.max_e);
}

class TwoConnectedFamily {
 public:
  explicit TwoConnectedFamily(TwoConnConfig cfg) : cfg_(cfg) { cfg_.validate(); }

  const TwoConnConfig& config() const { return cfg_; }

  bool is_member(const Graph& g) const {
    return g.vertex_count() <= cfg_.max_n && (!cfg_.max_e || g.edge_count() <= *cfg_.max_e);
  }
  /// The look-ahead cut in prune_gNE discards small graphs that can no longer
  /// reach max_n vertices, so it only applies when those are not solutions.
  bool prune(const Graph& g) const {
    if (cfg_.exact) return prune_gNE(g, cfg_);
    return cfg_.max_e && g.edge_count() > *cfg_.max_e;
  }
  bool is_solution(const Graph& g) const { return is_solution_gNE(g, cfg_); }
  bool deletion_filter(const Graph&, const Ear&) const { return true; }

 private:
  TwoConnConfig cfg_;
};

}  // namespace earsearch
