#pragma once

/// \file engine.hpp
/// \brief Isomorph-free generation of 2-connected graphs by canonical ear
/// augmentation.
///
/// A family is any type modelling FamilySpec. The search starts from each
/// cycle C_k, k = 3..N, and recursively adds one ear per step, one ear per
/// (pair orbit, order) combination. A child is kept only when the ear that was
/// added is, up to automorphism of the child, the ear the canonical deletion
/// picks. With the default deletion every unlabeled member of the family is
/// visited exactly once.

#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"

namespace earsearch {

/// One ear picked by a canonical deletion.
struct DeletionChoice {
  VertexPair ends;
  int order = 0;
  /// min(n*pi(x) + pi(y), n*pi(y) + pi(x)) under the canonical labeling.
  int label = 0;
};

/// A canonical deletion given as a set: every ear of `order` between one of
/// `pairs` counts as canonical. When `orbit_closed` is set the set is already
/// a union of automorphism orbits and membership is tested directly;
/// otherwise membership is up to automorphisms of the graph.
struct CanonicalDeletion {
  int order = 0;
  std::vector<VertexPair> pairs;
  bool orbit_closed = false;
};

/// Restricts a run to one residue class of the nodes at a fixed depth.
/// Nodes above that depth are expanded by every job; solutions there are
/// reported by residue 0 only.
struct JobSpec {
  int root_cycle = 0;  ///< 0 means every cycle C_3..C_N
  int split_depth = 1;
  int modulus = 1;
  int residue = 0;

  void validate() const {
    if (modulus < 1) throw std::invalid_argument("job modulus must be positive");
    if (residue < 0 || residue >= modulus) {
      throw std::invalid_argument("job residue " + std::to_string(residue) + " outside [0, " +
                                  std::to_string(modulus) + ")");
    }
    if (split_depth < 0) throw std::invalid_argument("negative split depth");
    if (root_cycle != 0 && root_cycle < 3) throw std::invalid_argument("root cycle shorter than 3");
  }
};

struct Counters {
  std::uint64_t nodes = 0;          ///< search nodes visited
  std::uint64_t augmentations = 0;  ///< ear augmentations attempted
  std::uint64_t non_members = 0;    ///< children outside the family
  std::uint64_t pruned = 0;         ///< nodes cut by the family's prune hook
  std::uint64_t labelings = 0;      ///< canonical labelings computed
  std::uint64_t accepted = 0;       ///< children that passed the canonical deletion test
  std::uint64_t solutions = 0;

  Counters& operator+=(const Counters& o) {
    nodes += o.nodes;
    augmentations += o.augmentations;
    non_members += o.non_members;
    pruned += o.pruned;
    labelings += o.labelings;
    accepted += o.accepted;
    solutions += o.solutions;
    return *this;
  }
};

template <typename F>
concept FamilySpec = requires(F& f, const Graph& g, const Ear& e) {
  { f.is_member(g) } -> std::convertible_to<bool>;
  { f.prune(g) } -> std::convertible_to<bool>;
  { f.is_solution(g) } -> std::convertible_to<bool>;
  { f.deletion_filter(g, e) } -> std::convertible_to<bool>;
};

/// Families that override the default deletion for some graphs. Returning
/// std::nullopt falls back to the default.
template <typename F>
concept HasCustomDeletion = requires(F& f, const Graph& g, std::span<const Ear> ears) {
  { f.custom_deletion(g, ears) } -> std::same_as<std::optional<CanonicalDeletion>>;
};

/// An accepted child, as passed to the optional on_children hook.
struct Child {
  Graph graph;
  Ear ear;                                            ///< the ear that was added
  std::optional<std::vector<Permutation>> generators;  ///< Aut(graph), when already known
};

/// Families that inspect (and may drop) the accepted children of each node
/// before the search descends into them. `record` is false when another job
/// reports this node, in which case the hook must only filter.
template <typename F>
concept HasChildrenHook = requires(F& f, const Graph& g, std::vector<Child>& kids, bool record) {
  f.on_children(g, kids, record);
};

/// Whether removing `ear` keeps g 2-connected and inside the family.
template <FamilySpec Family>
bool deletable(const Graph& g, const Ear& ear, Family& fam) {
  return ear_deletion_two_connected(g, ear) && fam.deletion_filter(g, ear);
}

/// Default canonical deletion: among deletable ears, minimum order first, then
/// the least canonical label of the endpoint pair. Returns std::nullopt when g
/// is a cycle or no ear is deletable.
template <FamilySpec Family>
std::optional<DeletionChoice> default_canonical_delete(const Graph& g, Family& fam,
                                                       const CanonicalLabeling& lab) {
  const int n = g.vertex_count();
  std::optional<DeletionChoice> best;
  for (const Ear& ear : enumerate_ears(g)) {
    if (best && ear.order > best->order) continue;
    const int px = lab.label[ear.ends.first];
    const int py = lab.label[ear.ends.second];
    const int label = std::min(n * px + py, n * py + px);
    if (best && ear.order == best->order && label >= best->label) continue;
    if (!deletable(g, ear, fam)) continue;
    best = DeletionChoice{ear.ends, ear.order, label};
  }
  return best;
}

template <FamilySpec Family>
std::optional<DeletionChoice> default_canonical_delete(const Graph& g, Family& fam) {
  return default_canonical_delete(g, fam, canonical_labeling(g));
}

/// One (pair-orbit representative, order) per possible augmentation with
/// n(g) + order <= max_n; trivial ears on existing edges are skipped.
inline std::vector<std::pair<VertexPair, int>> orbit_augmentations(
    const Graph& g, int max_n, const std::vector<Permutation>& generators) {
  std::vector<std::pair<VertexPair, int>> out;
  const PairOrbits orbits = pair_orbits(g.vertex_count(), generators);
  const int room = std::min(max_n, kMaxVertices) - g.vertex_count();
  for (const VertexPair& rep : orbits.reps) {
    for (int r = 0; r <= room; ++r) {
      if (r == 0 && g.has_edge(rep.first, rep.second)) continue;
      out.emplace_back(rep, r);
    }
  }
  return out;
}

inline std::vector<std::pair<VertexPair, int>> orbit_augmentations(const Graph& g, int max_n) {
  return orbit_augmentations(g, max_n, automorphism_generators(g).gens);
}

/// Outcome of accept_child; carries Aut(child) when it had to be computed.
struct Acceptance {
  bool accepted = false;
  std::optional<std::vector<Permutation>> generators;
};

/// Decides whether `child`, obtained from its parent by
/// ear_augment(parent, pair.first, pair.second, order), is the canonical
/// augmentation: the canonical deletion of the child must have the same order
/// and an endpoint pair in the same Aut(child)-orbit as the added ear.
template <FamilySpec Family>
Acceptance accept_child(const Graph& child, VertexPair pair, int order,
                        Family& fam, Counters* counters = nullptr) {
  Acceptance out;
  const std::vector<Ear> ears = enumerate_ears(child);

  if constexpr (HasCustomDeletion<Family>) {
    if (auto custom = fam.custom_deletion(child, ears)) {
      if (custom->order != order) return out;
      bool hit = false;
      if (custom->orbit_closed) {
        for (const auto& p : custom->pairs) hit = hit || p == pair;
      } else {
        auto lab = canonical_labeling(child);
        if (counters) ++counters->labelings;
        for (const auto& p : custom->pairs)
          hit = hit || same_pair_orbit(child.vertex_count(), lab.generators, p, pair);
        out.generators = std::move(lab.generators);
      }
      out.accepted = hit;
      return out;
    }
  }

  // Any deletable ear of smaller order takes precedence over the added one.
  bool others = false;
  for (const Ear& ear : ears) {
    if (ear.order < order && deletable(child, ear, fam)) return out;
    if (ear.order == order && ear.ends != pair) others = true;
  }
  if (others) {
    others = false;
    for (const Ear& ear : ears) {
      if (ear.order == order && ear.ends != pair && deletable(child, ear, fam)) {
        others = true;
        break;
      }
    }
  }
  if (!others) {
    // Only ears between the added endpoints compete, and parallel ears of equal
    // order are swapped by an automorphism.
    out.accepted = true;
    return out;
  }

  auto lab = canonical_labeling(child);
  if (counters) ++counters->labelings;
  const int n = child.vertex_count();
  std::optional<DeletionChoice> best;
  for (const Ear& ear : ears) {
    if (ear.order != order) continue;
    const int px = lab.label[ear.ends.first];
    const int py = lab.label[ear.ends.second];
    const int label = std::min(n * px + py, n * py + px);
    if (best && label >= best->label) continue;
    if (ear.ends != pair && !deletable(child, ear, fam)) continue;
    best = DeletionChoice{ear.ends, ear.order, label};
  }
  out.accepted = best && same_pair_orbit(n, lab.generators, best->ends, pair);
  out.generators = std::move(lab.generators);
  return out;
}

/// Depth-first canonical augmentation search over one family.
template <FamilySpec Family>
class Search {
 public:
  using Sink = std::function<void(const Graph&)>;

  Search(Family& fam, int max_n, JobSpec job = {}, Sink sink = {})
      : fam_(fam), max_n_(max_n), job_(job), sink_(std::move(sink)) {
    job_.validate();
    if (max_n < 3 || max_n > kMaxVertices) {
      throw std::out_of_range("max order must lie in [3, " + std::to_string(kMaxVertices) + "]");
    }
  }

  /// Searches from every root cycle (or the single one named by the job).
  const Counters& run() {
    const int lo = job_.root_cycle ? job_.root_cycle : 3;
    const int hi = job_.root_cycle ? std::min(job_.root_cycle, max_n_) : max_n_;
    for (int k = lo; k <= hi; ++k) {
      const Graph c = Graph::cycle(k);
      if (!fam_.is_member(c)) continue;
      if (!owns(0)) continue;
      visit(c, 0, std::nullopt);
    }
    return counters_;
  }

  /// Searches the subtree below g, which is treated as a depth-0 node.
  const Counters& search(const Graph& g) {
    if (owns(0)) visit(g, 0, std::nullopt);
    return counters_;
  }

  const Counters& counters() const { return counters_; }

 private:
  // Whether this job handles a node at `depth`; advances the split counter.
  bool owns(int depth) {
    if (depth != job_.split_depth) return true;
    return split_index_++ % static_cast<std::uint64_t>(job_.modulus) ==
           static_cast<std::uint64_t>(job_.residue);
  }

  // Nodes above the split depth are expanded by every job but reported once.
  bool reports(int depth) const { return depth >= job_.split_depth || job_.residue == 0; }

  void visit(const Graph& g, int depth, std::optional<std::vector<Permutation>> generators) {
    if (fam_.prune(g)) {
      if (reports(depth)) ++counters_.pruned;
      return;
    }
    if (reports(depth)) {
      ++counters_.nodes;
      if (fam_.is_solution(g)) {
        ++counters_.solutions;
        if (sink_) sink_(g);
      }
    }
    if (!generators) {
      generators = canonical_labeling(g).generators;
      if (reports(depth)) ++counters_.labelings;
    }

    std::vector<Child> children;
    const int n = g.vertex_count();
    Counters local;
    for (const auto& [pair, order] : orbit_augmentations(g, max_n_, *generators)) {
      ++local.augmentations;
      Graph child = ear_augment(g, pair.first, pair.second, order);
      if (!fam_.is_member(child)) {
        ++local.non_members;
        continue;
      }
      if (fam_.prune(child)) {
        ++local.pruned;
        continue;
      }
      Acceptance acc = accept_child(child, pair, order, fam_, &local);
      if (!acc.accepted) continue;
      ++local.accepted;
      children.push_back(Child{std::move(child), appended_ear(n, pair.first, pair.second, order),
                               std::move(acc.generators)});
    }

    if (reports(depth)) counters_ += local;
    // Every job must agree on the child list, so the hook filters it even when
    // this job does not report the parent.
    if constexpr (HasChildrenHook<Family>) fam_.on_children(g, children, reports(depth));

    for (Child& c : children) {
      if (!owns(depth + 1)) continue;
      visit(c.graph, depth + 1, std::move(c.generators));
    }
  }

  Family& fam_;
  int max_n_;
  JobSpec job_;
  Sink sink_;
  Counters counters_;
  std::uint64_t split_index_ = 0;
};

/// Runs the whole search (or one job of it) and returns its counters.
template <FamilySpec Family>
Counters run(Family& fam, int max_n, const JobSpec& job = {},
             typename Search<Family>::Sink sink = {}) {
  Search<Family> search(fam, max_n, job, std::move(sink));
  return search.run();
}

}  // namespace earsearch
