#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "oracles.hpp"

using namespace earsearch;

namespace {

Graph diamond() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}); }
Graph theta() { return Graph(5, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}}); }

std::map<CanonicalKey, int> distinct_cards(const Graph& g) {
  std::map<CanonicalKey, int> out;
  for (const auto& c : edge_deck(g).cards) ++out[c];
  return out;
}

Graph graph_of(const CanonicalKey& k) {
  CanonicalLabeling lab;
  lab.n = k.n;
  lab.rows = k.rows;
  return lab.canonical_graph();
}

std::set<std::pair<int, int>> mapped_pairs(const std::vector<VertexPair>& pairs, const std::vector<int>& p) {
  std::set<std::pair<int, int>> out;
  for (auto q : pairs) {
    VertexPair m(p[q.first], p[q.second]);
    out.emplace(m.first, m.second);
  }
  return out;
}

}  // namespace

TEST_CASE("Lovasz-Muller edge bound", "[reconstruction]") {
  CHECK(edge_bound(8) == 16);
  CHECK(edge_bound(9) == 19);
  CHECK(edge_bound(10) == 22);
  CHECK(edge_bound(11) == 26);
  CHECK(edge_bound(12) == 29);
  CHECK(edge_bound(3) == 3);
  CHECK_THROWS_AS(edge_bound(21), std::out_of_range);
  CHECK_THROWS_AS(edge_bound(0), std::out_of_range);
}

TEST_CASE("edge decks", "[reconstruction]") {
  auto c4 = distinct_cards(Graph::cycle(4));
  REQUIRE(c4.size() == 1);
  CHECK(c4.begin()->first == canonical_key(Graph::path(4)));
  CHECK(c4.begin()->second == 4);

  auto k4 = distinct_cards(Graph::complete(4));
  REQUIRE(k4.size() == 1);
  CHECK(k4.begin()->first == canonical_key(diamond()));
  CHECK(k4.begin()->second == 6);

  auto d = distinct_cards(diamond());
  REQUIRE(d.size() == 2);
  CHECK(d[canonical_key(Graph::cycle(4))] == 1);
  CHECK(d[canonical_key(Graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}))] == 4);
}

TEST_CASE("detectable reconstructibility", "[reconstruction]") {
  for (int n = 3; n <= 9; ++n) CHECK(detectably_reconstructible(Graph::cycle(n)));
  CHECK(detectably_reconstructible(theta()));
  CHECK_FALSE(detectably_reconstructible(diamond()));
  CHECK(detectably_reconstructible(Graph::complete(5)));
  CHECK(detectably_reconstructible(ear_augment(Graph::cycle(4), 0, 2, 2)));
}

TEST_CASE("deck-based deletion is label invariant", "[reconstruction]") {
  std::mt19937 rng(oracle::kSeed);
  int tested = 0;
  while (tested < 500) {
    Graph g = oracle::random_two_connected(rng, 4 + tested % 7, 0.5);
    if (detectably_reconstructible(g)) continue;
    ++tested;
    const auto del = canonical_delete_recon(g);
    REQUIRE_FALSE(del.pairs.empty());
    const auto p = oracle::random_permutation(rng, g.vertex_count());
    const auto moved = canonical_delete_recon(g.relabeled(p));
    REQUIRE(moved.order == del.order);
    REQUIRE(mapped_pairs(del.pairs, p) == mapped_pairs(moved.pairs, oracle::identity(g.vertex_count())));
    // The chosen set is closed under automorphisms.
    const auto gens = automorphism_generators(g).gens;
    for (const auto& gen : gens)
      REQUIRE(mapped_pairs(del.pairs, std::vector<int>(gen.begin(), gen.begin() + g.vertex_count())) ==
              mapped_pairs(del.pairs, oracle::identity(g.vertex_count())));
  }
}

TEST_CASE("deck invariance and filter soundness under relabeling", "[reconstruction]") {
  std::mt19937 rng(oracle::kSeed + 7);
  int discrepancies = 0;
  std::vector<Graph> bases;
  for (int i = 0; i < 100; ++i) bases.push_back(oracle::random_two_connected(rng, 5 + i % 8, 0.4));
  for (int trial = 0; trial < 10000; ++trial) {
    const Graph& g = bases[trial % bases.size()];
    const Graph h = g.relabeled(oracle::random_permutation(rng, g.vertex_count()));
    if (edge_deck(g) != edge_deck(h)) ++discrepancies;
    if (degree_sequence(g) != degree_sequence(h)) ++discrepancies;
    if (detail::card_degree_sequences(g) != detail::card_degree_sequences(h)) ++discrepancies;
    SiblingStats stats;
    const std::vector<Graph> pair{g, h};
    if (!compare_siblings(pair, stats).empty() || stats.candidates != 1) ++discrepancies;
  }
  CHECK(discrepancies == 0);

  // The second filter is read off the deck: the degree sequences of the cards.
  for (const Graph& g : bases) {
    std::vector<std::vector<int>> from_deck;
    for (const auto& card : edge_deck(g).cards) from_deck.push_back(degree_sequence(graph_of(card)));
    std::sort(from_deck.begin(), from_deck.end());
    REQUIRE(from_deck == detail::card_degree_sequences(g));
  }
}

TEST_CASE("sibling comparison", "[reconstruction]") {
  SiblingStats stats;
  const std::vector<Graph> single{diamond()};
  CHECK(compare_siblings(single, stats).empty());

  // Same degree sequence, different decks.
  const Graph a = ear_augment(ear_augment(Graph::cycle(6), 0, 3, 0), 1, 4, 0);
  const Graph b = ear_augment(ear_augment(Graph::cycle(6), 0, 2, 0), 3, 5, 0);
  REQUIRE(degree_sequence(a) == degree_sequence(b));
  REQUIRE_FALSE(oracle::isomorphic(a, b));
  SiblingStats s2;
  const std::vector<Graph> bucket{a, b, a.relabeled(std::vector<int>{5, 4, 3, 2, 1, 0})};
  CHECK(compare_siblings(bucket, s2).empty());
  CHECK(s2.candidates == 2);
  CHECK(s2.degree_pairs == 1);
  CHECK(s2.deck_pairs == 0);
}

TEST_CASE("reconstruction family covers the sparse 2-connected graphs", "[reconstruction]") {
  for (int n = 5; n <= 8; ++n) {
    ReconstructionFamily fam(ReconConfig::for_order(n));
    std::multiset<std::string> found;
    run(fam, n, {}, [&](const Graph& g) { found.insert(canonical_graph6(g)); });
    CHECK(fam.stats().collisions.empty());

    TwoConnectedFamily plain(TwoConnConfig{n, edge_bound(n), false});
    std::multiset<std::string> expected;
    run(plain, n, {}, [&](const Graph& g) {
      if (g.vertex_count() == n) expected.insert(canonical_graph6(g));
    });
    INFO("N = " << n);
    CHECK(found == expected);
  }
  CHECK_THROWS_AS(ReconstructionFamily(ReconConfig{8, 7}), std::invalid_argument);
}

TEST_CASE("reconstruction job splitting", "[reconstruction]") {
  ReconstructionFamily whole(ReconConfig::for_order(8));
  std::multiset<std::string> sequential;
  run(whole, 8, {}, [&](const Graph& g) { sequential.insert(canonical_graph6(g)); });
  for (int k : {2, 3, 5}) {
    std::multiset<std::string> merged;
    SiblingStats stats;
    for (int i = 0; i < k; ++i) {
      ReconstructionFamily part(ReconConfig::for_order(8));
      run(part, 8, JobSpec{0, 2, k, i}, [&](const Graph& g) { merged.insert(canonical_graph6(g)); });
      stats += part.stats().siblings;
    }
    CHECK(merged == sequential);
    CHECK(stats.candidates == whole.stats().siblings.candidates);
    CHECK(stats.degree_pairs == whole.stats().siblings.degree_pairs);
  }
}
