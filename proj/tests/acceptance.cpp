// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
//   acceptance            run every criterion
//   acceptance 2 5        run only criteria 2 and 5

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"

using namespace earsearch;

namespace {

// Collects the details of one criterion; any failed check fails the criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    failed_ = failed_ || !ok;
    notes_.push_back((ok ? "ok: " : "MISMATCH: ") + what);
  }
  bool failed() const { return failed_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  bool failed_ = false;
  std::vector<std::string> notes_;
};

template <typename T>
std::string show(const std::string& label, T got, T want) {
  std::ostringstream os;
  os << label << " = " << got << " (expected " << want << ")";
  return os.str();
}

std::uint64_t count_exact(int n, std::optional<int> e) {
  TwoConnectedFamily fam(TwoConnConfig{n, e, true});
  return run(fam, n).solutions;
}

std::vector<Graph> saturation_solutions(int r, int n) {
  SaturationFamily fam(SatConfig{r, n, true});
  std::vector<Graph> out;
  run(fam, n, {}, [&](const Graph& g) { out.push_back(g); });
  return out;
}

void check_saturation_solution(Check& c, const Graph& g, int r) {
  const auto rep = verify_saturation(g, r);
  c.expect(rep.uniquely_saturated && !rep.dominating && rep.connectivity_ok.value_or(true),
           "verifier on " + to_graph6(g) + ": " + rep.to_string());
}

void table1(Check& c) {
  const std::map<int, std::uint64_t> want{{5, 10}, {6, 56}, {7, 468}, {8, 7123}, {9, 194066}};
  for (auto [n, w] : want) {
    const auto got = count_exact(n, std::nullopt);
    c.expect(got == w, show("g_" + std::to_string(n), got, w));
  }
}

void table2(Check& c) {
  const std::vector<std::tuple<int, int, std::uint64_t>> cells{
      {10, 11, 9},  {10, 12, 121}, {10, 14, 5898}, {11, 12, 11}, {11, 13, 189},
      {12, 13, 13}, {13, 14, 15},  {14, 15, 18},   {15, 16, 20}, {16, 17, 23},
      {10, 13, 1034}, {12, 14, 292}, {13, 15, 428}, {14, 16, 616}, {16, 18, 1176}};
  for (auto [n, e, w] : cells) {
    const auto got = count_exact(n, e);
    c.expect(got == w, show("g_{" + std::to_string(n) + "," + std::to_string(e) + "}", got, w));
  }
}

void saturation_r4(Check& c) {
  const auto found = saturation_solutions(4, 10);
  c.expect(found.size() == 2, show("solutions", found.size(), std::size_t{2}));
  const std::string c7 = canonical_graph6(Graph::cycle(7).complement());
  bool have_c7 = false;
  bool have_ten = false;
  for (const Graph& g : found) {
    check_saturation_solution(c, g, 4);
    if (canonical_graph6(g) == c7) have_c7 = true;
    if (g.vertex_count() == 10 && is_regular(g) && g.degree(0) == 5 && is_uniquely_saturated(g, 4))
      have_ten = true;
  }
  c.expect(have_c7, "complement of C_7 found");
  c.expect(have_ten, "10-vertex 5-regular uniquely K_4-saturated graph found");
}

void saturation_r5(Check& c) {
  const auto found = saturation_solutions(5, 9);
  c.expect(found.size() == 1, show("solutions", found.size(), std::size_t{1}));
  if (!found.empty()) {
    c.expect(canonical_graph6(found.front()) == canonical_graph6(Graph::cycle(9).complement()),
             "solution is the complement of C_9: " + to_graph6(found.front()));
    check_saturation_solution(c, found.front(), 5);
  }
}

void reconstruction(Check& c) {
  for (auto [n, w] : std::vector<std::pair<int, std::uint64_t>>{{8, 4804}, {9, 111255}}) {
    ReconstructionFamily fam(ReconConfig::for_order(n));
    const auto counters = run(fam, n);
    const auto& s = fam.stats();
    c.expect(counters.solutions == w, show("|R_" + std::to_string(n) + "|", counters.solutions, w));
    c.expect(s.collisions.empty(), show("collisions at N=" + std::to_string(n), s.collisions.size(), std::size_t{0}));
    std::ostringstream os;
    os << "N=" << n << " compared=" << s.nondetectable << " buckets=" << s.siblings.buckets
       << " degree=" << s.siblings.degree_pairs << " card_degrees=" << s.siblings.card_degree_pairs
       << " deck=" << s.siblings.deck_pairs << " duplicates_merged=" << s.duplicates;
    c.expect(true, os.str());
  }
}

void properties(Check& c) {
  // Canonical form equality iff isomorphism, all graphs on up to 6 vertices.
  std::uint64_t mismatches = 0;
  for (int n = 1; n <= 6; ++n) {
    std::map<std::uint64_t, std::string> form_of_class;
    std::set<std::string> forms;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * (n - 1) / 2)); ++m) {
      Graph g = oracle::from_mask(n, m);
      const std::string form = canonical_graph6(g);
      auto [it, fresh] = form_of_class.emplace(oracle::brute_canonical_mask(g), form);
      mismatches += it->second != form;
      forms.insert(form);
    }
    mismatches += forms.size() != form_of_class.size();
  }
  c.expect(mismatches == 0, show("canonical form vs brute-force isomorphism mismatches", mismatches, std::uint64_t{0}));

  // Search output equals brute-force enumeration up to 7 vertices.
  TwoConnectedFamily fam(TwoConnConfig{7, std::nullopt, false});
  std::map<int, std::multiset<std::string>> found;
  std::multiset<std::string> sequential;
  run(fam, 7, {}, [&](const Graph& g) {
    found[g.vertex_count()].insert(canonical_graph6(g));
    sequential.insert(canonical_graph6(g));
  });
  for (int n = 3; n <= 7; ++n) {
    std::set<std::string> brute;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * (n - 1) / 2)); ++m) {
      Graph g = oracle::from_mask(n, m);
      if (g.edge_count() >= n && oracle::two_connected(g)) brute.insert(canonical_graph6(g));
    }
    const std::set<std::string> distinct(found[n].begin(), found[n].end());
    c.expect(distinct.size() == found[n].size(), "no duplicates at n=" + std::to_string(n));
    c.expect(distinct == brute, show("classes at n=" + std::to_string(n), found[n].size(), brute.size()));
  }

  // Job-split union equals the sequential run.
  for (int k : {2, 4, 8}) {
    std::multiset<std::string> merged;
    for (int i = 0; i < k; ++i) {
      TwoConnectedFamily part(TwoConnConfig{7, std::nullopt, false});
      run(part, 7, JobSpec{0, 1, k, i}, [&](const Graph& g) { merged.insert(canonical_graph6(g)); });
    }
    c.expect(merged == sequential, "job split K=" + std::to_string(k) + " equals sequential");
  }

  // Saturation solutions pass the independent verifiers (larger runs are covered above).
  for (auto [r, n] : std::vector<std::pair<int, int>>{{3, 9}, {4, 9}, {5, 8}, {6, 9}})
    for (const Graph& g : saturation_solutions(r, n)) check_saturation_solution(c, g, r);

  // Deck invariance and filter soundness over random relabelings.
  std::mt19937 rng(oracle::kSeed);
  std::uint64_t discrepancies = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    Graph g = oracle::random_two_connected(rng, 5 + trial % 7, 0.4);
    Graph h = g.relabeled(oracle::random_permutation(rng, g.vertex_count()));
    discrepancies += edge_deck(g) != edge_deck(h);
    discrepancies += degree_sequence(g) != degree_sequence(h);
    discrepancies += detail::card_degree_sequences(g) != detail::card_degree_sequences(h);
    SiblingStats stats;
    const std::vector<Graph> pair{g, h};
    discrepancies += !compare_siblings(pair, stats).empty();
  }
  c.expect(discrepancies == 0, show("deck fuzz discrepancies (seed " + std::to_string(oracle::kSeed) + ")",
                                    discrepancies, std::uint64_t{0}));
}

void large_configurations(Check& c) {
  auto accepts = [&](const std::string& what, const std::function<void()>& make) {
    try {
      make();
      c.expect(true, what + " accepted");
    } catch (const std::exception& e) {
      c.expect(false, what + " rejected: " + e.what());
    }
  };
  accepts("gen N=11", [] {
    TwoConnectedFamily fam(TwoConnConfig{11, std::nullopt, true});
    Search<TwoConnectedFamily> s(fam, 11);
  });
  accepts("saturate r=4 N=12", [] {
    SaturationFamily fam(SatConfig{4, 12, true});
    Search<SaturationFamily> s(fam, 12, JobSpec{0, 3, 1000, 999});
  });
  for (int n : {10, 11, 12}) {
    accepts("reconstruct N=" + std::to_string(n), [n] {
      ReconstructionFamily fam(ReconConfig::for_order(n));
      Search<ReconstructionFamily> s(fam, n);
    });
  }
  c.expect(edge_bound(11) == 26 && edge_bound(12) == 29, "edge bounds 26 and 29 for N=11, 12");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"1 two-connected counts, N=5..9", table1},
      {"2 two-connected counts by order and size", table2},
      {"3 uniquely K_4-saturated, N<=10", saturation_r4},
      {"4 uniquely K_5-saturated, N<=9", saturation_r5},
      {"5 edge reconstruction, N=8 and N=9", reconstruction},
      {"6 property suite", properties},
      {"7 large configurations accepted", large_configurations},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(static_cast<int>(i + 1))) continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& note : check.notes()) std::cout << "    " << note << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "%s criterion %s (%.1fs)", check.failed() ? "FAIL" : "PASS",
                  criteria[i].first.c_str(), secs);
    std::cout << line << std::endl;
    failures += check.failed();
  }
  return failures == 0 ? 0 : 1;
}
