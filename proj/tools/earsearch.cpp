// earsearch: command-line front end for canonical ear-augmentation searches.
//
//   earsearch gen --max-n 9 --exact --count-only
//   earsearch saturate --r 4 --max-n 10 --verify
//   earsearch reconstruct --max-n 9
//   earsearch canon < graphs.g6
//
// Solutions go to stdout (or --output) as graph6, one per line. A report block
// goes to stderr. Exit codes: 0 success, 2 usage error, 3 invariant violation,
// 4 edge-deck collision found.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "earsearch/earsearch.hpp"

namespace {

using namespace earsearch;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitCollision = 4;

struct Options {
  int max_n = 0;
  std::optional<int> max_e;
  bool exact = false;
  int r = 4;
  bool count_only = false;
  std::string output;
  std::string input;
  int workers = 1;
  std::string job;
  int split_depth = 1;
  bool no_dominating_prune = false;
  bool verify = false;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::optional<JobSpec> parse_job(const Options& o) {
  if (o.job.empty()) return std::nullopt;
  const auto slash = o.job.find('/');
  if (slash == std::string::npos) throw UsageError("--job expects i/K");
  JobSpec job;
  try {
    job.residue = std::stoi(o.job.substr(0, slash));
    job.modulus = std::stoi(o.job.substr(slash + 1));
  } catch (const std::exception&) {
    throw UsageError("--job expects i/K");
  }
  job.split_depth = o.split_depth;
  job.validate();
  if (o.workers != 1) throw UsageError("--job and --workers cannot be combined");
  return job;
}

class Timer {
 public:
  double wall() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start_).count();
  }
  double cpu() const { return static_cast<double>(std::clock() - cpu_start_) / CLOCKS_PER_SEC; }

 private:
  std::chrono::steady_clock::time_point wall_start_ = std::chrono::steady_clock::now();
  std::clock_t cpu_start_ = std::clock();
};

/// Runs one job, a sequential search, or `workers` threads, and hands every
/// solution to `on_solution` in a deterministic order.
template <typename MakeFamily, typename OnSolution>
auto execute(MakeFamily make_family, const Options& o, OnSolution on_solution) {
  using Family = decltype(make_family());
  const auto job = parse_job(o);
  if (o.workers < 1) throw UsageError("--workers must be at least 1");
  if (job || o.workers == 1) {
    std::vector<WorkerResult<Family>> results;
    results.push_back(WorkerResult<Family>{make_family(), {}, {}, {}});
    auto& out = results.front();
    out.counters = run(out.family, o.max_n, job.value_or(JobSpec{}), [&](const Graph& g) {
      ++out.tally[{g.vertex_count(), g.edge_count()}];
      on_solution(g);
    });
    return results;
  }
  auto results = parallel_run(make_family, o.max_n, o.workers, o.split_depth, true);
  for (auto& r : results) {
    for (const Graph& g : r.solutions) on_solution(g);
    r.solutions.clear();
  }
  return results;
}

template <typename Family>
void report_common(std::ostream& err, const std::vector<WorkerResult<Family>>& results,
                   const Options& o, const Timer& timer) {
  Counters total;
  std::map<std::pair<int, int>, std::uint64_t> tally;
  for (const auto& r : results) {
    total += r.counters;
    for (auto [key, count] : r.tally) tally[key] += count;
  }
  for (auto [key, count] : tally) {
    err << "count n=" << key.first << " e=" << key.second << " " << count << "\n";
  }
  std::map<int, std::uint64_t> by_order;
  for (auto [key, count] : tally) by_order[key.first] += count;
  for (auto [n, count] : by_order) err << "count n=" << n << " " << count << "\n";
  err << "solutions=" << total.solutions << "\n";
  err << "counters nodes=" << total.nodes << " augmentations=" << total.augmentations
      << " non_members=" << total.non_members << " pruned=" << total.pruned
      << " labelings=" << total.labelings << " accepted=" << total.accepted << "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "time wall=%.3fs cpu=%.3fs", timer.wall(), timer.cpu());
  err << buf << "\n";
  err << "output=" << (o.count_only ? "none" : (o.output.empty() ? "stdout" : o.output)) << "\n";
}

std::string config_line(const Options& o) {
  std::ostringstream os;
  os << "config max_n=" << o.max_n << " workers=" << o.workers << " split_depth=" << o.split_depth;
  if (!o.job.empty()) os << " job=" << o.job;
  return os.str();
}

class Output {
 public:
  explicit Output(const Options& o) : count_only_(o.count_only) {
    if (!o.output.empty() && !o.count_only) {
      file_.open(o.output);
      if (!file_) throw UsageError("cannot open output file " + o.output);
    }
  }
  void write(const Graph& g) {
    if (count_only_) return;
    (file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout) << to_graph6(g) << '\n';
  }

 private:
  bool count_only_;
  std::ofstream file_;
};

int run_gen(const Options& o) {
  TwoConnConfig cfg{o.max_n, o.max_e, o.exact};
  cfg.validate();
  Timer timer;
  Output out(o);
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  std::uint64_t violations = 0;
  auto results = execute([&] { return TwoConnectedFamily(cfg); }, o, [&](const Graph& g) {
    out.write(g);
    if (o.verify) {
      if (!is_two_connected(g) || !seen.insert(canonical_key(g)).second) ++violations;
    }
  });
  std::cerr << "mode=gen\n" << config_line(o) << " max_e=" << (o.max_e ? std::to_string(*o.max_e) : "-")
            << " exact=" << (o.exact ? "yes" : "no") << "\n";
  report_common(std::cerr, results, o, timer);
  if (o.verify) std::cerr << "verify violations=" << violations << "\n";
  return violations ? kExitInvariant : kExitOk;
}

int run_saturate(const Options& o) {
  SatConfig cfg{o.r, o.max_n, !o.no_dominating_prune};
  cfg.validate();
  Timer timer;
  Output out(o);
  std::vector<std::string> lines;
  std::uint64_t violations = 0;
  auto results = execute([&] { return SaturationFamily(cfg); }, o, [&](const Graph& g) {
    out.write(g);
    const auto rep = verify_saturation(g, cfg.r);
    lines.push_back("solution " + to_graph6(g) + " " + rep.to_string());
    if (o.verify && (!rep.uniquely_saturated || rep.dominating ||
                     (rep.connectivity_ok && !*rep.connectivity_ok))) {
      ++violations;
    }
  });
  std::cerr << "mode=saturate\n" << config_line(o) << " r=" << cfg.r
            << " prune_dominating=" << (cfg.prune_dominating ? "yes" : "no") << "\n";
  for (const auto& line : lines) std::cerr << line << "\n";
  report_common(std::cerr, results, o, timer);
  if (o.verify) std::cerr << "verify violations=" << violations << "\n";
  return violations ? kExitInvariant : kExitOk;
}

int run_reconstruct(const Options& o) {
  ReconConfig cfg = ReconConfig::for_order(o.max_n);
  cfg.validate();
  Timer timer;
  Output out(o);
  std::uint64_t detectable = 0;
  auto results = execute([&] { return ReconstructionFamily(cfg); }, o, [&](const Graph& g) {
    out.write(g);
    if (detectably_reconstructible(g)) ++detectable;
  });

  std::uint64_t graphs = 0;
  std::uint64_t nodes = 0;
  ReconStats stats;
  for (const auto& r : results) {
    graphs += r.counters.solutions;
    nodes += r.counters.nodes;
    const auto& s = r.family.stats();
    stats.duplicates += s.duplicates;
    stats.nondetectable += s.nondetectable;
    stats.siblings += s.siblings;
    stats.collisions.insert(stats.collisions.end(), s.collisions.begin(), s.collisions.end());
  }
  std::cerr << "mode=reconstruct\n" << config_line(o) << " edge_bound=" << cfg.edge_bound << "\n";
  for (const auto& c : stats.collisions) std::cerr << "collision " << c.first << " " << c.second << "\n";
  report_common(std::cerr, results, o, timer);
  std::cerr << "searched=" << nodes << " duplicates_merged=" << stats.duplicates
            << " compared=" << stats.nondetectable << "\n";
  std::cerr << "stages buckets=" << stats.siblings.buckets
            << " candidates=" << stats.siblings.candidates << " degree=" << stats.siblings.degree_pairs
            << " card_degrees=" << stats.siblings.card_degree_pairs
            << " deck=" << stats.siblings.deck_pairs << "\n";
  std::cerr << "detectable=" << detectable << " not_detectable=" << (graphs - detectable) << "\n";
  std::cerr << "graphs=" << graphs << " collisions=" << stats.collisions.size() << "\n";
  return stats.collisions.empty() ? kExitOk : kExitCollision;
}

int run_canon(const Options& o) {
  std::ifstream file;
  if (!o.input.empty()) {
    file.open(o.input);
    if (!file) throw UsageError("cannot open input file " + o.input);
  }
  std::istream& in = o.input.empty() ? std::cin : file;
  Output out(o);
  std::string line;
  std::uint64_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Graph g;
    try {
      g = from_graph6(line);
    } catch (const std::invalid_argument& e) {
      throw UsageError("line " + std::to_string(count + 1) + ": " + e.what());
    }
    out.write(canonical_labeling(g).canonical_graph());
    ++count;
  }
  std::cerr << "mode=canon\ngraphs=" << count << "\n";
  return kExitOk;
}

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-n", o.max_n, "maximum number of vertices")->required();
  cmd->add_flag("--count-only", o.count_only, "suppress graph6 output");
  cmd->add_option("--output", o.output, "write graph6 lines to this file");
  cmd->add_option("--workers", o.workers, "number of local worker threads");
  cmd->add_option("--job", o.job, "run only residue i of K (format i/K)");
  cmd->add_option("--split-depth", o.split_depth, "search depth at which jobs are split");
  cmd->add_flag("--verify", o.verify, "re-check every solution with independent verifiers");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Isomorph-free generation of 2-connected graphs by ear augmentation"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "2-connected graphs on at most N vertices (and E edges)");
  add_run_options(gen, o);
  gen->add_option("--max-e", o.max_e, "maximum number of edges");
  gen->add_flag("--exact", o.exact, "only report graphs with exactly N vertices (and E edges)");

  auto* sat = app.add_subcommand("saturate", "uniquely K_r-saturated graphs without a dominating vertex");
  add_run_options(sat, o);
  sat->add_option("--r", o.r, "clique size r")->required();
  sat->add_flag("--no-dominating-prune", o.no_dominating_prune, "do not prune nodes with a dominating vertex");

  auto* rec = app.add_subcommand("reconstruct", "edge-deck collision search over sparse 2-connected graphs");
  add_run_options(rec, o);

  auto* canon = app.add_subcommand("canon", "canonically relabel a graph6 stream");
  canon->add_option("--input", o.input, "read graph6 lines from this file instead of stdin");
  canon->add_option("--output", o.output, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return run_gen(o);
    if (*sat) return run_saturate(o);
    if (*rec) return run_reconstruct(o);
    if (*canon) return run_canon(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}
