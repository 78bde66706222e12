#pragma once

/// \file parallel.hpp
/// \brief Runs the residue classes of a split search on local threads.

#include <exception>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "engine.hpp"
#include "graph.hpp"

namespace earsearch {

template <typename Family>
struct WorkerResult {
  Family family;  ///< the worker's own family object, with whatever it accumulated
  Counters counters;
  std::vector<Graph> solutions;  ///< empty unless solutions were kept
  std::map<std::pair<int, int>, std::uint64_t> tally;  ///< (n, e) -> solutions
};

/// Runs `workers` jobs (residues 0..workers-1 at `split_depth`), each on its
/// own thread with its own family from `make_family()`. Results come back in
/// residue order, so concatenating them is deterministic.
template <typename MakeFamily>
auto parallel_run(MakeFamily make_family, int max_n, int workers, int split_depth,
                  bool keep_solutions) {
  using Family = decltype(make_family());
  if (workers < 1) throw std::invalid_argument("need at least one worker");

  std::vector<WorkerResult<Family>> results;
  results.reserve(workers);
  for (int i = 0; i < workers; ++i) results.push_back(WorkerResult<Family>{make_family(), {}, {}, {}});

  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int i) {
    try {
      auto& out = results[i];
      JobSpec job{0, split_depth, workers, i};
      out.counters = run(out.family, max_n, job, [&](const Graph& g) {
        ++out.tally[{g.vertex_count(), g.edge_count()}];
        if (keep_solutions) out.solutions.push_back(g);
      });
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int i = 0; i < workers; ++i) threads.emplace_back(work, i);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace earsearch
