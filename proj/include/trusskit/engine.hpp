// engine.hpp - trussness decomposition, truss extraction, top-n search
//
// Levels are independent: the joists of a size-q simplex contain only
// size-q simplices, so each level peels on its own.  Level q+1 only needs
// the level-q members with positive trussness, because every size-(q+1)
// simplex of the complex closes a joist over its own vertex set and so
// every one of its faces survives at k=1.

#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "trusskit/candidates.hpp"
#include "trusskit/complex.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/joists.hpp"
#include "trusskit/simplex.hpp"

namespace trusskit {

struct TrussInfo {
  std::uint32_t trussness = 0;
  std::uint32_t lower_bound = 0;
  bool operator==(const TrussInfo&) const = default;
};

using TrussnessMap = std::map<Simplex, TrussInfo>;
using JoistMap = std::map<Simplex, std::vector<VertexId>>;

struct LevelLog {
  std::uint32_t component = 0;
  std::size_t level = 0;
  std::uint64_t simplices = 0;
  std::uint64_t candidate_records = 0;
  std::uint64_t validated_joists = 0;
  std::uint64_t batches = 0;
  bool spilled = false;
  bool short_circuit = false;
  bool operator==(const LevelLog&) const = default;
};

struct DecompositionResult {
  TrussnessMap trussness;
  JoistMap joists;  // apex sets as discovered, one entry per simplex
  std::vector<LevelLog> levels;
};

struct DecomposeOptions {
  std::size_t max_size = SIZE_MAX;
  std::uint64_t memory_budget = CandidateStore::kUnlimited;
  std::uint32_t chunk_count = 8;
  std::filesystem::path workdir;  // empty: a fresh directory under tmp
  bool keep_workdir = false;
  unsigned parallel_components = 1;
  std::function<void(const LevelLog&)> progress;
};

// Peels one level to exact trussness.  J is consumed.  Batches take every
// simplex at the current minimum estimate at once; members of a batch are
// finalized before any of their joists are torn down, so order inside a
// batch cannot change the result.  Estimates never sink below the value
// of the batch that lowered them.
inline std::vector<std::uint32_t> peel_level(const std::vector<Simplex>& E,
                                             LevelJoists J,
                                             std::uint64_t* batches = nullptr) {
  const std::size_t n = E.size();
  assert(J.size() == n);
  std::vector<std::uint32_t> est(n), out(n, 0);
  std::uint32_t maxv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    est[i] = static_cast<std::uint32_t>(J[i].size());
    maxv = std::max(maxv, est[i]);
  }
  std::vector<std::vector<std::uint64_t>> buckets(maxv + 1);
  for (std::size_t i = 0; i < n; ++i) buckets[est[i]].push_back(i);
  std::vector<char> done(n, 0);

  std::uint64_t nbatches = 0;
  std::size_t remaining = n;
  std::uint32_t v = 0;
  std::vector<std::uint64_t> batch;
  while (remaining > 0) {
    batch.clear();
    // Entries are stale once the estimate moved; every id is re-pushed at
    // its new value, so the live copy is always findable.
    for (std::uint64_t id : buckets[v])
      if (!done[id] && est[id] == v) batch.push_back(id);
    buckets[v].clear();
    if (batch.empty()) {
      ++v;
      continue;
    }
    ++nbatches;
    std::sort(batch.begin(), batch.end());
    for (std::uint64_t id : batch) {
      done[id] = 1;
      out[id] = v;
      --remaining;
    }
    for (std::uint64_t id : batch) {
      for (VertexId w : J[id]) {
        Simplex full = E[id].with_vertex(w);
        for (std::size_t j = 0; j < full.size(); ++j) {
          if (full[j] == w) continue;
          Simplex mate = full.without_index(j);
          auto it = std::lower_bound(E.begin(), E.end(), mate);
          assert(it != E.end() && *it == mate);
          std::uint64_t m = static_cast<std::uint64_t>(it - E.begin());
          // The removal test keeps one dead joist from decrementing a mate
          // twice when several of its members sit in the same batch.
          if (est[m] > v && remove_apex(J[m], full[j])) {
            est[m] = std::max(est[m] - 1, v);
            buckets[est[m]].push_back(m);
          }
        }
      }
    }
  }
  if (batches) *batches = nbatches;
  return out;
}

namespace detail {

struct ComponentOutput {
  TrussnessMap trussness;
  JoistMap joists;
  std::vector<LevelLog> levels;
};

inline std::filesystem::path fresh_workdir() {
  static std::atomic<std::uint64_t> counter{0};
  return std::filesystem::temp_directory_path() /
         ("trusskit_" + std::to_string(::getpid()) + "_" +
          std::to_string(counter++));
}

inline ComponentOutput decompose_component(
    const SimplicialComplex& comp, std::uint32_t component_id,
    const DecomposeOptions& opt, const std::filesystem::path& workdir,
    std::mutex& progress_mutex) {
  ComponentOutput out;
  std::vector<Simplex> survivors;
  std::size_t top = std::min(opt.max_size, comp.max_simplex_size());
  for (std::size_t q = 2; q <= top; ++q) {
    std::vector<Simplex> E = extend_simplices(survivors, comp, q);
    if (E.empty()) break;

    std::vector<std::uint32_t> lb(E.size());
    for (std::size_t i = 0; i < E.size(); ++i)
      lb[i] = lower_bound_trussness(E[i], comp);

    CandidateStore::Settings settings;
    settings.budget = opt.memory_budget;
    settings.chunk_count = opt.chunk_count;
    settings.workdir = workdir;
    settings.component = component_id;
    settings.level = static_cast<std::uint32_t>(q);
    settings.keep_files = opt.keep_workdir;
    CandidateStore store(settings);
    LevelDiscovery d = find_joists(E, store);

    bool short_circuit = true;
    for (std::size_t i = 0; i < E.size(); ++i)
      if (lb[i] != d.joists[i].size()) {
        short_circuit = false;
        break;
      }

    std::uint64_t batches = 0;
    std::vector<std::uint32_t> tr;
    if (short_circuit) {
      tr.resize(E.size());
      for (std::size_t i = 0; i < E.size(); ++i)
        tr[i] = static_cast<std::uint32_t>(d.joists[i].size());
    } else {
      tr = peel_level(E, d.joists, &batches);
    }

    survivors.clear();
    for (std::size_t i = 0; i < E.size(); ++i) {
      out.trussness.emplace(E[i], TrussInfo{tr[i], lb[i]});
      out.joists.emplace(E[i], std::move(d.joists[i]));
      if (tr[i] > 0) survivors.push_back(E[i]);
    }

    LevelLog log;
    log.component = component_id;
    log.level = q;
    log.simplices = E.size();
    log.candidate_records = d.candidate_records;
    log.validated_joists = d.validated_joists;
    log.batches = batches;
    log.spilled = d.spilled;
    log.short_circuit = short_circuit;
    out.levels.push_back(log);
    if (opt.progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      opt.progress(log);
    }

    if (survivors.empty()) break;
  }
  return out;
}

}  // namespace detail

// Exact trussness and lower bound for every simplex of the complex with
// between 2 and max_size vertices, plus the discovered apex sets.
inline DecompositionResult decompose(const SimplicialComplex& K,
                                     const DecomposeOptions& opt = {}) {
  std::filesystem::path workdir = opt.workdir;
  bool scratch = workdir.empty();
  if (scratch) workdir = detail::fresh_workdir();

  std::vector<SimplicialComplex> components = connected_components(K);
  std::vector<detail::ComponentOutput> outs(components.size());
  std::vector<std::exception_ptr> failures(components.size());
  std::mutex progress_mutex;

  auto run_one = [&](std::size_t c) {
    try {
      outs[c] = detail::decompose_component(
          components[c], static_cast<std::uint32_t>(c), opt, workdir,
          progress_mutex);
    } catch (...) {
      failures[c] = std::current_exception();
    }
  };

  unsigned threads =
      std::min<std::size_t>(std::max(1u, opt.parallel_components),
                            components.size());
  if (threads <= 1) {
    for (std::size_t c = 0; c < components.size(); ++c) run_one(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < components.size(); c = next++)
          run_one(c);
      });
    for (std::thread& t : pool) t.join();
  }

  if (scratch && !opt.keep_workdir) {
    std::error_code ec;
    std::filesystem::remove_all(workdir, ec);
  }
  for (const std::exception_ptr& e : failures)
    if (e) std::rethrow_exception(e);

  DecompositionResult result;
  for (detail::ComponentOutput& c : outs) {
    result.trussness.merge(c.trussness);
    result.joists.merge(c.joists);
    result.levels.insert(result.levels.end(), c.levels.begin(),
                         c.levels.end());
  }
  return result;
}

// T_k for k = 1..k_max as sorted simplex lists; entry k-1 holds T_k.
// T_{k+1} is always a subset of T_k, and T_k holds the simplices with
// trussness at least k.
using TrussSequence = std::vector<std::vector<Simplex>>;

inline TrussSequence trusses(const TrussnessMap& trussness) {
  std::uint32_t kmax = 0;
  for (const auto& [s, info] : trussness)
    kmax = std::max(kmax, info.trussness);
  TrussSequence out(kmax);
  for (const auto& [s, info] : trussness)
    for (std::uint32_t k = 1; k <= info.trussness; ++k)
      out[k - 1].push_back(s);
  return out;
}

struct TopnOptions {
  std::uint64_t memory_budget = CandidateStore::kUnlimited;
  std::uint32_t chunk_count = 8;
  std::filesystem::path workdir;
  bool keep_workdir = false;
};

struct TopnResult {
  std::vector<std::pair<Simplex, std::uint32_t>> rows;  // t desc, then lex
  bool truncated = false;  // fewer size-q simplices than requested
};

namespace detail {

// Largest k such that at least k values are >= k.
inline std::uint32_t h_index(std::vector<std::uint32_t>& vals) {
  std::sort(vals.begin(), vals.end(), std::greater<>());
  std::uint32_t h = 0;
  while (h < vals.size() && vals[h] >= h + 1) ++h;
  return h;
}

}  // namespace detail

// The n simplices of size q with the highest trussness, resolving ties
// toward the lexicographically smallest.  Works down from the highest
// joist-count estimate; a batch at value v is re-estimated against its
// own members until stable, so nothing is finalized off a stale mate.
// Stops once n results are banked and no open estimate can displace them.
inline TopnResult top_n(const SimplicialComplex& K, std::size_t n,
                        std::size_t q, const TopnOptions& opt = {}) {
  if (n == 0) throw std::invalid_argument("top_n: n must be positive");
  if (q < 2) throw std::invalid_argument("top_n: q must be at least 2");

  std::filesystem::path workdir = opt.workdir;
  bool scratch = workdir.empty();

  std::vector<Simplex> E = K.simplices_of_size(q);
  TopnResult result;
  result.truncated = E.size() < n;
  if (E.empty()) return result;

  LevelJoists J;
  {
    CandidateStore::Settings settings;
    settings.budget = opt.memory_budget;
    settings.chunk_count = opt.chunk_count;
    if (scratch) workdir = detail::fresh_workdir();
    settings.workdir = workdir;
    settings.level = static_cast<std::uint32_t>(q);
    settings.keep_files = opt.keep_workdir;
    CandidateStore store(settings);
    LevelDiscovery d = find_joists(E, store);
    J = std::move(d.joists);
  }
  if (scratch && !opt.keep_workdir) {
    std::error_code ec;
    std::filesystem::remove_all(workdir, ec);
  }

  const std::size_t sz = E.size();
  std::vector<std::uint32_t> est(sz);
  for (std::size_t i = 0; i < sz; ++i)
    est[i] = static_cast<std::uint32_t>(J[i].size());
  std::vector<char> done(sz, 0);

  auto mate_id = [&](const Simplex& full, std::size_t skip) {
    Simplex mate = full.without_index(skip);
    auto it = std::lower_bound(E.begin(), E.end(), mate);
    assert(it != E.end() && *it == mate);
    return static_cast<std::size_t>(it - E.begin());
  };

  // Joist support bound: h-index over the member minima of the apex sets.
  auto rebound = [&](std::size_t i) {
    std::vector<std::uint32_t> bottlenecks;
    bottlenecks.reserve(J[i].size());
    for (VertexId w : J[i]) {
      Simplex full = E[i].with_vertex(w);
      std::uint32_t low = UINT32_MAX;
      for (std::size_t j = 0; j < full.size(); ++j) {
        if (full[j] == w) continue;
        low = std::min(low, est[mate_id(full, j)]);
      }
      bottlenecks.push_back(std::min(low, est[i]));
    }
    return detail::h_index(bottlenecks);
  };

  // Heap keyed by better-than, so the front is the worst kept row: lowest
  // value, then largest simplex id.
  using Kept = std::pair<std::uint32_t, std::size_t>;
  auto better = [](const Kept& a, const Kept& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  std::vector<Kept> kept;  // size capped at n

  std::size_t remaining = sz;
  while (remaining > 0) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < sz; ++i)
      if (!done[i]) v = std::max(v, est[i]);
    // Batch values strictly decrease, so once n rows are kept nothing at
    // or below the worst kept value can enter, ties included.
    if (kept.size() >= n && v <= kept.front().first) break;

    std::vector<std::size_t> batch;
    for (std::size_t i = 0; i < sz; ++i)
      if (!done[i] && est[i] == v) batch.push_back(i);

    bool moved = true;
    while (moved) {
      moved = false;
      for (auto it = batch.begin(); it != batch.end();) {
        std::uint32_t bound = std::min(est[*it], rebound(*it));
        if (bound < est[*it]) {
          est[*it] = bound;
          it = batch.erase(it);
          moved = true;
        } else {
          ++it;
        }
      }
    }

    // Stable members support each other at v together with everything
    // already finalized at v or above: exact trussness.
    for (std::size_t i : batch) {
      done[i] = 1;
      --remaining;
      kept.push_back({v, i});
      std::push_heap(kept.begin(), kept.end(), better);
      if (kept.size() > n) {
        std::pop_heap(kept.begin(), kept.end(), better);
        kept.pop_back();
      }
    }
  }

  std::sort(kept.begin(), kept.end(), better);
  result.rows.reserve(kept.size());
  for (const Kept& k : kept) result.rows.push_back({E[k.second], k.first});
  return result;
}

}  // namespace trusskit
