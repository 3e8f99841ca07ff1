// analysis.hpp - filtration export, joist statistics, truss-size curves,
// and the classic graph truss baseline

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "trusskit/complex.hpp"
#include "trusskit/engine.hpp"
#include "trusskit/simplex.hpp"

namespace trusskit {

struct FiltrationEntry {
  std::uint32_t value = 0;
  Simplex simplex;
  bool operator==(const FiltrationEntry&) const = default;
};
using Filtration = std::vector<FiltrationEntry>;

// Reverses the decomposition into a filtration: value = K_max - trussness,
// so the deepest simplices enter first.  Vertices carry no trussness and
// are pinned at 0; faces never have lower trussness than their cofaces,
// so values stay monotone along faces.
// Covers every simplex of K up to the largest size in the map; a size-q
// simplex of K absent from the map is an error.
inline Filtration export_filtration(const SimplicialComplex& K,
                                    const TrussnessMap& tr) {
  std::uint32_t kmax = 0;
  std::size_t range = 1;
  for (const auto& [s, info] : tr) {
    kmax = std::max(kmax, info.trussness);
    range = std::max(range, s.size());
  }

  Filtration out;
  for (VertexId v : K.vertex_labels())
    out.push_back({0, Simplex({v})});
  for (std::size_t q = 2; q <= range; ++q) {
    for (Simplex& s : K.simplices_of_size(q)) {
      auto it = tr.find(s);
      if (it == tr.end())
        throw std::invalid_argument("filtration: no trussness for " + s.str());
      out.push_back({kmax - it->second.trussness, std::move(s)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FiltrationEntry& a, const FiltrationEntry& b) {
              if (a.value != b.value) return a.value < b.value;
              return a.simplex < b.simplex;  // size-major, then lex
            });
  return out;
}

// Single-pass validity check: every proper codimension-1 face of an entry
// must appear strictly earlier.  All deeper faces follow by induction.
inline bool filtration_respects_faces(const Filtration& f) {
  std::set<Simplex> seen;
  for (const FiltrationEntry& e : f) {
    if (e.simplex.size() >= 2)
      for (std::size_t j = 0; j < e.simplex.size(); ++j)
        if (!seen.count(e.simplex.without_index(j))) return false;
    seen.insert(e.simplex);
  }
  return true;
}

struct ComplexStats {
  std::uint64_t total_simplices = 0;  // rows in the trussness map
  std::uint64_t total_joists = 0;     // distinct validated vertex sets
  std::uint64_t open_joists = 0;      // joist vertex sets absent from K
  std::uint64_t open_triangles = 0;   // open joists over 3 vertices
  std::uint64_t non_trivial = 0;      // simplices with tr != lb
  double open_joists_pct = 0.0;       // of total_joists
  double open_triangles_pct = 0.0;    // of open_joists
  double non_trivial_pct = 0.0;       // of total_simplices
  bool operator==(const ComplexStats&) const = default;
};

// Each distinct apex-completed vertex set counts once, regardless of how
// many members report it.
inline ComplexStats joist_stats(const SimplicialComplex& K,
                                const TrussnessMap& tr, const JoistMap& J) {
  ComplexStats st;
  st.total_simplices = tr.size();
  std::set<Simplex> sets;
  for (const auto& [s, apexes] : J)
    for (VertexId w : apexes) sets.insert(s.with_vertex(w));
  st.total_joists = sets.size();
  for (const Simplex& W : sets) {
    if (K.contains(W)) continue;
    ++st.open_joists;
    if (W.size() == 3) ++st.open_triangles;
  }
  for (const auto& [s, info] : tr)
    if (info.trussness != info.lower_bound) ++st.non_trivial;

  if (st.total_joists > 0)
    st.open_joists_pct =
        100.0 * static_cast<double>(st.open_joists) /
        static_cast<double>(st.total_joists);
  if (st.open_joists > 0)
    st.open_triangles_pct =
        100.0 * static_cast<double>(st.open_triangles) /
        static_cast<double>(st.open_joists);
  if (st.total_simplices > 0)
    st.non_trivial_pct =
        100.0 * static_cast<double>(st.non_trivial) /
        static_cast<double>(st.total_simplices);
  return st;
}

// |T_k| for k = 1..K_max: the number of simplices with trussness >= k.
inline std::map<std::uint32_t, std::uint64_t> truss_sizes(
    const TrussnessMap& tr) {
  std::map<std::uint32_t, std::uint64_t> out;
  std::uint32_t kmax = 0;
  for (const auto& [s, info] : tr) kmax = std::max(kmax, info.trussness);
  for (std::uint32_t k = 1; k <= kmax; ++k) out[k] = 0;
  for (const auto& [s, info] : tr)
    for (std::uint32_t k = 1; k <= info.trussness; ++k) ++out[k];
  return out;
}

// Classic edge trussness of the 1-skeleton under the k-triangles
// convention: the trussness of an edge is the largest k such that the
// edge survives in the subgraph where every edge lies in at least k
// triangles.  Independent of the simplicial machinery: plain sequential
// peeling with edge deletion.
inline std::map<Simplex, std::uint32_t> graph_trussness(
    const SimplicialComplex& K) {
  std::vector<Simplex> E = K.simplices_of_size(2);
  const std::size_t n = E.size();
  std::map<VertexId, std::set<VertexId>> adj;
  for (const Simplex& e : E) {
    adj[e[0]].insert(e[1]);
    adj[e[1]].insert(e[0]);
  }
  auto common = [&](VertexId u, VertexId v) {
    std::vector<VertexId> out;
    const std::set<VertexId>& a = adj[u];
    const std::set<VertexId>& b = adj[v];
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
  };
  auto edge_id = [&](VertexId u, VertexId v) {
    Simplex e = u < v ? Simplex::from_sorted({u, v})
                      : Simplex::from_sorted({v, u});
    auto it = std::lower_bound(E.begin(), E.end(), e);
    return static_cast<std::size_t>(it - E.begin());
  };

  std::vector<std::uint32_t> est(n);
  std::uint32_t maxv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    est[i] = static_cast<std::uint32_t>(common(E[i][0], E[i][1]).size());
    maxv = std::max(maxv, est[i]);
  }
  std::vector<std::vector<std::size_t>> buckets(maxv + 1);
  for (std::size_t i = 0; i < n; ++i) buckets[est[i]].push_back(i);
  std::vector<char> done(n, 0);

  std::size_t remaining = n;
  std::uint32_t v = 0;
  while (remaining > 0) {
    std::size_t id = n;
    while (id == n) {
      while (v < buckets.size() && buckets[v].empty()) ++v;
      // lexicographically first live entry of the lowest bucket
      auto& bucket = buckets[v];
      std::size_t best = n;
      for (std::size_t cand : bucket)
        if (!done[cand] && est[cand] == v && cand < best) best = cand;
      if (best == n) {
        bucket.clear();
        continue;
      }
      bucket.erase(std::find(bucket.begin(), bucket.end(), best));
      id = best;
    }
    done[id] = 1;
    --remaining;
    VertexId u = E[id][0], w = E[id][1];
    for (VertexId x : common(u, w)) {
      for (std::size_t m : {edge_id(u, x), edge_id(w, x)}) {
        if (est[m] > v) {
          est[m] = std::max(est[m] - 1, v);
          buckets[est[m]].push_back(m);
        }
      }
    }
    // deleting the edge retires its triangles for later extractions
    adj[u].erase(w);
    adj[w].erase(u);
    est[id] = v;
  }

  std::map<Simplex, std::uint32_t> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace(E[i], est[i]);
  return out;
}

}  // namespace trusskit
