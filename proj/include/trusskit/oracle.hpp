// oracle.hpp - brute-force reference implementations
//
// Everything here is deliberately naive: no inverted index, no bounds, no
// pruning, no spilling.  These functions exist to cross-check the
// optimized paths on small instances, so they share nothing with them
// beyond the Simplex/SimplicialComplex input types.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trusskit/complex.hpp"
#include "trusskit/simplex.hpp"

namespace trusskit {

// Joists by pairwise enumeration: every (q+2)-vertex union of two members
// of E is a candidate; it is a joist iff all of its size-(q+1) subsets are
// members of E.  Returns apex sets for members of at least one joist.
inline std::map<Simplex, std::vector<VertexId>> brute_joists(
    const std::vector<Simplex>& E) {
  if (E.empty()) return {};
  std::size_t q = E.front().size();
  for (const Simplex& s : E)
    if (s.size() != q)
      throw std::invalid_argument("brute_joists: mixed simplex sizes");

  std::set<Simplex> members(E.begin(), E.end());
  std::set<Simplex> unions;
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = i + 1; j < E.size(); ++j)
      if (shared_vertices(E[i], E[j]) == q - 1)
        unions.insert(E[i].with_vertex(difference_vertex(E[j], E[i])));

  std::map<Simplex, std::vector<VertexId>> apexes;
  for (const Simplex& w : unions) {
    bool complete = true;
    for (std::size_t i = 0; i < w.size() && complete; ++i)
      complete = members.count(w.without_index(i)) != 0;
    if (!complete) continue;
    for (std::size_t i = 0; i < w.size(); ++i)
      apexes[w.without_index(i)].push_back(w[i]);
  }
  for (auto& [s, ap] : apexes) std::sort(ap.begin(), ap.end());
  return apexes;
}

struct BruteRow {
  std::uint32_t trussness;
  std::uint32_t lower_bound;
  friend bool operator==(const BruteRow&, const BruteRow&) = default;
};

namespace detail {

// All distinct q-subsets of the maximal simplices of K.
inline std::vector<Simplex> brute_level_members(const SimplicialComplex& K,
                                                std::size_t q) {
  std::set<Simplex> out;
  for (const Simplex& m : K.maximal_simplices()) {
    if (m.size() < q) continue;
    std::vector<std::size_t> idx(q);
    for (std::size_t i = 0; i < q; ++i) idx[i] = i;
    while (true) {
      std::vector<VertexId> pick(q);
      for (std::size_t i = 0; i < q; ++i) pick[i] = m[idx[i]];
      out.insert(Simplex::from_sorted(std::move(pick)));
      std::size_t i = q;
      while (i > 0 && idx[i - 1] == m.size() - q + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < q; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {out.begin(), out.end()};
}

// Trussness of every size-q simplex by the definition: for k = 1, 2, ...
// delete members with fewer than k joists fully inside the surviving set
// until the set is stable; tr is the last k a member survived.
inline std::map<Simplex, std::uint32_t> brute_level_trussness(
    const SimplicialComplex& K, std::size_t q) {
  std::vector<Simplex> E = brute_level_members(K, q);
  std::map<Simplex, std::uint32_t> tr;
  for (const Simplex& s : E) tr[s] = 0;

  std::set<Simplex> survivors(E.begin(), E.end());
  std::vector<VertexId> verts = K.vertex_labels();
  auto joist_count = [&](const Simplex& s) {
    std::size_t n = 0;
    for (VertexId w : verts) {
      if (s.has_vertex(w)) continue;
      Simplex u = s.with_vertex(w);
      bool complete = true;
      for (std::size_t i = 0; i < u.size() && complete; ++i)
        complete = survivors.count(u.without_index(i)) != 0;
      if (complete) ++n;
    }
    return n;
  };

  for (std::uint32_t k = 1; !survivors.empty(); ++k) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Simplex> doomed;
      for (const Simplex& s : survivors)
        if (joist_count(s) < k) doomed.push_back(s);
      for (const Simplex& s : doomed) {
        survivors.erase(s);
        changed = true;
      }
    }
    for (const Simplex& s : survivors) tr[s] = k;
  }
  return tr;
}

}  // namespace detail

// Full decomposition by definition, one level at a time, with the direct
// lower bound (largest containing maximal simplex).  Levels run from 2 to
// min(max_size, largest maximal simplex).
inline std::map<Simplex, BruteRow> brute_trussness(
    const SimplicialComplex& K, std::size_t max_size = SIZE_MAX) {
  std::map<Simplex, BruteRow> rows;
  std::size_t top = std::min(max_size, K.max_simplex_size());
  for (std::size_t q = 2; q <= top; ++q) {
    std::map<Simplex, std::uint32_t> tr = detail::brute_level_trussness(K, q);
    for (const auto& [s, t] : tr) {
      std::size_t largest = 0;
      for (const Simplex& m : K.maximal_simplices())
        if (s.subset_of(m)) largest = std::max(largest, m.size());
      rows[s] = {t, static_cast<std::uint32_t>(largest - s.size())};
    }
  }
  return rows;
}

// The n size-q simplices of largest trussness, ties broken by the smaller
// vertex list; fewer than n rows come back when the level is smaller.
inline std::vector<std::pair<Simplex, std::uint32_t>> brute_top_n(
    const SimplicialComplex& K, std::size_t n, std::size_t q) {
  if (n == 0) throw std::invalid_argument("brute_top_n: n == 0");
  if (q < 2) throw std::invalid_argument("brute_top_n: q < 2");
  std::map<Simplex, std::uint32_t> tr = detail::brute_level_trussness(K, q);
  std::vector<std::pair<Simplex, std::uint32_t>> rows(tr.begin(), tr.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (rows.size() > n) rows.resize(n);
  return rows;
}

}  // namespace trusskit
