// generators.hpp - synthetic complexes: growing manifolds and flag complexes
//
// Both generators are pure functions of their parameters; the draw
// primitives below avoid std::uniform_*_distribution, whose outputs differ
// between standard libraries.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "trusskit/complex.hpp"
#include "trusskit/simplex.hpp"

namespace trusskit {

// Uniform draw in [0, n) by rejection.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  assert(n > 0);
  std::uint64_t threshold = (0 - n) % n;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % n;
}

// Uniform double in [0, 1), 53 bits.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Growing manifold: start from one d-simplex, then repeatedly glue a new
// d-simplex carrying one fresh vertex onto a uniformly chosen free
// boundary face (a (d-1)-face lying in exactly one cell so far).  Gluing
// retires the chosen face and exposes d new ones, so no (d-1)-face ever
// sits in more than two cells.  The result has s cells and s + d vertices.
inline SimplicialComplex gen_manifold(std::size_t d, std::size_t s,
                                      std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("gen_manifold: d must be at least 1");
  if (s < 1) throw std::invalid_argument("gen_manifold: s must be at least 1");
  std::mt19937_64 rng(seed);

  std::vector<VertexId> base(d + 1);
  std::iota(base.begin(), base.end(), 0);
  std::vector<Simplex> cells = {Simplex::from_sorted(std::move(base))};

  std::vector<Simplex> free_faces;
  for (std::size_t j = 0; j <= d; ++j)
    free_faces.push_back(cells[0].without_index(j));

  VertexId fresh = static_cast<VertexId>(d) + 1;
  for (std::size_t step = 1; step < s; ++step, ++fresh) {
    std::size_t pick =
        static_cast<std::size_t>(bounded_draw(rng, free_faces.size()));
    Simplex face = std::move(free_faces[pick]);
    free_faces[pick] = std::move(free_faces.back());
    free_faces.pop_back();

    Simplex cell = face.with_vertex(fresh);
    // The fresh vertex is the largest so far; every other face of the new
    // cell contains it and is therefore free.
    for (std::size_t j = 0; j + 1 < cell.size(); ++j)
      free_faces.push_back(cell.without_index(j));
    cells.push_back(std::move(cell));
  }
  return SimplicialComplex(std::move(cells));
}

namespace detail {

inline std::vector<VertexId> sorted_intersect(const std::vector<VertexId>& a,
                                              const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// Bron-Kerbosch with pivoting; P and X are sorted, R is the growing clique.
inline void maximal_cliques(std::vector<VertexId>& R, std::vector<VertexId> P,
                            std::vector<VertexId> X,
                            const std::vector<std::vector<VertexId>>& adj,
                            std::vector<std::vector<VertexId>>& out) {
  if (P.empty() && X.empty()) {
    out.push_back(R);
    return;
  }
  VertexId pivot = 0;
  std::size_t best = SIZE_MAX;
  for (const std::vector<VertexId>* side : {&P, &X})
    for (VertexId u : *side) {
      std::size_t uncovered =
          P.size() - sorted_intersect(P, adj[u]).size();
      if (uncovered < best) {
        best = uncovered;
        pivot = u;
      }
    }
  std::vector<VertexId> order;
  std::set_difference(P.begin(), P.end(), adj[pivot].begin(),
                      adj[pivot].end(), std::back_inserter(order));
  for (VertexId v : order) {
    R.push_back(v);
    maximal_cliques(R, sorted_intersect(P, adj[v]),
                    sorted_intersect(X, adj[v]), adj, out);
    R.pop_back();
    P.erase(std::find(P.begin(), P.end(), v));
    auto pos = std::lower_bound(X.begin(), X.end(), v);
    X.insert(pos, v);
  }
}

}  // namespace detail

// Flag complex of an Erdos-Renyi graph: every clique becomes a simplex.
// Maximal cliques are the maximal simplices; a clique wider than max_size
// is emitted as all of its max_size-subsets, so nothing above the cap is
// ever represented.  Isolated vertices stay as 0-simplices.
inline SimplicialComplex gen_flag_complex(std::size_t n, double p,
                                          std::size_t max_size,
                                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_flag_complex: n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("gen_flag_complex: p must be in [0, 1]");
  if (max_size < 2)
    throw std::invalid_argument("gen_flag_complex: max_size must be at least 2");
  std::mt19937_64 rng(seed);

  std::vector<std::vector<VertexId>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (unit_draw(rng) < p) {
        adj[i].push_back(static_cast<VertexId>(j));
        adj[j].push_back(static_cast<VertexId>(i));
      }
  // Neighbor lists are built in ascending order already; keep the sort as
  // a guard for future edits.
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<VertexId>> cliques;
  std::vector<VertexId> R;
  detail::maximal_cliques(R, all, {}, adj, cliques);

  std::vector<Simplex> maximal;
  for (std::vector<VertexId>& c : cliques) {
    std::sort(c.begin(), c.end());
    if (c.size() <= max_size) {
      maximal.push_back(Simplex::from_sorted(std::move(c)));
      continue;
    }
    // every max_size-subset, by combination index walk
    std::vector<std::size_t> idx(max_size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<VertexId> sub(max_size);
      for (std::size_t j = 0; j < max_size; ++j) sub[j] = c[idx[j]];
      maximal.push_back(Simplex::from_sorted(std::move(sub)));
      std::size_t j = max_size;
      while (j > 0 && idx[j - 1] == c.size() - max_size + (j - 1)) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t k = j; k < max_size; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return SimplicialComplex(std::move(maximal));
}

}  // namespace trusskit
