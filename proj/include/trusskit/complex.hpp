// complex.hpp - simplicial complexes given by their maximal simplices

#pragma once

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trusskit/errors.hpp"
#include "trusskit/simplex.hpp"

namespace trusskit {

// A complex is the downward closure of an antichain of maximal simplices.
// Input sets that repeat or lie inside another input set are dropped on
// build.  Vertices get dense internal ids in ascending label order; the
// public surface speaks original labels throughout.
class SimplicialComplex {
public:
  SimplicialComplex() = default;

  explicit SimplicialComplex(std::vector<Simplex> input) {
    reduce(std::move(input));
    index();
  }

  const std::vector<Simplex>& maximal_simplices() const { return maximal_; }

  // Distinct vertex labels, ascending.
  const std::vector<VertexId>& vertex_labels() const { return labels_; }
  std::size_t vertex_count() const { return labels_.size(); }

  std::size_t max_simplex_size() const {
    std::size_t m = 0;
    for (const Simplex& s : maximal_) m = std::max(m, s.size());
    return m;
  }

  bool empty() const { return maximal_.empty(); }

  // Ids of the maximal simplices that contain s, ascending; empty when s
  // is not a simplex of the complex.  Works by intersecting the per-vertex
  // lists of the index, so cost scales with the shortest list.
  std::vector<std::uint32_t> maximal_containing(const Simplex& s) const {
    std::vector<std::uint32_t> acc;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::size_t dense = dense_id(s[i]);
      if (dense == npos) return {};
      const std::vector<std::uint32_t>& list = vertex_index_[dense];
      if (i == 0) {
        acc = list;
      } else {
        std::vector<std::uint32_t> next;
        std::set_intersection(acc.begin(), acc.end(), list.begin(), list.end(),
                              std::back_inserter(next));
        acc.swap(next);
      }
      if (acc.empty()) return {};
    }
    return acc;
  }

  bool contains(const Simplex& s) const {
    return !maximal_containing(s).empty();
  }

  // All distinct simplices of the complex with exactly q vertices.
  std::vector<Simplex> simplices_of_size(std::size_t q) const {
    assert(q >= 1);
    std::set<Simplex> out;
    std::vector<VertexId> pick(q);
    for (const Simplex& m : maximal_) {
      if (m.size() < q) continue;
      // iterate index combinations of m
      std::vector<std::size_t> idx(q);
      for (std::size_t i = 0; i < q; ++i) idx[i] = i;
      while (true) {
        for (std::size_t i = 0; i < q; ++i) pick[i] = m[idx[i]];
        out.insert(Simplex::from_sorted(pick));
        std::size_t i = q;
        while (i > 0 && idx[i - 1] == m.size() - q + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < q; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return {out.begin(), out.end()};
  }

private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t dense_id(VertexId label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return npos;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  void reduce(std::vector<Simplex> input) {
    // drop exact duplicates, then anything contained in a larger survivor
    std::sort(input.begin(), input.end());
    input.erase(std::unique(input.begin(), input.end()), input.end());
    std::stable_sort(input.begin(), input.end(),
                     [](const Simplex& a, const Simplex& b) {
                       return a.size() > b.size();
                     });
    for (const Simplex& s : input) {
      bool subsumed = false;
      for (const Simplex& kept : maximal_)
        if (s.subset_of(kept)) { subsumed = true; break; }
      if (!subsumed) maximal_.push_back(s);
    }
    std::sort(maximal_.begin(), maximal_.end(),
              [](const Simplex& a, const Simplex& b) {
                return a.vertices() < b.vertices();
              });
  }

  void index() {
    std::set<VertexId> seen;
    for (const Simplex& s : maximal_)
      seen.insert(s.vertices().begin(), s.vertices().end());
    labels_.assign(seen.begin(), seen.end());
    vertex_index_.assign(labels_.size(), {});
    for (std::uint32_t id = 0; id < maximal_.size(); ++id)
      for (VertexId v : maximal_[id].vertices())
        vertex_index_[dense_id(v)].push_back(id);
  }

  std::vector<Simplex> maximal_;                        // lex on vertex lists
  std::vector<VertexId> labels_;                        // ascending
  std::vector<std::vector<std::uint32_t>> vertex_index_;  // dense id -> maximal ids
};

// Text format: one maximal simplex per line as whitespace-separated decimal
// vertex ids; '#' starts a comment line; blank lines are skipped.
inline SimplicialComplex parse_complex(std::string_view text) {
  std::vector<Simplex> sets;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    std::vector<VertexId> verts;
    std::size_t i = first;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t') { ++i; continue; }
      std::size_t j = i;
      VertexId v = 0;
      while (j < line.size() && line[j] >= '0' && line[j] <= '9') {
        VertexId digit = static_cast<VertexId>(line[j] - '0');
        if (v > (UINT64_MAX - digit) / 10)
          throw ParseError(line_no, "vertex id out of range");
        v = v * 10 + digit;
        ++j;
      }
      if (j == i || (j < line.size() && line[j] != ' ' && line[j] != '\t'))
        throw ParseError(line_no, "malformed vertex id");
      verts.push_back(v);
      i = j;
    }
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
      throw ParseError(line_no, "duplicate vertex in simplex");
    sets.push_back(Simplex::from_sorted(std::move(verts)));
  }
  return SimplicialComplex(std::move(sets));
}

// Largest maximal simplex containing s, minus the size of s itself.
inline std::uint32_t lower_bound_trussness(const Simplex& s,
                                           const SimplicialComplex& K) {
  std::vector<std::uint32_t> ids = K.maximal_containing(s);
  if (ids.empty())
    throw std::invalid_argument("lower_bound: simplex not in complex");
  std::size_t best = 0;
  for (std::uint32_t id : ids)
    best = std::max(best, K.maximal_simplices()[id].size());
  return static_cast<std::uint32_t>(best - s.size());
}

// Splits K along 1-skeleton connectivity.  Each maximal simplex lands in
// exactly one part; parts are ordered by their smallest vertex label.
inline std::vector<SimplicialComplex> connected_components(
    const SimplicialComplex& K) {
  const std::vector<VertexId>& labels = K.vertex_labels();
  std::vector<std::size_t> parent(labels.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
    return x;
  };
  auto dense = [&](VertexId v) {
    return static_cast<std::size_t>(
        std::lower_bound(labels.begin(), labels.end(), v) - labels.begin());
  };
  for (const Simplex& m : K.maximal_simplices()) {
    std::size_t r = find(dense(m[0]));
    for (std::size_t i = 1; i < m.size(); ++i) {
      std::size_t o = find(dense(m[i]));
      if (o != r) parent[o] = r;
    }
  }
  // group maximal simplices by root; roots keyed by smallest member label
  std::vector<std::pair<std::size_t, std::vector<Simplex>>> groups;
  for (const Simplex& m : K.maximal_simplices()) {
    std::size_t r = find(dense(m[0]));
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == r; });
    if (it == groups.end()) {
      groups.push_back({r, {m}});
    } else {
      it->second.push_back(m);
    }
  }
  std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    VertexId la = a.second.front()[0], lb = b.second.front()[0];
    for (const Simplex& s : a.second) la = std::min(la, s[0]);
    for (const Simplex& s : b.second) lb = std::min(lb, s[0]);
    return la < lb;
  });
  std::vector<SimplicialComplex> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.emplace_back(std::move(g.second));
  return out;
}

// Grows the level-q candidate set.  For q == 2 this is every distinct
// 2-subset of a maximal simplex (S is ignored); for q > 2 each s in S is
// extended by every vertex co-occurring with it in some maximal simplex.
// Extensions are simplices of C by construction.
inline std::vector<Simplex> extend_simplices(const std::vector<Simplex>& S,
                                             const SimplicialComplex& C,
                                             std::size_t q) {
  if (q < 2) throw std::invalid_argument("extend_simplices: q < 2");
  std::set<Simplex> out;
  if (q == 2) {
    for (const Simplex& m : C.maximal_simplices())
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
          out.insert(Simplex::from_sorted({m[i], m[j]}));
    return {out.begin(), out.end()};
  }
  for (const Simplex& s : S)
    if (s.size() != q - 1)
      throw std::invalid_argument("extend_simplices: member size != q-1");
  for (const Simplex& s : S) {
    std::set<VertexId> co;
    for (std::uint32_t id : C.maximal_containing(s))
      for (VertexId v : C.maximal_simplices()[id].vertices())
        if (!s.has_vertex(v)) co.insert(v);
    for (VertexId v : co) out.insert(s.with_vertex(v));
  }
  return {out.begin(), out.end()};
}

}  // namespace trusskit
