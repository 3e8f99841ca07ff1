// joists.hpp - joist discovery over one level of same-size simplices
//
// A joist is the full set of size-k subsets of a (k+1)-vertex union; a
// member's "apex" is the one vertex of the union it lacks.  Discovery
// runs in three steps: find_matches pairs simplices sharing a code,
// merge_candidates stores each pair once under the member missing the
// largest vertex of the union, validate_joists counts candidates per
// prospective apex and emits apex sets.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trusskit/candidates.hpp"
#include "trusskit/errors.hpp"
#include "trusskit/simplex.hpp"

namespace trusskit {

// Apex sets per level simplex id; entry i belongs to E[i].
using LevelJoists = std::vector<std::vector<VertexId>>;

inline bool add_apex(std::vector<VertexId>& apexes, VertexId w) {
  auto pos = std::lower_bound(apexes.begin(), apexes.end(), w);
  if (pos != apexes.end() && *pos == w) return false;
  apexes.insert(pos, w);
  return true;
}

inline bool remove_apex(std::vector<VertexId>& apexes, VertexId w) {
  auto pos = std::lower_bound(apexes.begin(), apexes.end(), w);
  if (pos == apexes.end() || *pos != w) return false;
  apexes.erase(pos);
  return true;
}

// Routes one simplex's matches into the store.  A pair lands under the
// member whose union-completing vertex exceeds its own largest vertex,
// i.e. under the member lacking the largest vertex of the union; a pair
// whose union maximum lies in both members is never stored.
inline void merge_candidates(std::uint64_t s_id,
                             const std::vector<std::uint64_t>& matches,
                             const std::vector<Simplex>& E,
                             CandidateStore& store) {
  const Simplex& s = E[s_id];
  for (std::uint64_t m : matches) {
    const Simplex& t = E[m];
    if (shared_vertices(s, t) != s.size() - 1)
      throw std::logic_error("merge_candidates: match is not a code mate");
    VertexId u = difference_vertex(t, s);
    VertexId v = difference_vertex(s, t);
    if (u > s.back()) store.add(s_id, m);
    if (v > t.back()) store.add(m, s_id);
  }
}

// Validates the candidate groups of one slice.  A slice must hold the
// complete candidate list of every idx1 it mentions (chunking by
// idx1 mod M preserves this).  For a group owner σ, a vertex w with
// exactly |σ| candidates containing it closes a joist over σ ∪ {w}: w is
// recorded as an apex of σ and each candidate gets the one vertex of σ it
// lacks.  Returns the number of joists validated.
inline std::uint64_t validate_joists(
    const std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>&
        slice,
    const std::vector<Simplex>& E, LevelJoists& J) {
  std::uint64_t validated = 0;
  for (const auto& [owner, mates] : slice) {
    const Simplex& s = E[owner];
    std::map<VertexId, std::vector<std::uint64_t>> by_extra;
    for (std::uint64_t m : mates) {
      if (shared_vertices(s, E[m]) != s.size() - 1)
        throw std::logic_error("validate_joists: candidate is not a mate");
      by_extra[difference_vertex(E[m], s)].push_back(m);
    }
    for (const auto& [w, group] : by_extra) {
      if (group.size() != s.size()) continue;
      ++validated;
      add_apex(J[owner], w);
      for (std::uint64_t m : group)
        add_apex(J[m], difference_vertex(s, E[m]));
    }
  }
  return validated;
}

struct LevelDiscovery {
  LevelJoists joists;               // one apex set per member of E
  std::uint64_t candidate_records = 0;
  std::uint64_t validated_joists = 0;
  bool spilled = false;
};

// Full discovery pass over one level.  E must be sorted ascending with no
// duplicates and uniform simplex size; ids are positions in E.  Matching
// precedes indexing, so every unordered pair is examined exactly once.
inline LevelDiscovery find_joists(const std::vector<Simplex>& E,
                                  CandidateStore& store) {
  LevelDiscovery out;
  out.joists.assign(E.size(), {});
  if (E.size() < 2) return out;
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (E[i].size() != E[0].size())
      throw std::invalid_argument("find_joists: mixed simplex sizes");
    if (i > 0 && !(E[i - 1] < E[i]))
      throw std::invalid_argument("find_joists: E not sorted and distinct");
  }

  CandidateIndex index(E);
  for (std::uint64_t id = 0; id < E.size(); ++id) {
    merge_candidates(id, index.find_matches(id), E, store);
    index.insert(id);
  }
  out.candidate_records = store.record_count();
  out.spilled = store.spilled();

  if (!store.spilled()) {
    std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> slice;
    slice.reserve(store.groups().size());
    for (const auto& [owner, mates] : store.groups())
      slice.push_back({owner, mates});
    out.validated_joists = validate_joists(slice, E, out.joists);
    return out;
  }

  store.flush();
  const std::uint64_t budget = store.settings().budget;
  for (std::uint32_t c = 0; c < store.settings().chunk_count; ++c) {
    std::uint64_t records = store.chunk_records(c);
    if (records == 0) continue;
    const std::filesystem::path& file = store.chunk_files()[c];
    if (records <= budget) {
      // chunk fits: load, group, validate in one slice
      std::vector<CandidateRecord> recs;
      recs.reserve(records);
      RecordReader in(file);
      CandidateRecord r;
      while (in.next(r)) recs.push_back(r);
      std::sort(recs.begin(), recs.end());
      std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> slice;
      for (const CandidateRecord& rec : recs) {
        if (slice.empty() || slice.back().first != rec.first)
          slice.push_back({rec.first, {}});
        slice.back().second.push_back(rec.second);
      }
      out.validated_joists += validate_joists(slice, E, out.joists);
    } else {
      // oversized chunk: sort on disk, then stream one idx1 group at a time
      external_sort_chunk(file, budget);
      RecordReader in(file);
      CandidateRecord r;
      std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> group;
      auto flush_group = [&] {
        if (!group.empty())
          out.validated_joists += validate_joists(group, E, out.joists);
        group.clear();
      };
      while (in.next(r)) {
        if (group.empty() || group.back().first != r.first) {
          flush_group();
          group.push_back({r.first, {}});
        }
        group.back().second.push_back(r.second);
        if (group.back().second.size() > budget)
          throw BudgetError(
              "component " + std::to_string(store.settings().component) +
              " level " + std::to_string(store.settings().level) +
              ": candidate group of simplex " +
              std::to_string(r.first) + " exceeds the record budget of " +
              std::to_string(budget));
      }
      flush_group();
    }
  }
  return out;
}

// Convenience form with an unlimited in-memory store; keyed by simplex,
// members without joists omitted.
inline std::map<Simplex, std::vector<VertexId>> find_joists(
    const std::vector<Simplex>& E) {
  CandidateStore store({});
  LevelDiscovery d = find_joists(E, store);
  std::map<Simplex, std::vector<VertexId>> out;
  for (std::size_t i = 0; i < E.size(); ++i)
    if (!d.joists[i].empty()) out[E[i]] = std::move(d.joists[i]);
  return out;
}

}  // namespace trusskit
