// simplex.hpp - vertex sets with ascending canonical order

#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trusskit {

using VertexId = std::uint64_t;

// A simplex is a finite nonempty set of vertices, kept strictly ascending.
// A q-simplex has q+1 vertices, so dimension() == size() - 1.
class Simplex {
public:
  Simplex() = default;

  // Validating constructor: sorts and rejects empty sets and duplicates.
  explicit Simplex(std::vector<VertexId> verts) : verts_(std::move(verts)) {
    if (verts_.empty())
      throw std::invalid_argument("simplex: empty vertex set");
    std::sort(verts_.begin(), verts_.end());
    if (std::adjacent_find(verts_.begin(), verts_.end()) != verts_.end())
      throw std::invalid_argument("simplex: duplicate vertex");
  }

  // Trusted path for lists already strictly ascending.
  static Simplex from_sorted(std::vector<VertexId> verts) {
    assert(!verts.empty());
    assert(std::is_sorted(verts.begin(), verts.end()));
    assert(std::adjacent_find(verts.begin(), verts.end()) == verts.end());
    Simplex s;
    s.verts_ = std::move(verts);
    return s;
  }

  std::size_t size() const { return verts_.size(); }
  std::size_t dimension() const { return verts_.size() - 1; }
  const std::vector<VertexId>& vertices() const { return verts_; }
  VertexId operator[](std::size_t i) const { return verts_[i]; }
  VertexId back() const { return verts_.back(); }

  bool has_vertex(VertexId v) const {
    return std::binary_search(verts_.begin(), verts_.end(), v);
  }

  bool subset_of(const Simplex& other) const {
    return std::includes(other.verts_.begin(), other.verts_.end(),
                         verts_.begin(), verts_.end());
  }

  // this ∪ {v}; v must not already be a member
  Simplex with_vertex(VertexId v) const {
    std::vector<VertexId> out;
    out.reserve(verts_.size() + 1);
    auto pos = std::lower_bound(verts_.begin(), verts_.end(), v);
    assert(pos == verts_.end() || *pos != v);
    out.insert(out.end(), verts_.begin(), pos);
    out.push_back(v);
    out.insert(out.end(), pos, verts_.end());
    return from_sorted(std::move(out));
  }

  // this minus the vertex at position i
  Simplex without_index(std::size_t i) const {
    assert(verts_.size() > 1 && i < verts_.size());
    std::vector<VertexId> out;
    out.reserve(verts_.size() - 1);
    for (std::size_t j = 0; j < verts_.size(); ++j)
      if (j != i) out.push_back(verts_[j]);
    return from_sorted(std::move(out));
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(verts_[i]);
    }
    return out;
  }

  friend bool operator==(const Simplex& a, const Simplex& b) = default;

  // Order: size first, then lexicographic on vertex lists.  Equal-size
  // comparison is therefore plain lexicographic.
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    if (a.verts_.size() != b.verts_.size())
      return a.verts_.size() <=> b.verts_.size();
    return std::lexicographical_compare_three_way(
        a.verts_.begin(), a.verts_.end(), b.verts_.begin(), b.verts_.end());
  }

private:
  std::vector<VertexId> verts_;
};

// The single vertex of a that b lacks; a and b must share all but one
// vertex of a.
inline VertexId difference_vertex(const Simplex& a, const Simplex& b) {
  for (VertexId v : a.vertices())
    if (!b.has_vertex(v)) return v;
  assert(false && "difference_vertex: a is a subset of b");
  return 0;
}

// How many vertices a and b share.
inline std::size_t shared_vertices(const Simplex& a, const Simplex& b) {
  std::size_t n = 0;
  auto i = a.vertices().begin();
  auto j = b.vertices().begin();
  while (i != a.vertices().end() && j != b.vertices().end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++n; ++i; ++j; }
  }
  return n;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const {
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    for (VertexId v : s.vertices()) h = mix64(h ^ v);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace trusskit
