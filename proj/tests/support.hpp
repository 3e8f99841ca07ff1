// support.hpp - fixtures and helpers shared across the test suite

#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trusskit/complex.hpp"
#include "trusskit/simplex.hpp"

namespace testsup {

using trusskit::Simplex;
using trusskit::SimplicialComplex;
using trusskit::VertexId;

inline Simplex sx(std::vector<VertexId> v) { return Simplex(std::move(v)); }

// A tetrahedron with two extra triangles fanned off one of its edges.
// Small enough to decompose by hand; rich enough to exercise mixed levels.
inline const char* tetra_fan_text() { return "0 1 2 3\n2 3 5\n2 3 4\n"; }

inline SimplicialComplex tetra_fan() {
  return trusskit::parse_complex(tetra_fan_text());
}

// The complete graph on five vertices, as an edge-only complex.
inline SimplicialComplex k5_edges() {
  std::vector<Simplex> edges;
  for (VertexId i = 0; i < 5; ++i)
    for (VertexId j = i + 1; j < 5; ++j)
      edges.push_back(sx({i, j}));
  return SimplicialComplex(std::move(edges));
}

inline SimplicialComplex filled_triangle() {
  return SimplicialComplex({sx({0, 1, 2})});
}

// Triangles {a, b, c1..pages} glued along the shared edge [a, b] = [0, 1].
inline SimplicialComplex book(std::size_t pages) {
  std::vector<Simplex> tris;
  for (std::size_t i = 0; i < pages; ++i)
    tris.push_back(sx({0, 1, 2 + static_cast<VertexId>(i)}));
  return SimplicialComplex(std::move(tris));
}

// Seeded random complex: up to max_maximal maximal sets of size at most
// max_size over at most max_vertices vertices.  Determinism matters only
// within a test run; both sides of every comparison recompute from it.
inline SimplicialComplex random_complex(std::uint64_t seed,
                                        std::size_t max_vertices,
                                        std::size_t max_maximal,
                                        std::size_t max_size) {
  std::mt19937_64 rng(seed);
  std::size_t nv = 3 + rng() % (max_vertices - 2);
  std::size_t nm = 1 + rng() % max_maximal;
  std::vector<Simplex> sets;
  for (std::size_t i = 0; i < nm; ++i) {
    std::size_t size = 1 + rng() % std::min(max_size, nv);
    std::set<VertexId> verts;
    while (verts.size() < size) verts.insert(rng() % nv);
    sets.push_back(Simplex::from_sorted({verts.begin(), verts.end()}));
  }
  return SimplicialComplex(std::move(sets));
}

struct GoldenRow {
  std::vector<VertexId> verts;
  std::uint32_t trussness;
  std::uint32_t lower_bound;
};

// Hand-worked decomposition of tetra_fan(): a solid tetrahedron with two
// triangles fanned off the [2,3] edge.
inline const std::vector<GoldenRow>& tetra_fan_golden() {
  static const std::vector<GoldenRow> rows = {
      {{0, 1}, 2, 2},       {{0, 2}, 2, 2},       {{0, 3}, 2, 2},
      {{1, 2}, 2, 2},       {{1, 3}, 2, 2},       {{2, 3}, 2, 2},
      {{2, 4}, 1, 1},       {{2, 5}, 1, 1},       {{3, 4}, 1, 1},
      {{3, 5}, 1, 1},       {{0, 1, 2}, 1, 1},    {{0, 1, 3}, 1, 1},
      {{0, 2, 3}, 1, 1},    {{1, 2, 3}, 1, 1},    {{2, 3, 4}, 0, 0},
      {{2, 3, 5}, 0, 0},    {{0, 1, 2, 3}, 0, 0},
  };
  return rows;
}

// Unique temp directory, removed on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<unsigned> counter{0};
    auto stamp = std::to_string(::getpid()) + "_" + std::to_string(counter++);
    path_ = std::filesystem::temp_directory_path() / ("trusskit_test_" + stamp);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testsup
