#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "trusskit/complex.hpp"
#include "trusskit/engine.hpp"
#include "trusskit/generators.hpp"
#include "trusskit/oracle.hpp"

using trusskit::Simplex;
using trusskit::VertexId;
using testsup::sx;

TEST_CASE("bounded draws stay in range and doubles stay in the unit interval") {
  std::mt19937_64 rng(9);
  std::map<std::uint64_t, int> seen;
  for (int i = 0; i < 3000; ++i) ++seen[trusskit::bounded_draw(rng, 7)];
  REQUIRE(seen.size() == 7);
  for (const auto& [value, count] : seen) {
    CHECK(value < 7);
    CHECK(count > 300);
  }
  for (int i = 0; i < 1000; ++i) {
    double u = trusskit::unit_draw(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("a one-cell manifold is a single simplex") {
  auto K = trusskit::gen_manifold(2, 1, 5);
  REQUIRE(K.maximal_simplices().size() == 1);
  CHECK(K.maximal_simplices()[0] == sx({0, 1, 2}));
}

TEST_CASE("a grown manifold has s cells and s + d vertices") {
  for (std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    for (std::size_t s : {std::size_t{1}, std::size_t{5}, std::size_t{12}}) {
      auto K = trusskit::gen_manifold(d, s, 17 * d + s);
      CAPTURE(d, s);
      CHECK(K.maximal_simplices().size() == s);
      CHECK(K.vertex_count() == s + d);
      for (const Simplex& m : K.maximal_simplices())
        CHECK(m.size() == d + 1);
    }
  }
}

TEST_CASE("gluing keeps every boundary face in at most two cells") {
  auto K = trusskit::gen_manifold(2, 20, 23);
  std::map<Simplex, int> edge_use;
  for (const Simplex& m : K.maximal_simplices())
    for (std::size_t j = 0; j < m.size(); ++j)
      ++edge_use[m.without_index(j)];
  for (const auto& [e, uses] : edge_use) CHECK(uses <= 2);
}

TEST_CASE("manifold trussness follows the dimension law") {
  // Every simplex of dimension q in a d-manifold grown this way has
  // trussness d - q.
  for (std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    for (std::size_t s : {std::size_t{2}, std::size_t{7}}) {
      auto K = trusskit::gen_manifold(d, s, 100 * d + s);
      auto R = trusskit::decompose(K);
      CAPTURE(d, s);
      for (const auto& [sim, info] : R.trussness) {
        CAPTURE(sim.str());
        CHECK(info.trussness == d + 1 - sim.size());
      }
    }
  }
}

TEST_CASE("small manifolds agree with the brute oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto K = trusskit::gen_manifold(2, 4, seed);
    auto R = trusskit::decompose(K);
    auto B = trusskit::brute_trussness(K);
    CAPTURE(seed);
    REQUIRE(R.trussness.size() == B.size());
    for (const auto& [s, row] : B) {
      CHECK(R.trussness.at(s).trussness == row.trussness);
      CHECK(R.trussness.at(s).lower_bound == row.lower_bound);
    }
  }
}

TEST_CASE("manifold generation is seed-deterministic") {
  auto a = trusskit::gen_manifold(3, 8, 11);
  auto b = trusskit::gen_manifold(3, 8, 11);
  CHECK(a.maximal_simplices() == b.maximal_simplices());
  auto c = trusskit::gen_manifold(2, 20, 0);
  auto e = trusskit::gen_manifold(2, 20, 1);
  CHECK(c.maximal_simplices() != e.maximal_simplices());
}

TEST_CASE("manifold parameters are validated") {
  CHECK_THROWS_AS(trusskit::gen_manifold(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(trusskit::gen_manifold(2, 0, 1), std::invalid_argument);
}

TEST_CASE("a complete graph collapses to one maximal clique") {
  auto K = trusskit::gen_flag_complex(5, 1.0, 5, 3);
  REQUIRE(K.maximal_simplices().size() == 1);
  CHECK(K.maximal_simplices()[0] == sx({0, 1, 2, 3, 4}));
}

TEST_CASE("the clique cap truncates to all subsets at the cap size") {
  auto K = trusskit::gen_flag_complex(5, 1.0, 3, 3);
  CHECK(K.maximal_simplices().size() == 10);
  CHECK(K.max_simplex_size() == 3);
  for (const Simplex& m : K.maximal_simplices()) CHECK(m.size() == 3);
}

TEST_CASE("an empty graph yields isolated vertices") {
  auto K = trusskit::gen_flag_complex(5, 0.0, 3, 3);
  CHECK(K.vertex_count() == 5);
  CHECK(K.max_simplex_size() == 1);
  CHECK(K.simplices_of_size(2).empty());
}

TEST_CASE("a flag complex is the clique complex of its own skeleton") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto K = trusskit::gen_flag_complex(12, 0.4, 12, seed);
    auto edges = K.simplices_of_size(2);
    std::set<Simplex> edge_set(edges.begin(), edges.end());
    auto is_clique = [&](const std::vector<VertexId>& vs) {
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
          if (!edge_set.count(sx({vs[i], vs[j]}))) return false;
      return true;
    };
    // every vertex set of size 2..5: simplex iff clique
    const auto& labels = K.vertex_labels();
    std::vector<std::size_t> idx;
    auto sweep = [&](auto&& self, std::size_t start,
                     std::vector<VertexId>& cur) -> void {
      if (cur.size() >= 2) {
        CAPTURE(seed, sx(cur).str());
        CHECK(K.contains(sx(cur)) == is_clique(cur));
      }
      if (cur.size() == 5) return;
      for (std::size_t i = start; i < labels.size(); ++i) {
        cur.push_back(labels[i]);
        self(self, i + 1, cur);
        cur.pop_back();
      }
    };
    std::vector<VertexId> cur;
    sweep(sweep, 0, cur);
  }
}

TEST_CASE("capping a flag complex preserves everything at or below the cap") {
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    auto full = trusskit::gen_flag_complex(14, 0.5, 14, seed);
    auto capped = trusskit::gen_flag_complex(14, 0.5, 3, seed);
    CAPTURE(seed);
    CHECK(capped.max_simplex_size() <= 3);
    for (std::size_t q = 2; q <= 3; ++q)
      CHECK(full.simplices_of_size(q) == capped.simplices_of_size(q));
  }
}

TEST_CASE("flag generation is seed-deterministic") {
  auto a = trusskit::gen_flag_complex(20, 0.3, 4, 7);
  auto b = trusskit::gen_flag_complex(20, 0.3, 4, 7);
  CHECK(a.maximal_simplices() == b.maximal_simplices());
}

TEST_CASE("flag parameters are validated") {
  CHECK_THROWS_AS(trusskit::gen_flag_complex(0, 0.5, 3, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(trusskit::gen_flag_complex(5, 1.5, 3, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(trusskit::gen_flag_complex(5, -0.1, 3, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(trusskit::gen_flag_complex(5, 0.5, 1, 1),
                  std::invalid_argument);
}
