#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "trusskit/complex.hpp"
#include "trusskit/engine.hpp"
#include "trusskit/oracle.hpp"

using trusskit::DecomposeOptions;
using trusskit::DecompositionResult;
using trusskit::Simplex;
using trusskit::TrussInfo;
using trusskit::VertexId;
using testsup::ScratchDir;
using testsup::sx;

namespace {

void check_against_oracle(const DecompositionResult& got,
                          const std::map<Simplex, trusskit::BruteRow>& want) {
  REQUIRE(got.trussness.size() == want.size());
  for (const auto& [s, row] : want) {
    CAPTURE(s.str());
    auto it = got.trussness.find(s);
    REQUIRE(it != got.trussness.end());
    CHECK(it->second.trussness == row.trussness);
    CHECK(it->second.lower_bound == row.lower_bound);
  }
}

trusskit::SimplicialComplex shifted(const trusskit::SimplicialComplex& K,
                                    VertexId offset) {
  std::vector<Simplex> sets;
  for (const Simplex& m : K.maximal_simplices()) {
    std::vector<VertexId> v = m.vertices();
    for (VertexId& x : v) x += offset;
    sets.push_back(Simplex(std::move(v)));
  }
  return trusskit::SimplicialComplex(std::move(sets));
}

trusskit::SimplicialComplex merged(
    const std::vector<trusskit::SimplicialComplex>& parts) {
  std::vector<Simplex> sets;
  for (const auto& K : parts)
    for (const Simplex& m : K.maximal_simplices()) sets.push_back(m);
  return trusskit::SimplicialComplex(std::move(sets));
}

}  // namespace

TEST_CASE("decomposition matches the frozen tetra fan table") {
  auto K = testsup::tetra_fan();
  auto R = trusskit::decompose(K);

  REQUIRE(R.trussness.size() == 17);
  for (const auto& row : testsup::tetra_fan_golden()) {
    Simplex s = sx(row.verts);
    CAPTURE(s.str());
    auto it = R.trussness.find(s);
    REQUIRE(it != R.trussness.end());
    CHECK(it->second.trussness == row.trussness);
    CHECK(it->second.lower_bound == row.lower_bound);
  }

  // Apex sets are the discovery output, untouched by peeling.
  CHECK(R.joists.at(sx({2, 3})) == std::vector<VertexId>{0, 1, 4, 5});
  CHECK(R.joists.at(sx({0, 1})) == std::vector<VertexId>{2, 3});
  CHECK(R.joists.at(sx({0, 1, 2})) == std::vector<VertexId>{3});
  CHECK(R.joists.at(sx({2, 3, 4})).empty());
  CHECK(R.joists.at(sx({0, 1, 2, 3})).empty());
  CHECK(R.joists.size() == R.trussness.size());

  // One log per level: edges peel in two batches, triangles and the
  // tetrahedron close from their lower bounds alone.
  REQUIRE(R.levels.size() == 3);
  CHECK(R.levels[0].level == 2);
  CHECK(R.levels[0].simplices == 10);
  CHECK(R.levels[0].candidate_records == 22);
  CHECK(R.levels[0].validated_joists == 6);
  CHECK(R.levels[0].batches == 2);
  CHECK_FALSE(R.levels[0].short_circuit);
  CHECK_FALSE(R.levels[0].spilled);
  CHECK(R.levels[1].level == 3);
  CHECK(R.levels[1].simplices == 6);
  CHECK(R.levels[1].candidate_records == 8);
  CHECK(R.levels[1].validated_joists == 1);
  CHECK(R.levels[1].batches == 0);
  CHECK(R.levels[1].short_circuit);
  CHECK(R.levels[2].level == 4);
  CHECK(R.levels[2].simplices == 1);
  CHECK(R.levels[2].candidate_records == 0);
  CHECK(R.levels[2].short_circuit);
}

TEST_CASE("every K5 edge reaches trussness 3 in a single batch") {
  auto K = testsup::k5_edges();
  auto R = trusskit::decompose(K);
  REQUIRE(R.trussness.size() == 10);
  for (const auto& [s, info] : R.trussness) {
    CHECK(info.trussness == 3);
    CHECK(info.lower_bound == 0);
  }
  REQUIRE(R.levels.size() == 1);
  CHECK(R.levels[0].batches == 1);
  CHECK_FALSE(R.levels[0].short_circuit);
}

TEST_CASE("a filled triangle closes from lower bounds without peeling") {
  auto R = trusskit::decompose(testsup::filled_triangle());
  REQUIRE(R.levels.size() == 2);
  CHECK(R.levels[0].short_circuit);
  CHECK(R.levels[0].batches == 0);
  CHECK(R.levels[1].short_circuit);
  CHECK(R.trussness.at(sx({0, 1})) == TrussInfo{1, 1});
  CHECK(R.trussness.at(sx({0, 1, 2})) == TrussInfo{0, 0});
}

TEST_CASE("the book spine collapses to the page trussness") {
  auto K = testsup::book(4);
  auto R = trusskit::decompose(K);
  // The spine [0,1] starts at four joists but each page peels away.
  CHECK(R.joists.at(sx({0, 1})).size() == 4);
  for (const auto& [s, info] : R.trussness) {
    CAPTURE(s.str());
    if (s.size() == 2) CHECK(info.trussness == 1);
    if (s.size() == 3) CHECK(info.trussness == 0);
  }
  CHECK(R.levels[0].batches == 2);
  check_against_oracle(R, trusskit::brute_trussness(K));
}

TEST_CASE("decomposition agrees with the brute oracle on random complexes") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto K = testsup::random_complex(seed, 10, 6, 5);
    CAPTURE(seed);
    check_against_oracle(trusskit::decompose(K), trusskit::brute_trussness(K));
  }
}

TEST_CASE("a size cap stops the decomposition at that level") {
  auto K = testsup::tetra_fan();
  DecomposeOptions opt;
  opt.max_size = 2;
  auto R = trusskit::decompose(K, opt);
  REQUIRE(R.trussness.size() == 10);
  check_against_oracle(R, trusskit::brute_trussness(K, 2));
  REQUIRE(R.levels.size() == 1);

  opt.max_size = 3;
  CHECK(trusskit::decompose(K, opt).trussness.size() == 16);
}

TEST_CASE("truss extraction nests and matches the frozen sizes") {
  auto R = trusskit::decompose(testsup::tetra_fan());
  auto T = trusskit::trusses(R.trussness);
  REQUIRE(T.size() == 2);
  CHECK(T[0].size() == 14);
  CHECK(T[1].size() == 6);
  // T_2 is the tetrahedron's edge set, in size-then-lex order.
  CHECK(T[1] == std::vector<Simplex>{sx({0, 1}), sx({0, 2}), sx({0, 3}),
                                     sx({1, 2}), sx({1, 3}), sx({2, 3})});
  for (const Simplex& s : T[1])
    CHECK(std::find(T[0].begin(), T[0].end(), s) != T[0].end());

  auto TK5 = trusskit::trusses(trusskit::decompose(testsup::k5_edges()).trussness);
  REQUIRE(TK5.size() == 3);
  CHECK(TK5[0].size() == 10);
  CHECK(TK5[1].size() == 10);
  CHECK(TK5[2].size() == 10);
}

TEST_CASE("containment, bound sandwich, and face ordering hold on random input") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    auto K = testsup::random_complex(seed, 11, 6, 5);
    auto R = trusskit::decompose(K);
    CAPTURE(seed);

    for (const auto& [s, info] : R.trussness) {
      CAPTURE(s.str());
      // lower bound <= trussness <= joist count
      CHECK(info.lower_bound <= info.trussness);
      CHECK(info.trussness <= R.joists.at(s).size());
      // faces are at least as deep as the simplices containing them
      if (s.size() >= 3) {
        for (std::size_t j = 0; j < s.size(); ++j) {
          Simplex f = s.without_index(j);
          CHECK(R.trussness.at(f).trussness >= info.trussness);
        }
      }
    }

    auto T = trusskit::trusses(R.trussness);
    for (std::size_t k = 1; k < T.size(); ++k) {
      CHECK(T[k].size() <= T[k - 1].size());
      for (const Simplex& s : T[k])
        CHECK(std::binary_search(T[k - 1].begin(), T[k - 1].end(), s));
    }
  }
}

TEST_CASE("relabeling vertices relabels the result and nothing else") {
  for (std::uint64_t seed = 140; seed < 160; ++seed) {
    auto K = testsup::random_complex(seed, 10, 5, 4);
    auto R = trusskit::decompose(K);
    auto R2 = trusskit::decompose(shifted(K, 3));
    CAPTURE(seed);
    REQUIRE(R.trussness.size() == R2.trussness.size());
    for (const auto& [s, info] : R.trussness) {
      std::vector<VertexId> v = s.vertices();
      for (VertexId& x : v) x += 3;
      CHECK(R2.trussness.at(Simplex(std::move(v))) == info);
    }
  }
}

TEST_CASE("components decompose independently and merge in label order") {
  auto K = merged({testsup::tetra_fan(), shifted(testsup::k5_edges(), 10),
                   shifted(testsup::filled_triangle(), 20)});
  auto R = trusskit::decompose(K);
  CHECK(R.trussness.size() == 17 + 10 + 4);
  CHECK(R.trussness.at(sx({0, 1})) == TrussInfo{2, 2});
  CHECK(R.trussness.at(sx({10, 11})) == TrussInfo{3, 0});
  CHECK(R.trussness.at(sx({20, 21})) == TrussInfo{1, 1});
  // Logs arrive grouped by component, components ordered by lowest label.
  REQUIRE(R.levels.size() == 3 + 1 + 2);
  CHECK(R.levels[0].component == 0);
  CHECK(R.levels[3].component == 1);
  CHECK(R.levels[3].simplices == 10);
  CHECK(R.levels[4].component == 2);

  auto R4 = trusskit::decompose(K, [] {
    DecomposeOptions opt;
    opt.parallel_components = 4;
    return opt;
  }());
  CHECK(R4.trussness == R.trussness);
  CHECK(R4.joists == R.joists);
  CHECK(R4.levels == R.levels);
}

TEST_CASE("repeated runs are identical") {
  auto K = testsup::random_complex(7, 12, 6, 5);
  auto a = trusskit::decompose(K);
  auto b = trusskit::decompose(K);
  CHECK(a.trussness == b.trussness);
  CHECK(a.joists == b.joists);
  CHECK(a.levels == b.levels);
}

TEST_CASE("spilling to disk does not change the decomposition") {
  ScratchDir dir;
  auto K = testsup::tetra_fan();
  auto reference = trusskit::decompose(K);

  DecomposeOptions opt;
  opt.memory_budget = 8;
  opt.chunk_count = 2;
  opt.workdir = dir.path();
  auto R = trusskit::decompose(K, opt);
  CHECK(R.levels[0].spilled);
  CHECK(R.trussness == reference.trussness);
  CHECK(R.joists == reference.joists);

  for (std::uint64_t seed = 160; seed < 170; ++seed) {
    auto Kr = testsup::random_complex(seed, 10, 6, 5);
    // A candidate group never exceeds the level population, so this budget
    // forces spills without overflowing any group.
    std::size_t widest = 0;
    for (std::size_t q = 2; q <= Kr.max_simplex_size(); ++q)
      widest = std::max(widest, Kr.simplices_of_size(q).size());
    DecomposeOptions tight;
    tight.memory_budget = widest + 1;
    tight.chunk_count = 3;
    tight.workdir = dir.path();
    CAPTURE(seed);
    CHECK(trusskit::decompose(Kr, tight).trussness ==
          trusskit::decompose(Kr).trussness);
  }
}

TEST_CASE("chunk files persist only when asked for") {
  ScratchDir dir;
  DecomposeOptions opt;
  opt.memory_budget = 8;
  opt.chunk_count = 2;
  opt.workdir = dir.path() / "work";
  trusskit::decompose(testsup::tetra_fan(), opt);
  std::size_t files = 0;
  if (std::filesystem::exists(opt.workdir))
    for ([[maybe_unused]] const auto& e :
         std::filesystem::directory_iterator(opt.workdir))
      ++files;
  CHECK(files == 0);

  opt.keep_workdir = true;
  trusskit::decompose(testsup::tetra_fan(), opt);
  files = 0;
  for (const auto& e : std::filesystem::directory_iterator(opt.workdir)) {
    CHECK(e.path().filename().string().starts_with("cand_"));
    ++files;
  }
  CHECK(files > 0);
}

TEST_CASE("progress reports one line per level in order") {
  std::vector<trusskit::LevelLog> seen;
  DecomposeOptions opt;
  opt.progress = [&](const trusskit::LevelLog& log) { seen.push_back(log); };
  auto R = trusskit::decompose(testsup::tetra_fan(), opt);
  CHECK(seen == R.levels);
}

TEST_CASE("an empty complex decomposes to nothing") {
  trusskit::SimplicialComplex K(std::vector<Simplex>{});
  auto R = trusskit::decompose(K);
  CHECK(R.trussness.empty());
  CHECK(R.joists.empty());
  CHECK(R.levels.empty());
}
