#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "raagsep/folding.hpp"
#include "raagsep/graph.hpp"
#include "raagsep/membership.hpp"

#include "oracles.hpp"

using namespace raagsep;

namespace {
const DefiningGraph kF2({"a", "b"}, {});
const DefiningGraph kZ2({"a", "b"}, {{"a", "b"}});
const DefiningGraph kP3({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});

std::vector<Word> parse_all(const DefiningGraph& g, const std::vector<std::string>& ws) {
  std::vector<Word> out;
  for (const auto& s : ws) out.push_back(parse_word(g, s));
  return out;
}
}  // namespace

TEST_CASE("free-group folding matches the classical picture") {
  // <a^2, b>: index-2 style core with two vertices
  const CubeComplex2 c = build_subgroup_complex(kF2, parse_all(kF2, {"a a", "b"}));
  CHECK(c.num_vertices() == 2);
  CHECK(static_cast<int>(c.edges().size()) == 3);
  CHECK(static_cast<int>(c.squares().size()) == 0);
  CHECK(c.folded());
  CHECK(check_local_isometry(c, kF2).verdict);
  CHECK(complex_accepts(kF2, c, parse_word(kF2, "a a")));
  CHECK(complex_accepts(kF2, c, parse_word(kF2, "b")));
  CHECK(complex_accepts(kF2, c, parse_word(kF2, "a a b")));
  CHECK_FALSE(complex_accepts(kF2, c, parse_word(kF2, "a")));
  CHECK_FALSE(complex_accepts(kF2, c, parse_word(kF2, "a b")));
  // the a-run parity blocks b mid-run: a b a is not a word in a^2 and b
  CHECK_FALSE(complex_accepts(kF2, c, parse_word(kF2, "a b a")));
}

TEST_CASE("folding a subgroup of Z^2 fills squares") {
  const CubeComplex2 c = build_subgroup_complex(kZ2, parse_all(kZ2, {"a"}));
  CHECK(c.num_vertices() == 1);
  CHECK(static_cast<int>(c.edges().size()) == 1);
  CHECK(static_cast<int>(c.squares().size()) == 0);
  CHECK(check_local_isometry(c, kZ2).verdict);

  // both generators: the full torus
  const CubeComplex2 t = build_subgroup_complex(kZ2, parse_all(kZ2, {"a", "b"}));
  CHECK(t.num_vertices() == 1);
  CHECK(static_cast<int>(t.edges().size()) == 2);
  CHECK(static_cast<int>(t.squares().size()) == 1);
  CHECK(is_cover(t, kZ2));
}

TEST_CASE("square spreading propagates commuting edges along the core") {
  // <a, c> in the path a-b-c is word-quasiconvex; b commutes with both
  const CubeComplex2 c = build_subgroup_complex(kP3, parse_all(kP3, {"a", "c"}));
  CHECK(check_local_isometry(c, kP3).verdict);
  CHECK(complex_accepts(kP3, c, parse_word(kP3, "a c a^-1 c^-1")));
  CHECK_FALSE(complex_accepts(kP3, c, parse_word(kP3, "b")));
  CHECK_FALSE(complex_accepts(kP3, c, parse_word(kP3, "a b")));
}

TEST_CASE("generator words that reduce to identity are dropped") {
  const CubeComplex2 c =
      build_subgroup_complex(kZ2, parse_all(kZ2, {"a b a^-1 b^-1", "a"}));
  CHECK(c.num_vertices() == 1);
  CHECK(static_cast<int>(c.edges().size()) == 1);
  CHECK(complex_accepts(kZ2, c, parse_word(kZ2, "a")));
  CHECK_FALSE(complex_accepts(kZ2, c, parse_word(kZ2, "b")));
}

TEST_CASE("the cell cap aborts runaway completions") {
  FoldingConfig cfg;
  cfg.max_cells = 64;
  bool threw = false;
  try {
    // <ab> in Z^2 is not word-quasiconvex: spreading never terminates
    build_subgroup_complex(kZ2, parse_all(kZ2, {"a b"}), cfg);
  } catch (const CapExceeded& e) {
    threw = true;
    CHECK(e.cap == 64);
    CHECK(e.vertices + e.edges + e.squares > 64);
  }
  CHECK(threw);
}

TEST_CASE("both schedules build the same language") {
  std::mt19937 rng(31337);
  FoldingConfig fs;
  fs.schedule = "fold-spread-fill";
  for (const DefiningGraph* g : {&kZ2, &kP3}) {
    std::vector<std::vector<std::string>> gens_list;
    if (g == &kZ2) {
      gens_list = {{"a"}, {"a", "b"}, {"a b a^-1"}};
    } else {
      gens_list = {{"a", "c"}, {"b"}, {"a", "b"}};
    }
    for (const auto& gens : gens_list) {
      const CubeComplex2 c1 = build_subgroup_complex(*g, parse_all(*g, gens));
      const CubeComplex2 c2 = build_subgroup_complex(*g, parse_all(*g, gens), fs);
      CHECK(c1.num_vertices() == c2.num_vertices());
      for (int trial = 0; trial < 120; ++trial) {
        const Word w = oracle::random_word(rng, *g, 1 + trial % 7);
        INFO(format_word(*g, w));
        CHECK(complex_accepts(*g, c1, w) == complex_accepts(*g, c2, w));
      }
    }
  }
}

TEST_CASE("free folding matches a textbook union-find implementation") {
  std::mt19937 rng(20260817);
  const int kSubgroups = 24;
  for (int s = 0; s < kSubgroups; ++s) {
    const int ngens = 1 + static_cast<int>(rng() % 3);
    std::vector<Word> gens;
    for (int i = 0; i < ngens; ++i) {
      Word w;
      do {
        w = geodesic_reduce(kF2, oracle::random_word(rng, kF2, 1 + rng() % 4));
      } while (w.empty());
      gens.push_back(w);
    }
    const CubeComplex2 mine = build_subgroup_complex(kF2, gens);
    oracle::FreeFold theirs(gens);
    for (int trial = 0; trial < 80; ++trial) {
      const Word w = oracle::random_word(rng, kF2, trial % 8);
      INFO("gens " << gens.size() << " word " << format_word(kF2, w));
      CHECK(complex_accepts(kF2, mine, w) == theirs.accepts(oracle::free_reduce(w)));
    }
    // every generator and random products of them are accepted
    for (const Word& w : gens) CHECK(complex_accepts(kF2, mine, w));
  }
}

TEST_CASE("folded complexes keep the basepoint reachable and canonical") {
  const CubeComplex2 c = build_subgroup_complex(kP3, parse_all(kP3, {"a", "c"}));
  CHECK(c.basepoint() == 0);
  // canonical freeze: vertex 0 is the basepoint, ids are dense
  for (int i = 0; i < static_cast<int>(c.edges().size()); ++i) CHECK(c.edges()[i].id == i);
}

TEST_CASE("subgroup products stay in the language") {
  std::mt19937 rng(555);
  const std::vector<Word> gens = parse_all(kP3, {"a", "c"});
  const CubeComplex2 c = build_subgroup_complex(kP3, gens);
  for (int trial = 0; trial < 60; ++trial) {
    Word prod;
    const int syllables = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < syllables; ++i) {
      Word f = gens[rng() % gens.size()];
      if (rng() % 2) f = inverse(f);
      prod = concat(prod, f);
    }
    CHECK(complex_accepts(kP3, c, prod));
  }
}
