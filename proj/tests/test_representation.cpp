#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "raagsep/representation.hpp"

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

TEST_CASE("doubled graph: two copies per generator, full bipartite over edges") {
  const DefiningGraph d2 = double_graph(kZ2);
  REQUIRE(d2.size() == 4);
  CHECK_FALSE(d2.adjacent(0, 1));  // the two halves of one generator
  CHECK_FALSE(d2.adjacent(2, 3));
  for (int i : {0, 1})
    for (int j : {2, 3}) CHECK(d2.adjacent(i, j));

  const DefiningGraph df = double_graph(kF2);
  CHECK(df.size() == 4);
  CHECK(df.edges().empty());
}

TEST_CASE("reflection matrices: involutions with the parabolic product") {
  const DefiningGraph d = double_graph(DefiningGraph({"a"}, {}));
  const IntMatrix s1 = tits_reflection(d, 0);
  const IntMatrix s2 = tits_reflection(d, 1);
  CHECK(s1(0, 0) == -1);
  CHECK(s1(0, 1) == 2);
  CHECK(s1(1, 0) == 0);
  CHECK(s1(1, 1) == 1);
  CHECK(s2(1, 0) == 2);
  CHECK(s2(1, 1) == -1);
  CHECK((s1 * s1).is_identity());
  CHECK((s2 * s2).is_identity());
  const IntMatrix p = s1 * s2;
  CHECK(p.trace() == 2);
  CHECK_FALSE(p.is_identity());
  IntMatrix q = p;
  for (int i = 0; i < 20; ++i) {
    CHECK_FALSE(q.is_identity());
    q = q * p;
  }
}

TEST_CASE("reflections of adjacent doubles commute, non-adjacent do not") {
  const DefiningGraph d = double_graph(kZ2);
  for (int i = 0; i < 4; ++i) {
    const IntMatrix si = tits_reflection(d, i);
    CHECK((si * si).is_identity());
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const IntMatrix sj = tits_reflection(d, j);
      if (d.adjacent(i, j)) {
        CHECK(si * sj == sj * si);
      } else {
        CHECK_FALSE(si * sj == sj * si);
      }
    }
  }
}

TEST_CASE("generator images respect defining relations and nothing shorter") {
  RepresentationBundle rb(kZ2, parse_all(kZ2, {"a"}));
  const IntMatrix ma = rb.rho0(parse_word(kZ2, "a"));
  const IntMatrix mb = rb.rho0(parse_word(kZ2, "b"));
  CHECK(ma * mb == mb * ma);
  CHECK(rb.rho0(parse_word(kZ2, "a b a^-1 b^-1")).is_identity());
  CHECK_FALSE(rb.rho0(parse_word(kZ2, "a b")).is_identity());
  CHECK_FALSE(rb.rho0(parse_word(kZ2, "a")).is_identity());

  RepresentationBundle rf(kF2, parse_all(kF2, {"a a", "b"}));
  const IntMatrix fa = rf.rho0(parse_word(kF2, "a"));
  const IntMatrix fb = rf.rho0(parse_word(kF2, "b"));
  CHECK_FALSE(fa * fb == fb * fa);
}

TEST_CASE("rho0 kills exactly the trivial words on a random sample") {
  std::mt19937 rng(20260817);
  for (const DefiningGraph* g : {&kF2, &kZ2, &kP3}) {
    std::vector<Word> gens = {parse_word(*g, "a")};
    RepresentationBundle rb(*g, gens);
    for (int trial = 0; trial < 150; ++trial) {
      const Word w = oracle::random_word(rng, *g, 1 + trial % 7);
      const bool trivial = normal_form(*g, w).empty();
      INFO(format_word(*g, w));
      CHECK(rb.rho0(w).is_identity() == trivial);
    }
  }
}

TEST_CASE("rewrite expresses K-elements in stable letters and H-syllables") {
  RepresentationBundle rb(kF2, parse_all(kF2, {"a a", "b"}));
  CHECK(rb.index() == 2);
  REQUIRE(rb.stable_letters().size() == 1);
  CHECK(format_word(kF2, rb.stable_letters()[0]) == "a b a^-1");

  const HnnWord hw = rb.rewrite(parse_word(kF2, "a b a^-1"));
  REQUIRE(hw.size() == 1);
  CHECK(hw[0].is_t);
  CHECK(hw[0].step == 0);
  CHECK(hw[0].sign == 1);

  CHECK_THROWS_AS(rb.rewrite(parse_word(kF2, "a")), NotInK);
}

TEST_CASE("substituted rewrites equal the original element") {
  std::mt19937 rng(555);
  struct Case {
    const DefiningGraph* g;
    std::vector<std::string> gens;
  };
  const std::vector<Case> cases = {{&kF2, {"a a", "b"}},
                                   {&kF2, {"a a a", "b"}},
                                   {&kZ2, {"a"}},
                                   {&kP3, {"a", "c"}}};
  for (const auto& cs : cases) {
    RepresentationBundle rb(*cs.g, parse_all(*cs.g, cs.gens));
    int rewritten = 0;
    for (int trial = 0; trial < 120 && rewritten < 40; ++trial) {
      const Word w = oracle::random_word(rng, *cs.g, 1 + trial % 7);
      if (!rb.in_k(w)) continue;
      ++rewritten;
      INFO(format_word(*cs.g, w));
      CHECK(same_element(*cs.g, rb.substituted(rb.rewrite(w)), w));
    }
    CHECK(rewritten > 0);
  }
}

TEST_CASE("twisted representation agrees with rho0 exactly on H") {
  std::mt19937 rng(31);
  RepresentationBundle rb(kF2, parse_all(kF2, {"a a", "b"}));
  int h_count = 0, k_only = 0;
  for (int trial = 0; trial < 300 && (h_count < 25 || k_only < 25); ++trial) {
    const Word w = oracle::random_word(rng, kF2, 1 + trial % 7);
    if (!rb.in_k(w)) continue;
    const bool equal = rb.rho0(w) == rb.rho_twisted(w);
    INFO(format_word(kF2, w));
    if (rb.in_h(w)) {
      CHECK(equal);
      ++h_count;
    } else {
      CHECK_FALSE(equal);
      ++k_only;
    }
  }
  CHECK(h_count > 0);
  CHECK(k_only > 0);
}

TEST_CASE("zariski verdicts match core membership") {
  struct Case {
    const DefiningGraph* g;
    std::vector<std::string> gens;
  };
  const std::vector<Case> cases = {{&kF2, {"a a", "b"}},
                                   {&kZ2, {"a"}},
                                   {&kP3, {"a", "c"}}};
  std::mt19937 rng(808);
  for (const auto& cs : cases) {
    RepresentationBundle rb(*cs.g, parse_all(*cs.g, cs.gens));
    for (int trial = 0; trial < 120; ++trial) {
      const Word w = oracle::random_word(rng, *cs.g, 1 + trial % 8);
      INFO(format_word(*cs.g, w));
      CHECK(rb.in_h(w) == rb.zariski_membership_test(w).member());
    }
  }
}

TEST_CASE("higher twists still separate") {
  RepresentationBundle rb(kF2, parse_all(kF2, {"a a", "b"}), {}, 3);
  CHECK(rb.twist() == 3);
  const Word t = parse_word(kF2, "a b a^-1");
  CHECK_FALSE(rb.zariski_membership_test(t).member());
  CHECK(rb.zariski_membership_test(parse_word(kF2, "a a")).member());
  CHECK_THROWS_AS(RepresentationBundle(kF2, parse_all(kF2, {"b"}), {}, 1), ParseError);
}

TEST_CASE("induced pairs form a homomorphism on sheets and blocks") {
  std::mt19937 rng(606);
  RepresentationBundle rb(kF2, parse_all(kF2, {"a a", "b"}));

  const InducedPair one = rb.induce(Word{});
  for (int i = 0; i < one.degree(); ++i) {
    CHECK(one.col_of_row[i] == i);
    CHECK(one.blocks[i].plain.is_identity());
    CHECK(one.blocks[i].twisted.is_identity());
  }

  for (int trial = 0; trial < 60; ++trial) {
    const Word u = oracle::random_word(rng, kF2, 1 + trial % 5);
    const Word v = oracle::random_word(rng, kF2, 1 + trial % 4);
    INFO(format_word(kF2, u) << " * " << format_word(kF2, v));
    CHECK(rb.induce(u) * rb.induce(v) == rb.induce(concat(u, v)));
  }
}

TEST_CASE("induced blocks stay inside K") {
  // block (i, pi(i)) is Phi(r_i w r_{pi(i)}^-1), whose argument must be in K;
  // phi would throw NotInK otherwise, so constructing the pair is the test
  std::mt19937 rng(99);
  RepresentationBundle rb(kF2, parse_all(kF2, {"a a a", "b"}));
  CHECK(rb.index() == 3);
  for (int trial = 0; trial < 40; ++trial) {
    const Word w = oracle::random_word(rng, kF2, 1 + trial % 6);
    CHECK_NOTHROW(rb.induce(w));
  }
}

TEST_CASE("index-1 covers make everything a K-element") {
  RepresentationBundle rb(kP3, parse_all(kP3, {"a", "c"}));
  CHECK(rb.index() == 1);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    const Word w = oracle::random_word(rng, kP3, 1 + trial % 8);
    CHECK(rb.in_k(w));
    CHECK(same_element(kP3, rb.substituted(rb.rewrite(w)), w));
  }
}
