#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "raagsep/completion.hpp"
#include "raagsep/folding.hpp"
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

TEST_CASE("the identity always lies in H") {
  const CubeComplex2 c = build_subgroup_complex(kF2, parse_all(kF2, {"a a", "b"}));
  CHECK(complex_accepts(kF2, c, Word{}));
  CHECK(complex_accepts(kF2, c, parse_word(kF2, "a a a^-1 a^-1")));
}

TEST_CASE("membership is invariant under free insertion and commutation") {
  const CubeComplex2 c = build_subgroup_complex(kZ2, parse_all(kZ2, {"a a", "b"}));
  // a^2 written every which way
  for (const char* s : {"a a", "a b a b^-1", "b a a b^-1", "a b b^-1 a"}) {
    CHECK(complex_accepts(kZ2, c, parse_word(kZ2, s)));
  }
  // a b a commutes to a^2 b, which lies in the subgroup; b a b^-1 is just a
  CHECK(complex_accepts(kZ2, c, parse_word(kZ2, "a b a")));
  CHECK_FALSE(complex_accepts(kZ2, c, parse_word(kZ2, "b a b^-1")));
}

TEST_CASE("classify_membership separates the core from the cover") {
  const CubeComplex2 core = build_subgroup_complex(kF2, parse_all(kF2, {"a a", "b"}));
  const CompletionResult r = canonical_complete(kF2, core);

  const MembershipVerdict in_both = classify_membership(kF2, core, r.complex,
                                                        parse_word(kF2, "a a"));
  CHECK(in_both.in_h);
  CHECK(in_both.in_k);

  // the stable letter a b a^-1 is in K only
  const MembershipVerdict k_only = classify_membership(kF2, core, r.complex,
                                                       parse_word(kF2, "a b a^-1"));
  CHECK_FALSE(k_only.in_h);
  CHECK(k_only.in_k);

  // a moves the sheet: outside K entirely
  const MembershipVerdict outside = classify_membership(kF2, core, r.complex,
                                                        parse_word(kF2, "a"));
  CHECK_FALSE(outside.in_h);
  CHECK_FALSE(outside.in_k);

  // H is contained in K on a random sample
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = oracle::random_word(rng, kF2, 1 + trial % 8);
    const MembershipVerdict v = classify_membership(kF2, core, r.complex, w);
    if (v.in_h) CHECK(v.in_k);
  }
}

TEST_CASE("membership agrees with the stabilized-ball oracle on short words") {
  struct Case {
    const DefiningGraph* g;
    std::vector<std::string> gens;
  };
  const std::vector<Case> cases = {{&kF2, {"a a", "b"}},
                                   {&kF2, {"a a a", "b"}},
                                   {&kZ2, {"a"}},
                                   {&kP3, {"a", "c"}}};
  std::mt19937 rng(20260817);
  const int kMaxLen = 5;
  for (const auto& cs : cases) {
    const std::vector<Word> gens = parse_all(*cs.g, cs.gens);
    const CubeComplex2 core = build_subgroup_complex(*cs.g, gens);
    const auto ball = oracle::subgroup_ball(*cs.g, gens, kMaxLen);
    int positives = 0;
    for (int trial = 0; trial < 400; ++trial) {
      Word w = oracle::random_word(rng, *cs.g, 1 + trial % 6);
      w = geodesic_reduce(*cs.g, w);
      if (static_cast<int>(w.size()) > kMaxLen) continue;
      const bool mine = complex_accepts(*cs.g, core, w);
      INFO(cs.gens[0] << " ... word " << format_word(*cs.g, w));
      CHECK(mine == oracle::ball_membership(ball, *cs.g, w));
      positives += mine;
    }
    CHECK(positives > 0);
  }
}

TEST_CASE("free-group membership agrees with the union-find oracle") {
  std::mt19937 rng(777);
  for (int s = 0; s < 10; ++s) {
    std::vector<Word> gens;
    const int ngens = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < ngens; ++i) {
      Word w;
      do {
        w = geodesic_reduce(kF2, oracle::random_word(rng, kF2, 1 + rng() % 4));
      } while (w.empty());
      gens.push_back(w);
    }
    const CubeComplex2 core = build_subgroup_complex(kF2, gens);
    for (int trial = 0; trial < 100; ++trial) {
      const Word w = oracle::random_word(rng, kF2, trial % 9);
      CHECK(complex_accepts(kF2, core, w) ==
            oracle::free_membership(gens, oracle::free_reduce(w)));
    }
  }
}
