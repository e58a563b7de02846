#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "raagsep/bench.hpp"

using namespace raagsep;

namespace {
GrowthFamily arith_family() {
  GrowthFamily fam;
  fam.name = "z2-b-arith";
  fam.graph = DefiningGraph({"a", "b"}, {{"a", "b"}});
  fam.gens = {parse_word(fam.graph, "a")};
  fam.prefix = parse_word(fam.graph, "b");
  fam.base = parse_word(fam.graph, "b b b");
  fam.m_min = 1;
  fam.m_max = 10;
  return fam;
}
}  // namespace

TEST_CASE("samples are prefix base^m suffix") {
  const GrowthFamily fam = arith_family();
  CHECK(format_word(fam.graph, fam.sample(1)) == "b b b b");
  CHECK(format_word(fam.graph, fam.sample(3)) == "b b b b b b b b b b");
}

TEST_CASE("constant-prime arithmetic family over the torus") {
  const auto recs = run_family(arith_family());
  REQUIRE(recs.size() == 10);
  for (const auto& r : recs) {
    CHECK(r.kind == "mod-p");
    CHECK(r.p == 3);
    CHECK(r.len == 3 * r.m + 1);
    CHECK(r.log_bound > 0.0);
    CHECK(r.ms >= 0.0);
  }
  const ExponentFit fit = fit_exponent(recs);
  CHECK(fit.stable);
  CHECK(std::abs(fit.slope) < 1e-9);
}

TEST_CASE("permutation family over the free group") {
  GrowthFamily fam;
  fam.name = "f2-perm";
  fam.graph = DefiningGraph({"a", "b"}, {});
  fam.gens = {parse_word(fam.graph, "a a"), parse_word(fam.graph, "b")};
  fam.base = parse_word(fam.graph, "b");
  fam.suffix = parse_word(fam.graph, "a");
  fam.m_min = 1;
  fam.m_max = 12;
  const auto recs = run_family(fam);
  REQUIRE(recs.size() == 12);
  for (const auto& r : recs) {
    CHECK(r.kind == "permutation");
    CHECK(r.p == 0);
  }
  const ExponentFit fit = fit_exponent(recs);
  CHECK(fit.stable);
  CHECK(std::abs(fit.slope) < 1e-9);
}

TEST_CASE("a family entirely inside H is rejected") {
  GrowthFamily fam;
  fam.name = "inside";
  fam.graph = DefiningGraph({"a", "b"}, {});
  fam.gens = {parse_word(fam.graph, "a a"), parse_word(fam.graph, "b")};
  fam.base = parse_word(fam.graph, "b");
  fam.m_min = 1;
  fam.m_max = 8;
  CHECK_THROWS_AS(run_family(fam), FamilyValidationError);
}

TEST_CASE("isolated in-H samples become error records") {
  GrowthFamily fam;
  fam.name = "mixed";
  fam.graph = DefiningGraph({"a", "b"}, {});
  fam.gens = {parse_word(fam.graph, "a a"), parse_word(fam.graph, "b")};
  fam.prefix = parse_word(fam.graph, "a a a");
  fam.base = parse_word(fam.graph, "a^-1");
  fam.m_min = 1;
  fam.m_max = 9;
  // sample(m) = a^(3-m), in H exactly when 3-m is even
  const auto recs = run_family(fam);
  int errors = 0;
  for (const auto& r : recs) errors += r.kind == "error";
  CHECK(errors == 5);
  // only four usable records remain, too few for a fit
  CHECK_THROWS_AS(fit_exponent(recs), DegenerateFit);
}

TEST_CASE("fit demands at least eight usable records") {
  std::vector<BenchRecord> recs;
  for (int i = 0; i < 7; ++i) recs.push_back({i + 1, i + 2, "mod-p", 3, 5.0, 1.0});
  CHECK_THROWS_AS(fit_exponent(recs), DegenerateFit);
}

TEST_CASE("fit rejects constant lengths") {
  std::vector<BenchRecord> recs;
  for (int i = 0; i < 9; ++i) recs.push_back({i + 1, 5, "mod-p", 3, 10.0, 1.0});
  CHECK_THROWS_AS(fit_exponent(recs), DegenerateFit);
}

TEST_CASE("fit recovers an exact power law") {
  // log_bound = 2.5 * ln(len) + 1.0, lengths spread out
  std::vector<BenchRecord> recs;
  for (int i = 0; i < 12; ++i) {
    const int len = 3 + 2 * i;
    recs.push_back({i + 1, len, "mod-p", 3, 2.5 * std::log(len) + 1.0, 1.0});
  }
  const ExponentFit fit = fit_exponent(recs);
  CHECK(std::abs(fit.slope - 2.5) < 1e-9);
  CHECK(std::abs(fit.intercept - 1.0) < 1e-9);
  CHECK(fit.max_residual < 1e-9);
  CHECK(fit.stable);
  CHECK(std::abs(fit.half_slope_lo - 2.5) < 1e-9);
  CHECK(std::abs(fit.half_slope_hi - 2.5) < 1e-9);
}

TEST_CASE("fit flags unstable split halves") {
  // slope jumps between the halves: lo ~ 0, hi ~ 4
  std::vector<BenchRecord> recs;
  for (int i = 0; i < 6; ++i)
    recs.push_back({i + 1, 2 + i, "mod-p", 3, 1.0, 1.0});
  for (int i = 6; i < 12; ++i)
    recs.push_back({i + 1, 2 + i, "mod-p", 3, 4.0 * std::log(2 + i), 1.0});
  const ExponentFit fit = fit_exponent(recs);
  CHECK_FALSE(fit.stable);
}

TEST_CASE("csv round trip is bit exact") {
  std::vector<BenchRecord> recs = {
      {1, 4, "mod-p", 3, 88.72283911167299, 0.125},
      {2, 7, "permutation", 0, 0.6931471805599453, 3.5e-2},
      {3, 10, "error", 0, 0.0, 1e-7},
      {4, 13, "mod-p", 11, 1.0000000000000002, 123456.789},
  };
  const std::string csv = emit_csv(recs);
  CHECK(csv.rfind("m,len,kind,p,log_bound,ms\n", 0) == 0);
  const auto back = parse_csv(csv);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) CHECK(back[i] == recs[i]);
}

TEST_CASE("csv parser rejects malformed input") {
  CHECK_THROWS_AS(parse_csv("nonsense\n1,2,3\n"), ParseError);
  CHECK_THROWS_AS(parse_csv("m,len,kind,p,log_bound,ms\n1,2\n"), ParseError);
}
