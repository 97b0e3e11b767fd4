#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torcor/polyx.hpp"

using namespace torcor;

namespace {

DyadicPoly random_dyadic(std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> k(0, 3);
  std::vector<Dyadic> c(std::size_t(deg(rng)) + 1);
  for (auto& d : c) d = Dyadic(BigInt(num(rng)), -k(rng));
  return DyadicPoly(std::move(c));
}

FqPoly random_fq(std::mt19937& rng, const FieldCtx& ctx, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> cf(0, ctx.p() - 1);
  std::vector<std::uint32_t> c(std::size_t(deg(rng)) + 1);
  for (auto& d : c) d = std::uint32_t(cf(rng));
  return FqPoly(ctx, Level::Prime, std::move(c));
}

}  // namespace

TEST_CASE("dyadic normal form") {
  CHECK(Dyadic(6).odd_part() == 3);
  CHECK(Dyadic(6).exp2() == 1);
  CHECK(Dyadic(6).to_string() == "6");
  CHECK(Dyadic(BigInt(-1), -1).to_string() == "-1/2");
  CHECK(Dyadic(BigInt(12), -3).to_string() == "3/2");
  CHECK((Dyadic(1) + Dyadic(BigInt(1), -1)).to_string() == "3/2");
  CHECK((Dyadic(BigInt(1), -1) * Dyadic(BigInt(1), -1)).to_string() == "1/4");
  CHECK(Dyadic(9).div_exact(3) == Dyadic(3));
  CHECK(Dyadic(BigInt(3), -1).div_exact(6) == Dyadic(BigInt(1), -2));
  CHECK_THROWS_AS(Dyadic(5).div_exact(3), std::domain_error);
  CHECK(Dyadic(0).is_zero());
  CHECK((Dyadic(5) - Dyadic(5)).is_zero());
}

TEST_CASE("poly arithmetic examples") {
  const DyadicPoly x = DyadicPoly::x();
  const DyadicPoly xp1 = x + DyadicPoly::constant(Dyadic(1));
  // (x+1)^2 = x^2 + 2x + 1
  CHECK(xp1 * xp1 == DyadicPoly(std::vector<Dyadic>{Dyadic(1), Dyadic(2), Dyadic(1)}));
  // compose(x^2, x+1) = x^2 + 2x + 1
  CHECK((x * x).compose(xp1) == xp1 * xp1);
  CHECK(x.pow(0) == DyadicPoly::constant(Dyadic(1)));
}

TEST_CASE("evaluate") {
  const FieldCtx f5(5, 1);
  const DyadicPoly p1 = DyadicPoly::x();
  CHECK(p1.eval(Dyadic(3)) == Dyadic(3));
  const DyadicPoly c = DyadicPoly::constant(Dyadic(BigInt(7), -1));
  CHECK(c.eval(Dyadic(123)) == Dyadic(BigInt(7), -1));
  // (3x^2 - 1)/2 at x = 0 in F_5 is -1/2 = 2
  const DyadicPoly p2(std::vector<Dyadic>{Dyadic(BigInt(-1), -1), Dyadic(0), Dyadic(BigInt(3), -1)});
  CHECK(p2.eval_mod(f5, f5.zero()) == f5.from_int(2));
}

TEST_CASE("reduce_mod_p examples") {
  const FieldCtx f3(3, 1);
  const DyadicPoly p2(std::vector<Dyadic>{Dyadic(BigInt(-1), -1), Dyadic(0), Dyadic(BigInt(3), -1)});
  CHECK(reduce_mod_p(p2, f3) == FqPoly::from_ints(f3, {1}));
  const FieldCtx f5(5, 1);
  CHECK(reduce_mod_p(DyadicPoly::x(), f5) == FqPoly::from_ints(f5, {0, 1}));
  CHECK(reduce_mod_p(DyadicPoly(std::vector<Dyadic>{Dyadic(7), Dyadic(12)}), f5) ==
        FqPoly::from_ints(f5, {2, 2}));
}

TEST_CASE("reduce_mod_p is a ring morphism") {
  std::mt19937 rng(42);
  const FieldCtx f7(7, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const DyadicPoly f = random_dyadic(rng, 6), g = random_dyadic(rng, 6);
    CHECK(reduce_mod_p(f * g, f7) == reduce_mod_p(f, f7) * reduce_mod_p(g, f7));
    CHECK(reduce_mod_p(f + g, f7) == reduce_mod_p(f, f7) + reduce_mod_p(g, f7));
  }
}

TEST_CASE("division and gcd round trip") {
  std::mt19937 rng(7);
  const FieldCtx f5(5, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const FqPoly f = random_fq(rng, f5, 8);
    const FqPoly g = random_fq(rng, f5, 4);
    if (g.is_zero()) continue;
    const auto [q, r] = f.divmod(g);
    CHECK(q * g + r == f);
    CHECK(r.degree() < g.degree());
    if (!f.is_zero()) {
      const FqPoly d = FqPoly::gcd(f, g);
      CHECK(f.divmod(d).second.is_zero());
      CHECK(g.divmod(d).second.is_zero());
    }
  }
}

TEST_CASE("roots_in_field") {
  const FieldCtx f5(5, 1);
  const FqPoly f = FqPoly::from_ints(f5, {-1, 0, 1});  // x^2 - 1
  const auto roots = roots_in_field(f, Level::Ext);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].first == f5.from_int(1));
  CHECK(roots[1].first == f5.from_int(4));
  CHECK(roots[0].second == 1);

  CHECK(roots_in_field(FqPoly::from_ints(f5, {-2, 0, 1}), Level::Ext).empty());
  CHECK(roots_in_field(FqPoly::from_ints(f5, {-2, 0, 1}), Level::Quad).size() == 2);

  // x^q - x has every element of F_q as a simple root
  std::vector<std::uint32_t> xq(6, 0);
  xq[1] = f5.from_int(-1).packed;
  xq[5] = 1;
  const auto all = roots_in_field(FqPoly(f5, Level::Prime, xq), Level::Ext);
  CHECK(all.size() == 5);

  // multiplicities via repeated division
  const FqPoly sq = f * f;
  const auto dbl = roots_in_field(sq, Level::Ext);
  REQUIRE(dbl.size() == 2);
  CHECK(dbl[0].second == 2);

  CHECK_THROWS_AS(roots_in_field(FqPoly(f5, Level::Prime), Level::Ext), std::domain_error);

  // roots(f) subset roots(f*g)
  const FqPoly g = FqPoly::from_ints(f5, {1, 1});
  const auto fg = roots_in_field(f * g, Level::Ext);
  for (const auto& [root, mult] : roots) {
    bool found = false;
    for (const auto& [r2, m2] : fg)
      if (r2 == root) found = true;
    CHECK(found);
  }
}

TEST_CASE("factor_shape") {
  const FieldCtx f5(5, 1);
  CHECK(factor_shape(FqPoly::from_ints(f5, {-1, 0, 1})) == std::vector<int>{1, 1});
  CHECK(factor_shape(FqPoly::from_ints(f5, {-2, 0, 1})) == std::vector<int>{2});
  const FqPoly prod = FqPoly::from_ints(f5, {-2, 0, 1}) * FqPoly::from_ints(f5, {-1, 1});
  CHECK(factor_shape(prod) == std::vector<int>{1, 2});
  CHECK_THROWS_AS(factor_shape(FqPoly(f5, Level::Prime)), std::domain_error);

  // repeated factors, p-th powers included
  const FqPoly lin = FqPoly::from_ints(f5, {-1, 1});
  CHECK(factor_shape(lin.pow(5)) == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(factor_shape(lin.pow(2) * FqPoly::from_ints(f5, {-2, 0, 1})) ==
        std::vector<int>{1, 1, 2});
}

TEST_CASE("factor_shape on random polynomials reconstructs degree") {
  std::mt19937 rng(2024);
  for (int p : {3, 5, 7}) {
    const FieldCtx ctx(p, 1);
    for (int trial = 0; trial < 40; ++trial) {
      FqPoly f = random_fq(rng, ctx, 9);
      if (f.is_zero() || f.degree() == 0) continue;
      const auto shape = factor_shape(f);
      int total = 0;
      for (int d : shape) total += d;
      CHECK(total == f.degree());
    }
  }
}

TEST_CASE("factor_shape materializes small factors consistently") {
  // degree <= 2 factors can be rebuilt: roots give linears, quadratic
  // leftovers are scanned by trial division
  const FieldCtx f7(7, 1);
  const FqPoly f = FqPoly::from_ints(f7, {-1, 1}).pow(2) *
                   FqPoly::from_ints(f7, {4, 0, 1}) * FqPoly::from_ints(f7, {5, 1});
  const auto shape = factor_shape(f);
  CHECK(shape == std::vector<int>{1, 1, 1, 2});
  FqPoly rebuilt = FqPoly::constant(f7, f7.one());
  for (const auto& [root, mult] : roots_in_field(f, Level::Ext)) {
    FqPoly lin(f7, Level::Prime, {f7.rneg(root.packed), 1});
    for (int i = 0; i < mult; ++i) rebuilt = rebuilt * lin;
  }
  // remaining quadratic factor by exhaustive monic scan
  FqPoly rest = f.monic().divmod(rebuilt.monic()).first;
  for (std::uint32_t c0 = 0; c0 < 7 && rest.degree() >= 2; ++c0)
    for (std::uint32_t c1 = 0; c1 < 7; ++c1) {
      const FqPoly cand = FqPoly::from_ints(f7, {c0, c1, 1});
      if (!roots_in_field(cand, Level::Ext).empty()) continue;
      while (rest.degree() >= 2 && rest.divmod(cand).second.is_zero()) {
        rebuilt = rebuilt * cand;
        rest = rest.divmod(cand).first;
      }
    }
  CHECK(rebuilt.monic() == f.monic());
}

TEST_CASE("quad_nonresidue_factor_scan") {
  const FieldCtx f5(5, 1);
  const auto hits = quad_nonresidue_factor_scan(FqPoly::from_ints(f5, {-2, 0, 1}));
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == f5.from_int(2));
  CHECK(quad_nonresidue_factor_scan(FqPoly::from_ints(f5, {-4, 0, 1})).empty());
  CHECK(quad_nonresidue_factor_scan(FqPoly::from_ints(f5, {1})).empty());

  // agreement with literal polynomial division
  for (int p : {3, 5, 7}) {
    const FieldCtx ctx(p, 1);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
      const FqPoly f = random_fq(rng, ctx, 8);
      if (f.is_zero()) continue;
      const auto scan = quad_nonresidue_factor_scan(f);
      for (std::uint32_t r = 1; r < ctx.q(); ++r) {
        const FieldElem c = ctx.from_rank(Level::Ext, r);
        if (ctx.is_square(c)) continue;
        const FqPoly quad(ctx, Level::Ext, {ctx.rneg(c.packed), 0, 1});
        const bool divides = f.divmod(quad).second.is_zero();
        const bool scanned = std::find(scan.begin(), scan.end(), c) != scan.end();
        CHECK(divides == scanned);
      }
    }
  }
}

TEST_CASE("poly serialization") {
  const DyadicPoly p2(std::vector<Dyadic>{Dyadic(BigInt(-1), -1), Dyadic(0), Dyadic(BigInt(3), -1)});
  const auto strs = p2.coeff_strings();
  REQUIRE(strs.size() == 3);
  CHECK(strs[0] == "-1/2");
  CHECK(strs[1] == "0");
  CHECK(strs[2] == "3/2");
  const FieldCtx f5(5, 1);
  CHECK(FqPoly::from_ints(f5, {2, 0, 3}).coeff_strings() ==
        std::vector<std::string>{"2", "0", "3"});
}
