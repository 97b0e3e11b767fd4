#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torcor/legendre.hpp"

using namespace torcor;

namespace {

DyadicPoly dyadic_poly(std::vector<std::pair<long long, int>> terms) {
  // terms are (numerator, exp2) low degree first
  std::vector<Dyadic> c;
  c.reserve(terms.size());
  for (auto [n, e] : terms) c.emplace_back(BigInt(n), e);
  return DyadicPoly(std::move(c));
}

}  // namespace

TEST_CASE("recursion base cases and small values") {
  const LegendreCache cache(8);
  CHECK(cache.poly(0) == DyadicPoly::constant(Dyadic(1)));
  CHECK(cache.poly(1) == DyadicPoly::x());
  // P_2 = (3x^2 - 1)/2, P_3 = (5x^3 - 3x)/2
  CHECK(cache.poly(2) == dyadic_poly({{-1, -1}, {0, 0}, {3, -1}}));
  CHECK(cache.poly(3) == dyadic_poly({{0, 0}, {-3, -1}, {0, 0}, {5, -1}}));
  // P_4 = (35x^4 - 30x^2 + 3)/8
  CHECK(cache.poly(4) == dyadic_poly({{3, -3}, {0, 0}, {-30, -3}, {0, 0}, {35, -3}}));
  CHECK(cache.poly(2).degree() == 2);
  CHECK_THROWS_AS(cache.poly(9), std::out_of_range);
}

TEST_CASE("explicit forms agree with the recursion up to 64") {
  const LegendreCache cache(64);
  // spot checks from expanding the forms by hand
  CHECK(legendre_explicit(2, 1) == dyadic_poly({{-1, -1}, {0, 0}, {3, -1}}));
  CHECK(legendre_explicit(1, 2) == DyadicPoly::x());
  for (int r = 0; r <= 64; ++r) {
    CHECK(cache.poly(r) == legendre_explicit(r, 1));
    CHECK(cache.poly(r) == legendre_explicit(r, 2));
  }
}

TEST_CASE("parity, normalization and differential equation") {
  const LegendreCache cache(64);
  const DyadicPoly x2m1 = dyadic_poly({{-1, 0}, {0, 0}, {1, 0}});
  const DyadicPoly two_x = dyadic_poly({{0, 0}, {2, 0}});
  for (int r = 0; r <= 64; ++r) {
    const DyadicPoly& pr = cache.poly(r);
    CHECK(pr.eval(Dyadic(1)) == Dyadic(1));
    for (int k = (r + 1) % 2; k <= r; k += 2) CHECK(pr.coeff(k).is_zero());
    const DyadicPoly ode =
        x2m1 * pr.derivative().derivative() + two_x * pr.derivative() -
        pr.scaled(Dyadic((long long)(r) * (r + 1)));
    CHECK(ode.is_zero());
  }
}

TEST_CASE("mod p reductions") {
  const LegendreCache cache(16);
  const FieldCtx f3(3, 1);
  CHECK(legendre_mod_p(cache, 2, f3) == FqPoly::from_ints(f3, {1}));
  CHECK(legendre_mod_p(cache, 4, f3) == FqPoly::from_ints(f3, {0, 0, 0, 0, 1}));
  const FieldCtx f7(7, 1);
  CHECK(legendre_mod_p(cache, 1, f7) == FqPoly::from_ints(f7, {0, 1}));
}

TEST_CASE("Ille-Schur congruence") {
  const FieldCtx f3(3, 1);
  {
    const LegendreCache cache(8);
    const auto chk = ille_schur_check(cache, 4, f3);
    CHECK(chk.pass);
    CHECK(chk.lhs == FqPoly::from_ints(f3, {0, 0, 0, 0, 1}));  // x^4
    CHECK(ille_schur_check(cache, 2, f3).pass);                // r < p identity case
  }
  for (int p : {3, 5, 7}) {
    const FieldCtx ctx(p, 1);
    const LegendreCache cache(p * p);
    for (long long r = 0; r < p * p; ++r) CHECK(ille_schur_check(cache, r, ctx).pass);
  }
}

TEST_CASE("symmetry congruence") {
  {
    const FieldCtx f3(3, 1);
    const LegendreCache cache(4);
    CHECK(symmetry_check(cache, 0, f3).pass);  // P_2 == P_0 mod 3
    CHECK(symmetry_check(cache, 1, f3).pass);  // self-symmetric midpoint
  }
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    const FieldCtx ctx(p, 1);
    const LegendreCache cache(p);
    for (int r = 0; r < p; ++r) CHECK(symmetry_check(cache, r, ctx).pass);
  }
}

TEST_CASE("moments") {
  const FieldCtx f3(3, 1);
  const LegendreCache cache(2);
  CHECK(moment_G(cache, 1, f3) == FqPoly::from_ints(f3, {2, 1}));     // x + 2
  CHECK(moment_G(cache, 2, f3) == FqPoly::from_ints(f3, {2, 0, 1}));  // x^2 - 1
}

TEST_CASE("moment identities for p up to 97") {
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                73, 79, 83, 89, 97}) {
    const FieldCtx ctx(p, 1);
    const LegendreCache cache(p - 1);
    const auto [one, two] = lemma61_check(cache, ctx);
    CHECK(one.pass);
    CHECK(two.pass);
  }
}

TEST_CASE("pointwise functional congruence") {
  {
    // hand-expanded instance r=1, p=3 (non-residue set {2})
    const FieldCtx f3(3, 1);
    const LegendreCache cache(2);
    CHECK(verify_vd(cache, 0, f3));
    CHECK(verify_vd(cache, 1, f3));
  }
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    const FieldCtx ctx(p, 1);
    const LegendreCache cache(p - 1);
    for (int r = 0; r < p; ++r) CHECK(verify_vd(cache, r, ctx));
  }
}

TEST_CASE("Q polynomials") {
  CHECK(q_poly(0) == DyadicPoly::constant(Dyadic(1)));
  CHECK(q_poly(1) == dyadic_poly({{1, -1}, {1, -1}}));  // (1+x)/2
  const LegendreCache cache(20);
  for (int i = 0; i <= 20; ++i) CHECK(kelley_check(cache, i));
}

TEST_CASE("functional equation, radical-free form") {
  const LegendreCache cache(20);
  // r = 1: a_1 Q_1(2x^2-1) = x^2 = P_1^2
  CHECK(verify_fe(cache, 1));
  CHECK(verify_fe(cache, 0));
  for (int r = 0; r <= 20; ++r) CHECK(verify_fe(cache, r));
}

TEST_CASE("orthogonality integrals") {
  const LegendreCache cache(20);
  CHECK(orthogonality_integral(cache, 0, 1) == Rational(0));
  CHECK(orthogonality_integral(cache, 1, 1) == Rational(2, 3));
  CHECK(orthogonality_integral(cache, 2, 2) == Rational(2, 5));
  for (int r = 0; r <= 20; ++r)
    for (int s = 0; s <= 20; ++s)
      CHECK(orthogonality_integral(cache, r, s) ==
            (r == s ? Rational(2, 2 * r + 1) : Rational(0)));
}

TEST_CASE("mod-p functoriality across paths") {
  for (int p : {3, 5, 7, 11, 13}) {
    const FieldCtx ctx(p, 1);
    const LegendreCache cache(p * p);
    for (long long r = 0; r < p * p; ++r) {
      CHECK(legendre_mod_p(cache, int(r), ctx) == legendre_mod_p_digits(cache, r, ctx));
    }
  }
}

TEST_CASE("parity holds mod p too") {
  const FieldCtx f5(5, 1);
  const LegendreCache cache(12);
  for (int r = 0; r <= 12; ++r) {
    const FqPoly pr = legendre_mod_p(cache, r, f5);
    // P_r(-x) == (-1)^r P_r(x)
    const FqPoly neg = pr.compose(FqPoly::from_ints(f5, {0, -1}));
    const FqPoly want = r % 2 ? pr.scaled(f5.from_int(-1)) : pr;
    CHECK(neg == want);
  }
}
