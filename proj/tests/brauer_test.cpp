#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torcor/brauer.hpp"
#include "torcor/chars.hpp"

using namespace torcor;

namespace {

FieldElem least_nonsquare(const FieldCtx& ctx) {
  for (std::uint32_t r = 1; r < ctx.q(); ++r) {
    const FieldElem a = ctx.from_rank(Level::Ext, r);
    if (!ctx.is_square(a)) return a;
  }
  throw std::logic_error("no non-square");
}

Mat2 random_invertible(std::mt19937& rng, const FieldCtx& ctx) {
  std::uniform_int_distribution<std::uint32_t> pick(0, ctx.q() - 1);
  for (;;) {
    const Mat2 g{ctx.from_rank(Level::Ext, pick(rng)).packed,
                 ctx.from_rank(Level::Ext, pick(rng)).packed,
                 ctx.from_rank(Level::Ext, pick(rng)).packed,
                 ctx.from_rank(Level::Ext, pick(rng)).packed};
    if (ctx.rsub(ctx.rmul(g.a, g.d), ctx.rmul(g.b, g.c)) != 0) return g;
  }
}

}  // namespace

TEST_CASE("weight digits") {
  const FieldCtx ctx(3, 2);
  const WeightDigits w = WeightDigits::of(4, ctx);
  CHECK(w.d == std::vector<int>{1, 1});
  CHECK(w.value(3) == 4);
  CHECK_THROWS_AS(WeightDigits::of(9, ctx), std::invalid_argument);
  CHECK_THROWS_AS(WeightDigits::of(-1, ctx), std::invalid_argument);
}

TEST_CASE("torus pair validation") {
  const FieldCtx f5(5, 1);
  CHECK_THROWS_AS(TorusPair(f5, f5.from_int(4), f5.zero()), std::invalid_argument);
  CHECK_THROWS_AS(TorusPair(f5, f5.zero(), f5.zero()), std::invalid_argument);
  const TorusPair tp(f5, f5.from_int(2), f5.from_int(3));
  CHECK(tp.alpha == f5.from_int(2));
}

TEST_CASE("rep_action identity and homomorphism") {
  std::mt19937 rng(11);
  for (auto [p, m] : {std::pair{5, 1}, {3, 2}}) {
    const FieldCtx ctx(p, m);
    for (long long r : {1LL, 2LL, (((long long)(ctx.q())) - 1) / 2}) {
      const WeightDigits digits = WeightDigits::of(r, ctx);
      const TensorBasis basis(digits);
      const Mat2 id{1, 0, 0, 1};
      const TensorMat I = rep_action(ctx, digits, id);
      for (std::size_t i = 0; i < basis.dim(); ++i)
        for (std::size_t j = 0; j < basis.dim(); ++j)
          CHECK(I[i * basis.dim() + j] == (i == j ? 1u : 0u));
      for (int trial = 0; trial < 6; ++trial) {
        const Mat2 g = random_invertible(rng, ctx), h = random_invertible(rng, ctx);
        const Mat2 gh{ctx.radd(ctx.rmul(g.a, h.a), ctx.rmul(g.b, h.c)),
                      ctx.radd(ctx.rmul(g.a, h.b), ctx.rmul(g.b, h.d)),
                      ctx.radd(ctx.rmul(g.c, h.a), ctx.rmul(g.d, h.c)),
                      ctx.radd(ctx.rmul(g.c, h.b), ctx.rmul(g.d, h.d))};
        const TensorMat lhs = rep_action(ctx, digits, gh);
        const TensorMat rhs =
            mat_mul(ctx, rep_action(ctx, digits, g), rep_action(ctx, digits, h), basis.dim());
        CHECK(lhs == rhs);
      }
    }
  }
  const FieldCtx f5(5, 1);
  CHECK_THROWS_AS(rep_action(f5, WeightDigits::of(1, f5), Mat2{1, 2, 2, 4}),
                  std::domain_error);
}

TEST_CASE("fixed vectors are fixed") {
  for (auto [p, m] : {std::pair{5, 1}, {7, 1}, {3, 2}}) {
    const FieldCtx ctx(p, m);
    const FieldElem alpha = least_nonsquare(ctx);
    for (std::uint32_t ur : {0u, 1u}) {
      const TorusPair tp(ctx, alpha, ctx.from_rank(Level::Ext, ur % ctx.q()));
      for (long long r : {0LL, 1LL, 2LL, (((long long)(ctx.q())) - 1) / 2}) {
        const WeightDigits digits = WeightDigits::of(r, ctx);
        const TensorVec vh = fixed_vector_H(ctx, digits);
        const TensorVec vk = fixed_vector_K(ctx, digits, tp);
        const auto te = torus_elements(tp);
        for (const Mat2& h : te.H)
          CHECK(apply(ctx, rep_action(ctx, digits, h), vh) == vh);
        for (const Mat2& k : te.K)
          CHECK(apply(ctx, rep_action(ctx, digits, k), vk) == vk);
      }
    }
  }
}

TEST_CASE("fixed_vector_K explicit coefficients") {
  // m=1, r=1, u=0: coefficients (alpha, 0, -1) on (x^2, xy, y^2)
  const FieldCtx f5(5, 1);
  const TorusPair tp(f5, f5.from_int(2), f5.zero());
  const TensorVec vk = fixed_vector_K(f5, WeightDigits::of(1, f5), tp);
  REQUIRE(vk.size() == 3);
  CHECK(vk[0] == f5.from_int(2).packed);
  CHECK(vk[1] == 0);
  CHECK(vk[2] == f5.from_int(-1).packed);
  // r = 0 is the constant vector
  CHECK(fixed_vector_K(f5, WeightDigits::of(0, f5), tp) == TensorVec{1});
}

TEST_CASE("averaging operators are idempotent projections") {
  std::mt19937 rng(5);
  for (auto [p, m] : {std::pair{5, 1}, {3, 2}}) {
    const FieldCtx ctx(p, m);
    const FieldElem alpha = least_nonsquare(ctx);
    std::uniform_int_distribution<std::uint32_t> pick(0, ctx.q() - 1);
    for (int trial = 0; trial < 3; ++trial) {
      const TorusPair tp(ctx, alpha, ctx.from_rank(Level::Ext, pick(rng)));
      const long long r = 1 + (long long)(pick(rng)) % ((ctx.q() - 1) / 2);
      const WeightDigits digits = WeightDigits::of(r, ctx);
      const TensorBasis basis(digits);
      const auto ops = averaging_ops(ctx, digits, tp);
      CHECK(mat_mul(ctx, ops.X, ops.X, basis.dim()) == ops.X);
      CHECK(mat_mul(ctx, ops.Y_u, ops.Y_u, basis.dim()) == ops.Y_u);
      // X v_H == v_H and Y_u v_K == v_K (projections onto the fixed lines)
      CHECK(apply(ctx, ops.X, fixed_vector_H(ctx, digits)) == fixed_vector_H(ctx, digits));
      CHECK(apply(ctx, ops.Y_u, fixed_vector_K(ctx, digits, tp)) ==
            fixed_vector_K(ctx, digits, tp));
    }
    // r = 0: both operators are the identity on the one-dimensional space
    const TorusPair tp(ctx, alpha, ctx.zero(Level::Ext));
    const auto ops0 = averaging_ops(ctx, WeightDigits::of(0, ctx), tp);
    CHECK(ops0.X == TensorMat{1});
    CHECK(ops0.Y_u == TensorMat{1});
  }
}

TEST_CASE("scalar examples from the prime field") {
  const FieldCtx f5(5, 1);
  const TorusPair tp(f5, f5.from_int(2), f5.zero());
  // u=0, r=2, alpha=2, p=5: s = -4 = 1 and t = -(-1) C(2,1) 2 = 4
  const WeightDigits d2 = WeightDigits::of(2, f5);
  CHECK(scalar_s(f5, d2, tp) == f5.from_int(1));
  CHECK(scalar_t(f5, d2, tp) == f5.from_int(4));
  // u=0, odd r: both scalars vanish
  const WeightDigits d1 = WeightDigits::of(1, f5);
  CHECK(scalar_s(f5, d1, tp).is_zero());
  CHECK(scalar_t(f5, d1, tp).is_zero());
}

TEST_CASE("closed forms match the averaging scalars") {
  std::mt19937 rng(17);
  for (auto [p, m] : {std::pair{5, 1}, {7, 1}, {11, 1}, {3, 2}}) {
    const FieldCtx ctx(p, m);
    std::uniform_int_distribution<std::uint32_t> pick(0, ctx.q() - 1);
    std::vector<FieldElem> alphas;
    for (std::uint32_t r = 1; r < ctx.q(); ++r) {
      const FieldElem a = ctx.from_rank(Level::Ext, r);
      if (!ctx.is_square(a)) alphas.push_back(a);
    }
    for (int trial = 0; trial < 8; ++trial) {
      const FieldElem alpha = alphas[pick(rng) % alphas.size()];
      const FieldElem u = ctx.from_rank(Level::Ext, pick(rng));
      const TorusPair tp(ctx, alpha, u);
      const long long r = (long long)(pick(rng)) % ((ctx.q() + 1) / 2);
      const WeightDigits digits = WeightDigits::of(r, ctx);
      CHECK(scalar_s(ctx, digits, tp) == closed_form_s(r, tp));
      CHECK(scalar_t(ctx, digits, tp) == closed_form_t(r, tp));
    }
  }
}

TEST_CASE("u = 0 closed forms reduce to the binomial values") {
  // s = (-1)^{r/2} C(r, r/2) alpha^{r/2} and
  // t = -(-1)^{(p-1-r)/2} C(p-1-r, (p-1-r)/2) alpha^{(p-1-r)/2}, even r
  for (int p : {5, 7, 11}) {
    const FieldCtx ctx(p, 1);
    const FieldElem alpha = least_nonsquare(ctx);
    const TorusPair tp(ctx, alpha, ctx.zero(Level::Ext));
    for (int r = 0; r < p; r += 1) {
      const FieldElem s = closed_form_s(r, tp);
      const FieldElem t = closed_form_t(r, tp);
      if (r % 2) {
        CHECK(s.is_zero());
        CHECK(t.is_zero());
        continue;
      }
      auto binom = [](long long n, long long k) {
        BigInt b = 1;
        for (long long i = 1; i <= k; ++i) {
          b *= (n + 1 - i);
          b /= i;
        }
        return b;
      };
      FieldElem want_s =
          ctx.mul(ctx.from_int((long long)(binom(r, r / 2) % p)), ctx.pow(alpha, r / 2));
      if ((r / 2) % 2) want_s = ctx.neg(want_s);
      CHECK(s == want_s);
      const int n = p - 1 - r;
      FieldElem want_t =
          ctx.mul(ctx.from_int((long long)(binom(n, n / 2) % p)), ctx.pow(alpha, n / 2));
      if ((n / 2) % 2) want_t = ctx.neg(want_t);
      want_t = ctx.neg(want_t);
      CHECK(t == want_t);
    }
  }
}

TEST_CASE("theorem congruence rows") {
  const LegendreCache cache(32);
  // p=5, m=1, r=2, alpha=2, u=0: st = 4 and P_2(0)^2 = 1/4 = 4
  const FieldCtx f5(5, 1);
  const TorusPair tp(f5, f5.from_int(2), f5.zero());
  const auto row = theorem1_modp(cache, 2, tp);
  CHECK(row.st == f5.from_int(4));
  CHECK(row.legendre_sq == f5.from_int(4));
  CHECK(row.agree);
  CHECK(row.prefactor_clean);

  // odd r at u = 0: both sides vanish
  const auto row1 = theorem1_modp(cache, 1, tp);
  CHECK(row1.st.is_zero());
  CHECK(row1.legendre_sq.is_zero());
  CHECK(row1.agree);

  // q = 9: exhaustive over r, alpha, u
  const FieldCtx f9(3, 2);
  for (std::uint32_t ar = 1; ar < 9; ++ar) {
    const FieldElem alpha = f9.from_rank(Level::Ext, ar);
    if (f9.is_square(alpha)) continue;
    for (std::uint32_t ur = 0; ur < 9; ++ur) {
      const TorusPair tp9(f9, alpha, f9.from_rank(Level::Ext, ur));
      for (long long r = 0; r <= 4; ++r) {
        const auto row9 = theorem1_modp(cache, r, tp9);
        CHECK(row9.agree);
        CHECK(row9.prefactor_clean);
      }
    }
  }
  CHECK_THROWS_AS(theorem1_modp(cache, 5, TorusPair(f9, f9.from_rank(Level::Ext, 4),
                                                    f9.zero(Level::Ext))),
                  std::invalid_argument);
}

TEST_CASE("square is invariant under the other root") {
  // replacing sqrt(alpha) by -sqrt(alpha) leaves P_r(u/sqrt(alpha))^2 alone
  const LegendreCache cache(12);
  for (auto [p, m] : {std::pair{5, 1}, {3, 2}}) {
    const FieldCtx ctx(p, m);
    const FieldElem alpha = least_nonsquare(ctx);
    const FieldElem s1 = ctx.sqrt_in_ext(alpha);
    const FieldElem s2 = ctx.neg(s1);
    for (std::uint32_t ur = 0; ur < ctx.q(); ++ur) {
      const FieldElem u = ctx.promote(ctx.from_rank(Level::Ext, ur), Level::Quad);
      for (int r = 0; r <= int((ctx.q() - 1) / 2); ++r) {
        const FqPoly pr = legendre_mod_p(cache, r, ctx);
        const FieldElem v1 = pr.eval(ctx.div(u, s1));
        const FieldElem v2 = pr.eval(ctx.div(u, s2));
        CHECK(ctx.mul(v1, v1) == ctx.mul(v2, v2));
      }
    }
  }
}

TEST_CASE("engine agrees with the standalone scalars") {
  for (auto [p, m] : {std::pair{5, 1}, {3, 2}}) {
    const FieldCtx ctx(p, m);
    for (long long r = 0; r <= ((long long)(ctx.q()) - 1) / 2; ++r) {
      BrauerEngine engine(ctx, WeightDigits::of(r, ctx));
      for (std::uint32_t ar = 1; ar < ctx.q(); ++ar) {
        const FieldElem alpha = ctx.from_rank(Level::Ext, ar);
        if (ctx.is_square(alpha)) continue;
        engine.set_alpha(alpha);
        for (std::uint32_t ur = 0; ur < ctx.q(); ur += 2) {
          const FieldElem u = ctx.from_rank(Level::Ext, ur);
          const TorusPair tp(ctx, alpha, u);
          const auto st = engine.scalars(u);
          CHECK(st.s == scalar_s(ctx, WeightDigits::of(r, ctx), tp));
          CHECK(st.t == scalar_t(ctx, WeightDigits::of(r, ctx), tp));
        }
      }
    }
  }
}

TEST_CASE("distinguished component digits") {
  // m=1, 2r < p: J = {0} and the weight is Sym^{2r} (x) det^{-r}
  const FieldCtx f7(7, 1);
  const auto jc = jh_component(f7, 2, JhKind::Principal);
  CHECK(jc.J == std::vector<int>{0});
  CHECK(jc.weights[0].sym_power == 4);
  CHECK(jc.weights[0].det_power == -2);

  const auto jcc = jh_component(f7, 2, JhKind::Cuspidal);  // 2r+1 = 5 <= p-1
  CHECK(jcc.J == std::vector<int>{0});

  // p=3, m=2, r=2: digits (2,0), 2r = 4 has digits (1,1); a_0 = 1 is not in
  // {4,5} but a_1 = 1 equals 2 r_1 + 1 = 1, so J = {1}
  const FieldCtx f9(3, 2);
  const auto jc9 = jh_component(f9, 2, JhKind::Principal);
  CHECK(jc9.J == std::vector<int>{1});
  CHECK(jc9.weights[0].sym_power == 2 * 3 - 2 - 4);  // 0
  CHECK(jc9.weights[0].det_power == 2);
  CHECK(jc9.weights[1].sym_power == 0);
  CHECK(jc9.weights[1].det_power == 0);

  CHECK_THROWS_AS(jh_component(f7, 0, JhKind::Principal), std::invalid_argument);
  CHECK_THROWS_AS(jh_component(f7, 3, JhKind::Cuspidal), std::invalid_argument);
}

TEST_CASE("fixed space dimensions") {
  for (auto [p, m] : {std::pair{5, 1}, {3, 2}}) {
    const FieldCtx ctx(p, m);
    const FieldElem alpha = least_nonsquare(ctx);
    const TorusPair tp(ctx, alpha, ctx.one(Level::Ext));
    for (long long r = 0; r <= ((long long)(ctx.q()) - 1) / 2; ++r) {
      const auto [dh, dk] = fixed_space_dims(ctx, WeightDigits::of(r, ctx), tp);
      CHECK(dh == 1);
      CHECK(dk == 1);
    }
  }
}
