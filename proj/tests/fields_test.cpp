#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "torcor/fields.hpp"

using namespace torcor;

TEST_CASE("build_field rejects bad input") {
  CHECK_THROWS_AS(FieldCtx(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(15, 1), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(5, 9), std::invalid_argument);  // 5^18 over the cap
}

TEST_CASE("deterministic moduli") {
  const FieldCtx f5(5, 1);
  CHECK(f5.modulus_q() == std::vector<int>{0, 1});       // x
  CHECK(f5.modulus_q2() == std::vector<int>{2, 0, 1});   // x^2 + 2
  CHECK(f5.q() == 5);
  CHECK(f5.q2() == 25);

  const FieldCtx f3(3, 1);
  CHECK(f3.modulus_q2() == std::vector<int>{1, 0, 1});   // x^2 + 1
  // generator of F_9^x has order 8
  const FieldElem g = f3.generator();
  FieldElem acc = g;
  int order = 1;
  while (!(acc == f3.one(Level::Quad))) {
    acc = f3.mul(acc, g);
    ++order;
  }
  CHECK(order == 8);

  // same (p, m) gives bit-identical contexts
  const FieldCtx f5b(5, 1);
  CHECK(f5.modulus_q2() == f5b.modulus_q2());
  CHECK(f5.generator().packed == f5b.generator().packed);
}

TEST_CASE("embedding is the fixed field of Frob^m") {
  const FieldCtx ctx(3, 2);
  std::set<std::uint32_t> image;
  for (std::uint32_t r = 0; r < ctx.q(); ++r)
    image.insert(ctx.from_rank(Level::Ext, r).packed);
  CHECK(image.size() == ctx.q());
  std::set<std::uint32_t> fixed;
  for (std::uint32_t v = 0; v < ctx.q2(); ++v)
    if (ctx.rfrob(v, ctx.m()) == v) fixed.insert(v);
  CHECK(image == fixed);
}

TEST_CASE("basic arithmetic") {
  const FieldCtx f5(5, 1);
  CHECK(f5.add(f5.from_int(2), f5.from_int(4)) == f5.from_int(1));
  CHECK(f5.inv(f5.from_int(2)) == f5.from_int(3));
  CHECK(f5.mul(f5.from_int(2), f5.from_int(3)) == f5.one());
  CHECK_THROWS_AS(f5.inv(f5.zero()), std::domain_error);
  CHECK_THROWS_AS(f5.div(f5.one(), f5.zero()), std::domain_error);

  // g^{q^2-1} = 1
  const FieldElem g = f5.generator();
  CHECK(f5.pow(g, 24) == f5.one(Level::Quad));
  CHECK(f5.pow(g, 0) == f5.one(Level::Quad));

  const FieldCtx f3(3, 1);
  CHECK_THROWS_AS(f5.add(f5.one(), f3.one()), std::invalid_argument);
}

TEST_CASE("frobenius") {
  const FieldCtx ctx(3, 2);
  // identity on F_p, multiplicative, order 2m on F_{q^2}
  for (std::uint32_t v = 0; v < 3; ++v) CHECK(ctx.rfrob(v, 1) == v);
  for (std::uint32_t x = 0; x < ctx.q2(); ++x) {
    CHECK(ctx.rfrob(x, 0) == x);
    CHECK(ctx.rfrob(x, 2 * ctx.m()) == x);
    for (std::uint32_t y = 0; y < ctx.q2(); ++y)
      if ((x * y) % 7 == 0)  // sparse sample of the multiplicativity grid
        CHECK(ctx.rfrob(ctx.rmul(x, y), 1) == ctx.rmul(ctx.rfrob(x, 1), ctx.rfrob(y, 1)));
  }
  // Frob fixes exactly F_p (i = 1)
  int fixed = 0;
  for (std::uint32_t x = 0; x < ctx.q2(); ++x)
    if (ctx.rfrob(x, 1) == x) ++fixed;
  CHECK(fixed == 3);
}

TEST_CASE("squares and square roots") {
  const FieldCtx f5(5, 1);
  CHECK(f5.is_square(f5.from_int(4)));
  CHECK(!f5.is_square(f5.from_int(2)));
  CHECK(f5.is_square(f5.one()));
  CHECK_THROWS_AS(f5.is_square(f5.zero()), std::domain_error);

  // sqrt(4) = 2, the least of {2, 3}
  CHECK(f5.sqrt_in_ext(f5.from_int(4)) == f5.promote(f5.from_int(2), Level::Quad));
  CHECK(f5.sqrt_in_ext(f5.one()) == f5.one(Level::Quad));

  for (int p : {3, 5, 7, 13}) {
    const FieldCtx ctx(p, 1);
    int nonsquares = 0;
    for (std::uint32_t r = 1; r < ctx.q(); ++r) {
      const FieldElem x = ctx.from_rank(Level::Ext, r);
      const FieldElem s = ctx.sqrt_in_ext(x);
      CHECK(ctx.mul(s, s) == ctx.promote(x, Level::Quad));
      if (!ctx.is_square(x)) {
        ++nonsquares;
        CHECK(!ctx.in_level(s, Level::Ext));  // root lives outside F_q
      } else {
        CHECK(ctx.in_level(s, Level::Ext));
      }
    }
    CHECK(nonsquares == (p - 1) / 2);
  }
}

TEST_CASE("square criterion matches F_q discrete log parity") {
  for (auto [p, m] : {std::pair{5, 1}, {3, 2}, {7, 1}}) {
    const FieldCtx ctx(p, m);
    // generator of F_q^x inside F_{q^2}: g^{q+1}
    const std::uint32_t gq = ctx.rpow(ctx.generator().packed, ctx.q() + 1);
    for (std::uint32_t r = 1; r < ctx.q(); ++r) {
      const FieldElem x = ctx.from_rank(Level::Ext, r);
      // dlog of x base gq
      std::uint64_t j = 0;
      std::uint32_t acc = 1;
      while (acc != x.packed) {
        acc = ctx.rmul(acc, gq);
        ++j;
      }
      CHECK(ctx.is_square(x) == (j % 2 == 0));
      // exhaustive-square cross-check
      bool has_root = false;
      for (std::uint32_t s = 1; s < ctx.q() && !has_root; ++s) {
        const FieldElem y = ctx.from_rank(Level::Ext, s);
        if (ctx.mul(y, y) == ctx.promote(x, Level::Ext)) has_root = true;
      }
      CHECK(ctx.is_square(x) == has_root);
    }
  }
}

TEST_CASE("discrete log round trip") {
  const FieldCtx ctx(5, 1);
  const FieldElem g = ctx.generator();
  CHECK(ctx.discrete_log(ctx.one(Level::Quad)) == 0);
  CHECK(ctx.discrete_log(g) == 1);
  CHECK(ctx.discrete_log(ctx.pow(g, 5)) == 5);
  CHECK_THROWS_AS(ctx.discrete_log(ctx.zero()), std::domain_error);
  for (std::uint32_t v = 1; v < ctx.q2(); ++v) {
    const FieldElem x{&ctx, Level::Quad, v};
    CHECK(ctx.pow(g, (long long)(ctx.discrete_log(x))) == x);
  }
}

TEST_CASE("rank order and serialization") {
  const FieldCtx ctx(3, 2);
  for (std::uint32_t r = 0; r < ctx.q(); ++r) {
    const FieldElem x = ctx.from_rank(Level::Ext, r);
    CHECK(x.rank() == r);
    CHECK(ctx.from_coeffs(Level::Ext, x.coeffs()) == x);
  }
  CHECK(ctx.from_int(-1) == ctx.from_int(2));
  const std::string json = ctx.to_json();
  CHECK(json.find("\"p\":3") != std::string::npos);
  CHECK(json.find("\"m\":2") != std::string::npos);
  CHECK(json.find("modulus_q2") != std::string::npos);
}

TEST_CASE("level demotion") {
  const FieldCtx ctx(3, 2);
  const FieldElem g = ctx.generator();
  CHECK(!ctx.in_level(g, Level::Ext));  // a generator of F_81 is not in F_9
  CHECK_THROWS_AS(ctx.demote(g, Level::Ext), std::domain_error);
  const FieldElem y = ctx.pow(g, 10);  // order 8 element lies in F_9
  CHECK(ctx.in_level(y, Level::Ext));
  CHECK(ctx.demote(y, Level::Ext).level == Level::Ext);
}
