#include "torcor/legendre.hpp"

#include <stdexcept>

namespace torcor {
namespace {

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n + 1 - i);
    r /= i;
  }
  return r;
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<int> base_p_digits(long long r, int p) {
  std::vector<int> d;
  if (r == 0) d.push_back(0);
  while (r > 0) {
    d.push_back(int(r % p));
    r /= p;
  }
  return d;
}

}  // namespace

LegendreCache::LegendreCache(int max_r) {
  if (max_r < 0) throw std::invalid_argument("max_r must be >= 0");
  polys_.reserve(std::size_t(max_r) + 1);
  polys_.push_back(DyadicPoly::constant(Dyadic(1)));
  if (max_r >= 1) polys_.push_back(DyadicPoly::x());
  const DyadicPoly x = DyadicPoly::x();
  for (int r = 1; r < max_r; ++r) {
    DyadicPoly next = x * polys_[std::size_t(r)].scaled(Dyadic(2 * r + 1)) -
                      polys_[std::size_t(r - 1)].scaled(Dyadic(r));
    polys_.push_back(next.div_exact(BigInt(r + 1)));
  }
}

const DyadicPoly& LegendreCache::poly(int r) const {
  if (r < 0 || r > max_r()) throw std::out_of_range("Legendre index beyond cache bound");
  return polys_[std::size_t(r)];
}

DyadicPoly legendre_explicit(int r, int form) {
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (form != 1 && form != 2) throw std::invalid_argument("form must be 1 or 2");
  DyadicPoly sum;
  const DyadicPoly x = DyadicPoly::x();
  for (int i = r % 2; i <= r; i += 2) {
    const int h = (r - i) / 2;
    if (form == 1) {
      BigInt c = binomial(r, h) * binomial(r + i, i);
      if (h % 2) c = -c;
      std::vector<Dyadic> mono(std::size_t(i) + 1);
      mono[std::size_t(i)] = Dyadic(c);
      sum = sum + DyadicPoly(std::move(mono));
    } else {
      BigInt c = binomial(r, i) * binomial(r - i, h);
      if (h % 2) c = -c;
      DyadicPoly one_minus_x2(std::vector<Dyadic>{Dyadic(1), Dyadic(0), Dyadic(-1)});
      DyadicPoly term = one_minus_x2.pow(unsigned(h)) * x.scaled(Dyadic(2)).pow(unsigned(i));
      sum = sum + term.scaled(Dyadic(c));
    }
  }
  return sum.scaled(Dyadic(BigInt(1), -r));
}

FqPoly legendre_mod_p(const LegendreCache& cache, int r, const FieldCtx& ctx) {
  return reduce_mod_p(cache.poly(r), ctx);
}

FqPoly legendre_mod_p_digits(const LegendreCache& cache, long long r, const FieldCtx& ctx) {
  const auto digits = base_p_digits(r, ctx.p());
  FqPoly prod = FqPoly::constant(ctx, ctx.one());
  unsigned pk = 1;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    prod = prod * legendre_mod_p(cache, digits[i], ctx).pow(pk);
    pk *= unsigned(ctx.p());
  }
  return prod;
}

PolyPairCheck ille_schur_check(const LegendreCache& cache, long long r, const FieldCtx& ctx) {
  PolyPairCheck out;
  out.lhs = legendre_mod_p(cache, int(r), ctx);
  out.rhs = legendre_mod_p_digits(cache, r, ctx);
  out.pass = out.lhs == out.rhs;
  return out;
}

PolyPairCheck symmetry_check(const LegendreCache& cache, int r, const FieldCtx& ctx) {
  const int p = ctx.p();
  if (r < 0 || r > p - 1) throw std::invalid_argument("symmetry_check needs 0 <= r <= p-1");
  PolyPairCheck out;
  out.lhs = legendre_mod_p(cache, p - 1 - r, ctx);
  out.rhs = legendre_mod_p(cache, r, ctx);
  out.pass = out.lhs == out.rhs;
  return out;
}

FqPoly moment_G(const LegendreCache& cache, int i, const FieldCtx& ctx) {
  if (i < 1) throw std::invalid_argument("moment index must be >= 1");
  FqPoly sum(ctx, Level::Prime);
  for (int r = 0; r < ctx.p(); ++r)
    sum = sum + legendre_mod_p(cache, r, ctx).pow(unsigned(i));
  return sum;
}

std::pair<PolyPairCheck, PolyPairCheck> lemma61_check(const LegendreCache& cache,
                                                      const FieldCtx& ctx) {
  const int p = ctx.p();
  const unsigned half = unsigned((p - 1) / 2);
  PolyPairCheck first, second;

  first.lhs = moment_G(cache, 1, ctx);
  const FieldElem sym = ctx.pow(ctx.from_int(-2), (p - 1) / 2);  // (-2|p)
  FqPoly x_minus_1 = FqPoly::from_ints(ctx, {-1, 1});
  first.rhs = x_minus_1.pow(half).scaled(sym);
  first.pass = first.lhs == first.rhs;

  second.lhs = moment_G(cache, 2, ctx);
  FqPoly x2_minus_1 = FqPoly::from_ints(ctx, {-1, 0, 1});
  second.rhs = x2_minus_1.pow(half);
  second.pass = second.lhs == second.rhs;
  return {first, second};
}

bool verify_vd(const LegendreCache& cache, int r, const FieldCtx& ctx) {
  const int p = ctx.p();
  if (r < 0 || r > p - 1) throw std::invalid_argument("verify_vd needs 0 <= r <= p-1");
  const FqPoly pr = legendre_mod_p(cache, r, ctx);
  std::vector<std::uint32_t> nonres;
  for (int y = 1; y < p; ++y) {
    const FieldElem e = ctx.from_int(y);
    if (!ctx.is_square(e)) nonres.push_back(e.packed);
  }
  const std::uint32_t one = 1;
  for (int xi = 0; xi < p; ++xi) {
    const std::uint32_t x = ctx.from_int(xi).packed;
    const std::uint32_t v = pr.eval_packed(x);
    const std::uint32_t lhs = ctx.rmul(v, v);
    const std::uint32_t two_x2 = ctx.radd(ctx.rmul(x, x), ctx.rmul(x, x));
    std::uint32_t rhs = ctx.radd(one, pr.eval_packed(ctx.rsub(two_x2, one)));
    for (std::uint32_t y : nonres) {
      // argument (y + 1 - 2x^2) / (y - 1); y = 1 is a residue so never occurs
      const std::uint32_t numer = ctx.rsub(ctx.radd(y, one), two_x2);
      const std::uint32_t arg = ctx.rdiv(numer, ctx.rsub(y, one));
      const std::uint32_t term = pr.eval_packed(arg);
      rhs = ctx.radd(rhs, ctx.radd(term, term));
    }
    if (lhs != rhs) return false;
  }
  return true;
}

DyadicPoly q_poly(int i) {
  if (i < 0) throw std::invalid_argument("i must be >= 0");
  std::vector<Dyadic> coeffs(std::size_t(i) + 1);
  const BigInt ifact = factorial(i);
  for (int j = 0; j <= i; ++j) {
    // C(i-j-1/2, i) = prod_{t=0}^{i-1} (2(i-j)-1-2t) / (2^i i!)
    BigInt num = 1;
    for (int t = 0; t < i; ++t) num *= BigInt(2 * (i - j) - 1 - 2 * t);
    Dyadic gen = Dyadic(num, -i).div_exact(ifact);
    BigInt c = binomial(i, j);
    if (j % 2) c = -c;
    coeffs[std::size_t(j)] = gen * Dyadic(c);
  }
  return DyadicPoly(std::move(coeffs));
}

bool verify_fe(const LegendreCache& cache, int r) {
  const DyadicPoly& pr = cache.poly(r);
  const DyadicPoly lhs = pr * pr;
  DyadicPoly arg(std::vector<Dyadic>{Dyadic(-1), Dyadic(0), Dyadic(2)});  // 2x^2 - 1
  DyadicPoly rhs;
  for (int i = r % 2; i <= r; i += 2)
    rhs = rhs + q_poly(i).compose(arg).scaled(pr.coeff(i));
  return lhs == rhs;
}

bool kelley_check(const LegendreCache& cache, int i) {
  const DyadicPoly z2(std::vector<Dyadic>{Dyadic(0), Dyadic(0), Dyadic(1)});
  const DyadicPoly lhs = q_poly(i).compose(z2);
  // z^i P_i((z+1/z)/2) = sum_k a_k 2^{-k} (z^2+1)^k z^{i-k}; i-k is even >= 0
  const DyadicPoly& pi = cache.poly(i);
  const DyadicPoly z2_plus_1(std::vector<Dyadic>{Dyadic(1), Dyadic(0), Dyadic(1)});
  DyadicPoly rhs;
  for (int k = i % 2; k <= i; k += 2) {
    std::vector<Dyadic> mono(std::size_t(i - k) + 1);
    mono[std::size_t(i - k)] = Dyadic(BigInt(1), -k);
    rhs = rhs + (z2_plus_1.pow(unsigned(k)) * DyadicPoly(std::move(mono))).scaled(pi.coeff(k));
  }
  return lhs == rhs;
}

Rational orthogonality_integral(const LegendreCache& cache, int r, int s) {
  const DyadicPoly prod = cache.poly(r) * cache.poly(s);
  Rational total = 0;
  for (int k = 0; k <= prod.degree(); k += 2) {
    const Dyadic& c = prod.coeff(k);
    if (c.is_zero()) continue;
    Rational coeff(c.odd_part());
    if (c.exp2() >= 0)
      coeff *= Rational(BigInt(1) << unsigned(c.exp2()));
    else
      coeff /= Rational(BigInt(1) << unsigned(-c.exp2()));
    total += coeff * 2 / (k + 1);
  }
  return total;
}

}  // namespace torcor
