#include "torcor/fields.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace torcor {
namespace {

// Bootstrap polynomial arithmetic over F_p (dense, low-degree first) used
// only while constructing a context, before the exp/log tables exist.

using Poly = std::vector<int>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = int((r[i + j] + std::int64_t(a[i]) * b[j]) % p);
  }
  trim(r);
  return r;
}

int inv_mod(int a, int p) {
  int r = 1, e = p - 2, b = a % p;
  while (e) {
    if (e & 1) r = int(std::int64_t(r) * b % p);
    b = int(std::int64_t(b) * b % p);
    e >>= 1;
  }
  return r;
}

// In-place remainder of a by monic-or-not b.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int db = int(b.size()) - 1;
  const int lead_inv = inv_mod(b.back(), p);
  while (int(a.size()) - 1 >= db) {
    int da = int(a.size()) - 1;
    int c = int(std::int64_t(a[da]) * lead_inv % p);
    if (c != 0) {
      for (int i = 0; i <= db; ++i) {
        int& t = a[da - db + i];
        t = int(((t - std::int64_t(c) * b[i]) % p + p) % p);
      }
    }
    a.pop_back();
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

bool poly_divides(const Poly& g, const Poly& f, int p) {
  return poly_mod(f, g, p).empty();
}

Poly poly_from_value(std::uint64_t value, int deg, int p) {
  Poly c(deg);
  for (int i = 0; i < deg; ++i) {
    c[i] = int(value % p);
    value /= p;
  }
  return c;
}

// Monic f of degree d, irreducible iff no monic divisor of degree 1..d/2.
bool is_irreducible(const Poly& f, int p) {
  const int d = int(f.size()) - 1;
  if (d <= 0) return false;
  if (d == 1) return true;
  for (int dg = 1; dg <= d / 2; ++dg) {
    std::uint64_t count = 1;
    for (int i = 0; i < dg; ++i) count *= std::uint64_t(p);
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly g = poly_from_value(v, dg, p);
      g.push_back(1);
      if (poly_divides(g, f, p)) return false;
    }
  }
  return true;
}

Poly least_irreducible(int deg, int p) {
  std::uint64_t count = 1;
  for (int i = 0; i < deg; ++i) count *= std::uint64_t(p);
  for (std::uint64_t v = 0; v < count; ++v) {
    Poly f = poly_from_value(v, deg, p);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; std::int64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t pack(const Poly& c, int width, int p) {
  std::uint32_t v = 0;
  for (int i = width - 1; i >= 0; --i)
    v = v * std::uint32_t(p) + std::uint32_t(i < int(c.size()) ? c[i] : 0);
  return v;
}

Poly bootstrap_powmod(Poly base, std::uint64_t e, const Poly& mod, int p) {
  Poly r{1};
  base = poly_mod(std::move(base), mod, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), mod, p);
    base = poly_mod(poly_mul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

FieldCtx::FieldCtx(int p, int m) : p_(p), m_(m) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument("p must be an odd prime");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  std::uint64_t order = 1;
  for (int i = 0; i < 2 * m; ++i) {
    order *= std::uint64_t(p);
    if (order > kMaxOrder)
      throw std::invalid_argument("p^{2m} exceeds the supported size cap");
  }
  q2_ = std::uint32_t(order);
  q_ = 1;
  for (int i = 0; i < m; ++i) q_ *= std::uint32_t(p);
  ord_ = order - 1;

  mod_q_ = least_irreducible(m, p);
  mod_q2_ = least_irreducible(2 * m, p);

  // Least primitive element of F_{q^2}^x, found with bootstrap arithmetic.
  const auto factors = prime_factors(ord_);
  for (std::uint32_t v = 1; v < q2_; ++v) {
    Poly cand = poly_from_value(v, 2 * m, p);
    bool primitive = true;
    for (std::uint64_t ell : factors) {
      Poly pw = bootstrap_powmod(cand, ord_ / ell, mod_q2_, p);
      if (pw.size() == 1 && pw[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen_ = v;
      break;
    }
  }
  if (gen_ == 0) throw std::logic_error("no generator found");

  // exp/log tables; exp_[k] = g^k built by repeated multiplication by g.
  exp_.assign(ord_, 0);
  log_.assign(q2_, -1);
  const Poly g = poly_from_value(gen_, 2 * m, p);
  Poly acc{1};
  for (std::uint64_t k = 0; k < ord_; ++k) {
    const std::uint32_t packed = pack(acc, 2 * m, p);
    exp_[k] = packed;
    log_[packed] = std::int64_t(k);
    acc = poly_mod(poly_mul(acc, g, p), mod_q2_, p);
  }
  if (!(acc.size() == 1 && acc[0] == 1))
    throw std::logic_error("generator order mismatch");

  // Embedding F_q -> F_{q^2}: the least root of modulus_q, then its powers.
  std::uint32_t root = 0;
  bool found = false;
  for (std::uint32_t x = 0; x < q2_ && !found; ++x) {
    std::uint32_t accv = 0;
    for (int i = int(mod_q_.size()) - 1; i >= 0; --i)
      accv = radd(rmul(accv, x), std::uint32_t(mod_q_[i]));
    if (accv == 0) {
      root = x;
      found = true;
    }
  }
  if (!found) throw std::logic_error("modulus_q has no root in F_{q^2}");
  std::vector<std::uint32_t> root_pow(m);
  root_pow[0] = 1;
  for (int i = 1; i < m; ++i) root_pow[i] = rmul(root_pow[i - 1], root);
  embed_.assign(q_, 0);
  for (std::uint32_t r = 0; r < q_; ++r) {
    std::uint32_t v = r, img = 0;
    for (int i = 0; i < m; ++i) {
      img = radd(img, rmul(v % p, root_pow[i]));
      v /= std::uint32_t(p);
    }
    embed_[r] = img;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs(q_);
  for (std::uint32_t r = 0; r < q_; ++r) pairs[r] = {embed_[r], r};
  std::sort(pairs.begin(), pairs.end());
  unembed_keys_.resize(q_);
  unembed_vals_.resize(q_);
  for (std::uint32_t i = 0; i < q_; ++i) {
    unembed_keys_[i] = pairs[i].first;
    unembed_vals_[i] = pairs[i].second;
  }
}

std::uint32_t FieldCtx::radd(std::uint32_t x, std::uint32_t y) const {
  std::uint32_t r = 0, mul = 1;
  const std::uint32_t up = std::uint32_t(p_);
  for (int i = 0; i < 2 * m_; ++i) {
    std::uint32_t s = x % up + y % up;
    if (s >= up) s -= up;
    r += s * mul;
    mul *= up;
    x /= up;
    y /= up;
  }
  return r;
}

std::uint32_t FieldCtx::rneg(std::uint32_t x) const {
  std::uint32_t r = 0, mul = 1;
  const std::uint32_t up = std::uint32_t(p_);
  for (int i = 0; i < 2 * m_; ++i) {
    std::uint32_t d = x % up;
    if (d) d = up - d;
    r += d * mul;
    mul *= up;
    x /= up;
  }
  return r;
}

std::uint32_t FieldCtx::rsub(std::uint32_t x, std::uint32_t y) const {
  return radd(x, rneg(y));
}

std::uint32_t FieldCtx::rinv(std::uint32_t x) const {
  if (x == 0) throw std::domain_error("division by zero");
  return exp_[(ord_ - std::uint64_t(log_[x])) % ord_];
}

std::uint32_t FieldCtx::rdiv(std::uint32_t x, std::uint32_t y) const {
  if (y == 0) throw std::domain_error("division by zero");
  if (x == 0) return 0;
  std::uint64_t e = std::uint64_t(log_[x]) + ord_ - std::uint64_t(log_[y]);
  if (e >= ord_) e -= ord_;
  return exp_[e];
}

std::uint32_t FieldCtx::rpow(std::uint32_t x, long long e) const {
  if (x == 0) {
    if (e < 0) throw std::domain_error("division by zero");
    return e == 0 ? 1u : 0u;
  }
  long long em = e % std::int64_t(ord_);
  if (em < 0) em += std::int64_t(ord_);
  return exp_[std::uint64_t(log_[x]) * std::uint64_t(em) % ord_];
}

std::uint32_t FieldCtx::rfrob(std::uint32_t x, int i) const {
  if (x == 0) return 0;
  i = ((i % (2 * m_)) + 2 * m_) % (2 * m_);
  std::uint64_t e = std::uint64_t(log_[x]);
  for (int k = 0; k < i; ++k) e = e * std::uint64_t(p_) % ord_;
  return exp_[e];
}

std::uint32_t FieldCtx::runembed(std::uint32_t packed) const {
  auto it = std::lower_bound(unembed_keys_.begin(), unembed_keys_.end(), packed);
  if (it == unembed_keys_.end() || *it != packed) return UINT32_MAX;
  return unembed_vals_[std::size_t(it - unembed_keys_.begin())];
}

void FieldCtx::check_same_ctx(FieldElem x, FieldElem y) const {
  if (x.ctx != this || y.ctx != this)
    throw std::invalid_argument("mixed-context field operands");
}

FieldElem FieldCtx::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return {this, Level::Prime, std::uint32_t(r)};
}

FieldElem FieldCtx::from_coeffs(Level lv, std::span<const int> coeffs) const {
  const std::size_t want = lv == Level::Prime ? 1 : (lv == Level::Ext ? std::size_t(m_) : std::size_t(2 * m_));
  if (coeffs.size() != want)
    throw std::invalid_argument("coefficient count does not match level");
  auto norm = [&](int c) {
    int r = c % p_;
    return std::uint32_t(r < 0 ? r + p_ : r);
  };
  if (lv == Level::Prime) return {this, lv, norm(coeffs[0])};
  std::uint32_t rank = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;)
    rank = rank * std::uint32_t(p_) + norm(coeffs[i]);
  return from_rank(lv, rank);
}

FieldElem FieldCtx::from_rank(Level lv, std::uint32_t rank) const {
  switch (lv) {
    case Level::Prime:
      if (rank >= std::uint32_t(p_)) throw std::invalid_argument("rank out of range");
      return {this, lv, rank};
    case Level::Ext:
      if (rank >= q_) throw std::invalid_argument("rank out of range");
      return {this, lv, embed_[rank]};
    case Level::Quad:
      if (rank >= q2_) throw std::invalid_argument("rank out of range");
      return {this, lv, rank};
  }
  throw std::invalid_argument("bad level");
}

std::vector<int> FieldElem::coeffs() const {
  const int p = ctx->p();
  std::uint32_t r = rank();
  const int width = level == Level::Prime ? 1 : (level == Level::Ext ? ctx->m() : 2 * ctx->m());
  std::vector<int> c(width);
  for (int i = 0; i < width; ++i) {
    c[i] = int(r % std::uint32_t(p));
    r /= std::uint32_t(p);
  }
  return c;
}

std::uint32_t FieldElem::rank() const {
  if (level == Level::Quad) return packed;
  if (level == Level::Prime) return packed;  // constants pack to themselves
  const std::uint32_t r = ctx->runembed(packed);
  if (r == UINT32_MAX) throw std::logic_error("Ext-tagged element not in F_q");
  return r;
}

std::string FieldElem::to_string() const {
  const auto c = coeffs();
  if (c.size() == 1) return std::to_string(c[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  s += "]";
  return s;
}

namespace {
Level max_level(Level a, Level b) { return a > b ? a : b; }
}  // namespace

FieldElem FieldCtx::add(FieldElem x, FieldElem y) const {
  check_same_ctx(x, y);
  return {this, max_level(x.level, y.level), radd(x.packed, y.packed)};
}
FieldElem FieldCtx::sub(FieldElem x, FieldElem y) const {
  check_same_ctx(x, y);
  return {this, max_level(x.level, y.level), rsub(x.packed, y.packed)};
}
FieldElem FieldCtx::neg(FieldElem x) const {
  return {this, x.level, rneg(x.packed)};
}
FieldElem FieldCtx::mul(FieldElem x, FieldElem y) const {
  check_same_ctx(x, y);
  return {this, max_level(x.level, y.level), rmul(x.packed, y.packed)};
}
FieldElem FieldCtx::div(FieldElem x, FieldElem y) const {
  check_same_ctx(x, y);
  return {this, max_level(x.level, y.level), rdiv(x.packed, y.packed)};
}
FieldElem FieldCtx::inv(FieldElem x) const {
  return {this, x.level, rinv(x.packed)};
}
FieldElem FieldCtx::pow(FieldElem x, long long e) const {
  return {this, x.level, rpow(x.packed, e)};
}
FieldElem FieldCtx::frobenius(FieldElem x, int i) const {
  return {this, x.level, rfrob(x.packed, i)};
}

bool FieldCtx::in_level(FieldElem x, Level lv) const {
  if (lv == Level::Quad) return true;
  if (lv == Level::Ext) return rfrob(x.packed, m_) == x.packed;
  return x.packed < std::uint32_t(p_);
}

FieldElem FieldCtx::demote(FieldElem x, Level lv) const {
  if (!in_level(x, lv)) throw std::domain_error("element not in requested subfield");
  return {this, lv, x.packed};
}

FieldElem FieldCtx::promote(FieldElem x, Level lv) const {
  if (lv < x.level) throw std::invalid_argument("promote to lower level");
  return {this, lv, x.packed};
}

bool FieldCtx::is_square(FieldElem x) const {
  if (x.packed == 0) throw std::domain_error("is_square of zero");
  if (!in_level(x, Level::Ext)) throw std::domain_error("is_square requires x in F_q");
  return rpow(x.packed, (std::int64_t(q_) - 1) / 2) == 1;
}

FieldElem FieldCtx::sqrt_in_ext(FieldElem alpha) const {
  if (alpha.packed == 0) throw std::domain_error("sqrt of zero");
  if (!in_level(alpha, Level::Ext)) throw std::domain_error("sqrt_in_ext requires alpha in F_q");
  // Every element of F_q^x has even log in F_{q^2}^x (the index q+1 is even).
  const std::uint64_t k = std::uint64_t(log_[alpha.packed]);
  const std::uint32_t r1 = exp_[k / 2];
  const std::uint32_t r2 = rneg(r1);
  return {this, Level::Quad, std::min(r1, r2)};
}

std::uint64_t FieldCtx::discrete_log(FieldElem x) const {
  if (x.packed == 0) throw std::domain_error("discrete_log of zero");
  return std::uint64_t(log_[x.packed]);
}

std::string FieldCtx::to_json() const {
  std::ostringstream os;
  auto emit = [&os](const std::vector<int>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",";
      os << v[i];
    }
    os << "]";
  };
  os << "{\"p\":" << p_ << ",\"m\":" << m_ << ",\"modulus_q\":";
  emit(mod_q_);
  os << ",\"modulus_q2\":";
  emit(mod_q2_);
  os << ",\"generator\":";
  emit(generator().coeffs());
  os << "}";
  return os.str();
}

}  // namespace torcor
