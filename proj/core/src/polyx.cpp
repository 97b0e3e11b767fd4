#include "torcor/polyx.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace torcor {

// ---------------------------------------------------------------- Dyadic

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while ((num_ & 1) == 0) {
    num_ >>= 1;
    ++exp_;
  }
}

Dyadic Dyadic::operator-() const {
  Dyadic r;
  r.num_ = -num_;
  r.exp_ = exp_;
  return r;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  if (num_ == 0) return o;
  if (o.num_ == 0) return *this;
  const int e = std::min(exp_, o.exp_);
  BigInt a = num_ << unsigned(exp_ - e);
  BigInt b = o.num_ << unsigned(o.exp_ - e);
  return Dyadic(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
  if (num_ == 0 || o.num_ == 0) return Dyadic();
  Dyadic r;
  r.num_ = num_ * o.num_;
  r.exp_ = exp_ + o.exp_;
  return r;  // odd * odd is odd
}

Dyadic Dyadic::div_exact(const BigInt& c) const {
  if (c == 0) throw std::domain_error("division by zero");
  if (num_ == 0) return Dyadic();
  BigInt d = c < 0 ? BigInt(-c) : c;
  int twos = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++twos;
  }
  if (num_ % d != 0)
    throw std::domain_error("inexact division would leave Z[1/2]");
  BigInt n = num_ / d;
  if (c < 0) n = -n;
  return Dyadic(n, exp_ - twos);
}

FieldElem Dyadic::mod_p(const FieldCtx& ctx) const {
  const int p = ctx.p();
  long long n = (long long)(num_ % p);
  if (n < 0) n += p;
  FieldElem v = ctx.from_int(n);
  const long long e = ((exp_ % (p - 1)) + (p - 1)) % (p - 1);
  return ctx.mul(v, ctx.pow(ctx.from_int(2), e));
}

std::string Dyadic::to_string() const {
  if (exp_ >= 0) {
    BigInt v = num_ << unsigned(exp_);
    return v.str();
  }
  BigInt den = BigInt(1) << unsigned(-exp_);
  return num_.str() + "/" + den.str();
}

// ------------------------------------------------------------ DyadicPoly

void DyadicPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DyadicPoly DyadicPoly::constant(Dyadic d) {
  DyadicPoly f;
  if (!d.is_zero()) f.c_.push_back(std::move(d));
  return f;
}

DyadicPoly DyadicPoly::x() {
  DyadicPoly f;
  f.c_ = {Dyadic(0), Dyadic(1)};
  return f;
}

const Dyadic& DyadicPoly::coeff(int i) const {
  static const Dyadic zero;
  if (i < 0 || i >= int(c_.size())) return zero;
  return c_[std::size_t(i)];
}

DyadicPoly DyadicPoly::operator+(const DyadicPoly& o) const {
  std::vector<Dyadic> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = coeff(int(i)) + o.coeff(int(i));
  return DyadicPoly(std::move(r));
}

DyadicPoly DyadicPoly::operator-(const DyadicPoly& o) const {
  std::vector<Dyadic> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = coeff(int(i)) - o.coeff(int(i));
  return DyadicPoly(std::move(r));
}

DyadicPoly DyadicPoly::operator*(const DyadicPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Dyadic> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return DyadicPoly(std::move(r));
}

DyadicPoly DyadicPoly::scaled(const Dyadic& d) const {
  std::vector<Dyadic> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * d;
  return DyadicPoly(std::move(r));
}

DyadicPoly DyadicPoly::pow(unsigned e) const {
  DyadicPoly r = constant(Dyadic(1));
  DyadicPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    if (e >>= 1) b = b * b;
  }
  return r;
}

DyadicPoly DyadicPoly::compose(const DyadicPoly& inner) const {
  DyadicPoly r;
  for (int i = degree(); i >= 0; --i) {
    r = r * inner + constant(c_[std::size_t(i)]);
  }
  return r;
}

DyadicPoly DyadicPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Dyadic> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r[i - 1] = c_[i] * Dyadic(BigInt(i));
  return DyadicPoly(std::move(r));
}

DyadicPoly DyadicPoly::div_exact(const BigInt& c) const {
  std::vector<Dyadic> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].div_exact(c);
  return DyadicPoly(std::move(r));
}

Dyadic DyadicPoly::eval(const Dyadic& x) const {
  Dyadic acc;
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[std::size_t(i)];
  return acc;
}

FieldElem DyadicPoly::eval_mod(const FieldCtx& ctx, FieldElem x) const {
  FieldElem acc = ctx.zero(x.level);
  for (int i = degree(); i >= 0; --i)
    acc = ctx.add(ctx.mul(acc, x), ctx.promote(c_[std::size_t(i)].mod_p(ctx), x.level));
  return acc;
}

std::vector<std::string> DyadicPoly::coeff_strings() const {
  std::vector<std::string> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i].to_string();
  return out;
}

std::string DyadicPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[std::size_t(i)].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << c_[std::size_t(i)].to_string() << ")";
    if (i > 0) os << "*x^" << i;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- FqPoly

void FqPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void FqPoly::check_compatible(const FqPoly& o) const {
  if (ctx_ != o.ctx_) throw std::invalid_argument("mixed-context polynomials");
}

FqPoly FqPoly::constant(const FieldCtx& ctx, FieldElem e) {
  FqPoly f(ctx, e.level);
  if (!e.is_zero()) f.c_ = {e.packed};
  return f;
}

FqPoly FqPoly::x(const FieldCtx& ctx, Level lv) {
  FqPoly f(ctx, lv);
  f.c_ = {0, 1};
  return f;
}

FqPoly FqPoly::from_ints(const FieldCtx& ctx, std::vector<long long> ints) {
  FqPoly f(ctx, Level::Prime);
  f.c_.reserve(ints.size());
  for (long long v : ints) f.c_.push_back(ctx.from_int(v).packed);
  f.trim();
  return f;
}

FieldElem FqPoly::coeff(int i) const {
  return {ctx_, level_, packed_coeff(i)};
}

FieldElem FqPoly::leading() const {
  if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
  return {ctx_, level_, c_.back()};
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  check_compatible(o);
  FqPoly r(*ctx_, std::max(level_, o.level_));
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = ctx_->radd(packed_coeff(int(i)), o.packed_coeff(int(i)));
  r.trim();
  return r;
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
  check_compatible(o);
  FqPoly r(*ctx_, std::max(level_, o.level_));
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = ctx_->rsub(packed_coeff(int(i)), o.packed_coeff(int(i)));
  r.trim();
  return r;
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
  check_compatible(o);
  FqPoly r(*ctx_, std::max(level_, o.level_));
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      r.c_[i + j] = ctx_->radd(r.c_[i + j], ctx_->rmul(c_[i], o.c_[j]));
    }
  }
  r.trim();
  return r;
}

bool FqPoly::operator==(const FqPoly& o) const {
  return ctx_ == o.ctx_ && c_ == o.c_;
}

FqPoly FqPoly::scaled(FieldElem e) const {
  FqPoly r(*ctx_, std::max(level_, e.level));
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = ctx_->rmul(c_[i], e.packed);
  r.trim();
  return r;
}

FqPoly FqPoly::pow(unsigned e) const {
  FqPoly r = constant(*ctx_, ctx_->one(level_));
  FqPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    if (e >>= 1) b = b * b;
  }
  return r;
}

FqPoly FqPoly::compose(const FqPoly& inner) const {
  check_compatible(inner);
  FqPoly r(*ctx_, std::max(level_, inner.level_));
  for (int i = degree(); i >= 0; --i)
    r = r * inner + constant(*ctx_, coeff(i));
  return r;
}

FqPoly FqPoly::derivative() const {
  FqPoly r(*ctx_, level_);
  if (degree() < 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    const std::uint32_t mult = ctx_->from_int((long long)(i)).packed;
    r.c_[i - 1] = ctx_->rmul(c_[i], mult);
  }
  r.trim();
  return r;
}

FqPoly FqPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(ctx_->inv(leading()));
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& divisor) const {
  check_compatible(divisor);
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  FqPoly q(*ctx_, std::max(level_, divisor.level_));
  FqPoly r = *this;
  const int db = divisor.degree();
  const std::uint32_t lead_inv = ctx_->rinv(divisor.c_.back());
  if (r.degree() >= db) q.c_.assign(std::size_t(r.degree() - db + 1), 0);
  while (r.degree() >= db) {
    const int da = r.degree();
    const std::uint32_t f = ctx_->rmul(r.c_.back(), lead_inv);
    q.c_[std::size_t(da - db)] = f;
    for (int i = 0; i <= db; ++i)
      r.c_[std::size_t(da - db + i)] =
          ctx_->rsub(r.c_[std::size_t(da - db + i)], ctx_->rmul(f, divisor.c_[std::size_t(i)]));
    r.trim();
  }
  q.trim();
  q.level_ = r.level_ = std::max(level_, divisor.level_);
  return {q, r};
}

FqPoly FqPoly::gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FieldElem FqPoly::eval(FieldElem x) const {
  if (x.ctx != ctx_) throw std::invalid_argument("mixed-context evaluation");
  const Level lv = std::max(level_, x.level);
  return {ctx_, lv, eval_packed(x.packed)};
}

std::uint32_t FqPoly::eval_packed(std::uint32_t x) const {
  std::uint32_t acc = 0;
  for (int i = degree(); i >= 0; --i)
    acc = ctx_->radd(ctx_->rmul(acc, x), c_[std::size_t(i)]);
  return acc;
}

std::vector<std::string> FqPoly::coeff_strings() const {
  std::vector<std::string> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = coeff(int(i)).to_string();
  return out;
}

std::string FqPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[std::size_t(i)] == 0) continue;
    if (!first) os << " + ";
    os << coeff(i).to_string();
    if (i > 0) os << "*x^" << i;
    first = false;
  }
  return os.str();
}

// ------------------------------------------------------------- free ops

FqPoly reduce_mod_p(const DyadicPoly& f, const FieldCtx& ctx) {
  std::vector<std::uint32_t> c(std::size_t(f.degree() + 1), 0);
  for (int i = 0; i <= f.degree(); ++i) c[std::size_t(i)] = f.coeff(i).mod_p(ctx).packed;
  return FqPoly(ctx, Level::Prime, std::move(c));
}

std::vector<std::pair<FieldElem, int>> roots_in_field(const FqPoly& f, Level lv) {
  if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
  const FieldCtx& ctx = *f.ctx();
  const std::uint32_t n = lv == Level::Prime   ? std::uint32_t(ctx.p())
                          : lv == Level::Ext   ? ctx.q()
                                               : ctx.q2();
  std::vector<std::pair<FieldElem, int>> out;
  for (std::uint32_t r = 0; r < n; ++r) {
    const FieldElem x = ctx.from_rank(lv, r);
    if (f.eval_packed(x.packed) != 0) continue;
    // multiplicity by repeated division by (x - root)
    FqPoly lin(ctx, lv, {ctx.rneg(x.packed), 1});
    FqPoly rem = f;
    int mult = 0;
    for (;;) {
      auto [q, r2] = rem.divmod(lin);
      if (!r2.is_zero()) break;
      ++mult;
      rem = std::move(q);
      if (rem.is_zero()) break;
    }
    out.emplace_back(x, mult);
  }
  return out;
}

namespace {

// f(x) = g(x^p); returns g. Coefficient p-th roots via Frobenius inverse.
FqPoly pth_root(const FqPoly& f) {
  const FieldCtx& ctx = *f.ctx();
  const int p = ctx.p();
  std::vector<std::uint32_t> c(std::size_t(f.degree() / p + 1), 0);
  for (int i = 0; i <= f.degree(); ++i) {
    const std::uint32_t v = f.packed_coeff(i);
    if (v == 0) continue;
    if (i % p != 0) throw std::logic_error("polynomial is not a p-th power");
    c[std::size_t(i / p)] = ctx.rfrob(v, 2 * ctx.m() - 1);
  }
  return FqPoly(ctx, f.level(), std::move(c));
}

// Squarefree decomposition in characteristic p: multiplicity -> product of
// the distinct irreducibles occurring with exactly that multiplicity.
void squarefree_decompose(const FqPoly& f, std::uint64_t mult_scale,
                          std::map<std::uint64_t, FqPoly>& out) {
  const FieldCtx& ctx = *f.ctx();
  FqPoly fm = f.monic();
  if (fm.degree() < 1) return;
  FqPoly d = fm.derivative();
  if (d.is_zero()) {
    squarefree_decompose(pth_root(fm), mult_scale * std::uint64_t(ctx.p()), out);
    return;
  }
  FqPoly c = FqPoly::gcd(fm, d);
  FqPoly w = fm.divmod(c).first;
  std::uint64_t i = 1;
  while (w.degree() >= 1) {
    FqPoly y = FqPoly::gcd(w, c);
    FqPoly z = w.divmod(y).first;
    if (z.degree() >= 1) {
      auto [it, inserted] = out.try_emplace(i * mult_scale, z);
      if (!inserted) it->second = it->second * z;
    }
    w = std::move(y);
    c = c.divmod(w).first;  // exact: w | c here
    ++i;
  }
  if (c.degree() >= 1)
    squarefree_decompose(pth_root(c), mult_scale * std::uint64_t(ctx.p()), out);
}

// x^{s^d} mod f for the field size s of f's level, iterated from the
// previous step's value.
FqPoly powmod_frobenius_step(const FqPoly& prev, std::uint64_t s, const FqPoly& f) {
  FqPoly r = FqPoly::constant(*f.ctx(), f.ctx()->one(f.level()));
  FqPoly b = prev;
  std::uint64_t e = s;
  while (e) {
    if (e & 1) r = (r * b).divmod(f).second;
    if (e >>= 1) b = (b * b).divmod(f).second;
  }
  return r;
}

// Distinct-degree factorization of a squarefree monic polynomial: returns
// pairs (degree d, number of irreducible factors of degree d).
std::vector<std::pair<int, int>> ddf_counts(FqPoly f) {
  const FieldCtx& ctx = *f.ctx();
  const std::uint64_t s = f.level() == Level::Prime ? std::uint64_t(ctx.p())
                          : f.level() == Level::Ext ? std::uint64_t(ctx.q())
                                                    : std::uint64_t(ctx.q2());
  std::vector<std::pair<int, int>> out;
  FqPoly xp = FqPoly::x(ctx, f.level()).divmod(f).second;
  int d = 0;
  while (f.degree() > 0) {
    ++d;
    if (2 * d > f.degree()) {
      out.emplace_back(f.degree(), 1);  // what remains is irreducible
      break;
    }
    xp = powmod_frobenius_step(xp, s, f);
    FqPoly g = FqPoly::gcd(f, xp - FqPoly::x(ctx, f.level()));
    if (g.degree() > 0) {
      out.emplace_back(d, g.degree() / d);
      f = f.divmod(g).first;
      xp = xp.divmod(f).second;
    }
  }
  return out;
}

}  // namespace

std::vector<int> factor_shape(const FqPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor_shape of the zero polynomial");
  std::vector<int> shape;
  if (f.degree() == 0) return shape;
  std::map<std::uint64_t, FqPoly> sqfree;
  squarefree_decompose(f, 1, sqfree);
  for (const auto& [mult, g] : sqfree) {
    for (const auto& [d, count] : ddf_counts(g))
      for (std::uint64_t rep = 0; rep < mult * std::uint64_t(count); ++rep)
        shape.push_back(d);
  }
  std::sort(shape.begin(), shape.end());
  return shape;
}

std::vector<FieldElem> quad_nonresidue_factor_scan(const FqPoly& f) {
  if (f.is_zero()) throw std::domain_error("scan of the zero polynomial");
  const FieldCtx& ctx = *f.ctx();
  if (f.level() == Level::Quad)
    throw std::invalid_argument("scan requires coefficients in F_q");
  std::vector<FieldElem> out;
  for (std::uint32_t r = 1; r < ctx.q(); ++r) {
    const FieldElem c = ctx.from_rank(Level::Ext, r);
    if (ctx.is_square(c)) continue;
    const FieldElem s = ctx.sqrt_in_ext(c);
    if (f.eval_packed(s.packed) == 0) out.push_back(c);
  }
  return out;
}

}  // namespace torcor
