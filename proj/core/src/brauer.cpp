#include "torcor/brauer.hpp"

#include <algorithm>
#include <stdexcept>

namespace torcor {
namespace {

BigInt big_binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n + 1 - i);
    r /= i;
  }
  return r;
}

std::uint32_t binom_mod(const FieldCtx& ctx, long long n, long long k) {
  return ctx.from_int((long long)(big_binomial(n, k) % ctx.p())).packed;
}

// Matrix of Sym^{2rho} (x) det^{-rho} for g over F_q, on basis x^{2rho-j} y^j.
// Row-major (2rho+1)^2; entry [k][j] is the coefficient of x^{2rho-k} y^k in
// (a x + c y)^{2rho-j} (b x + d y)^j det(g)^{-rho}.
std::vector<std::uint32_t> sym_matrix(const FieldCtx& ctx, int rho, Mat2 g) {
  const int n = 2 * rho;
  const std::uint32_t det = ctx.rsub(ctx.rmul(g.a, g.d), ctx.rmul(g.b, g.c));
  if (det == 0) throw std::domain_error("rep_action of a singular matrix");
  const std::uint32_t det_pow = ctx.rpow(det, -(long long)rho);
  std::vector<std::uint32_t> pa(n + 1), pb(n + 1), pc(n + 1), pd(n + 1);
  pa[0] = pb[0] = pc[0] = pd[0] = 1;
  for (int i = 1; i <= n; ++i) {
    pa[i] = ctx.rmul(pa[i - 1], g.a);
    pb[i] = ctx.rmul(pb[i - 1], g.b);
    pc[i] = ctx.rmul(pc[i - 1], g.c);
    pd[i] = ctx.rmul(pd[i - 1], g.d);
  }
  std::vector<std::uint32_t> M(std::size_t(n + 1) * std::size_t(n + 1), 0);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n - j; ++i) {
      const std::uint32_t left =
          ctx.rmul(binom_mod(ctx, n - j, i), ctx.rmul(pa[n - j - i], pc[i]));
      if (left == 0) continue;
      for (int l = 0; l <= j; ++l) {
        const int k = i + l;
        const std::uint32_t right =
            ctx.rmul(binom_mod(ctx, j, l), ctx.rmul(pb[j - l], pd[l]));
        if (right == 0) continue;
        std::uint32_t& slot = M[std::size_t(k) * std::size_t(n + 1) + std::size_t(j)];
        slot = ctx.radd(slot, ctx.rmul(left, right));
      }
    }
  }
  for (auto& v : M) v = ctx.rmul(v, det_pow);
  return M;
}

Mat2 frob_mat(const FieldCtx& ctx, Mat2 g, int i) {
  if (i == 0) return g;
  return {ctx.rfrob(g.a, i), ctx.rfrob(g.b, i), ctx.rfrob(g.c, i), ctx.rfrob(g.d, i)};
}

// Elements of H = {diag(a, 1)} and of K_{alpha,u} as matrices over F_q, in
// the canonical enumeration order (a and z by rank, appending the special
// antidiagonal element of K).
std::vector<Mat2> h_elements(const FieldCtx& ctx) {
  std::vector<Mat2> out;
  out.reserve(ctx.q() - 1);
  for (std::uint32_t r = 1; r < ctx.q(); ++r)
    out.push_back({ctx.from_rank(Level::Ext, r).packed, 0, 0, 1});
  return out;
}

std::vector<Mat2> k_elements(const TorusPair& tp) {
  const FieldCtx& ctx = *tp.ctx;
  const std::uint32_t alpha = tp.alpha.packed, u = tp.u.packed;
  const std::uint32_t one = 1;
  const std::uint32_t a_minus_u2 = ctx.rsub(alpha, ctx.rmul(u, u));
  std::vector<Mat2> out;
  out.reserve(ctx.q() + 1);
  for (std::uint32_t r = 0; r < ctx.q(); ++r) {
    const std::uint32_t z = ctx.from_rank(Level::Ext, r).packed;
    const std::uint32_t uz = ctx.rmul(u, z);
    out.push_back({ctx.radd(one, uz), ctx.rmul(a_minus_u2, z), z, ctx.rsub(one, uz)});
  }
  out.push_back({u, a_minus_u2, one, ctx.rneg(u)});
  return out;
}

TensorMat sum_rep_over(const FieldCtx& ctx, const WeightDigits& digits,
                       const std::vector<Mat2>& els, bool negate) {
  const TensorBasis basis(digits);
  TensorMat acc(basis.dim() * basis.dim(), 0);
  for (const Mat2& g : els) {
    const TensorMat M = rep_action(ctx, digits, g);
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (M[i]) acc[i] = ctx.radd(acc[i], M[i]);
  }
  if (negate)
    for (auto& v : acc) v = ctx.rneg(v);
  return acc;
}

}  // namespace

WeightDigits WeightDigits::of(long long r, const FieldCtx& ctx) {
  if (r < 0 || std::uint64_t(r) >= ctx.q())
    throw std::invalid_argument("weight out of range");
  WeightDigits w;
  w.d.resize(std::size_t(ctx.m()));
  for (int i = 0; i < ctx.m(); ++i) {
    w.d[std::size_t(i)] = int(r % ctx.p());
    r /= ctx.p();
  }
  return w;
}

long long WeightDigits::value(int p) const {
  long long v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

std::string WeightDigits::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

TorusPair::TorusPair(const FieldCtx& c, FieldElem a, FieldElem uu) : ctx(&c) {
  if (a.ctx != &c || uu.ctx != &c) throw std::invalid_argument("mixed-context torus data");
  if (!c.in_level(a, Level::Ext) || !c.in_level(uu, Level::Ext))
    throw std::invalid_argument("torus data must lie in F_q");
  if (a.is_zero() || c.is_square(a))
    throw std::invalid_argument("alpha must be a non-square of F_q^x");
  alpha = c.demote(a, Level::Ext);
  u = c.demote(uu, Level::Ext);
}

TensorBasis::TensorBasis(const WeightDigits& digits) {
  widths_.reserve(digits.d.size());
  for (int ri : digits.d) {
    if (ri < 0) throw std::invalid_argument("negative digit");
    widths_.push_back(2 * ri + 1);
    dim_ *= std::size_t(2 * ri + 1);
  }
  // h_index: j_i = r_i in mixed radix, last factor fastest-varying
  std::size_t idx = 0;
  for (std::size_t i = 0; i < widths_.size(); ++i)
    idx = idx * std::size_t(widths_[i]) + std::size_t(digits.d[i]);
  h_index_ = idx;
}

std::size_t TensorBasis::flat(std::span<const int> j) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    if (j[i] < 0 || j[i] >= widths_[i]) throw std::out_of_range("tensor index");
    idx = idx * std::size_t(widths_[i]) + std::size_t(j[i]);
  }
  return idx;
}

std::vector<int> TensorBasis::multi(std::size_t flat) const {
  std::vector<int> j(widths_.size());
  for (std::size_t i = widths_.size(); i-- > 0;) {
    j[i] = int(flat % std::size_t(widths_[i]));
    flat /= std::size_t(widths_[i]);
  }
  return j;
}

TensorMat rep_action(const FieldCtx& ctx, const WeightDigits& digits, Mat2 g) {
  const TensorBasis basis(digits);
  std::vector<std::vector<std::uint32_t>> factors;
  factors.reserve(digits.d.size());
  for (std::size_t i = 0; i < digits.d.size(); ++i)
    factors.push_back(sym_matrix(ctx, digits.d[i], frob_mat(ctx, g, int(i))));
  const std::size_t dim = basis.dim();
  TensorMat M(dim * dim);
  std::vector<int> row(digits.d.size()), col(digits.d.size());
  for (std::size_t r = 0; r < dim; ++r) {
    const auto rm = basis.multi(r);
    for (std::size_t c = 0; c < dim; ++c) {
      const auto cm = basis.multi(c);
      std::uint32_t prod = 1;
      for (std::size_t i = 0; i < factors.size() && prod; ++i) {
        const int w = basis.width(int(i));
        prod = ctx.rmul(prod, factors[i][std::size_t(rm[i]) * std::size_t(w) + std::size_t(cm[i])]);
      }
      M[r * dim + c] = prod;
    }
  }
  return M;
}

TensorVec fixed_vector_H(const FieldCtx&, const WeightDigits& digits) {
  const TensorBasis basis(digits);
  TensorVec v(basis.dim(), 0);
  v[basis.h_index()] = 1;
  return v;
}

TensorVec fixed_vector_K(const FieldCtx& ctx, const WeightDigits& digits, const TorusPair& tp) {
  const TensorBasis basis(digits);
  // per-factor expansion of ((alpha_i - u_i^2) x^2 - 2 u_i x y - y^2)^{r_i}
  std::vector<std::vector<std::uint32_t>> per;
  per.reserve(digits.d.size());
  for (std::size_t i = 0; i < digits.d.size(); ++i) {
    const int rho = digits.d[std::size_t(i)];
    const std::uint32_t ai = ctx.rfrob(tp.alpha.packed, int(i));
    const std::uint32_t ui = ctx.rfrob(tp.u.packed, int(i));
    const std::uint32_t A = ctx.rsub(ai, ctx.rmul(ui, ui));
    const std::uint32_t B = ctx.rneg(ctx.radd(ui, ui));  // -2u_i
    std::vector<std::uint32_t> coeff(std::size_t(2 * rho + 1), 0);
    for (int ae = 0; ae <= rho; ++ae) {
      for (int be = 0; be + ae <= rho; ++be) {
        const int ce = rho - ae - be;
        const int j = be + 2 * ce;
        std::uint32_t term = ctx.rmul(binom_mod(ctx, rho, ae), binom_mod(ctx, rho - ae, be));
        term = ctx.rmul(term, ctx.rpow(A, ae));
        term = ctx.rmul(term, ctx.rpow(B, be));
        if (ce % 2) term = ctx.rneg(term);  // (-1)^ce from (-y^2)^ce
        coeff[std::size_t(j)] = ctx.radd(coeff[std::size_t(j)], term);
      }
    }
    per.push_back(std::move(coeff));
  }
  TensorVec v(basis.dim());
  for (std::size_t f = 0; f < basis.dim(); ++f) {
    const auto jm = basis.multi(f);
    std::uint32_t prod = 1;
    for (std::size_t i = 0; i < per.size() && prod; ++i)
      prod = ctx.rmul(prod, per[i][std::size_t(jm[i])]);
    v[f] = prod;
  }
  return v;
}

AveragingOps averaging_ops(const FieldCtx& ctx, const WeightDigits& digits, const TorusPair& tp) {
  AveragingOps ops;
  ops.X = sum_rep_over(ctx, digits, h_elements(ctx), /*negate=*/true);   // 1/|H| = -1
  ops.Y_u = sum_rep_over(ctx, digits, k_elements(tp), /*negate=*/false);  // 1/|K| = 1
  return ops;
}

TensorVec apply(const FieldCtx& ctx, const TensorMat& M, const TensorVec& v) {
  const std::size_t dim = v.size();
  TensorVec out(dim, 0);
  for (std::size_t r = 0; r < dim; ++r) {
    std::uint32_t acc = 0;
    const std::uint32_t* row = M.data() + r * dim;
    for (std::size_t c = 0; c < dim; ++c) {
      if (row[c] == 0 || v[c] == 0) continue;
      acc = ctx.radd(acc, ctx.rmul(row[c], v[c]));
    }
    out[r] = acc;
  }
  return out;
}

TensorMat mat_mul(const FieldCtx& ctx, const TensorMat& A, const TensorMat& B, std::size_t dim) {
  TensorMat out(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const std::uint32_t a = A[i * dim + k];
      if (a == 0) continue;
      const std::uint32_t* brow = B.data() + k * dim;
      std::uint32_t* orow = out.data() + i * dim;
      for (std::size_t j = 0; j < dim; ++j) {
        if (brow[j] == 0) continue;
        orow[j] = ctx.radd(orow[j], ctx.rmul(a, brow[j]));
      }
    }
  }
  return out;
}

namespace {

// X v_K should be s e_{h}; Y_u e_h should be t v_K. Throws on failure.
FieldElem extract_scalar(const FieldCtx& ctx, const TensorVec& image, const TensorVec& target,
                         std::size_t read_index) {
  const std::uint32_t denom = target[read_index];
  if (denom == 0) throw std::logic_error("degenerate target coordinate");
  const std::uint32_t s = ctx.rdiv(image[read_index], denom);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] != ctx.rmul(s, target[i]))
      throw std::logic_error("averaging image is not proportional to the fixed vector");
  }
  return {&ctx, Level::Quad, s};
}

}  // namespace

FieldElem scalar_s(const FieldCtx& ctx, const WeightDigits& digits, const TorusPair& tp) {
  const TensorBasis basis(digits);
  const auto ops = averaging_ops(ctx, digits, tp);
  const TensorVec vk = fixed_vector_K(ctx, digits, tp);
  const TensorVec img = apply(ctx, ops.X, vk);
  const TensorVec vh = fixed_vector_H(ctx, digits);
  FieldElem s = extract_scalar(ctx, img, vh, basis.h_index());
  return ctx.demote(s, Level::Ext);
}

FieldElem scalar_t(const FieldCtx& ctx, const WeightDigits& digits, const TorusPair& tp) {
  const TensorBasis basis(digits);
  const auto ops = averaging_ops(ctx, digits, tp);
  const TensorVec vh = fixed_vector_H(ctx, digits);
  const TensorVec img = apply(ctx, ops.Y_u, vh);
  const TensorVec vk = fixed_vector_K(ctx, digits, tp);
  FieldElem t = extract_scalar(ctx, img, vk, 0);  // coefficient of tensor x_i^{2r_i}
  return ctx.demote(t, Level::Ext);
}

namespace {

// Per-digit closed forms over F_q; the full scalar is prod_i value^{p^i}.
std::uint32_t closed_s_digit(const FieldCtx& ctx, int rho, std::uint32_t alpha, std::uint32_t u) {
  const std::uint32_t A = ctx.rsub(alpha, ctx.rmul(u, u));
  const std::uint32_t two_u = ctx.radd(u, u);
  std::uint32_t sum = 0;
  for (int i = rho % 2; i <= rho; i += 2) {
    const int h = (rho - i) / 2;
    std::uint32_t term = ctx.rmul(binom_mod(ctx, rho, i), binom_mod(ctx, rho - i, h));
    term = ctx.rmul(term, ctx.rpow(A, h));
    term = ctx.rmul(term, ctx.rpow(two_u, i));
    if (h % 2) term = ctx.rneg(term);
    sum = ctx.radd(sum, term);
  }
  if (rho % 2) sum = ctx.rneg(sum);  // leading (-1)^rho
  return sum;
}

std::uint32_t closed_t_digit(const FieldCtx& ctx, int rho, std::uint32_t alpha, std::uint32_t u) {
  const long long n = (long long)(ctx.q()) - 1 - rho;
  std::uint32_t sum = 0;
  for (long long j = n % 2; j <= n; j += 2) {
    const long long h = (n - j) / 2;
    std::uint32_t term = ctx.rmul(binom_mod(ctx, n, h), binom_mod(ctx, rho, j));
    term = ctx.rmul(term, ctx.rpow(alpha, h));
    term = ctx.rmul(term, ctx.rpow(u, j));
    if (h % 2) term = ctx.rneg(term);
    sum = ctx.radd(sum, term);
  }
  return ctx.rneg(sum);
}

}  // namespace

FieldElem closed_form_s(long long r, const TorusPair& tp) {
  const FieldCtx& ctx = *tp.ctx;
  const WeightDigits digits = WeightDigits::of(r, ctx);
  std::uint32_t prod = 1;
  long long pk = 1;
  for (std::size_t i = 0; i < digits.d.size(); ++i) {
    prod = ctx.rmul(prod, ctx.rpow(closed_s_digit(ctx, digits.d[i], tp.alpha.packed, tp.u.packed), pk));
    pk *= ctx.p();
  }
  return ctx.demote({&ctx, Level::Quad, prod}, Level::Ext);
}

FieldElem closed_form_t(long long r, const TorusPair& tp) {
  const FieldCtx& ctx = *tp.ctx;
  const WeightDigits digits = WeightDigits::of(r, ctx);
  std::uint32_t prod = 1;
  long long pk = 1;
  for (std::size_t i = 0; i < digits.d.size(); ++i) {
    prod = ctx.rmul(prod, ctx.rpow(closed_t_digit(ctx, digits.d[i], tp.alpha.packed, tp.u.packed), pk));
    pk *= ctx.p();
  }
  return ctx.demote({&ctx, Level::Quad, prod}, Level::Ext);
}

Theorem1Row theorem1_modp(const LegendreCache& cache, long long r, const TorusPair& tp) {
  const FieldCtx& ctx = *tp.ctx;
  if (r < 0 || 2 * r > (long long)(ctx.q()) - 1)
    throw std::invalid_argument("theorem requires 0 <= r <= (q-1)/2");
  const WeightDigits digits = WeightDigits::of(r, ctx);
  Theorem1Row row;
  row.r = r;
  row.s = scalar_s(ctx, digits, tp);
  row.t = scalar_t(ctx, digits, tp);
  row.st = ctx.mul(row.s, row.t);

  const FieldElem sqrt_alpha = ctx.sqrt_in_ext(tp.alpha);
  const FieldElem x0 = ctx.div(ctx.promote(tp.u, Level::Quad), sqrt_alpha);
  const FieldElem val = legendre_mod_p(cache, int(r), ctx).eval(x0);
  row.legendre_sq = ctx.demote(ctx.mul(val, val), Level::Ext);
  row.agree = row.st == row.legendre_sq;

  // The per-digit prefactors (-1)^rho 2^rho alpha^{rho/2} and
  // -(-1)^{q-1-rho} 2^{q-1-rho} alpha^{(q-1-rho)/2} must multiply to 1;
  // this is exactly the cancellation that leaves the clean square.
  bool clean = true;
  for (int rho : digits.d) {
    const long long qm1 = (long long)(ctx.q()) - 1;
    std::uint32_t pf = ctx.rmul(ctx.rpow(2 % ctx.p(), rho), ctx.rpow(sqrt_alpha.packed, rho));
    if (rho % 2) pf = ctx.rneg(pf);
    std::uint32_t pg = ctx.rmul(ctx.rpow(2 % ctx.p(), qm1 - rho),
                                ctx.rpow(sqrt_alpha.packed, qm1 - rho));
    if ((qm1 - rho) % 2) pg = ctx.rneg(pg);
    pg = ctx.rneg(pg);
    if (ctx.rmul(pf, pg) != 1) clean = false;
  }
  row.prefactor_clean = clean;
  return row;
}

JhComponent jh_component(const FieldCtx& ctx, long long r, JhKind kind) {
  const long long hi = ((long long)(ctx.q()) - 3) / 2;
  if (kind == JhKind::Principal && (r < 1 || r > hi))
    throw std::invalid_argument("principal series index out of range");
  if (kind == JhKind::Cuspidal && (r < 0 || r > hi))
    throw std::invalid_argument("cuspidal index out of range");
  const WeightDigits digits = WeightDigits::of(r, ctx);
  const long long twisted = kind == JhKind::Principal ? 2 * r : 2 * r + 1;
  const WeightDigits a = WeightDigits::of(twisted, ctx);
  JhComponent out;
  out.weights.resize(digits.d.size());
  for (std::size_t i = 0; i < digits.d.size(); ++i) {
    const int ri = digits.d[i];
    const bool in_J = a.d[i] == 2 * ri || a.d[i] == 2 * ri + 1;
    if (in_J) {
      out.J.push_back(int(i));
      out.weights[i] = {2 * ri, -ri};
    } else {
      out.weights[i] = {2 * ctx.p() - 2 - 2 * ri, ri};
    }
  }
  return out;
}

namespace {

int rank_of(const FieldCtx& ctx, TensorMat M, std::size_t dim) {
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < dim && row < dim; ++col) {
    std::size_t piv = row;
    while (piv < dim && M[piv * dim + col] == 0) ++piv;
    if (piv == dim) continue;
    if (piv != row)
      for (std::size_t j = 0; j < dim; ++j) std::swap(M[piv * dim + j], M[row * dim + j]);
    const std::uint32_t inv = ctx.rinv(M[row * dim + col]);
    for (std::size_t j = 0; j < dim; ++j) M[row * dim + j] = ctx.rmul(M[row * dim + j], inv);
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == row) continue;
      const std::uint32_t f = M[i * dim + col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim; ++j)
        M[i * dim + j] = ctx.rsub(M[i * dim + j], ctx.rmul(f, M[row * dim + j]));
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

std::pair<int, int> fixed_space_dims(const FieldCtx& ctx, const WeightDigits& digits,
                                     const TorusPair& tp) {
  const TensorBasis basis(digits);
  const auto ops = averaging_ops(ctx, digits, tp);
  return {rank_of(ctx, ops.X, basis.dim()), rank_of(ctx, ops.Y_u, basis.dim())};
}

BrauerEngine::BrauerEngine(const FieldCtx& ctx, WeightDigits digits)
    : ctx_(&ctx), digits_(std::move(digits)), basis_(digits_) {
  X_ = sum_rep_over(ctx, digits_, h_elements(ctx), /*negate=*/true);
}

void BrauerEngine::set_alpha(FieldElem alpha) {
  alpha_ = alpha;
  has_alpha_ = true;
  const TorusPair tp(*ctx_, alpha, ctx_->zero(Level::Ext));
  Y_ = sum_rep_over(*ctx_, digits_, k_elements(tp), /*negate=*/false);
}

const TensorMat& BrauerEngine::unipotent_matrix(std::uint32_t u_packed) {
  auto it = nu_cache_.find(u_packed);
  if (it != nu_cache_.end()) return it->second;
  const Mat2 nu{1, u_packed, 0, 1};
  auto [ins, _] = nu_cache_.emplace(u_packed, rep_action(*ctx_, digits_, nu));
  return ins->second;
}

BrauerEngine::ST BrauerEngine::scalars(FieldElem u) {
  if (!has_alpha_) throw std::logic_error("set_alpha before scalars");
  const FieldCtx& ctx = *ctx_;
  const TorusPair tp(ctx, alpha_, u);
  const std::size_t dim = basis_.dim();

  // s: X applied to v_{K,alpha,u}
  const TensorVec vk = fixed_vector_K(ctx, digits_, tp);
  const TensorVec sx = apply(ctx, X_, vk);
  TensorVec vh(dim, 0);
  vh[basis_.h_index()] = 1;
  const FieldElem s = extract_scalar(ctx, sx, vh, basis_.h_index());

  // t: rho(n_u) Y rho(n_{-u}) applied to v_H; rho(n_{-u}) e_h is a column
  const TensorMat& nu = unipotent_matrix(u.packed);
  const TensorMat& nmu = unipotent_matrix(ctx.rneg(u.packed));
  TensorVec col(dim);
  for (std::size_t r = 0; r < dim; ++r) col[r] = nmu[r * dim + basis_.h_index()];
  const TensorVec mid = apply(ctx, Y_, col);
  const TensorVec ty = apply(ctx, nu, mid);
  const FieldElem t = extract_scalar(ctx, ty, vk, 0);
  return {ctx.demote(s, Level::Ext), ctx.demote(t, Level::Ext)};
}

}  // namespace torcor
