#include "torcor/chars.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace torcor {

long long IrrepLabel::dim(const FieldCtx& ctx) const {
  const long long q = ctx.q();
  switch (kind) {
    case Kind::Trivial:
    case Kind::EtaTwist:
      return 1;
    case Kind::Steinberg:
    case Kind::SteinbergEta:
      return q;
    case Kind::PrincipalSeries:
      return q + 1;
    case Kind::Cuspidal:
      return q - 1;
  }
  return 0;
}

bool IrrepLabel::both_fixed_vectors() const {
  return kind == Kind::Trivial || kind == Kind::SteinbergEta ||
         kind == Kind::PrincipalSeries || kind == Kind::Cuspidal;
}

long long IrrepLabel::legendre_index(const FieldCtx& ctx) const {
  switch (kind) {
    case Kind::Trivial:
      return 0;
    case Kind::SteinbergEta:
      return ((long long)(ctx.q()) - 1) / 2;
    case Kind::PrincipalSeries:
    case Kind::Cuspidal:
      return r;
    default:
      throw std::domain_error("label does not admit both fixed vectors");
  }
}

std::string IrrepLabel::name() const {
  switch (kind) {
    case Kind::Trivial:
      return "trivial";
    case Kind::EtaTwist:
      return "eta";
    case Kind::Steinberg:
      return "st";
    case Kind::SteinbergEta:
      return "st*eta";
    case Kind::PrincipalSeries:
      return "ps(" + std::to_string(r) + ")";
    case Kind::Cuspidal:
      return "cusp(" + std::to_string(r) + ")";
  }
  return "?";
}

std::vector<IrrepLabel> IrrepLabel::all(const FieldCtx& ctx) {
  std::vector<IrrepLabel> out;
  out.push_back({Kind::Trivial, 0});
  out.push_back({Kind::EtaTwist, 0});
  out.push_back({Kind::Steinberg, 0});
  out.push_back({Kind::SteinbergEta, 0});
  const int hi = (int(ctx.q()) - 3) / 2;
  for (int r = 1; r <= hi; ++r) out.push_back({Kind::PrincipalSeries, r});
  for (int r = 0; r <= hi; ++r) out.push_back({Kind::Cuspidal, r});
  return out;
}

std::vector<IrrepLabel> IrrepLabel::in_scope(const FieldCtx& ctx) {
  std::vector<IrrepLabel> out;
  for (const IrrepLabel& l : all(ctx))
    if (l.both_fixed_vectors()) out.push_back(l);
  return out;
}

ClassData classify(const FieldCtx& ctx, Mat2 g) {
  ClassData cd;
  const std::uint32_t tr = ctx.radd(g.a, g.d);
  const std::uint32_t det = ctx.rsub(ctx.rmul(g.a, g.d), ctx.rmul(g.b, g.c));
  if (det == 0) throw std::domain_error("classify of a singular matrix");
  cd.det = ctx.demote({&ctx, Level::Quad, det}, Level::Ext);
  if (g.b == 0 && g.c == 0 && g.a == g.d) {
    cd.type = ClassData::Type::Central;
    cd.scalar = ctx.demote({&ctx, Level::Quad, g.a}, Level::Ext);
    return cd;
  }
  const std::uint32_t disc = ctx.rsub(ctx.rmul(tr, tr), ctx.rmul(4 % ctx.p(), det));
  if (disc == 0) {
    cd.type = ClassData::Type::NonSemisimple;
    cd.scalar = ctx.demote({&ctx, Level::Quad, ctx.rdiv(tr, 2 % ctx.p())}, Level::Ext);
    return cd;
  }
  const FieldElem disc_e = ctx.demote({&ctx, Level::Quad, disc}, Level::Ext);
  const FieldElem root = ctx.sqrt_in_ext(disc_e);
  const std::uint32_t half = ctx.rinv(2 % ctx.p());
  if (ctx.in_level(root, Level::Ext)) {
    cd.type = ClassData::Type::SplitSemisimple;
    cd.eigen_a = ctx.demote({&ctx, Level::Quad, ctx.rmul(ctx.radd(tr, root.packed), half)}, Level::Ext);
    cd.eigen_b = ctx.demote({&ctx, Level::Quad, ctx.rmul(ctx.rsub(tr, root.packed), half)}, Level::Ext);
    return cd;
  }
  cd.type = ClassData::Type::Elliptic;
  cd.lambda = {&ctx, Level::Quad, ctx.rmul(ctx.radd(tr, root.packed), half)};
  return cd;
}

FieldElem IdentificationMap::psi_modp(FieldElem x, long long e) const {
  return ctx->pow(x, e);
}

std::complex<double> IdentificationMap::psi_complex(FieldElem x, long long e) const {
  const std::uint64_t ord = std::uint64_t(ctx->q2()) - 1;
  const std::uint64_t k = ctx->discrete_log(x);
  // exponent e can be negative: reduce mod ord first
  long long em = e % (long long)(ord);
  if (em < 0) em += (long long)(ord);
  const std::uint64_t idx = (std::uint64_t(em) * k) % ord;
  const double angle = 2.0 * std::numbers::pi * double(idx) / double(ord);
  return {std::cos(angle), std::sin(angle)};
}

namespace {

// eta = chi^{(q-1)/2} o det: the unique quadratic character of PGL_2.
int eta_sign(const FieldCtx& ctx, const FieldElem& det) {
  return ctx.is_square(det) ? 1 : -1;
}

}  // namespace

namespace {

FieldElem char_value_modp_class(const IrrepLabel& label, const ClassData& cd,
                                const IdentificationMap& idmap) {
  const FieldCtx& ctx = *idmap.ctx;
  using T = ClassData::Type;
  using K = IrrepLabel::Kind;
  const long long q = ctx.q();
  auto scalar = [&](long long v) { return ctx.promote(ctx.from_int(v), Level::Quad); };

  switch (label.kind) {
    case K::Trivial:
      return scalar(1);
    case K::EtaTwist:
      return scalar(eta_sign(ctx, cd.det));
    case K::Steinberg:
    case K::SteinbergEta: {
      long long v;
      switch (cd.type) {
        case T::Central: v = q % ctx.p(); break;
        case T::NonSemisimple: v = 0; break;
        case T::SplitSemisimple: v = 1; break;
        case T::Elliptic: v = -1; break;
      }
      if (label.kind == K::SteinbergEta) v *= eta_sign(ctx, cd.det);
      return scalar(v);
    }
    case K::PrincipalSeries: {
      switch (cd.type) {
        case T::Central: return scalar((q + 1) % ctx.p());
        case T::NonSemisimple: return scalar(1);
        case T::SplitSemisimple: {
          const FieldElem x = ctx.div(cd.eigen_a, cd.eigen_b);
          return ctx.add(idmap.psi_modp(x, label.r), idmap.psi_modp(ctx.inv(x), label.r));
        }
        case T::Elliptic: return scalar(0);
      }
      break;
    }
    case K::Cuspidal: {
      const long long e = (q - 1) * (label.r + 1);
      switch (cd.type) {
        case T::Central:
          // dim (q-1) = -1 mod p, theta trivial on F_q^x
          return ctx.neg(idmap.psi_modp(ctx.promote(cd.scalar, Level::Quad), e));
        case T::NonSemisimple:
          return ctx.neg(idmap.psi_modp(ctx.promote(cd.scalar, Level::Quad), e));
        case T::SplitSemisimple: return scalar(0);
        case T::Elliptic: {
          const FieldElem t1 = idmap.psi_modp(cd.lambda, e);
          const FieldElem t2 = idmap.psi_modp(cd.lambda, e * q);
          return ctx.neg(ctx.add(t1, t2));
        }
      }
      break;
    }
  }
  throw std::logic_error("unhandled character table entry");
}

std::complex<double> char_value_complex_class(const FieldCtx& ctx, const IrrepLabel& label,
                                              const ClassData& cd) {
  const IdentificationMap idmap(ctx);
  using T = ClassData::Type;
  using K = IrrepLabel::Kind;
  const long long q = ctx.q();

  switch (label.kind) {
    case K::Trivial:
      return 1.0;
    case K::EtaTwist:
      return double(eta_sign(ctx, cd.det));
    case K::Steinberg:
    case K::SteinbergEta: {
      double v;
      switch (cd.type) {
        case T::Central: v = double(q); break;
        case T::NonSemisimple: v = 0.0; break;
        case T::SplitSemisimple: v = 1.0; break;
        case T::Elliptic: v = -1.0; break;
      }
      if (label.kind == K::SteinbergEta) v *= double(eta_sign(ctx, cd.det));
      return v;
    }
    case K::PrincipalSeries: {
      switch (cd.type) {
        case T::Central: return double(q + 1);
        case T::NonSemisimple: return 1.0;
        case T::SplitSemisimple: {
          const FieldElem x = ctx.div(cd.eigen_a, cd.eigen_b);
          return idmap.psi_complex(x, label.r) + idmap.psi_complex(x, -label.r);
        }
        case T::Elliptic: return 0.0;
      }
      break;
    }
    case K::Cuspidal: {
      const long long e = (q - 1) * (label.r + 1);
      switch (cd.type) {
        case T::Central: return double(q - 1) * idmap.psi_complex(ctx.promote(cd.scalar, Level::Quad), e);
        case T::NonSemisimple: return -idmap.psi_complex(ctx.promote(cd.scalar, Level::Quad), e);
        case T::SplitSemisimple: return 0.0;
        case T::Elliptic:
          return -(idmap.psi_complex(cd.lambda, e) + idmap.psi_complex(cd.lambda, e * q));
      }
      break;
    }
  }
  throw std::logic_error("unhandled character table entry");
}

}  // namespace

FieldElem char_value_modp(const IrrepLabel& label, Mat2 g, const IdentificationMap& idmap) {
  return char_value_modp_class(label, classify(*idmap.ctx, g), idmap);
}

std::complex<double> char_value_complex(const FieldCtx& ctx, const IrrepLabel& label, Mat2 g) {
  return char_value_complex_class(ctx, label, classify(ctx, g));
}

TorusElements torus_elements(const TorusPair& tp) {
  const FieldCtx& ctx = *tp.ctx;
  TorusElements out;
  out.H.reserve(ctx.q() - 1);
  for (std::uint32_t r = 1; r < ctx.q(); ++r)
    out.H.push_back({ctx.from_rank(Level::Ext, r).packed, 0, 0, 1});
  const std::uint32_t alpha = tp.alpha.packed, u = tp.u.packed, one = 1;
  const std::uint32_t amu2 = ctx.rsub(alpha, ctx.rmul(u, u));
  out.K.reserve(ctx.q() + 1);
  for (std::uint32_t r = 0; r < ctx.q(); ++r) {
    const std::uint32_t z = ctx.from_rank(Level::Ext, r).packed;
    const std::uint32_t uz = ctx.rmul(u, z);
    out.K.push_back({ctx.radd(one, uz), ctx.rmul(amu2, z), z, ctx.rsub(one, uz)});
  }
  out.K.push_back({u, amu2, one, ctx.rneg(u)});
  return out;
}

namespace {

Mat2 mat2_mul(const FieldCtx& ctx, Mat2 x, Mat2 y) {
  return {ctx.radd(ctx.rmul(x.a, y.a), ctx.rmul(x.b, y.c)),
          ctx.radd(ctx.rmul(x.a, y.b), ctx.rmul(x.b, y.d)),
          ctx.radd(ctx.rmul(x.c, y.a), ctx.rmul(x.d, y.c)),
          ctx.radd(ctx.rmul(x.c, y.b), ctx.rmul(x.d, y.d))};
}

}  // namespace

std::vector<FieldElem> correlation_modp_batch(std::span<const IrrepLabel> labels,
                                              const TorusPair& tp,
                                              const IdentificationMap& idmap) {
  const FieldCtx& ctx = *tp.ctx;
  const TorusElements te = torus_elements(tp);
  std::vector<std::uint32_t> acc(labels.size(), 0);
  for (const Mat2& h : te.H) {
    for (const Mat2& k : te.K) {
      const ClassData cd = classify(ctx, mat2_mul(ctx, h, k));
      for (std::size_t i = 0; i < labels.size(); ++i) {
        const FieldElem v = char_value_modp_class(labels[i], cd, idmap);
        acc[i] = ctx.radd(acc[i], v.packed);
      }
    }
  }
  std::vector<FieldElem> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    // 1/(|H||K|) = 1/(q^2-1) = -1 mod p
    out[i] = ctx.demote({&ctx, Level::Quad, ctx.rneg(acc[i])}, Level::Ext);
  }
  return out;
}

FieldElem correlation_modp(const IrrepLabel& label, const TorusPair& tp,
                           const IdentificationMap& idmap) {
  return correlation_modp_batch(std::span(&label, 1), tp, idmap)[0];
}

std::vector<Char0Value> correlation_char0_values(std::span<const IrrepLabel> labels,
                                                 const TorusPair& tp) {
  const FieldCtx& ctx = *tp.ctx;
  const TorusElements te = torus_elements(tp);
  std::vector<std::complex<double>> acc(labels.size(), 0.0);
  for (const Mat2& h : te.H) {
    for (const Mat2& k : te.K) {
      const ClassData cd = classify(ctx, mat2_mul(ctx, h, k));
      for (std::size_t i = 0; i < labels.size(); ++i)
        acc[i] += char_value_complex_class(ctx, labels[i], cd);
    }
  }
  const double order = double(ctx.q2() - 1);
  std::vector<Char0Value> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Char0Value& cv = out[i];
    cv.value = acc[i] / order;
    if (std::abs(cv.value.imag()) > 1e-7)
      throw std::runtime_error("correlation has a non-real double sum");
    if (cv.value.real() < -1e-9)
      throw std::runtime_error("correlation is negative in the float path");
    const double scaled = cv.value.real() * order;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) <= 1e-5) {
      cv.has_rational = true;
      cv.rational = Rational(BigInt(std::llround(rounded)), BigInt(ctx.q2() - 1));
    }
  }
  return out;
}

Rational correlation_char0(const IrrepLabel& label, const TorusPair& tp) {
  const auto v = correlation_char0_values(std::span(&label, 1), tp)[0];
  if (!v.has_rational)
    throw std::runtime_error("rationalization residue exceeds tolerance; reduce q");
  return v.rational;
}

FieldElem prop_ip_sum(int r, const TorusPair& tp, const IdentificationMap& idmap) {
  const FieldCtx& ctx = *tp.ctx;
  std::uint32_t sum = 0;
  for (std::uint32_t rk = 1; rk < ctx.q(); ++rk) {
    const std::uint32_t lam = ctx.from_rank(Level::Ext, rk).packed;
    const std::uint32_t lpu = ctx.radd(lam, tp.u.packed);
    const std::uint32_t numer = ctx.rsub(tp.alpha.packed, ctx.rmul(lpu, lpu));
    const std::uint32_t arg = ctx.rdiv(numer, lam);
    sum = ctx.radd(sum, idmap.psi_modp({&ctx, Level::Quad, arg}, r).packed);
  }
  return ctx.demote({&ctx, Level::Quad, ctx.rneg(sum)}, Level::Ext);
}

long gg_unipotent_count(const TorusPair& tp) {
  const FieldCtx& ctx = *tp.ctx;
  const TorusElements te = torus_elements(tp);
  long count = 0;
  for (const Mat2& h : te.H) {
    for (const Mat2& k : te.K) {
      const Mat2 g = mat2_mul(ctx, h, k);
      const std::uint32_t tr = ctx.radd(g.a, g.d);
      const std::uint32_t det = ctx.rsub(ctx.rmul(g.a, g.d), ctx.rmul(g.b, g.c));
      if (ctx.rmul(tr, tr) != ctx.rmul(4 % ctx.p(), det)) continue;
      if (g.b == 0 && g.c == 0 && g.a == g.d) continue;  // central
      ++count;
    }
  }
  return count;
}

long gg_expected_count(const TorusPair& tp) {
  const FieldCtx& ctx = *tp.ctx;
  const std::uint32_t amu2 = ctx.rsub(tp.alpha.packed, ctx.rmul(tp.u.packed, tp.u.packed));
  const bool sq = ctx.is_square(ctx.demote({&ctx, Level::Quad, amu2}, Level::Ext));
  const bool minus_one_square = ctx.q() % 4 == 1;
  return (minus_one_square != sq) ? long(ctx.q()) - 1 : long(ctx.q()) - 3;
}

TableSelfTest table_selftest(const FieldCtx& ctx) {
  TableSelfTest st;
  const long long q = ctx.q();
  st.group_order = q * (q * q - 1);

  const auto labels = IrrepLabel::all(ctx);
  long long dim2 = 0;
  for (const auto& l : labels) dim2 += l.dim(ctx) * l.dim(ctx);
  st.dims_ok = dim2 == st.group_order;

  // Canonical PGL_2 representatives: first nonzero entry (in a,b,c,d scan
  // order) normalized to 1.
  std::vector<Mat2> reps;
  reps.reserve(std::size_t(st.group_order));
  for (std::uint32_t ar = 0; ar < ctx.q(); ++ar)
    for (std::uint32_t br = 0; br < ctx.q(); ++br)
      for (std::uint32_t cr = 0; cr < ctx.q(); ++cr)
        for (std::uint32_t dr = 0; dr < ctx.q(); ++dr) {
          const Mat2 g{ctx.from_rank(Level::Ext, ar).packed, ctx.from_rank(Level::Ext, br).packed,
                       ctx.from_rank(Level::Ext, cr).packed, ctx.from_rank(Level::Ext, dr).packed};
          if (ctx.rsub(ctx.rmul(g.a, g.d), ctx.rmul(g.b, g.c)) == 0) continue;
          const std::uint32_t first = g.a ? g.a : (g.b ? g.b : (g.c ? g.c : g.d));
          if (first != 1) continue;
          reps.push_back(g);
        }
  if ((long long)(reps.size()) != st.group_order)
    throw std::logic_error("PGL_2 representative count mismatch");

  // First orthogonality over the whole group, float path.
  std::vector<std::vector<std::complex<double>>> vals(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    vals[i].resize(reps.size());
    for (std::size_t g = 0; g < reps.size(); ++g)
      vals[i][g] = char_value_complex(ctx, labels[i], reps[g]);
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i; j < labels.size(); ++j) {
      std::complex<double> ip = 0.0;
      for (std::size_t g = 0; g < reps.size(); ++g) ip += vals[i][g] * std::conj(vals[j][g]);
      ip /= double(st.group_order);
      const double want = i == j ? 1.0 : 0.0;
      st.max_orthogonality_error =
          std::max(st.max_orthogonality_error, std::abs(ip - want));
    }
  }

  // Class-function check on random conjugate pairs (fixed seed).
  const IdentificationMap idmap(ctx);
  std::mt19937 rng(0xC0FFEE);
  std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat2 x = reps[pick(rng)];
    const Mat2 g = reps[pick(rng)];
    // g x g^{-1} via adjugate (scalars are irrelevant in PGL_2)
    const Mat2 ginv{g.d, ctx.rneg(g.b), ctx.rneg(g.c), g.a};
    const Mat2 conj = mat2_mul(ctx, mat2_mul(ctx, g, x), ginv);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const FieldElem a = char_value_modp(labels[i], x, idmap);
      const FieldElem b = char_value_modp(labels[i], conj, idmap);
      if (!(a == b)) st.max_class_function_error = 1.0;
      const auto fa = char_value_complex(ctx, labels[i], x);
      const auto fb = char_value_complex(ctx, labels[i], conj);
      st.max_class_function_error =
          std::max(st.max_class_function_error, std::abs(fa - fb));
    }
  }
  return st;
}

std::vector<CorrelationRow> correlation_report(const LegendreCache& cache, const TorusPair& tp,
                                               bool with_char0) {
  const FieldCtx& ctx = *tp.ctx;
  const IdentificationMap idmap(ctx);
  const auto labels = IrrepLabel::in_scope(ctx);
  const auto modp = correlation_modp_batch(labels, tp, idmap);
  std::vector<Char0Value> char0;
  if (with_char0) char0 = correlation_char0_values(labels, tp);

  const FieldElem sqrt_alpha = ctx.sqrt_in_ext(tp.alpha);
  const FieldElem x0 = ctx.div(ctx.promote(tp.u, Level::Quad), sqrt_alpha);

  std::vector<CorrelationRow> rows(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    CorrelationRow& row = rows[i];
    row.label = labels[i];
    row.c_modp = modp[i];
    const long long r = labels[i].legendre_index(ctx);
    const FieldElem val = legendre_mod_p(cache, int(r), ctx).eval(x0);
    row.legendre_pred = ctx.demote(ctx.mul(val, val), Level::Ext);
    row.agree_modp = row.c_modp == row.legendre_pred;
    if (with_char0 && char0[i].has_rational) {
      row.c_char0 = char0[i].rational;
      row.has_char0 = true;
      // reduce num/den mod p and compare (den is prime to p)
      const long long num = (long long)(boost::multiprecision::numerator(row.c_char0) % ctx.p());
      const long long den = (long long)(boost::multiprecision::denominator(row.c_char0) % ctx.p());
      const FieldElem reduced = ctx.div(ctx.from_int(num), ctx.from_int(den));
      row.agree_char0 = ctx.promote(reduced, Level::Ext) == ctx.promote(row.c_modp, Level::Ext);
    }
  }
  return rows;
}

}  // namespace torcor
