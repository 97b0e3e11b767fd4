#ifndef TORCOR_LEGENDRE_HPP
#define TORCOR_LEGENDRE_HPP

#include <string>
#include <utility>
#include <vector>

#include "torcor/polyx.hpp"

namespace torcor {

using Rational = boost::multiprecision::cpp_rational;

/// P_0 .. P_max_r over Z[1/2], built eagerly by the three-term recursion
/// (r+1) P_{r+1} = (2r+1) x P_r - r P_{r-1} and then frozen; safe to share
/// across threads read-only.
class LegendreCache {
 public:
  explicit LegendreCache(int max_r);
  int max_r() const { return int(polys_.size()) - 1; }
  const DyadicPoly& poly(int r) const;

 private:
  std::vector<DyadicPoly> polys_;
};

/// One of the two closed forms; both must agree with the recursion exactly.
/// form 1: 2^{-r} sum_{i in S_r} (-1)^{(r-i)/2} C(r,(r-i)/2) C(r+i,i) x^i
/// form 2: 2^{-r} sum_{i in S_r} (-1)^{(r-i)/2} C(r,i) C(r-i,(r-i)/2)
///                (1-x^2)^{(r-i)/2} (2x)^i
DyadicPoly legendre_explicit(int r, int form);

/// P_r mod p by coefficient-wise reduction.
FqPoly legendre_mod_p(const LegendreCache& cache, int r, const FieldCtx& ctx);

/// P_r mod p via the base-p digit product prod_i P_{r_i}(x)^{p^i}; only the
/// single-digit polynomials are read from the cache, so r may exceed its
/// bound.
FqPoly legendre_mod_p_digits(const LegendreCache& cache, long long r, const FieldCtx& ctx);

struct PolyPairCheck {
  bool pass = false;
  FqPoly lhs, rhs;
};

/// P_r == prod P_{r_i}^{p^i} mod p for the base-p digits r_i of r.
PolyPairCheck ille_schur_check(const LegendreCache& cache, long long r, const FieldCtx& ctx);

/// P_{p-1-r} == P_r mod p, for 0 <= r <= p-1.
PolyPairCheck symmetry_check(const LegendreCache& cache, int r, const FieldCtx& ctx);

/// G_i = sum_{r=0}^{p-1} P_r(x)^i mod p.
FqPoly moment_G(const LegendreCache& cache, int i, const FieldCtx& ctx);

/// The two moment identities in F_p[x]:
///   (1) sum_r P_r == (-2|p) (x-1)^{(p-1)/2}
///   (2) sum_r P_r^2 == (x^2-1)^{(p-1)/2}
/// where (-2|p) is the Legendre symbol of -2.
std::pair<PolyPairCheck, PolyPairCheck> lemma61_check(const LegendreCache& cache,
                                                      const FieldCtx& ctx);

/// Pointwise on F_p:
///   P_r(x)^2 == 1 + P_r(2x^2-1)
///               + 2 sum_{y non-residue} P_r((y+1-2x^2)/(y-1)).
bool verify_vd(const LegendreCache& cache, int r, const FieldCtx& ctx);

/// Q_i(x) = sum_{j=0}^i (-1)^j C(i,j) C(i-j-1/2, i) x^j over Z[1/2].
DyadicPoly q_poly(int i);

/// Exact identity in Z[1/2][x]: P_r(x)^2 == sum_{i in S_r} a_i Q_i(2x^2-1),
/// with P_r = sum a_i x^i. Radical-free restatement of the functional
/// equation; equivalent since every i in S_r has the parity of r.
bool verify_fe(const LegendreCache& cache, int r);

/// Q_i(z^2) == z^i P_i((z+z^{-1})/2) as an identity of polynomials in z.
/// (The z^2 substitution is what makes the right side polynomial; the
/// relation does not hold verbatim in the plain variable.)
bool kelley_check(const LegendreCache& cache, int i);

/// Exact value of int_{-1}^{1} P_r P_s dx (0 for r != s, 2/(2r+1) for r == s).
Rational orthogonality_integral(const LegendreCache& cache, int r, int s);

}  // namespace torcor

#endif  // TORCOR_LEGENDRE_HPP
