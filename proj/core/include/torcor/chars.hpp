#ifndef TORCOR_CHARS_HPP
#define TORCOR_CHARS_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "torcor/brauer.hpp"

namespace torcor {

/// Isomorphism class of an irreducible PGL_2(F_q) representation.
struct IrrepLabel {
  enum class Kind { Trivial, EtaTwist, Steinberg, SteinbergEta, PrincipalSeries, Cuspidal };
  Kind kind = Kind::Trivial;
  int r = 0;  // PrincipalSeries: 1..(q-3)/2, Cuspidal: 0..(q-3)/2

  long long dim(const FieldCtx& ctx) const;
  /// Admits fixed vectors for both H and K: trivial, St (x) eta, all
  /// principal series and all cuspidals. (St and eta alone do not.)
  bool both_fixed_vectors() const;
  /// The index r with c = [P_r(u/sqrt(alpha))]^2: r itself for principal
  /// series and cuspidal labels, 0 for trivial, (q-1)/2 for St (x) eta.
  long long legendre_index(const FieldCtx& ctx) const;
  std::string name() const;
  bool operator==(const IrrepLabel&) const = default;

  /// The full dual of PGL_2(F_q) in a fixed order.
  static std::vector<IrrepLabel> all(const FieldCtx& ctx);
  /// The labels admitting both fixed vectors, in a fixed order.
  static std::vector<IrrepLabel> in_scope(const FieldCtx& ctx);
};

/// Conjugacy data of an invertible 2x2 matrix over F_q (GL_2 level; all
/// character values taken with trivial central character).
struct ClassData {
  enum class Type { Central, NonSemisimple, SplitSemisimple, Elliptic };
  Type type = Type::Central;
  FieldElem det;
  FieldElem scalar;    // Central / NonSemisimple: the repeated eigenvalue
  FieldElem eigen_a, eigen_b;  // SplitSemisimple
  FieldElem lambda;    // Elliptic: in F_{q^2} \ F_q, up to lambda -> lambda^q
};

ClassData classify(const FieldCtx& ctx, Mat2 g);

/// The fixed identification of C with the p-adic closure: zeta_{q^2-1} maps
/// to the context generator, so psi (the character x -> zeta^{dlog x})
/// reduces mod p to the identity character of F_{q^2}^x, and chi = psi
/// restricted to F_q^x reduces to the identity character of F_q^x.
struct IdentificationMap {
  const FieldCtx* ctx = nullptr;
  explicit IdentificationMap(const FieldCtx& c) : ctx(&c) {}

  /// Mod-p value of psi^e at x != 0: simply x^e.
  FieldElem psi_modp(FieldElem x, long long e) const;
  /// Complex value zeta^{e dlog(x)} with zeta = exp(2 pi i/(q^2-1)).
  std::complex<double> psi_complex(FieldElem x, long long e) const;
};

/// Character value of the label at g, with every root of unity zeta^k
/// replaced by generator^k; lands in F_{q^2}.
FieldElem char_value_modp(const IrrepLabel& label, Mat2 g, const IdentificationMap& idmap);
std::complex<double> char_value_complex(const FieldCtx& ctx, const IrrepLabel& label, Mat2 g);

/// The q-1 elements of H = {diag(a,1)} and the q+1 elements of K_{alpha,u},
/// in canonical enumeration order.
struct TorusElements {
  std::vector<Mat2> H, K;
};
TorusElements torus_elements(const TorusPair& tp);

/// c(pi; H, K_{alpha,u}) mod p: the double character sum over H x K divided
/// by |H||K| = q^2-1 = -1 mod p. The result lies in F_q (checked).
FieldElem correlation_modp(const IrrepLabel& label, const TorusPair& tp,
                           const IdentificationMap& idmap);
/// One classify per (h,k) pair, all labels accumulated together.
std::vector<FieldElem> correlation_modp_batch(std::span<const IrrepLabel> labels,
                                              const TorusPair& tp,
                                              const IdentificationMap& idmap);

/// Characteristic-zero correlation: the double sum divided by q^2-1 in
/// floating point, checked real (imag < 1e-7) and nonnegative. The value is
/// an algebraic integer of O_m divided by q^2-1; it is rational exactly when
/// the label is fixed by the Galois action on its parameter, in which case
/// `rational` holds the rounding of (q^2-1) * value (residue < 1e-5).
/// Labels in a nontrivial Galois orbit (most cuspidal and principal-series
/// labels once q > 5) have conjugate irrational values and no rational form.
struct Char0Value {
  std::complex<double> value;
  bool has_rational = false;
  Rational rational;
};
std::vector<Char0Value> correlation_char0_values(std::span<const IrrepLabel> labels,
                                                 const TorusPair& tp);

/// The rationalized value; throws std::runtime_error when the rounding
/// residue exceeds tolerance (irrational value or float exhaustion).
Rational correlation_char0(const IrrepLabel& label, const TorusPair& tp);

/// <v_H, n_u v_K> in the principal series Ps(chi^r, chi^-r) evaluated mod p:
/// -sum_{lambda in F_q^x} [(alpha - (lambda+u)^2)/lambda]^r.
FieldElem prop_ip_sum(int r, const TorusPair& tp, const IdentificationMap& idmap);

/// Brute-force count of pairs (h,k) in H x K_{alpha,u} whose product is
/// unipotent and non-central (trace^2 = 4 det, not a scalar).
long gg_unipotent_count(const TorusPair& tp);
/// The four-case prediction: q-1 when exactly one of {-1, alpha-u^2} is a
/// square of F_q^x, q-3 otherwise. For q = p this is the (p mod 4) split.
long gg_expected_count(const TorusPair& tp);

struct TableSelfTest {
  bool dims_ok = false;                    // sum dim^2 == q(q^2-1)
  long long group_order = 0;
  double max_orthogonality_error = 0.0;    // first orthogonality relations
  double max_class_function_error = 0.0;   // |chi(x) - chi(g x g^-1)|
  bool pass(double tol = 1e-7) const {
    return dims_ok && max_orthogonality_error < tol && max_class_function_error < tol;
  }
};
/// Validates the embedded character table: dimension count, first
/// orthogonality (float path, over all of PGL_2), and invariance on
/// brute-force conjugates. Quadratic in the group order; intended for
/// desk-scale q.
TableSelfTest table_selftest(const FieldCtx& ctx);

/// One verified record: both computed values of c mod p, the Legendre
/// prediction, and the agreement flags.
struct CorrelationRow {
  IrrepLabel label;
  FieldElem c_modp;
  Rational c_char0;
  bool has_char0 = false;
  FieldElem legendre_pred;
  bool agree_modp = false;   // c_modp == legendre_pred
  bool agree_char0 = false;  // rationalized char-0 value reduces to c_modp
};

std::vector<CorrelationRow> correlation_report(const LegendreCache& cache, const TorusPair& tp,
                                               bool with_char0);

}  // namespace torcor

#endif  // TORCOR_CHARS_HPP
