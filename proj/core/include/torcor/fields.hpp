#ifndef TORCOR_FIELDS_HPP
#define TORCOR_FIELDS_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace torcor {

/// Tower level of an element: F_p, F_q = F_{p^m}, or F_{q^2}.
enum class Level : std::uint8_t { Prime = 0, Ext = 1, Quad = 2 };

class FieldCtx;

/// Element of the tower. Internally every element is stored in the F_{q^2}
/// power basis as a base-p packed integer; `level` records the smallest
/// level the element is known to live in (used for range checks and for
/// printing in the element's own basis).
struct FieldElem {
  const FieldCtx* ctx = nullptr;
  Level level = Level::Prime;
  std::uint32_t packed = 0;

  bool is_zero() const { return packed == 0; }
  /// Coefficients over F_p in the power basis of the element's own level.
  std::vector<int> coeffs() const;
  /// Canonical total order at the element's own level: the integer
  /// sum c_i p^i of the own-basis coefficients. Used everywhere a "least"
  /// element is required, so all reports are reproducible.
  std::uint32_t rank() const;
  std::string to_string() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.ctx == b.ctx && a.packed == b.packed;
  }
};

/// Deterministic construction of the tower F_p < F_q < F_{q^2}.
///
/// Moduli are the least monic irreducibles of their degree, where polynomials
/// of equal degree are ordered by the integer value sum c_i p^i of their
/// non-leading coefficients; the generator of F_{q^2}^x is the least
/// primitive element in the same order. Construction is a pure function of
/// (p, m): equal inputs give bit-identical contexts.
///
/// Immutable after construction; all member functions are const and
/// thread-safe. Full exp/log tables are built up front, so the whole tower
/// is capped at p^{2m} <= 2^24 elements.
class FieldCtx {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;

  /// Throws std::invalid_argument for p even/composite, m < 1, or
  /// p^{2m} > kMaxOrder.
  FieldCtx(int p, int m);

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  int p() const { return p_; }
  int m() const { return m_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t q2() const { return q2_; }
  /// Monic irreducible of degree m defining F_q (coefficients low-degree
  /// first, including the leading 1).
  const std::vector<int>& modulus_q() const { return mod_q_; }
  /// Monic irreducible of degree 2m defining F_{q^2}.
  const std::vector<int>& modulus_q2() const { return mod_q2_; }
  FieldElem generator() const { return {this, Level::Quad, gen_}; }

  FieldElem zero(Level lv = Level::Prime) const { return {this, lv, 0}; }
  FieldElem one(Level lv = Level::Prime) const { return {this, lv, 1}; }
  /// Element of F_p from an integer (reduced mod p).
  FieldElem from_int(long long n) const;
  /// Element from own-basis coefficients (size 1, m or 2m by level).
  FieldElem from_coeffs(Level lv, std::span<const int> coeffs) const;
  /// Inverse of FieldElem::rank() at the given level.
  FieldElem from_rank(Level lv, std::uint32_t rank) const;

  FieldElem add(FieldElem x, FieldElem y) const;
  FieldElem sub(FieldElem x, FieldElem y) const;
  FieldElem neg(FieldElem x) const;
  FieldElem mul(FieldElem x, FieldElem y) const;
  FieldElem div(FieldElem x, FieldElem y) const;
  FieldElem inv(FieldElem x) const;
  FieldElem pow(FieldElem x, long long e) const;
  /// x^{p^i}.
  FieldElem frobenius(FieldElem x, int i = 1) const;

  /// True iff x lies in the subfield of the given level.
  bool in_level(FieldElem x, Level lv) const;
  /// Re-tags x at the given level; throws std::domain_error if x is not in it.
  FieldElem demote(FieldElem x, Level lv) const;
  /// Re-tags x at a higher level (no-op on the value).
  FieldElem promote(FieldElem x, Level lv) const;

  /// Euler criterion in F_q: x^{(q-1)/2} == 1. Requires x != 0, x in F_q.
  bool is_square(FieldElem x) const;
  /// Least s in F_{q^2} (by rank) with s^2 = alpha. Requires alpha in F_q^x.
  /// Consumers must only use the result through expressions invariant under
  /// s -> -s.
  FieldElem sqrt_in_ext(FieldElem alpha) const;
  /// k in [0, q^2-1) with generator^k = x. Requires x != 0.
  std::uint64_t discrete_log(FieldElem x) const;

  /// JSON fragment {p, m, modulus_q, modulus_q2, generator} embedded in
  /// every report.
  std::string to_json() const;

  // Packed-value kernel interface. All values live in the F_{q^2} basis;
  // zero handling and reduction are the caller's concern only insofar as
  // inputs must be < q2. These are the hot-loop primitives.
  std::uint32_t radd(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t rsub(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t rneg(std::uint32_t x) const;
  std::uint32_t rmul(std::uint32_t x, std::uint32_t y) const {
    if (x == 0 || y == 0) return 0;
    std::uint64_t e = std::uint64_t(log_[x]) + std::uint64_t(log_[y]);
    if (e >= ord_) e -= ord_;
    return exp_[e];
  }
  std::uint32_t rinv(std::uint32_t x) const;
  std::uint32_t rdiv(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t rpow(std::uint32_t x, long long e) const;
  std::uint32_t rfrob(std::uint32_t x, int i = 1) const;
  std::int64_t rlog(std::uint32_t x) const { return log_[x]; }
  std::uint32_t rexp(std::uint64_t e) const { return exp_[e % ord_]; }
  /// Packed image of the F_q element with the given rank.
  std::uint32_t rembed(std::uint32_t fq_rank) const { return embed_[fq_rank]; }
  /// Rank of a packed value known to lie in F_q (UINT32_MAX if it does not).
  std::uint32_t runembed(std::uint32_t packed) const;

 private:
  int p_ = 0, m_ = 0;
  std::uint32_t q_ = 0, q2_ = 0;
  std::uint64_t ord_ = 0;  // q^2 - 1
  std::vector<int> mod_q_, mod_q2_;
  std::uint32_t gen_ = 0;
  std::vector<std::uint32_t> exp_;   // size ord_
  std::vector<std::int64_t> log_;    // size q2_, log_[0] = -1
  std::vector<std::uint32_t> embed_;          // F_q rank -> packed
  std::vector<std::uint32_t> unembed_keys_;   // sorted packed images
  std::vector<std::uint32_t> unembed_vals_;   // ranks, parallel to keys

  void check_same_ctx(FieldElem x, FieldElem y) const;
};

/// Deterministic construction; see FieldCtx. Kept as a free function so the
/// call site reads like the operation it is.
inline std::unique_ptr<FieldCtx> build_field(int p, int m) {
  return std::make_unique<FieldCtx>(p, m);
}

}  // namespace torcor

#endif  // TORCOR_FIELDS_HPP
