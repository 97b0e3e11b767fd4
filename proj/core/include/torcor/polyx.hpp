#ifndef TORCOR_POLYX_HPP
#define TORCOR_POLYX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "torcor/fields.hpp"

namespace torcor {

using BigInt = boost::multiprecision::cpp_int;

/// Exact element of Z[1/2], kept in 2-adic normal form num * 2^exp with num
/// odd or zero. Denominators are therefore always powers of 2; any operation
/// that would leave the ring throws, which turns coefficient-arithmetic bugs
/// into loud failures instead of silent drift.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long n) : num_(n) { normalize(); }
  explicit Dyadic(BigInt n, int exp = 0) : num_(std::move(n)), exp_(exp) { normalize(); }

  const BigInt& odd_part() const { return num_; }
  int exp2() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ >= 0 || num_ == 0; }

  Dyadic operator-() const;
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }

  /// Exact division by a nonzero integer; throws std::domain_error if the
  /// odd part of c does not divide. Division by powers of 2 always succeeds.
  Dyadic div_exact(const BigInt& c) const;
  Dyadic half(int j = 1) const { return Dyadic(num_, exp_ - j); }

  /// Image in F_p (2 is invertible since p is odd).
  FieldElem mod_p(const FieldCtx& ctx) const;

  /// "n" for integers, "n/2^k" rendered with the denominator in decimal.
  std::string to_string() const;

 private:
  BigInt num_;   // odd, or zero (with exp_ = 0)
  int exp_ = 0;  // value = num_ * 2^exp_

  void normalize();
};

/// Dense polynomial over Z[1/2], canonical (no trailing zeros).
class DyadicPoly {
 public:
  DyadicPoly() = default;
  explicit DyadicPoly(std::vector<Dyadic> coeffs) : c_(std::move(coeffs)) { trim(); }
  static DyadicPoly constant(Dyadic d);
  static DyadicPoly x();

  int degree() const { return int(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const Dyadic& coeff(int i) const;
  const std::vector<Dyadic>& coeffs() const { return c_; }

  DyadicPoly operator+(const DyadicPoly& o) const;
  DyadicPoly operator-(const DyadicPoly& o) const;
  DyadicPoly operator*(const DyadicPoly& o) const;
  bool operator==(const DyadicPoly& o) const { return c_ == o.c_; }

  DyadicPoly scaled(const Dyadic& d) const;
  DyadicPoly pow(unsigned e) const;
  DyadicPoly compose(const DyadicPoly& inner) const;
  DyadicPoly derivative() const;
  /// Coefficient-wise exact division by an integer (see Dyadic::div_exact).
  DyadicPoly div_exact(const BigInt& c) const;

  Dyadic eval(const Dyadic& x) const;
  /// Horner evaluation after coefficient-wise reduction mod p.
  FieldElem eval_mod(const FieldCtx& ctx, FieldElem x) const;

  std::vector<std::string> coeff_strings() const;
  std::string to_string() const;  // human-readable, highest degree first

 private:
  std::vector<Dyadic> c_;
  void trim();
};

/// Dense polynomial with coefficients in one level of a field tower.
/// Coefficients are stored packed (F_{q^2} basis); `level` records the
/// subfield they live in.
class FqPoly {
 public:
  FqPoly() = default;
  FqPoly(const FieldCtx& ctx, Level level) : ctx_(&ctx), level_(level) {}
  FqPoly(const FieldCtx& ctx, Level level, std::vector<std::uint32_t> packed)
      : ctx_(&ctx), level_(level), c_(std::move(packed)) {
    trim();
  }
  static FqPoly constant(const FieldCtx& ctx, FieldElem e);
  static FqPoly x(const FieldCtx& ctx, Level lv);
  static FqPoly from_ints(const FieldCtx& ctx, std::vector<long long> ints);

  const FieldCtx* ctx() const { return ctx_; }
  Level level() const { return level_; }
  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::uint32_t packed_coeff(int i) const { return i < int(c_.size()) ? c_[i] : 0; }
  FieldElem coeff(int i) const;
  FieldElem leading() const;

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator*(const FqPoly& o) const;
  bool operator==(const FqPoly& o) const;

  FqPoly scaled(FieldElem e) const;
  FqPoly pow(unsigned e) const;
  FqPoly compose(const FqPoly& inner) const;
  FqPoly derivative() const;
  FqPoly monic() const;

  /// Quotient and remainder; deg(rem) < deg(divisor). Exact field division.
  std::pair<FqPoly, FqPoly> divmod(const FqPoly& divisor) const;
  /// Monic gcd.
  static FqPoly gcd(FqPoly a, FqPoly b);

  FieldElem eval(FieldElem x) const;
  std::uint32_t eval_packed(std::uint32_t x) const;

  std::vector<std::string> coeff_strings() const;
  std::string to_string() const;

 private:
  const FieldCtx* ctx_ = nullptr;
  Level level_ = Level::Prime;
  std::vector<std::uint32_t> c_;
  void trim();
  void check_compatible(const FqPoly& o) const;
};

/// Coefficient-wise image of a Z[1/2] polynomial in F_p[x].
FqPoly reduce_mod_p(const DyadicPoly& f, const FieldCtx& ctx);

/// All roots of f at the requested level with multiplicities, found by
/// exhaustive evaluation and repeated division; sorted by element rank.
/// Throws on the zero polynomial.
std::vector<std::pair<FieldElem, int>> roots_in_field(const FqPoly& f, Level lv);

/// Degrees (with multiplicity) of the irreducible factors of f over the
/// field of its own level, sorted ascending. Squarefree decomposition in
/// characteristic p followed by distinct-degree factorization; no
/// equal-degree splitting is needed for shapes alone.
std::vector<int> factor_shape(const FqPoly& f);

/// Quadratic non-residues c of F_q^x with (x^2 - c) | f, i.e. f(sqrt(c)) = 0,
/// sorted by rank. f must have coefficients in F_q.
std::vector<FieldElem> quad_nonresidue_factor_scan(const FqPoly& f);

}  // namespace torcor

#endif  // TORCOR_POLYX_HPP
