#ifndef TORCOR_BRAUER_HPP
#define TORCOR_BRAUER_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "torcor/legendre.hpp"
#include "torcor/polyx.hpp"

namespace torcor {

/// 2x2 matrix over F_q, entries packed. Row-major [[a, b], [c, d]].
struct Mat2 {
  std::uint32_t a = 0, b = 0, c = 0, d = 0;
};

/// Base-p digit vector (r_0, ..., r_{m-1}) of a weight r = sum r_i p^i.
struct WeightDigits {
  std::vector<int> d;

  static WeightDigits of(long long r, const FieldCtx& ctx);
  long long value(int p) const;
  std::string to_string() const;
};

/// The pair (alpha, u) defining the tori H and K_{alpha,u}. Validates that
/// alpha is a non-square of F_q^x and u lies in F_q.
struct TorusPair {
  const FieldCtx* ctx = nullptr;
  FieldElem alpha;
  FieldElem u;

  TorusPair(const FieldCtx& ctx, FieldElem alpha, FieldElem u);
};

/// Flat indexing of the monomial basis tensor_i x_i^{2r_i - j_i} y_i^{j_i},
/// 0 <= j_i <= 2r_i.
class TensorBasis {
 public:
  explicit TensorBasis(const WeightDigits& digits);
  std::size_t dim() const { return dim_; }
  int factors() const { return int(widths_.size()); }
  int width(int i) const { return widths_[std::size_t(i)]; }
  std::size_t flat(std::span<const int> j) const;
  std::vector<int> multi(std::size_t flat) const;
  /// Index of v_H = tensor x_i^{r_i} y_i^{r_i}.
  std::size_t h_index() const { return h_index_; }

 private:
  std::vector<int> widths_;
  std::size_t dim_ = 1;
  std::size_t h_index_ = 0;
};

/// Coefficient vector over F_{q^2} on a TensorBasis.
using TensorVec = std::vector<std::uint32_t>;
/// Row-major dim x dim matrix over F_{q^2}.
using TensorMat = std::vector<std::uint32_t>;

/// Matrix of rho_r(g) = tensor_i (Sym^{2r_i} (x) det^{-r_i}) o Frob^i on the
/// monomial basis. Throws on singular g.
TensorMat rep_action(const FieldCtx& ctx, const WeightDigits& digits, Mat2 g);

TensorVec fixed_vector_H(const FieldCtx& ctx, const WeightDigits& digits);
TensorVec fixed_vector_K(const FieldCtx& ctx, const WeightDigits& digits, const TorusPair& tp);

/// X = (1/|H|) sum_h rho(h) and Y_u = (1/|K|) sum_k rho(k) over K_{alpha,u};
/// both are idempotent. Note |H| = q-1 = -1 and |K| = q+1 = 1 mod p.
struct AveragingOps {
  TensorMat X, Y_u;
};
AveragingOps averaging_ops(const FieldCtx& ctx, const WeightDigits& digits, const TorusPair& tp);

TensorVec apply(const FieldCtx& ctx, const TensorMat& M, const TensorVec& v);
TensorMat mat_mul(const FieldCtx& ctx, const TensorMat& A, const TensorMat& B, std::size_t dim);

/// The scalars in X v_K = s v_H and Y_u v_H = t v_K. Extraction reads one
/// coordinate and then verifies proportionality of the whole vector; a
/// failure there is an implementation bug, not a mathematical case, and
/// throws std::logic_error.
FieldElem scalar_s(const FieldCtx& ctx, const WeightDigits& digits, const TorusPair& tp);
FieldElem scalar_t(const FieldCtx& ctx, const WeightDigits& digits, const TorusPair& tp);

/// Closed forms matching the averaging scalars, digit by digit:
///   s: (-1)^rho sum_{i in S_rho} (-1)^{(rho-i)/2} C(rho,i) C(rho-i,(rho-i)/2)
///      (alpha-u^2)^{(rho-i)/2} (2u)^i
///   t: -sum_{j in S_{q-1-rho}} (-1)^{(q-1-rho-j)/2} C(q-1-rho,(q-1-rho-j)/2)
///      C(rho,j) alpha^{(q-1-rho-j)/2} u^j
/// and the full scalar is the product over digits of the per-digit value
/// raised to p^i. The t form uses the q-1-rho exponent (each tensor factor
/// is averaged over the full K(F_q)); the p-1-rho variant printed for the
/// prime-field case is the m = 1 specialization.
FieldElem closed_form_s(long long r, const TorusPair& tp);
FieldElem closed_form_t(long long r, const TorusPair& tp);

struct Theorem1Row {
  long long r = 0;
  FieldElem s, t, st;
  FieldElem legendre_sq;
  bool agree = false;
  bool prefactor_clean = false;  // per-digit prefactors multiply to 1
};

/// Machine check of the congruence c = s t = [P_r(u/sqrt(alpha))]^2 mod p
/// for 0 <= r <= (q-1)/2.
Theorem1Row theorem1_modp(const LegendreCache& cache, long long r, const TorusPair& tp);

/// The Jordan-Hoelder component admitting both fixed vectors: the subset
/// J = {i | a_i = 2r_i or 2r_i + 1} for the base-p digits a_i of 2r
/// (principal series) or 2r+1 (cuspidal), and the factor weights
/// Sym^{2r_i} (x) det^{-r_i} (i in J) or Sym^{2p-2-2r_i} (x) det^{r_i} (else).
struct JhComponent {
  std::vector<int> J;
  struct Weight {
    int sym_power = 0;
    int det_power = 0;
  };
  std::vector<Weight> weights;
};
enum class JhKind { Principal, Cuspidal };
JhComponent jh_component(const FieldCtx& ctx, long long r, JhKind kind);

/// Ranks of the projections X and Y_u (brute-force Gaussian elimination
/// over F_{q^2}); the oracle behind the multiplicity-one claims.
std::pair<int, int> fixed_space_dims(const FieldCtx& ctx, const WeightDigits& digits,
                                     const TorusPair& tp);

/// Batched evaluation of the averaging scalars over a (alpha, u) grid:
/// X is built once per digit vector, Y once per alpha, and the unipotent
/// conjugation matrices once per u. Equivalent to scalar_s/scalar_t cell by
/// cell (and still verifies full proportionality every time).
class BrauerEngine {
 public:
  BrauerEngine(const FieldCtx& ctx, WeightDigits digits);

  const WeightDigits& digits() const { return digits_; }
  std::size_t dim() const { return basis_.dim(); }

  void set_alpha(FieldElem alpha);

  struct ST {
    FieldElem s, t;
  };
  ST scalars(FieldElem u);

 private:
  const FieldCtx* ctx_;
  WeightDigits digits_;
  TensorBasis basis_;
  TensorMat X_;
  TensorMat Y_;  // for the current alpha, u = 0
  FieldElem alpha_;
  bool has_alpha_ = false;
  std::map<std::uint32_t, TensorMat> nu_cache_;  // packed u -> rho(n_u)

  const TensorMat& unipotent_matrix(std::uint32_t u_packed);
};

}  // namespace torcor

#endif  // TORCOR_BRAUER_HPP
