#ifndef TORCOR_ANALYSIS_HPP
#define TORCOR_ANALYSIS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torcor/chars.hpp"

namespace torcor {

/// Deterministic work-sharing helper: runs fn(0..n-1) on up to `threads`
/// workers. Tasks must write only to their own slots.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Result of the simultaneous-nonvanishing search for one (ctx, alpha).
struct NonvanishWitness {
  const FieldCtx* ctx = nullptr;
  FieldElem alpha;
  bool found = false;
  FieldElem u;  // least witness when found
  /// P_r(u/sqrt(alpha))^2 for 0 <= r <= (q-1)/2 at the witness.
  std::vector<FieldElem> values;
  bool all_nonzero = false;
  long long witness_count = 0;  // witnesses among all u in F_q^x
};

/// Two search algorithms, compared element by element: the naive scan
/// evaluates P_r(u/sqrt(alpha)) for every r <= (q-1)/2 through base-p digit
/// products, the reduced scan only tests P_i for i <= (p-1)/2 (sufficient by
/// the digit and symmetry congruences). Throws std::logic_error if they ever
/// disagree. Returns the least witness u, or found = false after exhausting
/// F_q^x.
NonvanishWitness nonvanishing_search(const LegendreCache& cache, const FieldCtx& ctx,
                                     FieldElem alpha);

struct Theorem2Report {
  NonvanishWitness witness;
  std::vector<CorrelationRow> rows;  // correlations at the witness
  bool all_correlations_nonzero = false;
  long long nonresidue_count = 0;
  long long folded_degree = 0;  // floor((p^2-1)/16)
  bool counting_inequality = false;
};

/// Runs the search and re-derives every in-scope correlation at the witness,
/// checking all are units mod p. Requires m >= 2 (the proved range).
Theorem2Report theorem2_verify(const LegendreCache& cache, const FieldCtx& ctx, FieldElem alpha);

struct ExpectationReport {
  int p = 0, m = 0;
  FqPoly product_poly;  // P(x) = prod_{i <= (p-1)/2} P_i mod p
  int fold_parity = 0;  // P(x) = x^parity * folded(x^2)
  FqPoly folded;
  std::vector<FieldElem> good_c;      // non-residues with no P_r vanishing at sqrt(c)
  std::vector<FieldElem> bad_c;       // the complement
  std::vector<FieldElem> g_factor_c;  // non-residues with (x^2-c) | G_{2(p-1)}
  bool scans_agree = false;           // good_c == g_factor_c (a theorem for q = p)
  bool expectation_holds = false;     // good_c nonempty (report only)
};

/// The product-polynomial scan and the independent G_{2(p-1)} moment scan.
ExpectationReport expectation_scan(const LegendreCache& cache, const FieldCtx& ctx);

struct MomentFactorRow {
  int i = 0;
  std::vector<int> shape;
  bool only_small_factors = false;  // every irreducible factor has degree <= 2
};
struct MomentFactorReport {
  int p = 0;
  std::vector<MomentFactorRow> rows;
  bool g3_has_large_factor = false;  // would contradict the observed pattern
};

MomentFactorReport moment_factor_report(const LegendreCache& cache, const FieldCtx& ctx,
                                        int i_max);

/// One grid cell (p, m) of the identity suite.
struct SuiteCell {
  int p = 0, m = 1;
};

struct SuiteConfig {
  std::vector<SuiteCell> cells;
  std::vector<std::string> checks;  // empty = every registered check
  int threads = 1;
  /// Explicit alpha restriction (ranks in F_q); empty = all non-squares.
  std::vector<std::uint32_t> alpha_ranks;
  /// Explicit u restriction (ranks in F_q); empty = all of F_q.
  std::vector<std::uint32_t> u_ranks;
};

struct SuiteItem {
  std::string check;
  int p = 0, m = 0;
  bool exploratory = false;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::vector<SuiteItem> items;
  bool all_asserted_pass() const;
};

/// Names understood by the suite, in execution order.
std::vector<std::string> suite_check_names();

/// Executes every requested check over the configured grid and aggregates
/// pass/fail with one item per (check, cell). Exploratory items never fail
/// the aggregate.
SuiteResult run_identity_suite(const SuiteConfig& config);

}  // namespace torcor

#endif  // TORCOR_ANALYSIS_HPP
