#ifndef TORCOR_CLI_HPP
#define TORCOR_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "torcor/analysis.hpp"

namespace torcor {

/// Effective settings of one CLI invocation. Flags override config-file
/// values, which override the defaults.
struct RunConfig {
  std::vector<SuiteCell> cells;           // (p, m) grid
  bool cells_defaulted = false;           // true when no p was requested anywhere
  std::string alpha_rule = "all";         // "all" | "least" | "explicit"
  std::vector<long long> alpha_values;    // ranks in F_q when explicit
  std::string u_rule = "all";             // "all" | "explicit"
  std::vector<long long> u_values;
  std::vector<std::string> checks;        // identities filter; empty = all
  std::string format = "pretty";          // json | csv | pretty
  std::string out_path;                   // empty = stdout
  int threads = 1;
  long long max_q = 4096;
  int legendre_max_r = 12;                // legendre dump bound
  bool legendre_shapes = false;
  int legendre_moment = 0;
};

/// One report row: ordered (column, exact-string value) pairs.
using Row = std::vector<std::pair<std::string, std::string>>;

/// Serializes {config, field contexts, rows, summary} as JSON, CSV
/// (header + rows only) or an aligned text table. Byte-deterministic for a
/// fixed config: rows arrive sorted, numbers are exact strings, and no
/// timestamps or environment data are embedded.
void emit_report(const std::string& command, const RunConfig& cfg,
                 const std::vector<std::string>& context_jsons, const std::vector<Row>& rows,
                 const Row& summary, std::ostream& out);

/// Entry point used by the binary and by tests. Returns the process exit
/// code: 0 = all asserted checks pass, 1 = mathematical disagreement
/// (falsifying rows included in the report), 2 = configuration or usage
/// error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torcor

#endif  // TORCOR_CLI_HPP
