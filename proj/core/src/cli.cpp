#include "torcor/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

namespace torcor {
namespace {

using Json = nlohmann::ordered_json;

std::string bool_str(bool b) { return b ? "true" : "false"; }

Json config_json(const RunConfig& cfg) {
  Json j;
  Json cells = Json::array();
  for (const auto& c : cfg.cells) cells.push_back({{"p", c.p}, {"m", c.m}});
  j["cells"] = cells;
  j["alpha"] = cfg.alpha_rule == "explicit" ? Json(cfg.alpha_values) : Json(cfg.alpha_rule);
  j["u"] = cfg.u_rule == "explicit" ? Json(cfg.u_values) : Json(cfg.u_rule);
  j["checks"] = cfg.checks;
  j["format"] = cfg.format;
  j["out"] = cfg.out_path;
  j["threads"] = cfg.threads;
  j["max_q"] = cfg.max_q;
  return j;
}

void write_json(const std::string& command, const RunConfig& cfg,
                const std::vector<std::string>& context_jsons, const std::vector<Row>& rows,
                const Row& summary, std::ostream& os) {
  Json doc;
  doc["command"] = command;
  doc["config"] = config_json(cfg);
  Json ctxs = Json::array();
  for (const auto& s : context_jsons) ctxs.push_back(Json::parse(s));
  doc["contexts"] = ctxs;
  Json jrows = Json::array();
  for (const Row& row : rows) {
    Json r;
    for (const auto& [k, v] : row) r[k] = v;
    jrows.push_back(std::move(r));
  }
  doc["rows"] = jrows;
  Json jsummary;
  for (const auto& [k, v] : summary) jsummary[k] = v;
  doc["summary"] = jsummary;
  os << doc.dump(2) << "\n";
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void write_csv(const std::vector<Row>& rows, std::ostream& os) {
  if (rows.empty()) return;
  for (std::size_t i = 0; i < rows[0].size(); ++i)
    os << (i ? "," : "") << csv_quote(rows[0][i].first);
  os << "\n";
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_quote(row[i].second);
    os << "\n";
  }
}

void write_pretty(const std::string& command, const std::vector<Row>& rows, const Row& summary,
                  std::ostream& os) {
  os << "# " << command << "\n";
  if (!rows.empty()) {
    std::vector<std::size_t> width(rows[0].size());
    for (std::size_t i = 0; i < rows[0].size(); ++i) width[i] = rows[0][i].first.size();
    for (const Row& row : rows)
      for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], row[i].second.size());
    for (std::size_t i = 0; i < rows[0].size(); ++i)
      os << std::left << std::setw(int(width[i]) + 2) << rows[0][i].first;
    os << "\n";
    for (const Row& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << std::left << std::setw(int(width[i]) + 2) << row[i].second;
      os << "\n";
    }
  }
  for (const auto& [k, v] : summary) os << k << ": " << v << "\n";
}

}  // namespace

void emit_report(const std::string& command, const RunConfig& cfg,
                 const std::vector<std::string>& context_jsons, const std::vector<Row>& rows,
                 const Row& summary, std::ostream& fallback) {
  std::ofstream file;
  std::ostream* os = &fallback;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output path: " + cfg.out_path);
    os = &file;
  }
  if (cfg.format == "json")
    write_json(command, cfg, context_jsons, rows, summary, *os);
  else if (cfg.format == "csv")
    write_csv(rows, *os);
  else
    write_pretty(command, rows, summary, *os);
}

namespace {

// ---------------------------------------------------------------- helpers

std::vector<FieldElem> select_alphas(const FieldCtx& ctx, const RunConfig& cfg) {
  std::vector<FieldElem> out;
  if (cfg.alpha_rule == "explicit") {
    for (long long v : cfg.alpha_values) {
      if (v < 0 || v >= (long long)(ctx.q()))
        throw std::invalid_argument("alpha rank out of range for q=" + std::to_string(ctx.q()));
      const FieldElem a = ctx.from_rank(Level::Ext, std::uint32_t(v));
      if (a.is_zero() || ctx.is_square(a))
        throw std::invalid_argument("alpha " + std::to_string(v) + " is not a non-square");
      out.push_back(a);
    }
    return out;
  }
  for (std::uint32_t r = 1; r < ctx.q(); ++r) {
    const FieldElem a = ctx.from_rank(Level::Ext, r);
    if (!ctx.is_square(a)) {
      out.push_back(a);
      if (cfg.alpha_rule == "least") break;
    }
  }
  return out;
}

std::vector<FieldElem> select_us(const FieldCtx& ctx, const RunConfig& cfg) {
  std::vector<FieldElem> out;
  if (cfg.u_rule == "explicit") {
    for (long long v : cfg.u_values) {
      if (v < 0 || v >= (long long)(ctx.q()))
        throw std::invalid_argument("u rank out of range for q=" + std::to_string(ctx.q()));
      out.push_back(ctx.from_rank(Level::Ext, std::uint32_t(v)));
    }
    return out;
  }
  for (std::uint32_t r = 0; r < ctx.q(); ++r) out.push_back(ctx.from_rank(Level::Ext, r));
  return out;
}

std::string rational_num(const Rational& r) {
  return boost::multiprecision::numerator(r).str();
}
std::string rational_den(const Rational& r) {
  return boost::multiprecision::denominator(r).str();
}

void validate_cells(const RunConfig& cfg) {
  if (cfg.cells.empty()) throw std::invalid_argument("no (p, m) cells configured");
  for (const auto& cell : cfg.cells) {
    long long q = 1;
    for (int i = 0; i < cell.m; ++i) q *= cell.p;
    if (q > cfg.max_q)
      throw std::invalid_argument("q = " + std::to_string(q) + " exceeds --max-q " +
                                  std::to_string(cfg.max_q));
  }
}

// ------------------------------------------------------------ subcommands

int cmd_verify_theorem1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate_cells(cfg);
  std::vector<std::string> ctx_jsons;
  std::vector<Row> rows;
  long long failures = 0, cells = 0;

  int max_r = 1;
  for (const auto& cell : cfg.cells) {
    long long q = 1;
    for (int i = 0; i < cell.m; ++i) q *= cell.p;
    max_r = std::max<int>(max_r, int((q - 1) / 2));
  }
  const LegendreCache cache(max_r);

  for (const auto& cell : cfg.cells) {
    const FieldCtx ctx(cell.p, cell.m);
    ctx_jsons.push_back(ctx.to_json());
    const IdentificationMap idmap(ctx);
    const auto labels = IrrepLabel::in_scope(ctx);
    const auto alphas = select_alphas(ctx, cfg);
    const auto us = select_us(ctx, cfg);
    const long long half_q = ((long long)(ctx.q()) - 1) / 2;
    const bool with_char0 = ctx.q() <= 27;

    std::vector<BrauerEngine> engines;
    for (long long r = 0; r <= half_q; ++r)
      engines.emplace_back(ctx, WeightDigits::of(r, ctx));

    for (const FieldElem& alpha : alphas) {
      for (auto& e : engines) e.set_alpha(alpha);
      const FieldElem sqrt_alpha = ctx.sqrt_in_ext(alpha);
      for (const FieldElem& u : us) {
        const TorusPair tp(ctx, alpha, u);
        const auto corr = correlation_modp_batch(labels, tp, idmap);
        std::vector<Char0Value> char0;
        if (with_char0) char0 = correlation_char0_values(labels, tp);
        const FieldElem x0 = ctx.div(ctx.promote(u, Level::Quad), sqrt_alpha);
        std::vector<FieldElem> st(std::size_t(half_q) + 1), pred(std::size_t(half_q) + 1);
        for (long long r = 0; r <= half_q; ++r) {
          const auto sc = engines[std::size_t(r)].scalars(u);
          st[std::size_t(r)] = ctx.mul(sc.s, sc.t);
          const FieldElem v = legendre_mod_p(cache, int(r), ctx).eval(x0);
          pred[std::size_t(r)] = ctx.demote(ctx.mul(v, v), Level::Ext);
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
          const long long r = labels[i].legendre_index(ctx);
          const bool agree_modp = corr[i] == pred[std::size_t(r)];
          const bool agree_st = corr[i] == st[std::size_t(r)];
          bool agree_char0 = true;
          std::string c0n, c0d;
          if (with_char0 && char0[i].has_rational) {
            const Rational& c0 = char0[i].rational;
            c0n = rational_num(c0);
            c0d = rational_den(c0);
            const long long nn = (long long)(boost::multiprecision::numerator(c0) % ctx.p());
            const long long dd = (long long)(boost::multiprecision::denominator(c0) % ctx.p());
            agree_char0 =
                ctx.promote(ctx.div(ctx.from_int(nn), ctx.from_int(dd)), Level::Ext) ==
                ctx.promote(corr[i], Level::Ext);
          }
          ++cells;
          if (!agree_modp || !agree_st || !agree_char0) ++failures;
          rows.push_back({{"label", labels[i].name()},
                          {"p", std::to_string(cell.p)},
                          {"m", std::to_string(cell.m)},
                          {"alpha", alpha.to_string()},
                          {"u", u.to_string()},
                          {"c_modp", corr[i].to_string()},
                          {"st", st[std::size_t(r)].to_string()},
                          {"c_char0_num", c0n},
                          {"c_char0_den", c0d},
                          {"legendre_pred", pred[std::size_t(r)].to_string()},
                          {"agree_modp", bool_str(agree_modp)},
                          {"agree_st", bool_str(agree_st)},
                          {"agree_char0", bool_str(agree_char0)}});
        }
      }
    }
  }
  const Row summary{{"rows", std::to_string(cells)},
                    {"failures", std::to_string(failures)},
                    {"status", failures == 0 ? "pass" : "FAIL"}};
  emit_report("verify-theorem1", cfg, ctx_jsons, rows, summary, out);
  if (failures) err << failures << " disagreement(s); see report rows\n";
  return failures == 0 ? 0 : 1;
}

int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate_cells(cfg);
  std::vector<std::string> ctx_jsons;
  std::vector<Row> rows;
  long long failures = 0;

  int max_r = 64;
  for (const auto& cell : cfg.cells) max_r = std::max(max_r, cell.p);
  const LegendreCache cache(max_r);

  for (const auto& cell : cfg.cells) {
    const FieldCtx ctx(cell.p, cell.m);
    ctx_jsons.push_back(ctx.to_json());
    const auto alphas = select_alphas(ctx, cfg);
    for (const FieldElem& alpha : alphas) {
      Row row{{"p", std::to_string(cell.p)},
              {"m", std::to_string(cell.m)},
              {"alpha", alpha.to_string()}};
      if (cell.m >= 2) {
        const auto rep = theorem2_verify(cache, ctx, alpha);
        const bool ok =
            rep.witness.found && rep.all_correlations_nonzero && rep.counting_inequality;
        if (!ok) ++failures;
        row.push_back({"witness_u", rep.witness.found ? rep.witness.u.to_string() : ""});
        row.push_back({"witness_count", std::to_string(rep.witness.witness_count)});
        row.push_back({"nonresidues", std::to_string(rep.nonresidue_count)});
        row.push_back({"folded_degree", std::to_string(rep.folded_degree)});
        row.push_back({"correlations_nonzero", bool_str(rep.all_correlations_nonzero)});
        row.push_back({"exploratory", "false"});
        row.push_back({"status", ok ? "pass" : "FAIL"});
      } else {
        const auto w = nonvanishing_search(cache, ctx, alpha);
        row.push_back({"witness_u", w.found ? w.u.to_string() : ""});
        row.push_back({"witness_count", std::to_string(w.witness_count)});
        row.push_back({"nonresidues", std::to_string(((long long)(ctx.q()) - 1) / 2)});
        row.push_back({"folded_degree",
                       std::to_string(((long long)(ctx.p()) * ctx.p() - 1) / 16)});
        row.push_back({"correlations_nonzero", ""});
        row.push_back({"exploratory", "true"});
        row.push_back({"status", w.found ? "witness" : "exhausted"});
      }
      rows.push_back(std::move(row));
    }
  }
  const Row summary{{"rows", std::to_string(rows.size())},
                    {"failures", std::to_string(failures)},
                    {"status", failures == 0 ? "pass" : "FAIL"}};
  emit_report("search", cfg, ctx_jsons, rows, summary, out);
  if (failures) err << failures << " failed search cell(s)\n";
  return failures == 0 ? 0 : 1;
}

int cmd_identities(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  validate_cells(cfg);
  SuiteConfig sc;
  sc.cells = cfg.cells;
  sc.checks = cfg.checks;
  sc.threads = cfg.threads;
  if (cfg.alpha_rule == "explicit")
    for (long long v : cfg.alpha_values) sc.alpha_ranks.push_back(std::uint32_t(v));
  if (cfg.u_rule == "explicit")
    for (long long v : cfg.u_values) sc.u_ranks.push_back(std::uint32_t(v));

  const SuiteResult res = run_identity_suite(sc);
  std::vector<std::string> ctx_jsons;
  for (const auto& cell : cfg.cells) ctx_jsons.push_back(FieldCtx(cell.p, cell.m).to_json());
  std::vector<Row> rows;
  long long failures = 0;
  for (const auto& item : res.items) {
    if (!item.exploratory && !item.pass) ++failures;
    rows.push_back({{"check", item.check},
                    {"p", std::to_string(item.p)},
                    {"m", std::to_string(item.m)},
                    {"exploratory", bool_str(item.exploratory)},
                    {"pass", bool_str(item.pass)},
                    {"detail", item.detail}});
  }
  const Row summary{{"rows", std::to_string(rows.size())},
                    {"failures", std::to_string(failures)},
                    {"status", failures == 0 ? "pass" : "FAIL"}};
  emit_report("identities", cfg, ctx_jsons, rows, summary, out);
  return failures == 0 ? 0 : 1;
}

int cmd_legendre(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const int max_r = cfg.legendre_max_r;
  const LegendreCache cache(max_r);
  std::vector<std::string> ctx_jsons;
  std::vector<Row> rows;
  std::unique_ptr<FieldCtx> ctx;
  std::unique_ptr<LegendreCache> pcache;
  const LegendreCache* use_cache = &cache;
  if (!cfg.cells_defaulted && !cfg.cells.empty() && cfg.cells[0].p > 0) {
    ctx = std::make_unique<FieldCtx>(cfg.cells[0].p, 1);
    ctx_jsons.push_back(ctx->to_json());
    if (ctx->p() - 1 > max_r) {
      pcache = std::make_unique<LegendreCache>(std::max(max_r, ctx->p() - 1));
      use_cache = pcache.get();
    }
  }
  for (int r = 0; r <= max_r; ++r) {
    Row row{{"kind", "P"}, {"r", std::to_string(r)}};
    if (ctx) {
      const FqPoly pr = legendre_mod_p(*use_cache, r, *ctx);
      std::string coeffs = "[";
      const auto cs = pr.coeff_strings();
      for (std::size_t i = 0; i < cs.size(); ++i) coeffs += (i ? ";" : "") + cs[i];
      coeffs += "]";
      row.push_back({"coeffs", coeffs});
      if (cfg.legendre_shapes) {
        std::string shape = "{";
        if (!pr.is_zero()) {
          const auto sh = factor_shape(pr);
          for (std::size_t i = 0; i < sh.size(); ++i)
            shape += (i ? "," : "") + std::to_string(sh[i]);
        }
        shape += "}";
        row.push_back({"factor_shape", shape});
      }
    } else {
      std::string coeffs = "[";
      const auto cs = cache.poly(r).coeff_strings();
      for (std::size_t i = 0; i < cs.size(); ++i) coeffs += (i ? ";" : "") + cs[i];
      coeffs += "]";
      row.push_back({"coeffs", coeffs});
      if (cfg.legendre_shapes) row.push_back({"factor_shape", ""});
    }
    rows.push_back(std::move(row));
  }
  if (ctx && cfg.legendre_moment > 0) {
    const LegendreCache mcache(std::max(max_r, ctx->p() - 1));
    for (int i = 1; i <= cfg.legendre_moment; ++i) {
      const FqPoly g = moment_G(mcache, i, *ctx);
      Row row{{"kind", "G"}, {"r", std::to_string(i)}};
      std::string coeffs = "[";
      const auto cs = g.coeff_strings();
      for (std::size_t j = 0; j < cs.size(); ++j) coeffs += (j ? ";" : "") + cs[j];
      coeffs += "]";
      row.push_back({"coeffs", coeffs});
      if (cfg.legendre_shapes) {
        std::string shape = "{";
        if (!g.is_zero()) {
          const auto sh = factor_shape(g);
          for (std::size_t j = 0; j < sh.size(); ++j)
            shape += (j ? "," : "") + std::to_string(sh[j]);
        }
        shape += "}";
        row.push_back({"factor_shape", shape});
      }
      rows.push_back(std::move(row));
    }
  }
  const Row summary{{"rows", std::to_string(rows.size())}, {"status", "ok"}};
  emit_report("legendre", cfg, ctx_jsons, rows, summary, out);
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  // Full document: identity suite plus theorem-1 rows plus search results.
  RunConfig sub = cfg;
  sub.out_path = "";
  sub.format = "json";

  std::ostringstream ident_out;
  const int rc1 = cmd_identities(sub, ident_out, err);
  std::ostringstream thm_out;
  const int rc2 = cmd_verify_theorem1(sub, thm_out, err);
  std::ostringstream search_out;
  RunConfig search_cfg = sub;
  const int rc3 = cmd_search(search_cfg, search_out, err);

  Json doc;
  doc["command"] = "report";
  doc["config"] = config_json(cfg);
  doc["identities"] = Json::parse(ident_out.str());
  doc["theorem1"] = Json::parse(thm_out.str());
  doc["search"] = Json::parse(search_out.str());
  const int rc = std::max({rc1, rc2, rc3});
  doc["summary"] = {{"status", rc == 0 ? "pass" : "FAIL"}};

  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output path: " + cfg.out_path);
    os = &file;
  }
  *os << doc.dump(2) << "\n";
  return rc;
}

// ------------------------------------------------------------- parsing

struct RawArgs {
  std::vector<int> ps, ms;
  std::string alpha = "all";
  std::string u = "all";
  std::vector<std::string> checks;
  std::string format;
  std::string out_path;
  int threads = 0;
  long long max_q = 0;
  std::string config_path;
  int legendre_max_r = -1;
  bool legendre_shapes = false;
  int legendre_moment = 0;
};

std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    const long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad integer list: " + s);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

void apply_selection(const std::string& text, std::string& rule, std::vector<long long>& values,
                     bool allow_least) {
  if (text == "all") {
    rule = "all";
  } else if (allow_least && text == "least") {
    rule = "least";
  } else {
    rule = "explicit";
    values = parse_int_list(text);
  }
}

// Default grid: the exhaustively verifiable fields.
std::vector<SuiteCell> default_cells() {
  return {{3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 3}};
}

RunConfig build_config(const RawArgs& raw) {
  RunConfig cfg;
  if (!raw.config_path.empty()) {
    std::ifstream in(raw.config_path);
    if (!in) throw std::invalid_argument("cannot read config file: " + raw.config_path);
    Json j = Json::parse(in);
    if (j.contains("p")) {
      std::vector<int> ps = j["p"].get<std::vector<int>>();
      std::vector<int> ms = j.contains("m") ? j["m"].get<std::vector<int>>() : std::vector<int>{1};
      for (int p : ps)
        for (int m : ms) cfg.cells.push_back({p, m});
    }
    if (j.contains("alpha")) {
      if (j["alpha"].is_string())
        cfg.alpha_rule = j["alpha"].get<std::string>();
      else {
        cfg.alpha_rule = "explicit";
        cfg.alpha_values = j["alpha"].get<std::vector<long long>>();
      }
    }
    if (j.contains("u")) {
      if (j["u"].is_string())
        cfg.u_rule = j["u"].get<std::string>();
      else {
        cfg.u_rule = "explicit";
        cfg.u_values = j["u"].get<std::vector<long long>>();
      }
    }
    if (j.contains("checks")) cfg.checks = j["checks"].get<std::vector<std::string>>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("max_q")) cfg.max_q = j["max_q"].get<long long>();
  }

  if (!raw.ps.empty()) {
    cfg.cells.clear();
    const std::vector<int> ms = raw.ms.empty() ? std::vector<int>{1} : raw.ms;
    for (int p : raw.ps)
      for (int m : ms) cfg.cells.push_back({p, m});
  } else if (!raw.ms.empty() && !cfg.cells.empty()) {
    // config provided p's; override m grid
    std::vector<SuiteCell> cells;
    std::set<int> ps;
    for (const auto& c : cfg.cells) ps.insert(c.p);
    for (int p : ps)
      for (int m : raw.ms) cells.push_back({p, m});
    cfg.cells = cells;
  }
  if (cfg.cells.empty()) {
    cfg.cells = default_cells();
    cfg.cells_defaulted = true;
  }

  apply_selection(raw.alpha, cfg.alpha_rule, cfg.alpha_values, /*allow_least=*/true);
  apply_selection(raw.u, cfg.u_rule, cfg.u_values, /*allow_least=*/false);
  if (!raw.checks.empty()) cfg.checks = raw.checks;
  if (!raw.format.empty()) {
    if (raw.format != "json" && raw.format != "csv" && raw.format != "pretty")
      throw std::invalid_argument("format must be json, csv or pretty");
    cfg.format = raw.format;
  }
  if (!raw.out_path.empty()) cfg.out_path = raw.out_path;
  if (raw.threads > 0) cfg.threads = raw.threads;
  if (raw.max_q > 0) cfg.max_q = raw.max_q;
  if (raw.legendre_max_r >= 0) cfg.legendre_max_r = raw.legendre_max_r;
  cfg.legendre_shapes = raw.legendre_shapes;
  cfg.legendre_moment = raw.legendre_moment;
  return cfg;
}

void add_common_options(CLI::App* sub, RawArgs& raw) {
  sub->add_option("--p", raw.ps, "prime(s) p")->delimiter(',');
  sub->add_option("--m", raw.ms, "extension degree(s) m (default 1)")->delimiter(',');
  sub->add_option("--alpha", raw.alpha, "alpha selection: all | least | rank[,rank...]");
  sub->add_option("--u", raw.u, "u selection: all | rank[,rank...]");
  sub->add_option("--check", raw.checks, "identity check name (repeatable)");
  sub->add_option("--format", raw.format, "output format: json | csv | pretty");
  sub->add_option("--out", raw.out_path, "output path (default stdout)");
  sub->add_option("--threads", raw.threads, "worker threads");
  sub->add_option("--max-q", raw.max_q, "refuse cells with q above this bound");
  sub->add_option("--config", raw.config_path, "JSON config file mirroring the flags");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact verification of torus correlation congruences on PGL2(F_q)"};
  app.require_subcommand(1);
  RawArgs raw;

  CLI::App* verify = app.add_subcommand(
      "verify-theorem1", "check c = s*t = P_r(u/sqrt(alpha))^2 over the configured grid");
  add_common_options(verify, raw);
  CLI::App* search = app.add_subcommand(
      "search", "simultaneous-nonvanishing witness search (exploratory for m = 1)");
  add_common_options(search, raw);
  CLI::App* identities =
      app.add_subcommand("identities", "run the identity suite (see --check for names)");
  add_common_options(identities, raw);
  CLI::App* legendre = app.add_subcommand("legendre", "dump Legendre polynomial tables");
  add_common_options(legendre, raw);
  legendre->add_option("--max-r", raw.legendre_max_r, "table bound (default 12)");
  legendre->add_flag("--shapes", raw.legendre_shapes, "include mod-p factor shapes");
  legendre->add_option("--moments", raw.legendre_moment, "also dump G_1..G_i mod p");
  CLI::App* report =
      app.add_subcommand("report", "one JSON document with identities, theorem1 and search");
  add_common_options(report, raw);

  // CLI11's vector overload consumes arguments back to front.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (reversed.empty()) reversed = {"--help"};
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const RunConfig cfg = build_config(raw);
    if (verify->parsed()) return cmd_verify_theorem1(cfg, out, err);
    if (search->parsed()) return cmd_search(cfg, out, err);
    if (identities->parsed()) return cmd_identities(cfg, out, err);
    if (legendre->parsed()) return cmd_legendre(cfg, out, err);
    if (report->parsed()) return cmd_report(cfg, out, err);
    err << "no subcommand\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace torcor
