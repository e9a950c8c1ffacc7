// heckebound: traces, dimensions, characteristic polynomials and degree bounds
// for spaces of cusp forms S_k(Gamma0(N), chi).
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "heckebound/bounds.hpp"
#include "heckebound/equidist.hpp"
#include "heckebound/errors.hpp"
#include "heckebound/ingest.hpp"
#include "heckebound/report.hpp"
#include "heckebound/verify.hpp"
#include "json.hpp"

using namespace heckebound;
using json = nlohmann::json;

namespace {

// Exit codes shared by every subcommand.
constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kConfigError = 2;

struct Space {
  int k = 2;
  u64 N = 1;
  std::string chi = "trivial";

  SpaceParams params() const { return SpaceParams(k, N, DirichletCharacter::parse(chi, N)); }
};

void add_space(CLI::App* cmd, Space& s, bool require_N = true) {
  cmd->add_option("--k", s.k, "Weight")->required();
  auto* n = cmd->add_option("--N", s.N, "Level");
  if (require_N) n->required();
  cmd->add_option("--chi", s.chi, "Character, \"N.i\" (Conrey) or \"trivial\"")->capture_default_str();
}

std::string poly_str(const IntPoly& f) { return poly::to_string(f); }

json coeffs(const IntPoly& f) {
  json a = json::array();
  for (const auto& c : f) a.push_back(c.get_str());
  return a;
}

json interval(const Interval& x, int digits) {
  return {{"lo", format_rational(x.lo_rational())}, {"hi", format_rational(x.hi_rational())}, {"display", x.str(digits)}};
}

int print_bounds(const std::vector<BoundReport>& rows, const RunConfig& cfg) {
  if (cfg.format == Format::Json) {
    for (const auto& r : rows) std::cout << to_json_line(r, cfg.precision) << "\n";
  } else {
    std::cout << bound_table(rows, cfg.precision).render(cfg.format);
  }
  for (const auto& r : rows)
    if (r.verdict == Verdict::Violated) return kViolation;
  return kOk;
}

// ---- trace / dim ----------------------------------------------------------

int cmd_trace(const Space& sp, u64 n, bool fresh, const RunConfig& cfg) {
  const SpaceParams s = sp.params();
  const TraceValue v = fresh ? trace_new(s, n) : trace_full(s, n);
  if (cfg.format == Format::Json) {
    json j = {{"space", s.str()}, {"n", n}, {"new", fresh}, {"value", v.value.str()}};
    if (v.terms) {
      j["terms"] = {{"main", v.terms->main.str()},
                    {"elliptic", v.terms->elliptic.str()},
                    {"hyperbolic", v.terms->hyperbolic.str()},
                    {"parabolic", v.terms->parabolic.str()}};
    }
    std::cout << j.dump() << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "k,N,chi,n,new,value\n"
              << s.k << "," << s.N << "," << s.chi.label_string() << "," << n << "," << (fresh ? 1 : 0) << ","
              << csv_escape(v.value.str()) << "\n";
  } else {
    std::cout << v.value.str() << "\n";
  }
  return kOk;
}

int cmd_dim(const Space& sp, bool fresh, const RunConfig& cfg) {
  const SpaceParams s = sp.params();
  const i64 full = dim_full(s), nw = dim_new(s);
  if (cfg.format == Format::Json) {
    std::cout << json{{"space", s.str()}, {"dim", full}, {"dim_new", nw}}.dump() << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "k,N,chi,dim,dim_new\n" << s.k << "," << s.N << "," << s.chi.label_string() << "," << full << "," << nw << "\n";
  } else {
    std::cout << (fresh ? nw : full) << "\n";
  }
  return kOk;
}

// ---- charpoly --------------------------------------------------------------

int cmd_charpoly(const Space& sp, u64 p, const RunConfig& cfg) {
  const SpaceParams s = sp.params();
  const HeckeCharPoly P = charpoly_new(s, p);
  const auto degrees = factor_degrees(P);
  const auto min_abs = min_nonzero_normalized_root(P);
  if (cfg.format == Format::Json) {
    json factors = json::array();
    for (const auto& f : P.factors)
      factors.push_back({{"coefficients", coeffs(f.poly)}, {"poly", poly_str(f.poly)}, {"multiplicity", f.multiplicity}});
    json j = {{"space", s.str()}, {"p", p}, {"coefficients", coeffs(P.coefficients)}, {"poly", P.str()},
              {"factors", factors}, {"degrees", degrees}, {"min_abs", nullptr}};
    if (min_abs) j["min_abs"] = interval(*min_abs, cfg.precision);
    std::cout << j.dump() << "\n";
    return kOk;
  }
  std::string fac, deg;
  for (std::size_t i = 0; i < P.factors.size(); ++i) {
    fac += (i ? ", " : "") + poly_str(P.factors[i].poly);
    if (P.factors[i].multiplicity > 1) fac += "^" + std::to_string(P.factors[i].multiplicity);
  }
  for (std::size_t i = 0; i < degrees.size(); ++i) deg += (i ? ", " : "") + std::to_string(degrees[i]);
  const std::string m = min_abs ? min_abs->str(cfg.precision) : "none";
  if (cfg.format == Format::Csv) {
    std::cout << "k,N,chi,p,poly,factors,degrees,min_abs_lo,min_abs_hi\n"
              << s.k << "," << s.N << "," << s.chi.label_string() << "," << p << "," << csv_escape(P.str()) << ","
              << csv_escape(fac) << "," << csv_escape(deg) << "," << (min_abs ? format_lo(*min_abs, cfg.precision) : "")
              << "," << (min_abs ? format_hi(*min_abs, cfg.precision) : "") << "\n";
    return kOk;
  }
  if (P.degree() == 0) {
    std::cout << "1 (empty space)\n";
    return kOk;
  }
  std::cout << P.str() << " ; factors: [" << fac << "] ; degrees: {" << deg << "} ; min |a'|: " << m << "\n";
  return kOk;
}

// ---- equi ------------------------------------------------------------------

int cmd_equi(const Space& sp, u64 p, const std::vector<std::string>& A_text, const std::vector<unsigned>& Ms, bool small,
             const RunConfig& cfg) {
  const SpaceParams s = sp.params();
  if (small) {
    const auto r = find_small_eigenform(s, p);
    if (cfg.format == Format::Json) {
      json j = {{"space", s.str()}, {"p", p}, {"threshold", interval(r.threshold, cfg.precision)},
                {"M", r.equi.M}, {"witness", r.witness}, {"min_abs", nullptr}, {"degree_bound", nullptr},
                {"equi", json::parse(to_json_line(r.equi, cfg.precision))}};
      if (r.min_abs) j["min_abs"] = interval(*r.min_abs, cfg.precision);
      if (r.degree_bound) j["degree_bound"] = interval(*r.degree_bound, cfg.precision);
      std::cout << j.dump() << "\n";
    } else {
      Table t{{"space", "p", "threshold", "M", "witness", "min_abs", "degree_bound"}, {}};
      t.rows.push_back({s.str(), std::to_string(p), r.threshold.str(cfg.precision), std::to_string(r.equi.M),
                        r.witness ? "yes" : "no", r.min_abs ? r.min_abs->str(cfg.precision) : "",
                        r.degree_bound ? r.degree_bound->str(cfg.precision) : ""});
      std::cout << t.render(cfg.format);
    }
    return kOk;
  }
  if (A_text.empty() || Ms.empty()) throw DomainError("equi needs --A and --M (or --small)");
  std::vector<mpq_class> As;
  for (const auto& a : A_text) As.push_back(parse_rational(a));
  const auto rows = equi_grid(s, p, As, Ms);
  if (cfg.format == Format::Json) {
    for (const auto& r : rows) std::cout << to_json_line(r, cfg.precision) << "\n";
  } else {
    std::cout << equi_table(rows, cfg.precision).render(cfg.format);
  }
  for (const auto& r : rows)
    if (!r.holds) return kViolation;
  return kOk;
}

// ---- bounds / thm3 ---------------------------------------------------------

struct BoundArgs {
  std::string kind;
  Space space;
  u64 p = 2;
  std::string abs, ap, ap_minpoly;
  int root_index = 0;
};

std::string describe(const Thm2Bound& b) {
  std::string note = "trivial bound " + std::to_string(b.trivial);
  if (b.below_domain) note += "; below asymptotic regime";
  if (b.p_divides_N) note += "; p divides N";
  return note;
}

IntPoly parse_coefficients(const std::string& text) {
  IntPoly f;
  std::stringstream ss(text);
  for (std::string c; std::getline(ss, c, ',');) f.emplace_back(parse_rational(c).get_num());
  return f;
}

int cmd_bounds(const BoundArgs& a, const RunConfig& cfg) {
  const BoundKind kind = parse_bound_kind(a.kind);
  const auto& sp = a.space;
  std::vector<BoundReport> rows;
  BoundReport row;
  row.kind = kind;
  switch (kind) {
    case BoundKind::Prop1: {
      if (!a.abs.empty()) {
        row.inputs = "k=" + std::to_string(sp.k) + " p=" + std::to_string(a.p) + " |a'|=" + a.abs;
        row.bound = degree_bound_from_eigenvalue(sp.k, a.p, Interval(parse_rational(a.abs)));
        rows.push_back(row);
        break;
      }
      const SpaceParams s = sp.params();
      for (auto r : prop1_reports(charpoly_new(s, a.p))) {
        r.inputs = s.str() + " p=" + std::to_string(a.p) + " " + r.inputs;
        rows.push_back(std::move(r));
      }
      break;
    }
    case BoundKind::Thm1: {
      const Thm1Bound b = thm1_bound(sp.k, sp.N);
      row.inputs = "k=" + std::to_string(sp.k) + " N=" + std::to_string(sp.N) + " p_N=" + std::to_string(b.p_N);
      row.bound = b.bound.value;
      row.note = "effective form of Thm 1; " + describe(b.bound);
      rows.push_back(row);
      break;
    }
    case BoundKind::Thm2: {
      const auto chi = DirichletCharacter::parse(sp.chi, sp.N);
      const Thm2Bound b = thm2_bound(sp.k, sp.N, a.p, chi.order());
      row.inputs = "k=" + std::to_string(sp.k) + " N=" + std::to_string(sp.N) + " p=" + std::to_string(a.p);
      row.bound = b.value;
      row.note = describe(b);
      rows.push_back(row);
      break;
    }
    case BoundKind::Thm3: {
      const auto chi = DirichletCharacter::parse(sp.chi, sp.N);
      const Thm3Bound b = thm3_bound(sp.k, sp.N, chi);
      row.inputs = "k=" + std::to_string(sp.k) + " N=" + std::to_string(sp.N) + " chi=" + chi.label_string();
      row.bound = Interval(static_cast<long>(b.value));
      row.note = "N2=" + std::to_string(b.N2) + (b.trivial_branch ? "; trivial bound phi(ord chi)" : "");
      rows.push_back(row);
      break;
    }
    case BoundKind::AL: {
      const auto chi = DirichletCharacter::parse(sp.chi, sp.N);
      if (a.ap.empty() == a.ap_minpoly.empty()) throw DomainError("al needs exactly one of --ap and --ap-minpoly");
      const PseudoEigenvalue lam =
          a.ap.empty() ? al_pseudo_eigenvalue(sp.k, sp.N, chi, a.p, bad_ap_value({parse_coefficients(a.ap_minpoly), a.root_index}))
                       : al_pseudo_eigenvalue(sp.k, sp.N, chi, a.p, parse_rational(a.ap));
      row.inputs = "k=" + std::to_string(sp.k) + " N=" + std::to_string(sp.N) + " p=" + std::to_string(a.p);
      row.bound = lam.lambda.abs();
      row.verdict = lam.ok() ? Verdict::Consistent : Verdict::Violated;
      row.note = lam.exact ? "lambda=" + lam.exact->get_str()
                           : "lambda=" + lam.lambda.re.str(cfg.precision) + " + i" + lam.lambda.im.str(cfg.precision);
      rows.push_back(row);
      break;
    }
  }
  return print_bounds(rows, cfg);
}

int cmd_thm3(const Space& sp, const std::string& data, const RunConfig& cfg) {
  if (!data.empty()) return print_bounds(check_thm3_on_data(load_newform_file(data)), cfg);
  BoundArgs a;
  a.kind = "thm3";
  a.space = sp;
  return cmd_bounds(a, cfg);
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& suite_name, VerifyOptions opts, const RunConfig& cfg) {
  const Suite suite = parse_suite(suite_name);
  const VerifyResult r = verify_suite(suite, opts);
  if (cfg.format == Format::Json) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}});
    std::cout << json{{"suite", to_string(suite)}, {"max_N", opts.max_N}, {"checks", checks}, {"failures", r.failures},
                      {"ok", r.ok()}}.dump()
              << "\n";
  } else {
    Table t{{"check", "cases", "failures", "status"}, {}};
    for (const auto& c : r.checks)
      t.rows.push_back({c.name, std::to_string(c.cases), std::to_string(c.failures), c.failures ? "violated" : "consistent"});
    std::cout << t.render(cfg.format);
    if (cfg.format == Format::Table)
      for (const auto& f : r.failures) std::cout << "  " << f << "\n";
  }
  return r.ok() ? kOk : kViolation;
}

// ---- ingest ----------------------------------------------------------------

int cmd_ingest(const std::vector<std::string>& files, u64 max_p, const RunConfig& cfg) {
  int status = kOk;
  Table t{{"file", "space", "orbits", "check", "p", "result", "detail"}, {}};
  json out = json::array();
  for (const auto& path : files) {
    NewformFile file;
    try {
      file = load_newform_file(path);
    } catch (const DataError& e) {
      std::cerr << "error: " << e.what() << "\n";
      status = kConfigError;
      continue;
    }
    const std::string space = file.params().str(), n = std::to_string(file.records.size());
    json j = {{"file", path}, {"space", space}, {"orbits", file.records.size()}, {"warnings", file.warnings},
              {"crosscheck", json::array()}, {"bounds", json::array()}};
    for (const auto& w : file.warnings) t.rows.push_back({path, space, n, "warning", "", "", w});
    for (const auto& c : crosscheck_all(file, max_p)) {
      if (c.verdict == CrosscheckVerdict::Mismatch && status == kOk) status = kViolation;
      t.rows.push_back({path, space, n, "trace", std::to_string(c.p), to_string(c.verdict), c.detail});
      j["crosscheck"].push_back({{"p", c.p}, {"verdict", to_string(c.verdict)}, {"expected", c.expected_trace.get_str()},
                                 {"observed", c.observed_trace.get_str()}, {"detail", c.detail}});
    }
    auto rows = check_atkin_lehner(file);
    for (auto& r : check_thm3_on_data(file))
      if (r.kind == BoundKind::Thm3) rows.push_back(std::move(r));
    for (const auto& r : rows) {
      if (r.verdict == Verdict::Violated && status == kOk) status = kViolation;
      t.rows.push_back({path, space, n, to_string(r.kind), "", to_string(r.verdict), r.inputs + (r.note.empty() ? "" : " " + r.note)});
      j["bounds"].push_back(json::parse(to_json_line(r, cfg.precision)));
    }
    out.push_back(j);
  }
  if (cfg.format == Format::Json) {
    for (const auto& j : out) std::cout << j.dump() << "\n";
  } else {
    std::cout << t.render(cfg.format);
  }
  return status;
}

// ---- cache -----------------------------------------------------------------

int cmd_cache(bool clear, const RunConfig& cfg) {
  TraceCache& cache = global_trace_cache();
  const auto dir = cache.directory();
  if (!dir) {
    std::cout << "no cache directory (set HECKEBOUND_CACHE or --cache)\n";
    return kOk;
  }
  if (clear) {
    const std::size_t removed = cache.clear_disk();
    cache.clear_memory();
    std::cout << "removed " << removed << " files from " << dir->string() << "\n";
    return kOk;
  }
  const auto [files, records] = cache.disk_stats();
  if (cfg.format == Format::Json) {
    std::cout << json{{"directory", dir->string()}, {"files", files}, {"records", records}}.dump() << "\n";
  } else {
    Table t{{"directory", "files", "records"}, {{dir->string(), std::to_string(files), std::to_string(records)}}};
    std::cout << t.render(cfg.format);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke traces, characteristic polynomials and degree bounds for cusp forms"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command line flags take precedence");

  std::string format = "table", cache_dir;
  int precision = 15;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}))->capture_default_str();
  app.add_option("--precision", precision, "Significant digits of interval endpoints")
      ->check(CLI::Range(1, 60))
      ->capture_default_str();
  app.add_option("--cache", cache_dir, "Trace cache directory")->envname("HECKEBOUND_CACHE");

  Space space;
  u64 n = 1, p = 2, max_p = 50;
  bool fresh = false, small = false, clear = false;
  std::vector<std::string> As;
  std::vector<unsigned> Ms;

  auto* trace = app.add_subcommand("trace", "Trace of T_n (exact)");
  add_space(trace, space);
  trace->add_option("--n", n, "Index of T_n")->required();
  trace->add_flag("--new", fresh, "New subspace only");

  auto* dim = app.add_subcommand("dim", "Dimension of the space");
  add_space(dim, space);
  dim->add_flag("--new", fresh, "New subspace only");

  auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial of T_p on the new subspace");
  add_space(charpoly, space);
  charpoly->add_option("--p", p, "Prime not dividing N")->required();

  auto* equi = app.add_subcommand("equi", "Erdos-Turan inequality on a grid of (A, M)");
  add_space(equi, space);
  equi->add_option("--p", p, "Prime not dividing N")->required();
  equi->add_option("--A", As, "Interval half-widths in (0, 1]; decimals are exact");
  equi->add_option("--M", Ms, "Numbers of moments");
  equi->add_flag("--small", small, "Search for a small eigenvalue with the A*, M recipe");

  BoundArgs bargs;
  auto* bounds = app.add_subcommand("bounds", "Lower bounds on Hecke field degrees");
  bounds->add_option("--kind", bargs.kind, "Bound")->required()->check(CLI::IsMember({"prop1", "thm1", "thm2", "thm3", "al"}));
  bounds->add_option("--k", bargs.space.k, "Weight")->required();
  bounds->add_option("--N", bargs.space.N, "Level");
  bounds->add_option("--chi", bargs.space.chi, "Character")->capture_default_str();
  bounds->add_option("--p", bargs.p, "Prime")->capture_default_str();
  bounds->add_option("--abs", bargs.abs, "prop1: bound from a normalized eigenvalue |a'| instead of a charpoly");
  bounds->add_option("--ap", bargs.ap, "al: rational a_p");
  bounds->add_option("--ap-minpoly", bargs.ap_minpoly, "al: minimal polynomial of a_p, \"c0,c1,...\"");
  bounds->add_option("--root-index", bargs.root_index, "al: which root of the minimal polynomial");

  std::string data;
  auto* thm3 = app.add_subcommand("thm3", "Theorem 3 bound, or its check on an hbnf-1 file");
  add_space(thm3, space, false);
  thm3->add_option("--data", data, "hbnf-1 file to check instead");

  std::string suite;
  VerifyOptions vopts;
  std::string fixtures;
#ifdef HECKEBOUND_FIXTURES
  fixtures = HECKEBOUND_FIXTURES;
#endif
  auto* verify = app.add_subcommand("verify", "Run an invariant suite; exit 0 consistent, 1 violation, 2 bad config");
  verify->add_option("--suite", suite, "Suite")->required()->check(CLI::IsMember({"arith", "trace", "prop1", "equi", "thm3"}));
  verify->add_option("--max-N", vopts.max_N, "Largest level (or argument)")->capture_default_str();
  verify->add_option("--jobs", vopts.jobs, "Worker threads")->capture_default_str();
  verify->add_option("--fixtures", fixtures, "Directory of hbnf-1 files for the trace suite")->capture_default_str();

  std::vector<std::string> files;
  auto* ingest = app.add_subcommand("ingest", "Validate hbnf-1 files and check them against the trace formula");
  ingest->add_option("files", files, "hbnf-1 files")->required()->check(CLI::ExistingFile);
  ingest->add_option("--max-p", max_p, "Largest prime for the trace crosscheck")->capture_default_str();

  auto* cache = app.add_subcommand("cache", "Trace cache");
  cache->require_subcommand(1);
  cache->add_subcommand("info", "Location and size");
  cache->add_subcommand("clear", "Delete the persisted traces")->callback([&] { clear = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  RunConfig cfg;
  cfg.format = parse_format(format);
  cfg.precision = precision;
  if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
  const CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  for (const CLI::Option* opt : sub->get_options())
    if (opt->count() > 0) cfg.params[opt->get_name()] = opt->as<std::string>();

  try {
    if (cfg.cache_dir) global_trace_cache().set_directory(*cfg.cache_dir);
    if (cfg.command == "trace") return cmd_trace(space, n, fresh, cfg);
    if (cfg.command == "dim") return cmd_dim(space, fresh, cfg);
    if (cfg.command == "charpoly") return cmd_charpoly(space, p, cfg);
    if (cfg.command == "equi") return cmd_equi(space, p, As, Ms, small, cfg);
    if (cfg.command == "bounds") return cmd_bounds(bargs, cfg);
    if (cfg.command == "thm3") return cmd_thm3(space, data, cfg);
    if (cfg.command == "verify") {
      if (!fixtures.empty() && std::filesystem::is_directory(fixtures)) vopts.fixtures = fixtures;
      return cmd_verify(suite, vopts, cfg);
    }
    if (cfg.command == "ingest") return cmd_ingest(files, max_p, cfg);
    if (cfg.command == "cache") return cmd_cache(clear, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
