// Acceptance run: one PASS/FAIL line per criterion.
//
// Criteria 6 and 7 fail as stated; the reasons are printed with them and the
// exit status ignores exactly those two. Any other failure makes the run fail.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "heckebound/bounds.hpp"
#include "heckebound/equidist.hpp"
#include "heckebound/errors.hpp"
#include "heckebound/hurwitz.hpp"
#include "heckebound/ingest.hpp"
#include "heckebound/verify.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace heckebound;

namespace {

const std::filesystem::path kFixtures = HECKEBOUND_FIXTURES;
const std::filesystem::path kData = HECKEBOUND_DATA;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;  // 0: none stated
  std::function<Outcome()> run;
  /// Why the criterion cannot hold as written; empty when it should pass.
  std::string known_failure;
};

std::vector<NewformFile> complete_fixtures() {
  std::vector<NewformFile> out;
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(kFixtures)) paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    if (p.filename().string().rfind("incomplete", 0) == 0) continue;
    try {
      out.push_back(load_newform_file(p));
    } catch (const DataError&) {
      // the deliberately invalid fixtures
    }
  }
  return out;
}

Outcome tau() {
  const auto t = oracle::ramanujan_tau(50);
  const SpaceParams s(12, 1);
  for (u64 n = 1; n <= 50; ++n)
    if (trace_new_integer(s, n) != t[n] || !(trace_full(s, n).value == CycNum(mpq_class(t[n]))))
      return {false, "n=" + std::to_string(n) + ": " + trace_full(s, n).value.str() + " vs " + t[n].get_str()};
  return {true, "tau(n) for n <= 50"};
}

Outcome elliptic_curve() {
  const oracle::Curve E{"11a", {0, -1, 1, -10, -20}};
  int count = 0;
  for (u64 p = 2; p <= 97; ++p) {
    if (!is_prime(p) || p == 11) continue;
    const mpz_class tr = trace_new_integer(SpaceParams(2, 11), p);
    if (tr != oracle::ap_by_point_count(E, p)) return {false, "p=" + std::to_string(p)};
    ++count;
  }
  return {true, std::to_string(count) + " primes"};
}

Outcome dimensions() {
  std::ifstream in(kData / "dimensions.json");
  const auto j = nlohmann::json::parse(in);
  int count = 0;
  for (const auto& e : j.at("entries")) {
    const SpaceParams s(e.at("k").get<int>(), e.at("N").get<u64>());
    if (dim_new(s) != e.at("dim_new").get<i64>())
      return {false, s.str() + ": " + std::to_string(dim_new(s)) + " vs " + std::to_string(e.at("dim_new").get<i64>())};
    ++count;
  }
  return {true, std::to_string(count) + " spaces"};
}

Outcome charpolys() {
  const auto P23 = charpoly_new(SpaceParams(2, 23), 2);
  const auto P37 = charpoly_new(SpaceParams(2, 37), 2);
  if (P23.coefficients != IntPoly{-1, 1, 1} || factor_degrees(P23) != std::vector<int>{2})
    return {false, "S_2(23): " + P23.str()};
  if (P37.coefficients != IntPoly{0, 2, 1} || factor_degrees(P37) != std::vector<int>{1, 1})
    return {false, "S_2(37): " + P37.str()};
  std::size_t checks = 0, files = 0;
  for (const auto& f : complete_fixtures()) {
    if (f.weight != 2 || !f.chi.is_principal()) continue;
    ++files;
    for (const auto& c : crosscheck_all(f, 50)) {
      if (c.verdict != CrosscheckVerdict::Match)
        return {false, f.params().str() + " p=" + std::to_string(c.p) + " " + to_string(c.verdict) + " " + c.detail};
      ++checks;
    }
  }
  return {true, P23.str() + ", " + P37.str() + "; " + std::to_string(checks) + " crosschecks on " + std::to_string(files) +
                    " fixtures"};
}

Outcome suite(Suite s, u64 max_N) {
  VerifyOptions o;
  o.max_N = max_N;
  o.jobs = std::max(1u, std::thread::hardware_concurrency());
  if (s == Suite::Trace) o.fixtures = kFixtures;
  const auto r = verify_suite(s, o);
  std::size_t cases = 0;
  for (const auto& c : r.checks) cases += c.cases;
  std::string detail = std::to_string(r.failure_count()) + " violations in " + std::to_string(cases) + " cases";
  if (!r.failures.empty()) detail += "; first: " + r.failures.front();
  return {r.ok(), detail};
}

Outcome taylor_constant(bool bare) {
  std::ostringstream worst;
  bool ok = true;
  for (u64 p : {2u, 3u, 5u}) {
    const Interval target(mpq_class(p, (p + 1) * (p + 1)));
    for (const mpq_class& A : {mpq_class(1, 100), mpq_class(1, 1000)}) {
      const Interval c = bare ? bare_integral(p, A) : cdf_F(p, A, 1);
      if (c.width_double() > 1e-10) return {false, "quadrature width " + std::to_string(c.width_double())};
      const Interval ratio = bare ? c / Interval(A) : c / Interval(2 * A);
      const Interval err = (ratio - target).abs();
      if (!err.certainly_le(Interval(2 * A))) {
        if (ok) worst << "p=" << p << " A=" << A.get_str() << ": ratio " << ratio.str(6) << " vs " << target.str(6);
        ok = false;
      }
    }
  }
  return {ok, ok ? "6 cases" : worst.str()};
}

Outcome spot_values() {
  const Interval t2 = thm2_bound(2, 1000000, 2).value;
  if (!(Interval(mpq_class(1109, 1000)).certainly_le(t2) && t2.certainly_le(Interval(mpq_class(1111, 1000)))))
    return {false, "thm2 " + t2.str()};
  const u64 t3 = thm3_bound(3, 1155, DirichletCharacter::from_label(1155, 386)).value;
  if (t3 != 4) return {false, "thm3 " + std::to_string(t3)};
  const Interval x = Interval(1) / (Interval(2) * Interval(2).sqrt());
  const Interval d = degree_bound_from_eigenvalue(2, 2, x);
  if (!(d - Interval(1)).abs().certainly_le(Interval(mpq_class(1, 1000000000000L))))
    return {false, "degree bound " + d.str()};
  return {true, "thm2 " + t2.str(6) + ", thm3 4, degree bound " + d.str(15)};
}

Outcome hurwitz_forms() {
  for (u64 n = 0; n <= 10000; ++n) {
    mpq_class h(static_cast<long>(oracle::twelve_h_by_forms(n)), 12L);
    h.canonicalize();
    if (hurwitz(n) != h) return {false, "n=" + std::to_string(n)};
  }
  return {true, "n <= 10000"};
}

Outcome atkin_lehner() {
  std::size_t rows = 0;
  for (const auto& f : complete_fixtures()) {
    if (f.weight != 2 || !f.chi.is_principal()) continue;
    for (const auto& r : check_atkin_lehner(f)) {
      ++rows;
      if (r.verdict != Verdict::Consistent) return {false, r.inputs + " " + r.note};
    }
    for (const auto& rec : f.records)
      for (const auto& [p, bad] : rec.bad_ap) {
        if (valuation(f.level, p) != 1) continue;
        const bool unit = bad.minpoly == IntPoly{-1, 1} || bad.minpoly == IntPoly{1, 1};
        if (!unit) return {false, rec.label + " a_" + std::to_string(p) + " is not +-1"};
      }
  }
  if (rows == 0) return {false, "no records with p || N"};
  return {true, std::to_string(rows) + " records with p || N"};
}

Outcome arith_and_trace() {
  const Outcome a = suite(Suite::Arith, 10000);
  const Outcome t = suite(Suite::Trace, 150);
  return {a.pass && t.pass, "arith: " + a.detail + "; trace: " + t.detail};
}

}  // namespace

int main(int argc, char** argv) {
  // ctest hides the output of passing tests, so the lines also go to a file
  std::ofstream copy(argc > 1 ? argv[1] : "acceptance_report.txt");
  const std::vector<Criterion> criteria{
      {"1", "Ramanujan tau oracle", 60, tau, ""},
      {"2", "elliptic curve 11a point counts", 10, elliptic_curve, ""},
      {"3", "new-space dimensions", 0, dimensions, ""},
      {"4", "characteristic polynomials and fixture crosschecks", 0, charpolys, ""},
      {"5", "Proposition 1 suite", 600, [] { return suite(Suite::Prop1, 150); }, ""},
      {"6", "Erdos-Turan suite", 600, [] { return suite(Suite::Equi, 120); },
       "the stated inequality is not a valid Erdos-Turan bound: the main term carries the factor "
       "psi_new (k-1)/(12 d) != 1 with no m = 0 term, and one-newform spaces with a_p = 0 exceed the M = 1 right side"},
      {"7", "Taylor constant p/(p+1)^2 of cdf_F / 2A", 0, [] { return taylor_constant(false); },
       "cdf_F includes the density constant 2(p+1)/pi, so cdf_F/2A tends to F(0) = 2p/(pi(p+1)); "
       "p/(p+1)^2 is the constant of the bare integral (line 7b)"},
      {"7b", "Taylor constant of the bare integral", 0, [] { return taylor_constant(true); }, ""},
      {"8", "closed-form spot values", 0, spot_values, ""},
      {"9", "Hurwitz class numbers against reduced forms", 60, hurwitz_forms, ""},
      {"10", "Atkin-Lehner identities on fixtures", 0, atkin_lehner, ""},
      {"11", "arith and trace invariant suites", 0, arith_and_trace, ""},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.time_limit_s)) + " s limit";
    }
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
         << o.detail << "; " << secs << " s)";
    if (!o.pass && !c.known_failure.empty()) line << "\n    known failure: " << c.known_failure;
    std::cout << line.str() << std::endl;
    copy << line.str() << std::endl;
    if (!o.pass && c.known_failure.empty()) ++unexpected;
  }
  const std::string summary =
      unexpected ? "unexpected failures: " + std::to_string(unexpected) : std::string("no unexpected failures");
  std::cout << summary << std::endl;
  copy << summary << std::endl;
  return unexpected ? 1 : 0;
}
