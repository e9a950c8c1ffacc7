#include "heckebound/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "heckebound/errors.hpp"
#include "heckebound/roots.hpp"
#include "json.hpp"

namespace heckebound {
namespace {

using json = nlohmann::json;

constexpr const char* kSchema = "hbnf-1";

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw DataError("hbnf: " + path + ": " + what);
}

i64 get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<i64>();
}

u64 prime_key(const std::string& key, const std::string& path) {
  u64 p = 0;
  try {
    std::size_t used = 0;
    p = std::stoull(key, &used);
    if (used != key.size()) p = 0;
  } catch (const std::exception&) {
    p = 0;
  }
  if (p == 0 || !is_prime(p)) fail(path, "key '" + key + "' is not a prime");
  return p;
}

IntPoly get_poly(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty coefficient array");
  IntPoly f;
  for (std::size_t i = 0; i < j.size(); ++i) f.emplace_back(static_cast<long>(get_int(j[i], path + "[" + std::to_string(i) + "]")));
  poly::trim(f);
  if (poly::degree(f) < 1 || f.back() != 1) fail(path, "minimal polynomial must be monic of positive degree");
  return f;
}

mpz_class upow(u64 b, u64 e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

std::vector<ComplexInterval> sorted_roots(const IntPoly& f, const std::string& path) {
  std::vector<ComplexInterval> c;
  for (const auto& x : f) c.push_back({Interval(x), Interval(0)});
  std::vector<ComplexInterval> r;
  try {
    r = certified_complex_roots(c);
  } catch (const PrecisionError&) {
    fail(path, "polynomial has repeated roots");
  }
  std::sort(r.begin(), r.end(), [](const ComplexInterval& a, const ComplexInterval& b) {
    if (a.re.mid_double() != b.re.mid_double()) return a.re.mid_double() < b.re.mid_double();
    return a.im.mid_double() < b.im.mid_double();
  });
  return r;
}

// |x| <= 2 p^{(k-1)/2} (1 + 1e-9) for every root
void check_ramanujan(const IntPoly& f, u64 p, int k, const std::string& path) {
  const Interval bound = Interval(2) * Interval(upow(p, static_cast<u64>(k - 1))).sqrt() *
                         (Interval(1) + Interval(mpq_class(1, 1000000000)));
  if (poly::degree(f) == 1) {
    if (Interval(mpz_class(-f[0])).abs().lo_rational() > bound.hi_rational()) fail(path, "Ramanujan violation");
    return;
  }
  for (const auto& z : sorted_roots(f, path))
    if (bound.certainly_less(z.abs())) fail(path, "Ramanujan violation");
}

NewformRecord parse_record(const json& o, const std::string& path, const NewformFile& file) {
  if (!o.is_object()) fail(path, "expected an object");
  NewformRecord r;
  if (!o.contains("label") || !o["label"].is_string() || o["label"].get<std::string>().empty())
    fail(path + ".label", "expected a nonempty string");
  r.label = o["label"].get<std::string>();
  if (!o.contains("degree")) fail(path + ".degree", "missing");
  r.degree = static_cast<int>(get_int(o["degree"], path + ".degree"));
  if (r.degree < 1) fail(path + ".degree", "must be positive");
  const int k = file.weight;

  if (o.contains("ap_traces")) {
    const auto& t = o["ap_traces"];
    if (!t.is_object()) fail(path + ".ap_traces", "expected an object");
    for (const auto& [key, val] : t.items()) {
      const std::string fp = path + ".ap_traces." + key;
      const u64 p = prime_key(key, fp);
      const mpz_class v(static_cast<long>(get_int(val, fp)));
      // |trace| <= degree * 2 p^{(k-1)/2}
      const mpz_class lhs = v * v, rhs = 4 * r.degree * r.degree * upow(p, static_cast<u64>(k - 1));
      if (lhs > rhs) fail(fp, "Ramanujan violation");
      r.ap_traces[p] = v;
    }
  }
  if (o.contains("ap_minpoly")) {
    const auto& t = o["ap_minpoly"];
    if (!t.is_object()) fail(path + ".ap_minpoly", "expected an object");
    for (const auto& [key, val] : t.items()) {
      const std::string fp = path + ".ap_minpoly." + key;
      const u64 p = prime_key(key, fp);
      IntPoly f = get_poly(val, fp);
      const int D = poly::degree(f);
      if (r.degree % D != 0) fail(fp, "degree " + std::to_string(D) + " does not divide the orbit degree");
      check_ramanujan(f, p, k, fp);
      if (auto it = r.ap_traces.find(p); it != r.ap_traces.end()) {
        const mpz_class tr = -f[static_cast<std::size_t>(D - 1)] * (r.degree / D);
        if (tr != it->second) fail(fp, "trace " + tr.get_str() + " disagrees with ap_traces " + it->second.get_str());
      }
      r.ap_minpoly[p] = std::move(f);
    }
  }
  if (o.contains("bad_ap")) {
    const auto& t = o["bad_ap"];
    if (!t.is_object()) fail(path + ".bad_ap", "expected an object");
    for (const auto& [key, val] : t.items()) {
      const std::string fp = path + ".bad_ap." + key;
      const u64 p = prime_key(key, fp);
      if (file.level % p != 0) fail(fp, "prime does not divide the level");
      if (!val.is_object() || !val.contains("minpoly")) fail(fp, "expected {\"minpoly\": [...], \"root_index\": i}");
      BadAp b;
      b.minpoly = get_poly(val["minpoly"], fp + ".minpoly");
      b.root_index = val.contains("root_index") ? static_cast<int>(get_int(val["root_index"], fp + ".root_index")) : 0;
      if (b.root_index < 0 || b.root_index >= poly::degree(b.minpoly)) fail(fp + ".root_index", "out of range");
      check_ramanujan(b.minpoly, p, k, fp);
      r.bad_ap[p] = std::move(b);
    }
  }
  return r;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

json poly_json(const IntPoly& f) {
  json a = json::array();
  for (const auto& c : f) a.push_back(c.get_si());
  return a;
}

// Conrey labels of the Galois conjugates of chi.
std::vector<DirichletCharacter> conjugates(const DirichletCharacter& chi) {
  std::vector<DirichletCharacter> out;
  std::set<u64> seen;
  const u64 N = chi.modulus(), ord = chi.order();
  for (u64 a = 1; a <= std::max<u64>(ord, 1); ++a) {
    if (std::gcd(a, ord) != 1) continue;
    const u64 label = N == 1 ? 1 : powmod(chi.label() % N, a, N);
    if (seen.insert(label).second) out.push_back(DirichletCharacter::from_label(N, label));
  }
  return out;
}

BoundReport al_row(const NewformFile& file, const NewformRecord& r, u64 p, const BadAp& b) {
  BoundReport row;
  row.kind = BoundKind::AL;
  row.inputs = r.label + " p=" + std::to_string(p);
  try {
    const auto lam = poly::degree(b.minpoly) == 1
                         ? al_pseudo_eigenvalue(file.weight, file.level, file.chi, p, mpq_class(-b.minpoly[0]))
                         : al_pseudo_eigenvalue(file.weight, file.level, file.chi, p, bad_ap_value(b));
    row.bound = lam.lambda.abs();
    row.verdict = lam.ok() ? Verdict::Consistent : Verdict::Violated;
    if (lam.exact) row.note = "lambda=" + lam.exact->get_str();
    if (!lam.abs_ok) row.note += (row.note.empty() ? "" : " ") + std::string("|lambda| != 1");
    if (!lam.square_ok) row.note += (row.note.empty() ? "" : " ") + std::string("lambda^2 != conj(chi_{N/p}(p))");
    if (!lam.field_ok) row.note += (row.note.empty() ? "" : " ") + std::string("lambda^{2 ord} != 1");
  } catch (const DataError& e) {
    row.verdict = Verdict::Violated;
    row.note = e.what();
  }
  return row;
}

}  // namespace

NewformFile parse_newform_file(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw DataError("hbnf: malformed JSON at line " + std::to_string(line_of(bytes, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) fail("$", "expected an object");
  if (!j.contains("schema") || !j["schema"].is_string()) fail("schema", "missing");
  if (j["schema"].get<std::string>() != kSchema) fail("schema", "unknown version '" + j["schema"].get<std::string>() + "'");
  NewformFile file;
  if (!j.contains("level")) fail("level", "missing");
  const i64 level = get_int(j["level"], "level");
  if (level < 1) fail("level", "must be positive");
  file.level = static_cast<u64>(level);
  if (!j.contains("weight")) fail("weight", "missing");
  file.weight = static_cast<int>(get_int(j["weight"], "weight"));
  if (file.weight < 1) fail("weight", "must be positive");
  if (!j.contains("char") || !j["char"].is_string()) fail("char", "expected a string \"N.i\"");
  try {
    file.chi = DirichletCharacter::parse(j["char"].get<std::string>(), file.level);
  } catch (const std::exception& e) {
    fail("char", e.what());
  }
  if (file.chi.modulus() != file.level) fail("char", "modulus differs from the level");
  if (!j.contains("orbits") || !j["orbits"].is_array()) fail("orbits", "expected an array");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < j["orbits"].size(); ++i) {
    const std::string path = "orbits[" + std::to_string(i) + "]";
    NewformRecord r = parse_record(j["orbits"][i], path, file);
    if (!labels.insert(r.label).second) fail(path + ".label", "duplicate orbit label '" + r.label + "'");
    file.records.push_back(std::move(r));
  }
  if (file.records.empty()) file.warnings.push_back("no orbits in file");
  return file;
}

NewformFile load_newform_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("hbnf: cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_newform_file(ss.str());
  } catch (const DataError& e) {
    throw DataError(file.filename().string() + ": " + e.what());
  }
}

std::string to_json(const NewformFile& file) {
  json j;
  j["schema"] = kSchema;
  j["level"] = file.level;
  j["weight"] = file.weight;
  j["char"] = file.chi.label_string();
  j["orbits"] = json::array();
  for (const auto& r : file.records) {
    json o;
    o["label"] = r.label;
    o["degree"] = r.degree;
    json t = json::object();
    for (const auto& [p, v] : r.ap_traces) t[std::to_string(p)] = v.get_si();
    o["ap_traces"] = t;
    if (!r.ap_minpoly.empty()) {
      json m = json::object();
      for (const auto& [p, f] : r.ap_minpoly) m[std::to_string(p)] = poly_json(f);
      o["ap_minpoly"] = m;
    }
    if (!r.bad_ap.empty()) {
      json b = json::object();
      for (const auto& [p, v] : r.bad_ap) b[std::to_string(p)] = {{"minpoly", poly_json(v.minpoly)}, {"root_index", v.root_index}};
      o["bad_ap"] = b;
    }
    j["orbits"].push_back(o);
  }
  return j.dump(2) + "\n";
}

ComplexInterval bad_ap_value(const BadAp& b) {
  if (poly::degree(b.minpoly) == 1) return {Interval(mpq_class(-b.minpoly[0])), Interval(0)};
  const auto roots = sorted_roots(b.minpoly, "bad_ap");
  if (b.root_index < 0 || static_cast<std::size_t>(b.root_index) >= roots.size()) throw DataError("bad_ap: root_index out of range");
  return roots[static_cast<std::size_t>(b.root_index)];
}

std::string to_string(CrosscheckVerdict v) {
  switch (v) {
    case CrosscheckVerdict::Match: return "match";
    case CrosscheckVerdict::Mismatch: return "mismatch";
    case CrosscheckVerdict::Incomplete: return "incomplete dataset";
  }
  return "?";
}

Crosscheck crosscheck_traces(const NewformFile& file, u64 p) {
  if (!is_prime(p) || file.level % p == 0) throw DomainError("crosscheck: p must be a prime not dividing N");
  Crosscheck c;
  c.p = p;
  const auto conj = conjugates(file.chi);
  CycNum total(0);
  for (const auto& chi : conj) {
    const SpaceParams s(file.weight, file.level, chi);
    c.expected_dim += dim_new(s);
    total += trace_new(s, p).value;
  }
  if (!total.is_rational() || total.rational_value().get_den() != 1)
    throw PrecisionError("crosscheck: trace over the character orbit is not an integer");
  c.expected_trace = total.rational_value().get_num();
  for (const auto& r : file.records) c.observed_dim += r.degree;
  if (c.observed_dim != c.expected_dim) {
    c.verdict = CrosscheckVerdict::Incomplete;
    c.detail = "orbit degrees sum to " + std::to_string(c.observed_dim) + ", new space has " + std::to_string(c.expected_dim);
    return c;
  }
  for (const auto& r : file.records) {
    const auto it = r.ap_traces.find(p);
    if (it == r.ap_traces.end()) {
      c.verdict = CrosscheckVerdict::Incomplete;
      c.detail = "orbit " + r.label + " has no trace at p=" + std::to_string(p);
      return c;
    }
    c.observed_trace += it->second;
  }
  c.verdict = c.observed_trace == c.expected_trace ? CrosscheckVerdict::Match : CrosscheckVerdict::Mismatch;
  if (c.verdict == CrosscheckVerdict::Mismatch)
    c.detail = "orbit traces sum to " + c.observed_trace.get_str() + ", trace formula gives " + c.expected_trace.get_str();
  return c;
}

std::vector<Crosscheck> crosscheck_all(const NewformFile& file, u64 max_p) {
  std::vector<Crosscheck> out;
  for (u64 p = 2; p <= max_p; ++p)
    if (is_prime(p) && file.level % p != 0) out.push_back(crosscheck_traces(file, p));
  return out;
}

std::vector<BoundReport> check_thm3_on_data(const NewformFile& file) {
  std::vector<BoundReport> out;
  std::string reason;
  if (file.weight < 3 || file.weight % 2 == 0) reason = "k must be odd and at least 3";
  else if (!is_squarefree(file.level)) reason = "N must be square-free";
  else if (file.chi.parity() != -1) reason = "chi must be odd";
  if (!reason.empty()) {
    for (const auto& r : file.records) {
      BoundReport row;
      row.kind = BoundKind::Thm3;
      row.inputs = r.label;
      row.observed = r.degree;
      row.verdict = Verdict::NoData;
      row.note = "skipped: " + reason;
      out.push_back(std::move(row));
    }
    return out;
  }
  const Thm3Bound b = thm3_bound(file.weight, file.level, file.chi);
  for (const auto& r : file.records) {
    BoundReport row;
    row.kind = BoundKind::Thm3;
    row.inputs = r.label;
    row.bound = Interval(static_cast<long>(b.value));
    row.observed = r.degree;
    row.verdict = static_cast<u64>(r.degree) >= b.value ? Verdict::Consistent : Verdict::Violated;
    if (b.trivial_branch) row.note = "trivial bound phi(ord chi)";
    out.push_back(std::move(row));
    for (const auto& [p, bad] : r.bad_ap)
      if (b.N2 % p == 0) out.push_back(al_row(file, r, p, bad));
  }
  return out;
}

std::vector<BoundReport> check_atkin_lehner(const NewformFile& file) {
  std::vector<BoundReport> out;
  for (const auto& r : file.records)
    for (const auto& [p, bad] : r.bad_ap)
      if (valuation(file.level, p) == 1 && file.chi.local(p).is_principal()) out.push_back(al_row(file, r, p, bad));
  return out;
}

}  // namespace heckebound
