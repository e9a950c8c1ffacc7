#include "heckebound/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "heckebound/errors.hpp"
#include "json.hpp"

namespace heckebound {
namespace {

using json = nlohmann::json;

std::string endpoint(const Interval& x, int digits, bool upper) {
  char* out = nullptr;
  const std::string fmt = "%." + std::to_string(digits) + "R*g";
  mpfr_asprintf(&out, fmt.c_str(), upper ? MPFR_RNDU : MPFR_RNDD, upper ? x.hi() : x.lo());
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

json interval_json(const Interval& x, int digits) {
  return {{"lo", format_rational(x.lo_rational())},
          {"hi", format_rational(x.hi_rational())},
          {"display", x.str(digits)}};
}

Interval interval_from(const json& j) {
  return Interval(parse_rational(j.at("lo").get<std::string>()), parse_rational(j.at("hi").get<std::string>()));
}

bool same_interval(const Interval& a, const Interval& b) {
  return a.lo_rational() == b.lo_rational() && a.hi_rational() == b.hi_rational();
}

template <typename F>
auto parse_json_report(std::string_view line, F build) {
  try {
    return build(json::parse(line));
  } catch (const json::exception& e) {
    throw DataError(std::string("report: ") + e.what());
  }
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "table") return Format::Table;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw DomainError("unknown format '" + std::string(text) + "' (table, csv, json)");
}

std::string to_string(Format f) {
  switch (f) {
    case Format::Table: return "table";
    case Format::Csv: return "csv";
    case Format::Json: return "json";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view text) {
  for (BoundKind k : {BoundKind::Prop1, BoundKind::Thm1, BoundKind::Thm2, BoundKind::Thm3, BoundKind::AL})
    if (text == to_string(k)) return k;
  throw DomainError("unknown bound kind '" + std::string(text) + "'");
}

Verdict parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::Consistent, Verdict::Violated, Verdict::NoData})
    if (text == to_string(v)) return v;
  throw DomainError("unknown verdict '" + std::string(text) + "'");
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw DomainError("empty number");
  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw DomainError("not a rational number: '" + s + "'");
    if (q.get_den() == 0) throw DomainError("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  const std::size_t frac = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+") throw DomainError("not a number: '" + s + "'");
  if (digits[0] == '+') digits.erase(0, 1);
  const bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits.erase(0, 1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw DomainError("not a number: '" + s + "'");
  mpz_class num(digits, 10), den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  mpq_class q(neg ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

std::string format_lo(const Interval& x, int digits) { return endpoint(x, digits, false); }
std::string format_hi(const Interval& x, int digits) { return endpoint(x, digits, true); }

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Table::render(Format f) const {
  std::ostringstream out;
  if (f == Format::Csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
      out << "\n";
    };
    line(columns);
    for (const auto& r : rows) line(r);
    return out.str();
  }
  std::vector<std::size_t> width(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string to_json_line(const EquiReport& r, int digits) {
  const json j = {{"k", r.params.k},
                  {"N", r.params.N},
                  {"chi", r.params.chi.label_string()},
                  {"p", r.p},
                  {"A", format_rational(r.A)},
                  {"M", r.M},
                  {"C", format_rational(r.lhs_empirical)},
                  {"main_term", interval_json(r.main_term, digits)},
                  {"rhs", interval_json(r.et_rhs, digits)},
                  {"verdict", r.verdict()}};
  return j.dump();
}

EquiReport equi_report_from_json(std::string_view line) {
  return parse_json_report(line, [](const json& j) {
    EquiReport r;
    const u64 N = j.at("N").get<u64>();
    r.params = SpaceParams(j.at("k").get<int>(), N, DirichletCharacter::parse(j.at("chi").get<std::string>(), N));
    r.p = j.at("p").get<u64>();
    r.A = parse_rational(j.at("A").get<std::string>());
    r.M = j.at("M").get<unsigned>();
    r.lhs_empirical = parse_rational(j.at("C").get<std::string>());
    r.main_term = interval_from(j.at("main_term"));
    r.et_rhs = interval_from(j.at("rhs"));
    const std::string v = j.at("verdict").get<std::string>();
    if (v != "holds" && v != "violated") throw DataError("report: unknown verdict '" + v + "'");
    r.holds = v == "holds";
    return r;
  });
}

std::string to_json_line(const BoundReport& r, int digits) {
  json j = {{"kind", to_string(r.kind)},
            {"inputs", r.inputs},
            {"bound", interval_json(r.bound, digits)},
            {"observed", nullptr},
            {"verdict", to_string(r.verdict)},
            {"note", r.note}};
  if (r.observed) j["observed"] = *r.observed;
  return j.dump();
}

BoundReport bound_report_from_json(std::string_view line) {
  return parse_json_report(line, [](const json& j) {
    BoundReport r;
    r.kind = parse_bound_kind(j.at("kind").get<std::string>());
    r.inputs = j.at("inputs").get<std::string>();
    r.bound = interval_from(j.at("bound"));
    if (!j.at("observed").is_null()) r.observed = j.at("observed").get<i64>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.note = j.at("note").get<std::string>();
    return r;
  });
}

Table equi_table(const std::vector<EquiReport>& rows, int digits) {
  Table t{{"k", "N", "chi", "p", "A", "M", "C", "mainterm_lo", "mainterm_hi", "rhs_lo", "rhs_hi", "verdict"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.params.k), std::to_string(r.params.N), r.params.chi.label_string(),
                      std::to_string(r.p), format_rational(r.A), std::to_string(r.M), format_rational(r.lhs_empirical),
                      format_lo(r.main_term, digits), format_hi(r.main_term, digits), format_lo(r.et_rhs, digits),
                      format_hi(r.et_rhs, digits), r.verdict()});
  return t;
}

Table bound_table(const std::vector<BoundReport>& rows, int digits) {
  Table t{{"kind", "inputs", "bound_lo", "bound_hi", "observed", "verdict", "note"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({to_string(r.kind), r.inputs, format_lo(r.bound, digits), format_hi(r.bound, digits),
                      r.observed ? std::to_string(*r.observed) : "", to_string(r.verdict), r.note});
  return t;
}

bool same_report(const EquiReport& a, const EquiReport& b) {
  return a.params.k == b.params.k && a.params.N == b.params.N && a.params.chi == b.params.chi && a.p == b.p &&
         a.A == b.A && a.M == b.M && a.lhs_empirical == b.lhs_empirical && same_interval(a.main_term, b.main_term) &&
         same_interval(a.et_rhs, b.et_rhs) && a.holds == b.holds;
}

bool same_report(const BoundReport& a, const BoundReport& b) {
  return a.kind == b.kind && a.inputs == b.inputs && same_interval(a.bound, b.bound) && a.observed == b.observed &&
         a.verdict == b.verdict && a.note == b.note;
}

}  // namespace heckebound
