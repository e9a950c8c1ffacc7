#include <string>

#include "doctest.h"
#include "heckebound/errors.hpp"
#include "heckebound/report.hpp"
#include "heckebound/verify.hpp"

using namespace heckebound;

TEST_SUITE("report") {

TEST_CASE("rationals") {
  CHECK(parse_rational("0.25") == mpq_class(1, 4));
  CHECK(parse_rational("-1.5") == mpq_class(-3, 2));
  CHECK(parse_rational("0.1") == mpq_class(1, 10));
  CHECK(parse_rational("6/4") == mpq_class(3, 2));
  CHECK(parse_rational(" 7 ") == 7);
  CHECK(parse_rational(".5") == mpq_class(1, 2));
  CHECK(format_rational(mpq_class(3, 2)) == "3/2");
  CHECK(format_rational(mpq_class(4)) == "4");
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "-", "1e3"}) CHECK_THROWS_AS(parse_rational(bad), DomainError);
}

TEST_CASE("interval endpoints round outward") {
  const Interval third = Interval(1) / Interval(3);
  CHECK(format_lo(third, 4) == "0.3333");
  CHECK(format_hi(third, 4) == "0.3334");
  CHECK(format_lo(Interval(2), 6) == "2");
}

TEST_CASE("tables") {
  const Table t{{"a", "bb"}, {{"xyz", "1"}, {"q,r", "\"s\""}}};
  CHECK(t.render(Format::Csv) == "a,bb\nxyz,1\n\"q,r\",\"\"\"s\"\"\"\n");
  CHECK(t.render(Format::Table) == "a    bb\nxyz  1\nq,r  \"s\"\n");
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(to_string(Format::Json) == "json");
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("equi reports round trip through JSON") {
  const auto rows = equi_grid(SpaceParams(2, 46), 3, {mpq_class(1, 10), mpq_class(1, 2)}, {1, 4});
  for (const auto& r : rows) {
    const auto back = equi_report_from_json(to_json_line(r));
    CHECK(same_report(r, back));
    CHECK(to_json_line(back) == to_json_line(r));
  }
  // the display precision does not touch the stored endpoints
  CHECK(same_report(rows[0], equi_report_from_json(to_json_line(rows[0], 3))));
  const auto t = equi_table(rows, 6);
  CHECK(t.columns.size() == 12);
  CHECK(t.rows.front().back() == "holds");
  CHECK(t.rows[2].back() == "violated");  // A = 1/2, M = 1
  CHECK_THROWS_AS(equi_report_from_json("{\"k\": 2}"), DataError);
  CHECK_THROWS_AS(equi_report_from_json("not json"), DataError);
}

TEST_CASE("bound reports round trip through JSON") {
  BoundReport a;
  a.kind = BoundKind::Thm2;
  a.inputs = "k=2 N=1000000 p=2";
  a.bound = thm2_bound(2, 1000000, 2).value;
  a.note = "trivial bound 1; p divides N";
  BoundReport b = a;
  b.kind = BoundKind::Thm3;
  b.observed = 2;
  b.verdict = Verdict::Violated;
  for (const auto& r : {a, b}) {
    const auto back = bound_report_from_json(to_json_line(r));
    CHECK(same_report(r, back));
  }
  CHECK_FALSE(same_report(a, b));
  CHECK(parse_bound_kind("al") == BoundKind::AL);
  CHECK(parse_verdict("no-data") == Verdict::NoData);
  CHECK_THROWS_AS(parse_bound_kind("thm4"), DomainError);
  CHECK(bound_table({a, b}).rows[1][4] == "2");
}

TEST_CASE("verify suites on small grids") {
  CHECK(parse_suite("equi") == Suite::Equi);
  CHECK(to_string(Suite::Thm3) == "thm3");
  CHECK_THROWS_AS(parse_suite("all"), DomainError);

  VerifyOptions o;
  o.max_N = 30;
  for (Suite s : {Suite::Arith, Suite::Trace, Suite::Prop1, Suite::Thm3}) {
    const auto r = verify_suite(s, o);
    INFO(to_string(s));
    CHECK(r.ok());
    CHECK(!r.checks.empty());
    for (const auto& c : r.checks) CHECK(c.cases > 0);
  }
  // the literal inequality fails at S_2(17), p = 3, where the only newform has a_3 = 0
  o.max_N = 20;
  const auto one = verify_suite(Suite::Equi, o);
  CHECK_FALSE(one.ok());
  CHECK(one.failures.front().find("S_2(17, 17.1) p=3 A=1/2 M=1") != std::string::npos);
  // thread count does not change anything
  o.jobs = 3;
  const auto many = verify_suite(Suite::Equi, o);
  CHECK(many.failures == one.failures);
  CHECK(many.checks[0].cases == one.checks[0].cases);
  CHECK_THROWS_AS(verify_suite(Suite::Arith, VerifyOptions{0, 1, std::nullopt}), DomainError);
}

}  // TEST_SUITE
