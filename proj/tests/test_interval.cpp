#include <cmath>

#include "doctest.h"
#include "heckebound/errors.hpp"
#include "heckebound/interval.hpp"

using namespace heckebound;

TEST_SUITE("interval") {

TEST_CASE("exact rationals stay enclosed") {
  const Interval third(mpq_class(1, 3));
  CHECK(third.contains(mpq_class(1, 3)));
  CHECK(third.width_double() < 1e-70);
  const Interval sum = third + third + third;
  CHECK(sum.contains(1));
  CHECK_FALSE(sum.contains(mpq_class(100001, 100000)));
}

TEST_CASE("transcendental functions enclose double results") {
  const Interval pi = Interval::pi();
  CHECK(pi.lo_double() <= M_PI);
  CHECK(pi.hi_double() >= M_PI);
  for (double x : {0.1, 0.5, 1.0, 2.0, 7.25}) {
    const Interval X = Interval::from_double(x);
    CHECK(X.log().lo_double() <= std::log(x) + 1e-15);
    CHECK(X.log().hi_double() >= std::log(x) - 1e-15);
    CHECK(std::abs(X.exp().mid_double() - std::exp(x)) < 1e-12 * std::exp(x));
    CHECK(std::abs(X.atan().mid_double() - std::atan(x)) < 1e-15);
    CHECK(std::abs(X.sin().mid_double() - std::sin(x)) < 1e-15);
    CHECK(std::abs(X.cos().mid_double() - std::cos(x)) < 1e-15);
    CHECK(std::abs(X.sqrt().mid_double() - std::sqrt(x)) < 1e-15);
  }
  const Interval half(mpq_class(1, 2));
  const Interval a = half.asin() * Interval(6L);
  CHECK(a.overlaps(pi));
  CHECK(a.width_double() < 1e-60);
}

TEST_CASE("certified comparisons") {
  const Interval a(mpq_class(1, 3)), b(mpq_class(1, 2));
  CHECK(a.certainly_less(b));
  CHECK(a.certainly_le(b));
  CHECK_FALSE(b.certainly_less(a));
  const Interval wide(mpq_class(0), mpq_class(1));
  CHECK_FALSE(wide.certainly_positive());
  CHECK(wide.contains_zero());
  CHECK_THROWS_AS(Interval(1L) / wide, PrecisionError);
  CHECK_THROWS_AS(Interval(-1L).sqrt(), DomainError);
}

TEST_CASE("hull and min/max") {
  const Interval h = Interval::hull(Interval(1L), Interval(3L));
  CHECK(h.contains(2));
  CHECK(Interval(1L).min(Interval(2L)).contains(1));
  CHECK(Interval(1L).max(Interval(2L)).contains(2));
  CHECK(Interval(-2L).abs().contains(2));
  CHECK(Interval(3L).pow(4).contains(81));
}

TEST_CASE("complex intervals") {
  const ComplexInterval z{Interval(3L), Interval(4L)};
  CHECK(z.abs().contains(5));
  const ComplexInterval w = z / z;
  CHECK(w.re.contains(1));
  CHECK(w.im.contains(0));
}

TEST_CASE("string form") {
  const std::string s = Interval(mpq_class(1, 3)).str(6);
  CHECK(s.front() == '[');
  CHECK(s.find("0.33333") != std::string::npos);
}

}  // TEST_SUITE
