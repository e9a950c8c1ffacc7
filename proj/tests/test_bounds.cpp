#include <cmath>

#include "doctest.h"
#include "heckebound/bounds.hpp"
#include "heckebound/errors.hpp"

using namespace heckebound;

namespace {

IntPoly P(std::initializer_list<long> c) {
  IntPoly f;
  for (long x : c) f.emplace_back(x);
  poly::trim(f);
  return f;
}

HeckeCharPoly synthetic(int k, u64 p, const IntPoly& f) {
  HeckeCharPoly h;
  h.params = SpaceParams(k, 1);
  h.p = p;
  h.coefficients = f;
  h.factors = {{f, 1}};
  return h;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("degree bound from an eigenvalue") {
  CHECK(degree_bound_from_eigenvalue(2, 2, Interval(1)).contains(0));
  // 1/(2 sqrt 2), i.e. a_f(2) = 1
  const Interval a = Interval(1) / (Interval(2) * Interval(2).sqrt());
  const Interval b = degree_bound_from_eigenvalue(2, 2, a);
  CHECK(b.lo_double() >= 1 - 1e-12);
  CHECK(b.hi_double() <= 1 + 1e-12);
  const Interval g = degree_bound_from_eigenvalue(2, 2, Interval(mpq_class(21850, 100000)));
  CHECK(g.lo_double() >= 1.4628);
  CHECK(g.hi_double() <= 1.4629);
  // weight scaling
  const Interval g4 = degree_bound_from_eigenvalue(4, 2, Interval(mpq_class(1, 5)));
  CHECK((Interval(3) * g4).overlaps(degree_bound_from_eigenvalue(2, 2, Interval(mpq_class(1, 5)))));
  CHECK_THROWS_AS(degree_bound_from_eigenvalue(2, 2, Interval(0)), DomainError);
  CHECK_THROWS_AS(degree_bound_from_eigenvalue(2, 4, Interval(mpq_class(1, 2))), DomainError);
}

TEST_CASE("theorem 2 and theorem 1") {
  const auto t = thm2_bound(2, 1000000, 2);
  CHECK_FALSE(t.below_domain);
  CHECK(t.value.lo_double() >= 1.109);
  CHECK(t.value.hi_double() <= 1.111);
  CHECK(t.trivial == 1);
  const auto t4 = thm2_bound(4, 1000000, 2);
  CHECK(t4.value.lo_double() >= 0.3697);
  CHECK(t4.value.hi_double() <= 0.3704);
  // log N < 2 pi log 2 for N < 78
  const auto small = thm2_bound(2, 77, 2);
  CHECK(small.below_domain);
  CHECK(small.value.contains(1));
  CHECK(thm2_bound(2, 79, 2, 12).trivial == 4);
  CHECK(t.p_divides_N);
  CHECK_FALSE(thm2_bound(2, 1000001, 2).p_divides_N);
  CHECK_THROWS_AS(thm2_bound(2, 100, 4), DomainError);

  const auto t1 = thm1_bound(2, 1000001);
  CHECK(t1.p_N == 2);
  CHECK(t1.bound.value.overlaps(thm2_bound(2, 1000001, 2).value));
  CHECK(thm1_bound(2, 223092870).p_N == 29);
  for (u64 N = 3; N < 400; ++N) {
    const u64 p = thm1_bound(2, N).p_N;
    CHECK(N % p != 0);
    for (u64 q = 2; q < p; ++q)
      if (is_prime(q)) CHECK(N % q == 0);
  }
  CHECK_THROWS_AS(thm1_bound(3, 100), DomainError);
}

TEST_CASE("theorem 3") {
  // quadratic character of conductor 3 at level 3*5*7*11
  const auto chi = DirichletCharacter::from_label(1155, 386);
  REQUIRE(chi.conductor() == 3);
  REQUIRE(chi.order() == 2);
  const auto b = thm3_bound(3, 1155, chi);
  CHECK(b.value == 4);
  CHECK(b.N2 == 385);
  CHECK(b.coprime_form);
  CHECK_FALSE(b.trivial_branch);

  const auto e = thm3_bound(3, 3, DirichletCharacter::from_label(3, 2));
  CHECK(e.value == 1);
  CHECK(e.exponent == -1);
  CHECK(e.trivial_branch);

  CHECK_THROWS_AS(thm3_bound(4, 15, DirichletCharacter::trivial(15)), DomainError);
  CHECK_THROWS_AS(thm3_bound(3, 15, DirichletCharacter::trivial(15)), DomainError);
  CHECK_THROWS_AS(thm3_bound(3, 12, DirichletCharacter::from_label(12, 11)), UnsupportedError);

  int seen = 0;
  for (u64 N = 3; N <= 120; ++N) {
    if (!is_squarefree(N)) continue;
    for (const auto& c : all_characters(N)) {
      if (c.parity() != -1) continue;
      const auto r = thm3_bound(5, N, c);
      const u64 phi = euler_phi(c.order());
      CHECK(2 * r.value >= phi);
      CHECK(r.value >= phi);
      if (r.coprime_form && omega(r.N2) >= 1) CHECK(r.value == phi << (omega(r.N2) - 1));
      ++seen;
    }
  }
  CHECK(seen > 500);
}

TEST_CASE("Atkin-Lehner pseudo-eigenvalues") {
  const auto triv = DirichletCharacter::trivial(11);
  const auto r = al_pseudo_eigenvalue(2, 11, triv, 11, mpq_class(1));
  CHECK(r.ok());
  REQUIRE(r.exact);
  CHECK(*r.exact == -1);
  const auto s = al_pseudo_eigenvalue(2, 11, triv, 11, mpq_class(-1));
  REQUIRE(s.exact);
  CHECK(*s.exact == 1);
  CHECK(s.ok());
  CHECK_FALSE(al_pseudo_eigenvalue(2, 11, triv, 11, mpq_class(2)).abs_ok);

  // k = 3, N = 15, chi of conductor 3: 5 | N2 and lambda^2 = conj(chi_3(5)) = -1
  const auto chi = DirichletCharacter::from_label(15, 11);
  REQUIRE(chi.conductor() == 3);
  const Interval r5 = Interval(5).sqrt();
  const auto good = al_pseudo_eigenvalue(3, 15, chi, 5, ComplexInterval{Interval(0), r5});
  CHECK(good.ok());
  CHECK(good.lambda.im.contains(1));
  const auto bad = al_pseudo_eigenvalue(3, 15, chi, 5, ComplexInterval{Interval(2), Interval(0)});
  CHECK_FALSE(bad.abs_ok);
  // right size, wrong square
  CHECK_FALSE(al_pseudo_eigenvalue(3, 15, chi, 5, ComplexInterval{r5, Interval(0)}).square_ok);
  CHECK_THROWS_AS(al_pseudo_eigenvalue(3, 15, chi, 3, mpq_class(1)), DomainError);
  CHECK_THROWS_AS(al_pseudo_eigenvalue(2, 11, triv, 11, mpq_class(0)), DataError);
}

TEST_CASE("Proposition 1 on synthetic polynomials") {
  // a_f(2) = 1 sits exactly on the degree-1 bound, which is not a violation
  CHECK_FALSE(prop1_violated(synthetic(2, 2, P({-1, 1})), P({-1, 1})));
  // x^2 - 10x + 1 has a root near 0.101, so |a'| ~ 0.036 < 1/8
  const auto tiny = synthetic(2, 2, P({1, -10, 1}));
  CHECK(prop1_violated(tiny, tiny.coefficients));
  const auto rows = prop1_reports(tiny);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].verdict == Verdict::Violated);
  CHECK(rows[0].bound.lo_double() > 2);
  // the zero eigenvalue is outside the hypothesis
  const auto z = prop1_reports(synthetic(2, 2, P({0, 1})));
  CHECK(z[0].verdict == Verdict::NoData);
}

TEST_CASE("Proposition 1 on actual spaces") {
  int rows = 0;
  for (int k : {2, 4}) {
    for (u64 N = 2; N <= 60; ++N) {
      if (!is_squarefree(N)) continue;
      for (u64 p : {2u, 3u, 5u}) {
        if (N % p == 0) continue;
        const SpaceParams s(k, N);
        if (dim_new(s) == 0) continue;
        for (const auto& r : prop1_reports(charpoly_new(s, p))) {
          INFO(r.inputs);
          CHECK(r.verdict != Verdict::Violated);
          if (r.verdict == Verdict::Consistent) CHECK_FALSE(Interval(*r.observed).certainly_less(r.bound));
          ++rows;
        }
      }
    }
  }
  CHECK(rows > 100);
}

}  // TEST_SUITE
