#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "heckebound/charpoly.hpp"
#include "heckebound/errors.hpp"
#include "oracles.hpp"

using namespace heckebound;

namespace {

IntPoly P(std::initializer_list<long> c) {
  IntPoly f;
  for (long x : c) f.emplace_back(x);
  poly::trim(f);
  return f;
}

// Whether the power-sum route is cheap enough to run.
bool power_route_feasible(const SpaceParams& s, u64 p) {
  const i64 d = dim_new(s);
  double pd = std::pow(static_cast<double>(p), static_cast<double>(d));
  return pd <= static_cast<double>(kPowerSumLimit);
}

std::vector<DirichletCharacter> real_characters(u64 N) {
  std::vector<DirichletCharacter> out;
  for (const auto& chi : all_characters(N))
    if (chi.order() <= 2) out.push_back(chi);
  return out;
}

}  // namespace

TEST_SUITE("charpoly") {

TEST_CASE("worked examples") {
  const auto p23 = charpoly_new(SpaceParams(2, 23), 2);
  CHECK(p23.coefficients == P({-1, 1, 1}));
  CHECK(p23.str() == "x^2 + x - 1");
  CHECK(factor_degrees(p23) == std::vector<int>{2});
  const auto p37 = charpoly_new(SpaceParams(2, 37), 2);
  CHECK(p37.coefficients == P({0, 2, 1}));
  CHECK(factor_degrees(p37) == std::vector<int>{1, 1});
  const auto p11 = charpoly_new(SpaceParams(2, 11), 2);
  CHECK(p11.coefficients == P({2, 1}));
  REQUIRE(p11.factors.size() == 1);
  CHECK(p11.factors[0].multiplicity == 1);
  CHECK(charpoly_new(SpaceParams(12, 1), 2).coefficients == P({24, 1}));
  const auto empty = charpoly_new(SpaceParams(2, 22), 3);
  CHECK(empty.coefficients == P({1}));
  CHECK(empty.factors.empty());
  CHECK_THROWS_AS(charpoly_new(SpaceParams(2, 22), 2), DomainError);
  CHECK_THROWS_AS(charpoly_new(SpaceParams(3, 7, DirichletCharacter::from_label(7, 3)), 2), NotExactlySupported);
  // (x^2 + x - 1)(x - 5)
  CHECK(factor_degrees(factor_over_z(P({5, -6, -4, 1}))) == std::vector<int>{1, 2});
}

TEST_CASE("power sums") {
  const SpaceParams s(2, 23);
  const auto ps = power_sums(s, 2, 2);
  CHECK(ps[0] == CycNum(-1));
  CHECK(ps[1] == CycNum(3));
  for (u64 N : {11u, 35u, 43u})
    for (int k : {2, 4}) {
      const SpaceParams t(k, N);
      for (u64 p : {2u, 3u}) {
        const auto s2 = power_sums(t, p, 2);
        CHECK(s2[0] == trace_new(t, p).value);
        const long pk = static_cast<long>(ipow(p, static_cast<unsigned>(k - 1)));
        CHECK(s2[1] == trace_new(t, p * p).value + CycNum(pk * dim_new(t)));
      }
    }
  CHECK_THROWS_AS(power_sums(s, 23, 1), DomainError);
}

TEST_CASE("weight two, rational newforms: product of elliptic curve factors") {
  for (const auto& group : oracle::elliptic_curve_levels()) {
    INFO("N = " << group.level);
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u}) {
      if (group.level % p == 0) continue;
      IntPoly expected{1};
      for (const auto& E : group.curves) expected = poly::mul(expected, IntPoly{-oracle::ap_by_point_count(E, p), 1});
      const auto cp = charpoly_new(SpaceParams(2, group.level), p);
      CHECK(cp.coefficients == expected);
      for (int d : factor_degrees(cp)) CHECK(d == 1);
    }
  }
}

TEST_CASE("genus two modular curves") {
  for (const auto& [N, C] : oracle::genus_two_modular_curves()) {
    INFO(C.label);
    for (u64 p = 3; p <= 41; p += 2) {
      if (!is_prime(p) || N % p == 0) continue;
      const auto t = oracle::frobenius_trace_poly(C, p);
      const auto cp = charpoly_new(SpaceParams(2, N), p);
      CHECK(cp.coefficients == IntPoly{t[0], t[1], t[2]});
    }
  }
}

TEST_CASE("both routes agree, with real characters") {
  int compared = 0;
  for (int k : {2, 3, 4, 6})
    for (u64 N = 1; N <= 90; N += (N < 40 ? 1 : 3))
      for (const auto& chi : real_characters(N)) {
        const SpaceParams s(k, N, chi);
        if (!s.parity_ok()) continue;
        for (u64 p : {2u, 3u}) {
          if (N % p == 0 || dim_new(s) == 0 || !power_route_feasible(s, p)) continue;
          INFO(s.str() << " p=" << p);
          const auto a = charpoly_new(s, p, CharPolyRoute::PowerSums);
          const auto b = charpoly_new(s, p, CharPolyRoute::HeckeAlgebra);
          CHECK(a.coefficients == b.coefficients);
          CHECK(a.degree() == dim_new(s));
          ++compared;
        }
      }
  CHECK(compared > 150);
}

TEST_CASE("Newton round trip past the degree") {
  for (u64 N : {23u, 29u, 31u, 41u})
    for (int k : {2, 4}) {
      const SpaceParams s(k, N);
      const auto cp = charpoly_new(s, 2);
      std::vector<mpq_class> c(cp.coefficients.begin(), cp.coefficients.end());
      const std::size_t J = static_cast<std::size_t>(cp.degree()) + 3;
      const auto from_poly = poly::power_sums_of(c, J);
      const auto direct = power_sums(s, 2, J);
      for (std::size_t j = 0; j < J; ++j) CHECK(direct[j] == CycNum(from_poly[j]));
    }
}

TEST_CASE("integrality, degree and Ramanujan bound on a grid") {
  for (int k : {2, 4, 6})
    for (u64 N = 1; N <= 150; N += 1 + N / 30) {
      if (!is_squarefree(N)) continue;
      for (u64 p : {2u, 3u}) {
        if (N % p == 0) continue;
        const SpaceParams s(k, N);
        INFO(s.str() << " p=" << p);
        const auto cp = charpoly_new(s, p);
        CHECK(cp.degree() == dim_new(s));
        CHECK(cp.coefficients.back() == 1);
        IntPoly prod{1};
        for (const auto& f : cp.factors)
          for (int i = 0; i < f.multiplicity; ++i) prod = poly::mul(prod, f.poly);
        CHECK(prod == cp.coefficients);
        for (const auto& r : normalized_roots(cp)) {
          CHECK(r.lo_double() >= -1 - 1e-10);
          CHECK(r.hi_double() <= 1 + 1e-10);
        }
      }
    }
}

TEST_CASE("normalized roots") {
  const auto p23 = charpoly_new(SpaceParams(2, 23), 2);
  const auto m23 = min_nonzero_normalized_root(p23);
  REQUIRE(m23.has_value());
  CHECK(m23->lo_double() >= 0.21850);
  CHECK(m23->hi_double() <= 0.21851);
  const auto m11 = min_nonzero_normalized_root(charpoly_new(SpaceParams(2, 11), 2));
  REQUIRE(m11.has_value());
  CHECK(m11->lo_double() >= 0.70710);
  CHECK(m11->hi_double() <= 0.70711);
  HeckeCharPoly degenerate = p23;
  degenerate.coefficients = P({0, 0, 1});
  degenerate.factors = factor_over_z(degenerate.coefficients);
  CHECK_FALSE(min_nonzero_normalized_root(degenerate).has_value());
  CHECK(count_normalized_in(degenerate, 1) == 0);

  const auto roots = normalized_roots(p23);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].mid_double() == doctest::Approx(-(1 + std::sqrt(5.0)) / 2 / std::sqrt(8.0)).epsilon(1e-12));
  CHECK(count_normalized_in(p23, mpq_class(3, 10)) == 1);
  CHECK(count_normalized_in(p23, mpq_class(1, 10)) == 0);
  CHECK(count_normalized_in(p23, 1) == 2);
  CHECK(count_normalized_in(charpoly_new(SpaceParams(2, 11), 2), mpq_class(1, 2)) == 0);
  // boundary: k = 3, p = 2, root -2 gives |a'| = 1/2 exactly
  HeckeCharPoly half = p23;
  half.params = SpaceParams(3, 1);
  half.coefficients = P({2, 1});
  half.factors = factor_over_z(half.coefficients);
  CHECK(count_normalized_in(half, mpq_class(1, 2), false) == 1);
  CHECK(count_normalized_in(half, mpq_class(1, 2), true) == 0);

  // exact counts agree with the isolated roots
  for (u64 N : {67u, 101u, 131u}) {
    const auto cp = charpoly_new(SpaceParams(2, N), 2);
    const auto rs = normalized_roots(cp);
    for (const mpq_class A : {mpq_class(1, 10), mpq_class(1, 4), mpq_class(1, 2)}) {
      std::size_t expect = 0;
      for (const auto& r : rs) {
        const double v = std::abs(r.mid_double());
        if (v > 1e-12 && v <= A.get_d()) ++expect;
      }
      CHECK(count_normalized_in(cp, A) == expect);
    }
  }
}

TEST_CASE("characters with chi(p) = -1 use the imaginary model") {
  // chi = (-3/.), odd; k = 3; p = 2 has chi(2) = -1
  const DirichletCharacter chi = DirichletCharacter::from_label(3, 2);
  int seen = 0;
  for (u64 N : {3u, 15u, 21u, 39u, 51u}) {
    const SpaceParams s(3, N, chi);
    if (dim_new(s) == 0) continue;
    for (u64 p : {2u, 5u, 11u}) {
      if (N % p == 0) continue;
      const auto cp = charpoly_new(s, p);
      INFO(s.str() << " p=" << p << " " << cp.str());
      for (const auto& r : normalized_roots(cp)) {
        CHECK(r.lo_double() >= -1 - 1e-10);
        CHECK(r.hi_double() <= 1 + 1e-10);
      }
      if (cp.chi_p == -1) ++seen;
      // numeric path agrees where it applies
      if (power_route_feasible(s, p)) {
        const auto exact = normalized_roots(cp);
        const auto num = numeric_normalized_roots(s, p);
        REQUIRE(num.size() == exact.size());
        for (std::size_t i = 0; i < num.size(); ++i) CHECK(num[i].overlaps(exact[i]));
      }
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("numeric path for characters of higher order") {
  int checked = 0;
  for (u64 N : {7u, 9u, 13u, 16u, 21u})
    for (const auto& chi : all_characters(N)) {
      if (chi.order() <= 2) continue;
      for (int k = 2; k <= 4; ++k) {
        const SpaceParams s(k, N, chi);
        if (!s.parity_ok() || dim_new(s) == 0) continue;
        for (u64 p : {2u, 5u}) {
          if (N % p == 0 || !power_route_feasible(s, p)) continue;
          INFO(s.str() << " p=" << p);
          std::vector<Interval> roots;
          try {
            roots = numeric_normalized_roots(s, p);
          } catch (const PrecisionError&) {
            continue;  // repeated eigenvalue
          }
          REQUIRE(roots.size() == static_cast<std::size_t>(dim_new(s)));
          Interval sum(0), sum2(0);
          for (const auto& r : roots) {
            CHECK(r.lo_double() >= -1 - 1e-10);
            CHECK(r.hi_double() <= 1 + 1e-10);
            sum += r;
            sum2 += Interval(2) * r * r - Interval(mpq_class(1, 2));
          }
          // sum a' = tr T'_p and sum (2 a'^2 - 1/2) = tr T'_{p^2}, up to the sign by which
          // the fixed square root of chi(p^2) differs from the square of that of chi(p)
          const auto sp = s.chi.sqrt_value(static_cast<i64>(p));
          const CycNum eps = s.chi.sqrt_value(static_cast<i64>(p * p)) * (sp * sp).conj();
          REQUIRE(eps.is_rational());
          CHECK(sum.overlaps(normalized_trace_new(s, p, 1)));
          CHECK((sum2 * Interval(eps.rational_value())).overlaps(normalized_trace_new(s, p, 2)));
          ++checked;
        }
      }
    }
  CHECK(checked > 10);
}

TEST_CASE("Galois orbit degrees") {
  CHECK(galois_orbit_degrees(SpaceParams(2, 11)) == std::vector<int>{1});
  CHECK(galois_orbit_degrees(SpaceParams(2, 23)) == std::vector<int>{2});
  CHECK(galois_orbit_degrees(SpaceParams(2, 37)) == std::vector<int>{1, 1});
  CHECK(galois_orbit_degrees(SpaceParams(2, 67)) == std::vector<int>{1, 2, 2});
  CHECK(galois_orbit_degrees(SpaceParams(12, 1)) == std::vector<int>{1});
  CHECK(galois_orbit_degrees(SpaceParams(24, 1)) == std::vector<int>{2});
  CHECK(galois_orbit_degrees(SpaceParams(2, 22)).empty());
  // orbit degrees refine the T_p factor degrees: each T_p factor degree divides an orbit degree
  for (u64 N : {43u, 53u, 61u, 79u, 85u}) {
    const SpaceParams s(2, N);
    const auto orbits = galois_orbit_degrees(s);
    i64 total = 0;
    for (int d : orbits) total += d;
    CHECK(total == dim_new(s));
    const auto cp = charpoly_new(s, 2);
    CHECK(*std::max_element(orbits.begin(), orbits.end()) >= factor_degrees(cp).back());
  }
}

}  // TEST_SUITE
