#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "heckebound/cycnum.hpp"
#include "heckebound/errors.hpp"

using namespace heckebound;

namespace {

std::complex<double> approx(const CycNum& x) {
  const ComplexInterval z = x.embed();
  return {z.re.mid_double(), z.im.mid_double()};
}

CycNum random_element(std::mt19937_64& rng, u64 m) {
  CycNum out = CycNum::zero(m);
  for (int j = 0; j < 4; ++j) {
    const long c = static_cast<long>(rng() % 11) - 5;
    out += CycNum(mpq_class(c, static_cast<long>(rng() % 3 + 1))) * CycNum::root_of_unity(m, static_cast<i64>(rng() % m));
  }
  return out;
}

}  // namespace

TEST_SUITE("cycnum") {

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<mpz_class>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<mpz_class>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<mpz_class>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<mpz_class>{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient of absolute value 2
  bool seen_two = false;
  for (const auto& c : cyclotomic_polynomial(105)) seen_two |= (c == -2 || c == 2);
  CHECK(seen_two);
}

TEST_CASE("roots of unity") {
  const CycNum i = CycNum::root_of_unity(4, 1);
  CHECK(i * i == CycNum(-1));
  CHECK(CycNum::root_of_unity(8, 1) * CycNum::root_of_unity(8, 1) == i);
  CHECK(CycNum::root_of_unity(6, 3) == CycNum(-1));
  CHECK(CycNum::root_of_unity(5, -1) == CycNum::root_of_unity(5, 4));
  // sum of all m-th roots vanishes
  for (u64 m : {2u, 3u, 5u, 12u, 30u}) {
    CycNum s = CycNum::zero(m);
    for (u64 j = 0; j < m; ++j) s += CycNum::root_of_unity(m, static_cast<i64>(j));
    CHECK(s.is_zero());
  }
}

TEST_CASE("field axioms against the complex embedding") {
  std::mt19937_64 rng(11);
  for (u64 m : {1u, 3u, 4u, 8u, 9u, 15u, 20u}) {
    for (int it = 0; it < 20; ++it) {
      const CycNum a = random_element(rng, m), b = random_element(rng, m);
      CHECK(std::abs(approx(a * b) - approx(a) * approx(b)) < 1e-9);
      CHECK(std::abs(approx(a + b) - (approx(a) + approx(b))) < 1e-9);
      CHECK(std::abs(approx(a.conj()) - std::conj(approx(a))) < 1e-9);
      if (!b.is_zero()) {
        CHECK(a / b * b == a);
        CHECK(std::abs(approx(a / b) - approx(a) / approx(b)) < 1e-8 * (1 + std::abs(approx(a / b))));
      }
    }
  }
  CHECK_THROWS_AS(CycNum::zero(5).inverse(), DomainError);
}

TEST_CASE("mixed orders lift to the lcm") {
  const CycNum a = CycNum::root_of_unity(4, 1);
  const CycNum b = CycNum::root_of_unity(3, 1);
  const CycNum c = a * b;
  CHECK(c.order() % 12 == 0);
  CHECK(c == CycNum::root_of_unity(12, 7));
  CHECK(CycNum(mpq_class(1, 2), 6) == CycNum(mpq_class(1, 2)));
}

TEST_CASE("rational detection") {
  const CycNum z = CycNum::root_of_unity(5, 1);
  const CycNum r = z + z.conj();
  CHECK_FALSE(r.is_rational());
  CHECK((r * r + r).is_rational());
  CHECK((r * r + r).rational_value() == 1);
  CHECK_THROWS_AS(z.rational_value(), DomainError);
}

TEST_CASE("integer vector round trip") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    const CycNum a = random_element(rng, 12);
    std::vector<mpz_class> num;
    mpz_class den;
    a.to_integer_vector(num, den);
    CHECK(CycNum::from_integer_vector(12, num, den) == a);
  }
}

TEST_CASE("string form") {
  CHECK(CycNum(3).str() == "3");
  CHECK(CycNum(mpq_class(-1, 2)).str() == "-1/2");
}

}  // TEST_SUITE
