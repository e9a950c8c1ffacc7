#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "heckebound/character.hpp"
#include "heckebound/errors.hpp"

using namespace heckebound;

namespace {

// Smallest d | N with chi trivial on units congruent to 1 mod d.
u64 brute_conductor(const DirichletCharacter& chi) {
  const u64 N = chi.modulus();
  for (u64 d : divisors(N)) {
    bool trivial = true;
    for (u64 a = 1; a <= N && trivial; a += d)
      if (std::gcd(a, N) == 1 && chi.exponent(static_cast<i64>(a)) != 0) trivial = false;
    if (trivial) return d;
  }
  return N;
}

u64 brute_order(const DirichletCharacter& chi) {
  u64 o = 1;
  for (u64 a = 1; a <= chi.modulus(); ++a) {
    const auto r = chi.exponent(static_cast<i64>(a));
    if (r) o = std::lcm(o, chi.order() / std::gcd(*r, chi.order()));
  }
  return o;
}

}  // namespace

TEST_SUITE("character") {

TEST_CASE("basic labels") {
  const auto t = DirichletCharacter::from_label(11, 1);
  CHECK(t.is_principal());
  CHECK(t.order() == 1);
  CHECK(t.parity() == 1);
  CHECK(t.evaluate(7) == CycNum(1));
  CHECK(t.evaluate(11).is_zero());

  const auto q3 = DirichletCharacter::from_label(3, 2);
  CHECK(q3.order() == 2);
  CHECK(q3.parity() == -1);
  CHECK(q3.evaluate(2) == CycNum(-1));
  CHECK(q3.evaluate(3).is_zero());

  const auto c5 = DirichletCharacter::from_label(5, 2);
  CHECK(c5.order() == 4);
  CHECK(c5.evaluate(2) == CycNum::root_of_unity(4, 1));
  CHECK_THROWS_AS(DirichletCharacter::from_label(15, 5), DomainError);
}

TEST_CASE("parsing") {
  CHECK(DirichletCharacter::parse("1155.1154").order() == 2);
  CHECK(DirichletCharacter::parse("trivial", 23).modulus() == 23);
  CHECK(DirichletCharacter::parse("7.3").label_string() == "7.3");
  CHECK_THROWS_AS(DirichletCharacter::parse("trivial"), DomainError);
  CHECK_THROWS_AS(DirichletCharacter::parse("7x3"), DomainError);
  CHECK_THROWS_AS(DirichletCharacter::parse("7.3z"), DomainError);
}

TEST_CASE("all characters mod N are distinct homomorphisms with the right invariants") {
  for (u64 N = 1; N <= 100; ++N) {
    const auto chars = all_characters(N);
    CHECK(chars.size() == euler_phi(N));
    std::set<std::vector<u64>> tables;
    for (const auto& chi : chars) {
      INFO(chi.label_string());
      std::vector<u64> table;
      for (u64 a = 1; a <= N; ++a) {
        const auto r = chi.exponent(static_cast<i64>(a));
        CHECK(r.has_value() == (std::gcd(a, N) == 1));
        table.push_back(r ? *r * (carmichael(N) / chi.order()) : 999999);
      }
      tables.insert(table);
      for (u64 a = 1; a <= N; ++a)
        for (u64 b = a; b <= N; ++b) {
          if (std::gcd(a * b, N) != 1) continue;
          const u64 ra = *chi.exponent(static_cast<i64>(a)), rb = *chi.exponent(static_cast<i64>(b));
          CHECK(*chi.exponent(static_cast<i64>(a * b)) == (ra + rb) % chi.order());
        }
      CHECK(chi.evaluate(-1) == CycNum(chi.parity()));
      if (N <= 30)
        for (u64 a = 1; a <= N; ++a)
          CHECK(chi.evaluate(static_cast<i64>(7 * a)) == chi.evaluate(7) * chi.evaluate(static_cast<i64>(a)));
      CHECK(carmichael(N) % chi.order() == 0);
      CHECK(chi.order() == brute_order(chi));
      CHECK(chi.conductor() == brute_conductor(chi));
      CHECK(DirichletCharacter::from_label(N, chi.label()) == chi);
    }
    CHECK(tables.size() == chars.size());
  }
}

TEST_CASE("orthogonality") {
  for (u64 N : {12u, 15u, 16u, 21u, 27u, 40u}) {
    const auto chars = all_characters(N);
    for (u64 a = 1; a <= N; ++a) {
      if (std::gcd(a, N) != 1) continue;
      CycNum s = 0;
      for (const auto& chi : chars) s += chi.evaluate(static_cast<i64>(a));
      CHECK(s == CycNum(a == 1 ? static_cast<long>(euler_phi(N)) : 0L));
    }
  }
}

TEST_CASE("local components multiply back to the character") {
  std::mt19937_64 rng(5);
  for (u64 N : {60u, 77u, 96u, 135u, 1155u, 2000u}) {
    for (int it = 0; it < 10; ++it) {
      u64 label;
      do label = rng() % N + 1; while (std::gcd(label, N) != 1);
      const auto chi = DirichletCharacter::from_label(N, label);
      for (int j = 0; j < 100; ++j) {
        const i64 n = static_cast<i64>(rng() % 100000) - 50000;
        CycNum prod = 1;
        for (const auto& c : chi.components()) prod *= chi.local(c.p).evaluate(n);
        CHECK(prod == chi.evaluate(n));
      }
    }
  }
}

TEST_CASE("induction preserves the primitive character") {
  const auto q3 = DirichletCharacter::from_label(3, 2);
  const auto big = q3.induced(1155);
  CHECK(big.label() == 386);
  CHECK(big.conductor() == 3);
  CHECK(n2_part(big, 1155) == 385);
  for (u64 N = 1; N <= 80; ++N)
    for (const auto& chi : all_characters(N))
      for (u64 M = chi.conductor(); M <= 160; M += chi.conductor()) {
        const auto ind = chi.induced(M);
        CHECK(ind.primitive() == chi.primitive());
        for (i64 n = 1; n <= 40; ++n)
          if (std::gcd(static_cast<u64>(n), N * M) == 1) CHECK(ind.evaluate(n) == chi.evaluate(n));
      }
  CHECK_THROWS_AS(q3.induced(10), DomainError);
}

TEST_CASE("n2 part") {
  CHECK(n2_part(DirichletCharacter::trivial(15), 15) == 15);
  CHECK(n2_part(DirichletCharacter::from_label(11, 2), 11) == 1);
  CHECK_THROWS_AS(n2_part(DirichletCharacter::trivial(12), 12), UnsupportedError);
  for (u64 N = 1; N <= 100; ++N) {
    if (!is_squarefree(N)) continue;
    for (const auto& chi : all_characters(N)) {
      const u64 n2 = n2_part(chi, N);
      CHECK(N % n2 == 0);
      if (chi.conductor() == N) CHECK(n2 == 1);
    }
  }
}

TEST_CASE("square-root convention") {
  std::mt19937_64 rng(9);
  for (u64 N = 1; N <= 100; N += 3) {
    for (const auto& chi : all_characters(N)) {
      for (int j = 0; j < 100; ++j) {
        const i64 n = static_cast<i64>(rng() % 10000) + 1;
        if (std::gcd(static_cast<u64>(n), N) != 1) continue;
        const CycNum s = chi.sqrt_value(n);
        CHECK(s * s == chi.evaluate(n));
      }
    }
  }
  const auto q3 = DirichletCharacter::from_label(3, 2);
  CHECK(q3.sqrt_value(2) == CycNum::root_of_unity(4, 1));
  CHECK(DirichletCharacter::from_label(5, 2).sqrt_value(2) == CycNum::root_of_unity(8, 1));
  CHECK(DirichletCharacter::trivial(7).sqrt_value(3) == CycNum(1));
  CHECK_THROWS_AS(q3.sqrt_value(3), DomainError);
}

}  // TEST_SUITE
