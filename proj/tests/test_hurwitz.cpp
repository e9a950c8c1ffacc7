#include <filesystem>
#include <map>

#include "doctest.h"
#include "heckebound/arith.hpp"
#include "heckebound/hurwitz.hpp"
#include "oracles.hpp"

using namespace heckebound;

namespace {

// h(D0) / (w(D0) / 2) for a fundamental discriminant D0 < 0 via the class number formula.
mpq_class weighted_class_number_fundamental(i64 D0) {
  const i64 m = -D0;
  mpz_class s = 0;
  for (i64 a = 1; a < m; ++a) s += kronecker(D0, a) * a;
  // h = -w/(2m) * s, so h / (w/2) = -s / m
  mpq_class r(-s, mpz_class(m));
  r.canonicalize();
  return r;
}

bool is_fundamental(i64 D) {
  const i64 r = ((D % 4) + 4) % 4;
  if (r == 1) return is_squarefree(static_cast<u64>(-D));
  if (r != 0) return false;
  const i64 d = D / 4;
  const i64 rr = ((d % 4) + 4) % 4;
  return (rr == 2 || rr == 3) && is_squarefree(static_cast<u64>(-d));
}

// Writes D = D0 f^2 with D0 fundamental.
std::pair<i64, i64> fundamental_part(i64 D) {
  i64 best = 1;
  for (i64 f = 1; f * f <= -D; ++f)
    if (D % (f * f) == 0 && is_fundamental(D / (f * f))) best = f;
  return {D / (best * best), best};
}

mpq_class hurwitz_oracle(u64 n) {
  if (n == 0) return mpq_class(-1, 12);
  mpq_class total = 0;
  for (u64 g = 1; g * g <= n; ++g) {
    if (n % (g * g) != 0) continue;
    const i64 D = -static_cast<i64>(n / (g * g));
    const i64 r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) continue;
    auto [D0, f] = fundamental_part(D);
    REQUIRE(is_fundamental(D0));
    mpq_class term = weighted_class_number_fundamental(D0) * f;
    for (const auto& [p, e] : factorize(static_cast<u64>(f))) {
      (void)e;
      term *= mpq_class(static_cast<long>(p) - kronecker(D0, static_cast<i64>(p)), static_cast<long>(p));
    }
    total += term;
  }
  total.canonicalize();
  return total;
}

}  // namespace

TEST_SUITE("hurwitz") {

TEST_CASE("reduced-form enumeration for n <= 10^4 and table invariants") {
  HurwitzTable t(10000);
  for (u64 n = 0; n <= 10000; ++n) {
    const i64 v = t.twelve_h(n);
    CHECK(v == oracle::twelve_h_by_forms(n));
    if (n % 4 == 1 || n % 4 == 2) CHECK(v == 0);
    else if (n > 0) CHECK(v >= 4);
  }
}

TEST_CASE("known values") {
  CHECK(hurwitz(0) == mpq_class(-1, 12));
  CHECK(hurwitz(1) == 0);
  CHECK(hurwitz(2) == 0);
  CHECK(hurwitz(3) == mpq_class(1, 3));
  CHECK(hurwitz(4) == mpq_class(1, 2));
  CHECK(hurwitz(7) == 1);
  CHECK(hurwitz(8) == 1);
  CHECK(hurwitz(11) == 1);
  CHECK(hurwitz(12) == mpq_class(4, 3));
  CHECK(hurwitz(15) == 2);
  CHECK(hurwitz(23) == 3);
}

TEST_CASE("agrees with the analytic class number formula") {
  for (u64 n = 0; n <= 3000; ++n) {
    INFO("n = " << n);
    CHECK(hurwitz(n) == hurwitz_oracle(n));
  }
  for (u64 n = 9000; n <= 10000; n += 37) {
    INFO("n = " << n);
    CHECK(hurwitz(n) == hurwitz_oracle(n));
  }
}

TEST_CASE("Kronecker-Hurwitz relation sum_t H(4n - t^2) = 2 sigma(n) - sum min(d, n/d)") {
  // with the usual convention that the t^2 = 4n terms use H(0) = -1/12 and
  // the divisor sum counts d and n/d both.
  for (u64 n = 1; n <= 300; ++n) {
    mpq_class lhs = 0;
    for (i64 t = -2 * static_cast<i64>(n); t <= 2 * static_cast<i64>(n); ++t) {
      const i64 v = 4 * static_cast<i64>(n) - t * t;
      if (v >= 0) lhs += hurwitz(static_cast<u64>(v));
    }
    u64 mins = 0;
    for (u64 d : divisors(n)) mins += std::min(d, n / d);
    CHECK(lhs == mpq_class(2 * static_cast<long>(sigma(n)) - static_cast<long>(mins)));
  }
}

TEST_CASE("table extension keeps old values and the binary cache round-trips") {
  HurwitzTable t(100);
  const auto before = t.snapshot();
  t.ensure(5000);
  CHECK(t.limit() >= 5000);
  const auto after = t.snapshot();
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i] == after[i]);

  const auto file = std::filesystem::temp_directory_path() / "hb_hurwitz_test.bin";
  t.save(file);
  HurwitzTable loaded = HurwitzTable::load(file);
  CHECK(loaded.snapshot() == after);
  std::filesystem::remove(file);
}

}  // TEST_SUITE
