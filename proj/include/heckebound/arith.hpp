#ifndef HECKEBOUND_ARITH_HPP
#define HECKEBOUND_ARITH_HPP

#include <cstdint>
#include <vector>

namespace heckebound {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 p;
  unsigned e;
  bool operator==(const PrimePower&) const = default;
};

using Factorization = std::vector<PrimePower>;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 ipow(u64 base, unsigned e);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

/// Trial division up to 10^7 and a primality test on the cofactor.
/// Throws UnsupportedError when a composite cofactor survives trial division.
Factorization factorize(u64 n);

u64 radical(u64 n);
bool is_squarefree(u64 n);
int omega(u64 n);
u64 euler_phi(u64 n);
u64 num_divisors(u64 n);
int moebius(u64 n);
u64 sigma(u64 n);
u64 carmichael(u64 n);
std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(const Factorization& f);
unsigned valuation(u64 n, u64 p);

/// Kronecker symbol (a/n), n may be any integer.
int kronecker(i64 a, i64 n);

/// Multiplicative sieve function with d*(l) = -2, d*(l^2) = 1, d*(l^a) = 0 for a >= 3.
i64 dstar(u64 n);
/// N * prod_{l | N} (1 + 1/l).
u64 psi(u64 N);
/// sum_{M | N} d*(N/M) psi(M).
i64 psi_new(u64 N);

u64 smallest_coprime_prime(u64 N);

/// Smallest-prime-factor table for fast factorization of many small integers.
class SmallFactorSieve {
 public:
  explicit SmallFactorSieve(u64 limit = 0);
  void ensure(u64 limit);
  u64 limit() const { return spf_.empty() ? 0 : spf_.size() - 1; }
  /// Falls back to trial division beyond the sieved range.
  Factorization factor(u64 n) const;

 private:
  std::vector<std::uint32_t> spf_;
};

}  // namespace heckebound

#endif
