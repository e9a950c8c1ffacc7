#include "heckebound/arith.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "heckebound/errors.hpp"

namespace heckebound {

namespace {

constexpr u64 kTrialLimit = 10'000'000;

}  // namespace

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 ipow(u64 base, unsigned e) {
  u64 r = 1;
  while (e--) r *= base;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 3.3 * 10^24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  Factorization out;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  };
  take(2);
  take(3);
  bool checked = false;
  for (u64 p = 5; p * p <= n && p <= kTrialLimit; p += 6) {
    take(p);
    take(p + 2);
    if (!checked && p > 1000) {
      checked = true;
      if (is_prime(n)) break;
    }
  }
  if (n > 1) {
    if (!is_prime(n)) {
      throw UnsupportedError("factorize: composite cofactor " + std::to_string(n) +
                             " beyond trial division range");
    }
    out.push_back({n, 1});
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.p < b.p; });
  return out;
}

u64 radical(u64 n) {
  u64 r = 1;
  for (auto [p, e] : factorize(n)) r *= p;
  return r;
}

bool is_squarefree(u64 n) {
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

int omega(u64 n) { return static_cast<int>(factorize(n).size()); }

u64 euler_phi(u64 n) {
  u64 r = 1;
  for (auto [p, e] : factorize(n)) r *= (p - 1) * ipow(p, e - 1);
  return r;
}

u64 num_divisors(u64 n) {
  u64 r = 1;
  for (auto [p, e] : factorize(n)) r *= e + 1;
  return r;
}

int moebius(u64 n) {
  int r = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    r = -r;
  }
  return r;
}

u64 sigma(u64 n) {
  u64 r = 1;
  for (auto [p, e] : factorize(n)) r *= (ipow(p, e + 1) - 1) / (p - 1);
  return r;
}

u64 carmichael(u64 n) {
  u64 r = 1;
  for (auto [p, e] : factorize(n)) {
    u64 l;
    if (p == 2)
      l = e <= 2 ? (e == 1 ? 1 : 2) : ipow(2, e - 2);
    else
      l = (p - 1) * ipow(p, e - 1);
    r = std::lcm(r, l);
  }
  return r;
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> d{1};
  for (auto [p, e] : f) {
    const std::size_t sz = d.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) d.push_back(d[j] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

unsigned valuation(u64 n, u64 p) {
  if (n == 0) throw DomainError("valuation of zero");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int k = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) k = -1;
  }
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  unsigned v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  // (a/2) = 0 if a even, 1 if a = +-1 mod 8, -1 if a = +-3 mod 8
  if (v & 1) {
    i64 r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) k = -k;
  }
  // n is now odd and positive: Jacobi symbol
  i64 aa = a % n;
  if (aa < 0) aa += n;
  u64 x = static_cast<u64>(aa), m = static_cast<u64>(n);
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      u64 r = m % 8;
      if (r == 3 || r == 5) k = -k;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) k = -k;
    x %= m;
  }
  return m == 1 ? k : 0;
}

i64 dstar(u64 n) {
  if (n == 0) throw DomainError("dstar: n must be positive");
  i64 r = 1;
  for (auto [p, e] : factorize(n)) {
    if (e == 1)
      r *= -2;
    else if (e >= 3)
      return 0;
  }
  return r;
}

u64 psi(u64 N) {
  if (N == 0) throw DomainError("psi: N must be positive");
  u64 r = 1;
  for (auto [p, e] : factorize(N)) r *= (p + 1) * ipow(p, e - 1);
  return r;
}

i64 psi_new(u64 N) {
  if (N == 0) throw DomainError("psi_new: N must be positive");
  // Local factor at p^e: psi(p^e) - 2 psi(p^{e-1}) + psi(p^{e-2}).
  i64 r = 1;
  for (auto [p, e] : factorize(N)) {
    auto local_psi = [p = static_cast<i64>(p)](int j) -> i64 {
      if (j < 0) return 0;
      if (j == 0) return 1;
      i64 v = p + 1;
      for (int i = 1; i < j; ++i) v *= p;
      return v;
    };
    const int ee = static_cast<int>(e);
    r *= local_psi(ee) - 2 * local_psi(ee - 1) + local_psi(ee - 2);
  }
  return r;
}

u64 smallest_coprime_prime(u64 N) {
  if (N == 0) throw DomainError("smallest_coprime_prime: N must be positive");
  for (u64 p = 2;; ++p)
    if (is_prime(p) && N % p != 0) return p;
}

SmallFactorSieve::SmallFactorSieve(u64 limit) { ensure(limit); }

void SmallFactorSieve::ensure(u64 want) {
  if (!spf_.empty() && spf_.size() > want) return;
  u64 L = std::max<u64>(want, 2 * limit());
  L = std::max<u64>(L, 1024);
  spf_.assign(L + 1, 0);
  for (u64 i = 2; i <= L; ++i) {
    if (spf_[i]) continue;
    for (u64 j = i; j <= L; j += i)
      if (!spf_[j]) spf_[j] = static_cast<std::uint32_t>(i);
  }
}

Factorization SmallFactorSieve::factor(u64 n) const {
  if (n == 0) throw DomainError("factor: n must be positive");
  if (n >= spf_.size()) return factorize(n);
  Factorization out;
  while (n > 1) {
    const u64 p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

}  // namespace heckebound
