#include "heckebound/factor.hpp"

#include <algorithm>
#include <random>

#include "heckebound/arith.hpp"
#include "heckebound/errors.hpp"

namespace heckebound {
namespace {

// ---- polynomials over F_p, p < 2^32 ----

using FpPoly = std::vector<u64>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod(u64 a, u64 p) { return powmod(a, p - 2, p); }

FpPoly fp_reduce(const IntPoly& f, u64 p) {
  FpPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
  fp_trim(r);
  return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  fp_trim(r);
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  fp_trim(r);
  return r;
}

// a = q b + r
void fp_divmod(const FpPoly& a, const FpPoly& b, u64 p, FpPoly* q, FpPoly* r) {
  FpPoly rem = a;
  const u64 il = inv_mod(b.back(), p);
  FpPoly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (!rem.empty() && rem.size() >= b.size()) {
    const u64 c = rem.back() * il % p;
    const std::size_t s = rem.size() - b.size();
    quo[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[s + j] = (rem[s + j] + p - c * b[j] % p) % p;
    fp_trim(rem);
  }
  if (q) {
    fp_trim(quo);
    *q = std::move(quo);
  }
  if (r) *r = std::move(rem);
}

FpPoly fp_rem(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly r;
  fp_divmod(a, b, p, nullptr, &r);
  return r;
}

FpPoly fp_monic(FpPoly a, u64 p) {
  if (a.empty()) return a;
  const u64 il = inv_mod(a.back(), p);
  for (auto& c : a) c = c * il % p;
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  while (!b.empty()) {
    FpPoly r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

// s a + t b = gcd = 1
void fp_bezout(const FpPoly& a, const FpPoly& b, u64 p, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    FpPoly q, r;
    fp_divmod(r0, r1, p, &q, &r);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw DomainError("fp_bezout: inputs not coprime");
  const u64 il = inv_mod(r0[0], p);
  for (auto& c : s0) c = c * il % p;
  for (auto& c : t0) c = c * il % p;
  s = s0;
  t = t0;
}

FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod, u64 p) {
  FpPoly result{1};
  FpPoly b = fp_rem(base, mod, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = fp_rem(fp_mul(result, result, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = fp_rem(fp_mul(result, b, p), mod, p);
  }
  return result;
}

FpPoly fp_derivative(const FpPoly& a, u64 p) {
  FpPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
  fp_trim(r);
  return r;
}

// distinct-degree factorization of a monic squarefree polynomial: (product, degree)
std::vector<std::pair<FpPoly, int>> fp_ddf(FpPoly f, u64 p) {
  std::vector<std::pair<FpPoly, int>> out;
  const FpPoly x{0, 1};
  FpPoly h = x;
  const mpz_class pz(static_cast<unsigned long>(p));
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = fp_powmod(h, pz, f, p);
    FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
    if (g.size() > 1) {
      out.emplace_back(g, d);
      FpPoly q;
      fp_divmod(f, g, p, &q, nullptr);
      f = std::move(q);
      h = fp_rem(h, f, p);
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
  return out;
}

// equal-degree splitting (Cantor-Zassenhaus), p odd
void fp_edf(const FpPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coef(0, p - 1);
  for (;;) {
    FpPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = coef(rng);
    fp_trim(a);
    if (a.size() <= 1) continue;
    FpPoly b = fp_powmod(a, e, g, p);
    b = fp_sub(b, FpPoly{1}, p);
    FpPoly h = fp_gcd(g, b, p);
    if (h.size() > 1 && h.size() < g.size()) {
      FpPoly q;
      fp_divmod(g, h, p, &q, nullptr);
      fp_edf(h, d, p, rng, out);
      fp_edf(fp_monic(q, p), d, p, rng, out);
      return;
    }
  }
}

// ---- polynomials modulo M ----

void mod_reduce(IntPoly& a, const mpz_class& M) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
  poly::trim(a);
}

IntPoly mod_mul(const IntPoly& a, const IntPoly& b, const mpz_class& M) {
  IntPoly r = poly::mul(a, b);
  mod_reduce(r, M);
  return r;
}

IntPoly mod_sub(const IntPoly& a, const IntPoly& b, const mpz_class& M) {
  IntPoly r = poly::sub(a, b);
  mod_reduce(r, M);
  return r;
}

IntPoly mod_add(const IntPoly& a, const IntPoly& b, const mpz_class& M) {
  IntPoly r = poly::add(a, b);
  mod_reduce(r, M);
  return r;
}

// division by a monic polynomial modulo M
void mod_divmod(const IntPoly& a, const IntPoly& b, const mpz_class& M, IntPoly* q, IntPoly* r) {
  IntPoly rem = a;
  mod_reduce(rem, M);
  IntPoly quo(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
  while (!rem.empty() && rem.size() >= b.size()) {
    const mpz_class c = rem.back();
    const std::size_t s = rem.size() - b.size();
    quo[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[s + j] -= c * b[j];
    mod_reduce(rem, M);
  }
  if (q) {
    poly::trim(quo);
    *q = std::move(quo);
  }
  if (r) *r = std::move(rem);
}

IntPoly lift_fp(const FpPoly& a) {
  IntPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, g and h monic; result mod m^2.
void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s, IntPoly& t, const mpz_class& m2) {
  const IntPoly e = mod_sub(f, mod_mul(g, h, m2), m2);
  IntPoly q, r;
  mod_divmod(mod_mul(s, e, m2), h, m2, &q, &r);
  IntPoly g2 = mod_add(g, mod_add(mod_mul(t, e, m2), mod_mul(q, g, m2), m2), m2);
  IntPoly h2 = mod_add(h, r, m2);
  IntPoly b = mod_sub(mod_add(mod_mul(s, g2, m2), mod_mul(t, h2, m2), m2), IntPoly{1}, m2);
  IntPoly c, d;
  mod_divmod(mod_mul(s, b, m2), h2, m2, &c, &d);
  s = mod_sub(s, d, m2);
  t = mod_sub(t, mod_add(mod_mul(t, b, m2), mod_mul(c, g2, m2), m2), m2);
  g = std::move(g2);
  h = std::move(h2);
}

// Lifts f = prod factors (mod p) to modulo p^(2^steps); all monic.
void multi_lift(const IntPoly& f, const std::vector<FpPoly>& factors, u64 p, int steps,
                std::vector<IntPoly>& out) {
  mpz_class M;
  mpz_ui_pow_ui(M.get_mpz_t(), p, 1ul << steps);
  if (factors.size() == 1) {
    IntPoly r = f;
    mod_reduce(r, M);
    out.push_back(r);
    return;
  }
  const std::size_t half = factors.size() / 2;
  FpPoly g0{1}, h0{1};
  for (std::size_t i = 0; i < half; ++i) g0 = fp_mul(g0, factors[i], p);
  for (std::size_t i = half; i < factors.size(); ++i) h0 = fp_mul(h0, factors[i], p);
  FpPoly s0, t0;
  fp_bezout(g0, h0, p, s0, t0);
  IntPoly g = lift_fp(g0), h = lift_fp(h0), s = lift_fp(s0), t = lift_fp(t0);
  mpz_class m = static_cast<unsigned long>(p);
  for (int i = 0; i < steps; ++i) {
    m *= m;
    hensel_step(f, g, h, s, t, m);
  }
  multi_lift(g, std::vector<FpPoly>(factors.begin(), factors.begin() + half), p, steps, out);
  multi_lift(h, std::vector<FpPoly>(factors.begin() + half, factors.end()), p, steps, out);
}

// Degrees achievable as sums of sub-multisets of the given degrees.
std::vector<bool> subset_degrees(const std::vector<int>& degs, int n) {
  std::vector<bool> ok(static_cast<std::size_t>(n) + 1, false);
  ok[0] = true;
  for (int d : degs)
    for (int x = n; x >= d; --x)
      if (ok[x - d]) ok[x] = true;
  return ok;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t r) {
  const std::size_t s = idx.size();
  for (std::size_t i = s; i-- > 0;) {
    if (idx[i] < r - s + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

IntPoly symmetric(IntPoly a, const mpz_class& M) {
  const mpz_class half = M / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
    if (c > half) c -= M;
  }
  poly::trim(a);
  return a;
}

bool less_poly(const IntPoly& a, const IntPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

std::vector<PolyFactor> squarefree_decomposition(const IntPoly& f0) {
  IntPoly f = poly::primitive_part(f0);
  std::vector<PolyFactor> out;
  if (poly::degree(f) <= 0) return out;
  const IntPoly df = poly::derivative(f);
  const IntPoly a0 = poly::gcd(f, df);
  IntPoly b, c;
  if (!poly::divides(a0, f, &b) || !poly::divides(a0, df, &c)) throw DomainError("squarefree_decomposition: inexact division");
  IntPoly d = poly::sub(c, poly::derivative(b));
  for (int i = 1; poly::degree(b) > 0; ++i) {
    IntPoly a = poly::gcd(b, d);
    if (poly::degree(a) > 0) out.push_back({a, i});
    IntPoly b2, c2;
    if (!poly::divides(a, b, &b2) || !poly::divides(a, d, &c2)) throw DomainError("squarefree_decomposition: inexact division");
    b = std::move(b2);
    d = poly::sub(c2, poly::derivative(b));
  }
  return out;
}

std::vector<IntPoly> factor_squarefree_monic(const IntPoly& f0) {
  IntPoly f = f0;
  poly::trim(f);
  if (f.empty() || f.back() != 1) throw UnsupportedError("factor_squarefree_monic: polynomial is not monic");
  const int n = poly::degree(f);
  std::vector<IntPoly> out;
  if (n <= 0) return out;
  if (f[0] == 0) {
    out.push_back({0, 1});
    f.erase(f.begin());
    if (poly::degree(f) > 0) {
      auto rest = factor_squarefree_monic(f);
      out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
  }
  if (n == 1) return {f};

  // choose the prime with the fewest modular factors; intersect the degree sets
  std::vector<bool> allowed(static_cast<std::size_t>(n) + 1, true);
  u64 best_p = 0;
  std::size_t best_count = 0;
  int good = 0;
  for (u64 p = 3; good < 8 && p < 2000; p += 2) {
    if (!is_prime(p)) continue;
    const FpPoly fp = fp_reduce(f, p);
    if (fp_gcd(fp, fp_derivative(fp, p), p).size() != 1) continue;
    ++good;
    std::vector<int> degs;
    for (const auto& [g, d] : fp_ddf(fp, p))
      for (std::size_t j = 0; j < (g.size() - 1) / static_cast<std::size_t>(d); ++j) degs.push_back(d);
    const auto ok = subset_degrees(degs, n);
    for (int x = 0; x <= n; ++x) allowed[x] = allowed[x] && ok[x];
    if (best_p == 0 || degs.size() < best_count) {
      best_p = p;
      best_count = degs.size();
    }
  }
  if (best_p == 0) throw PrecisionError("factor_squarefree_monic: no suitable prime");
  bool irreducible = true;
  for (int x = 1; x < n; ++x)
    if (allowed[x]) irreducible = false;
  if (irreducible || best_count == 1) return {f};

  const u64 p = best_p;
  std::mt19937_64 rng(0x5eed0001ull + p);
  std::vector<FpPoly> modular;
  for (const auto& [g, d] : fp_ddf(fp_reduce(f, p), p)) fp_edf(g, d, p, rng, modular);

  // Mignotte: coefficients of a factor are at most 2^n |f|_2
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class bound = sqrt(norm2) + 1;
  bound <<= static_cast<unsigned long>(n + 1);
  int steps = 0;
  mpz_class M = static_cast<unsigned long>(p);
  while (M <= bound) {
    M *= M;
    ++steps;
  }
  std::vector<IntPoly> lifted;
  multi_lift(f, modular, p, steps, lifted);

  // recombination
  std::vector<IntPoly> remaining = lifted;
  IntPoly rest = f;
  for (std::size_t s = 1; 2 * s <= remaining.size(); ++s) {
    bool found = true;
    while (found && 2 * s <= remaining.size()) {
      found = false;
      std::vector<std::size_t> idx(s);
      for (std::size_t i = 0; i < s; ++i) idx[i] = i;
      do {
        int deg = 0;
        for (auto i : idx) deg += poly::degree(remaining[i]);
        if (!allowed[static_cast<std::size_t>(deg)]) continue;
        // cheap test on the constant term before forming the product
        mpz_class c0 = 1;
        for (auto i : idx) c0 = (c0 * remaining[i][0]) % M;
        if (c0 > M / 2) c0 -= M;
        if (c0 < -M / 2) c0 += M;
        if (c0 == 0 || !mpz_divisible_p(rest[0].get_mpz_t(), c0.get_mpz_t())) continue;
        IntPoly g{1};
        for (auto i : idx) g = mod_mul(g, remaining[i], M);
        g = symmetric(g, M);
        IntPoly q;
        if (!poly::divides(g, rest, &q)) continue;
        out.push_back(g);
        rest = std::move(q);
        std::vector<IntPoly> keep;
        for (std::size_t i = 0, j = 0; i < remaining.size(); ++i) {
          if (j < s && idx[j] == i) {
            ++j;
            continue;
          }
          keep.push_back(remaining[i]);
        }
        remaining = std::move(keep);
        found = true;
        break;
      } while (next_combination(idx, remaining.size()));
    }
  }
  if (poly::degree(rest) > 0) out.push_back(rest);
  std::sort(out.begin(), out.end(), less_poly);
  return out;
}

std::vector<PolyFactor> factor_over_z(const IntPoly& f) {
  std::vector<PolyFactor> out;
  for (const auto& [g, mult] : squarefree_decomposition(f)) {
    if (g.back() != 1) throw UnsupportedError("factor_over_z: leading coefficient " + g.back().get_str());
    for (auto& h : factor_squarefree_monic(g)) out.push_back({std::move(h), mult});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
    if (a.poly != b.poly) return less_poly(a.poly, b.poly);
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

}  // namespace heckebound
