#include "heckebound/charpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "heckebound/errors.hpp"

namespace heckebound {
namespace {

// ---- arithmetic modulo a 61-bit prime ----

u64 add_m(u64 a, u64 b, u64 l) {
  const u64 s = a + b;
  return s >= l ? s - l : s;
}
u64 sub_m(u64 a, u64 b, u64 l) { return a >= b ? a - b : a + l - b; }
u64 inv_m(u64 a, u64 l) { return powmod(a, l - 2, l); }
u64 reduce_m(const mpz_class& x, u64 l) { return mpz_fdiv_ui(x.get_mpz_t(), l); }

using MatM = std::vector<std::vector<u64>>;

const std::vector<u64>& crt_primes(std::size_t count) {
  static std::vector<u64> primes;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  u64 c = primes.empty() ? (u64{1} << 61) - 1 : primes.back() - 2;
  while (primes.size() < count) {
    if (is_prime(c)) primes.push_back(c);
    c -= 2;
  }
  return primes;
}

// Solves G X = H in place; false if G is singular modulo l.
bool solve_m(MatM G, MatM& H, u64 l) {
  const std::size_t n = G.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && G[piv][c] == 0) ++piv;
    if (piv == n) return false;
    std::swap(G[piv], G[c]);
    std::swap(H[piv], H[c]);
    const u64 iv = inv_m(G[c][c], l);
    for (auto& x : G[c]) x = mulmod(x, iv, l);
    for (auto& x : H[c]) x = mulmod(x, iv, l);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || G[r][c] == 0) continue;
      const u64 f = G[r][c];
      for (std::size_t j = 0; j < n; ++j) G[r][j] = sub_m(G[r][j], mulmod(f, G[c][j], l), l);
      for (std::size_t j = 0; j < H[r].size(); ++j) H[r][j] = sub_m(H[r][j], mulmod(f, H[c][j], l), l);
    }
  }
  return true;
}

// Characteristic polynomial modulo l via reduction to Hessenberg form; lowest degree first.
std::vector<u64> charpoly_m(MatM A, u64 l) {
  const std::size_t n = A.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && A[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(A[i], A[m]);
      for (auto& row : A) std::swap(row[i], row[m]);
    }
    const u64 iv = inv_m(A[m][m - 1], l);
    for (std::size_t r = m + 1; r < n; ++r) {
      const u64 u = mulmod(A[r][m - 1], iv, l);
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) A[r][j] = sub_m(A[r][j], mulmod(u, A[m][j], l), l);
      for (std::size_t j = 0; j < n; ++j) A[j][m] = add_m(A[j][m], mulmod(u, A[j][r], l), l);
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
  std::vector<std::vector<u64>> P(n + 1);
  P[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<u64> cur(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
      cur[j + 1] = add_m(cur[j + 1], P[m - 1][j], l);
      cur[j] = sub_m(cur[j], mulmod(A[m - 1][m - 1], P[m - 1][j], l), l);
    }
    u64 prod = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      prod = mulmod(prod, A[i + 1][i], l);
      if (prod == 0) break;
      const u64 coef = mulmod(A[i][m - 1], prod, l);
      for (std::size_t j = 0; j < P[i].size(); ++j) cur[j] = sub_m(cur[j], mulmod(coef, P[i][j], l), l);
    }
    P[m] = std::move(cur);
  }
  return P[n];
}

// Integer polynomial from residues; coefficients bounded by `bound` in absolute value.
class CrtPoly {
 public:
  explicit CrtPoly(std::size_t size) : value_(size, 0) {}
  void add(const std::vector<u64>& r, u64 l) {
    const u64 minv = inv_m(reduce_m(modulus_, l), l);
    for (std::size_t i = 0; i < value_.size(); ++i) {
      const u64 cur = reduce_m(value_[i], l);
      const u64 t = mulmod(sub_m(r[i], cur, l), minv, l);
      value_[i] += modulus_ * static_cast<unsigned long>(t);
    }
    modulus_ *= static_cast<unsigned long>(l);
  }
  const mpz_class& modulus() const { return modulus_; }
  IntPoly symmetric() const {
    IntPoly out = value_;
    const mpz_class half = modulus_ / 2;
    for (auto& c : out)
      if (c > half) c -= modulus_;
    poly::trim(out);
    return out;
  }

 private:
  IntPoly value_;
  mpz_class modulus_ = 1;
};

int chi_sign(const DirichletCharacter& chi, u64 n) {
  const auto e = chi.exponent(static_cast<i64>(n));
  if (!e) return 0;
  return (*e == 0) ? 1 : -1;
}

mpz_class upow(u64 b, u64 e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// Largest |e_j| for a monic degree-d polynomial whose roots have absolute value <= R.
mpz_class coefficient_bound(std::size_t d, const mpz_class& R) {
  mpz_class best = 1, binom = 1, Rj = 1;
  for (std::size_t j = 1; j <= d; ++j) {
    binom = binom * static_cast<unsigned long>(d - j + 1) / static_cast<unsigned long>(j);
    Rj *= R;
    best = std::max(best, mpz_class(binom * Rj));
  }
  return best;
}

// ceil(2 sqrt(p^{k-1})), the Deligne bound for a_f(p)
mpz_class ramanujan_bound(u64 p, int k) {
  mpz_class r = upow(p, static_cast<u64>(k - 1)) * 4;
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), r.get_mpz_t());
  if (s * s < r) s += 1;
  return s;
}

// New-space traces and the trace form on the Hecke algebra, for a real character.
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const SpaceParams& s) : s_(s), dim_(dim_new(s)) {
    if (s.chi.order() > 2) throw NotExactlySupported("Hecke algebra route needs a real character");
  }

  i64 dim() const { return dim_; }

  const mpz_class& t(u64 n) {
    auto it = memo_.find(n);
    if (it == memo_.end()) it = memo_.emplace(n, trace_new_integer(s_, n)).first;
    return it->second;
  }

  // e^{k-1} chi(e)
  mpz_class weight(u64 e) const { return upow(e, static_cast<u64>(s_.k - 1)) * chi_sign(s_.chi, e); }

  // tr(T_a T_b)
  mpz_class tr2(u64 a, u64 b) {
    mpz_class acc = 0;
    const u64 g = std::gcd(a, b);
    for (u64 e : divisors(g)) acc += weight(e) * t(a / e * (b / e));
    return acc;
  }

  // tr(T_q T_c) for q prime
  mpz_class tr_q(u64 q, u64 c) {
    mpz_class acc = t(q * c);
    if (c % q == 0) acc += weight(q) * t(c / q);
    return acc;
  }

  // tr(T_q T_a T_b)
  mpz_class tr3(u64 q, u64 a, u64 b) {
    mpz_class acc = 0;
    const u64 g = std::gcd(a, b);
    for (u64 e : divisors(g)) acc += weight(e) * tr_q(q, a / e * (b / e));
    return acc;
  }

  // Indices n_1 < ... < n_d, coprime to N, such that T_{n_i} is a basis.
  const std::vector<u64>& basis() {
    if (!basis_.empty() || dim_ == 0) return basis_;
    const std::size_t d = static_cast<std::size_t>(dim_);
    const u64 l = crt_primes(1)[0];
    std::vector<u64> cand;
    u64 next = 1;
    std::size_t L = d;
    for (int round = 0; round < 60; ++round) {
      while (cand.size() < L) {
        if (std::gcd(next, s_.N) == 1) cand.push_back(next);
        ++next;
      }
      // greedy independent rows of the Gram matrix
      std::vector<std::vector<u64>> echelon;
      std::vector<std::size_t> pivcol;
      std::vector<u64> chosen;
      for (std::size_t i = 0; i < cand.size() && chosen.size() < d; ++i) {
        std::vector<u64> row(cand.size());
        for (std::size_t j = 0; j < cand.size(); ++j) row[j] = reduce_m(tr2(cand[i], cand[j]), l);
        for (std::size_t r = 0; r < echelon.size(); ++r) {
          const u64 f = row[pivcol[r]];
          if (f == 0) continue;
          for (std::size_t j = 0; j < row.size(); ++j) row[j] = sub_m(row[j], mulmod(f, echelon[r][j], l), l);
        }
        std::size_t pc = 0;
        while (pc < row.size() && row[pc] == 0) ++pc;
        if (pc == row.size()) continue;
        const u64 iv = inv_m(row[pc], l);
        for (auto& x : row) x = mulmod(x, iv, l);
        echelon.push_back(std::move(row));
        pivcol.push_back(pc);
        chosen.push_back(cand[i]);
      }
      if (chosen.size() == d) {
        basis_ = chosen;
        return basis_;
      }
      L += std::max<std::size_t>(4, d / 2);
    }
    throw PrecisionError("Hecke algebra basis not found for " + s_.str());
  }

  // Characteristic polynomial of multiplication by sum_q r_q T_q, with roots bounded by R.
  IntPoly charpoly_of(const std::vector<std::pair<u64, i64>>& combo, const mpz_class& R) {
    const std::size_t d = static_cast<std::size_t>(dim_);
    if (d == 0) return {1};
    const auto& n = basis();
    std::vector<std::vector<mpz_class>> G(d, std::vector<mpz_class>(d)), H = G;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        G[i][j] = G[j][i] = tr2(n[i], n[j]);
        mpz_class h = 0;
        for (const auto& [q, r] : combo) h += tr3(q, n[i], n[j]) * r;
        H[i][j] = H[j][i] = h;
      }
    const mpz_class bound = coefficient_bound(d, R) * 2 + 1;
    CrtPoly crt(d + 1);
    std::size_t used = 0;
    for (std::size_t idx = 0; crt.modulus() <= bound; ++idx) {
      if (idx > 256) throw PrecisionError("trace form singular modulo every prime tried");
      const u64 l = crt_primes(idx + 1)[idx];
      MatM Gm(d, std::vector<u64>(d)), Hm = Gm;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          Gm[i][j] = reduce_m(G[i][j], l);
          Hm[i][j] = reduce_m(H[i][j], l);
        }
      if (!solve_m(Gm, Hm, l)) continue;
      crt.add(charpoly_m(std::move(Hm), l), l);
      if (++used > 64) throw PrecisionError("multimodular reconstruction did not converge");
    }
    return crt.symmetric();
  }

 private:
  SpaceParams s_;
  i64 dim_;
  std::map<u64, mpz_class> memo_;
  std::vector<u64> basis_;
};

template <class T>
std::vector<T> power_sums_from_traces(const std::vector<T>& u, const T& c, std::size_t J) {
  // T_p^j = sum_m b_m T_{p^m}; T_p T_{p^m} = T_{p^{m+1}} + c T_{p^{m-1}}
  std::vector<T> b{T(0), T(1)};
  std::vector<T> s;
  for (std::size_t j = 1; j <= J; ++j) {
    T acc(0);
    for (std::size_t m = 0; m < b.size(); ++m) acc += b[m] * u[m];
    s.push_back(acc);
    if (j == J) break;
    std::vector<T> nb(b.size() + 1, T(0));
    for (std::size_t m = 0; m < b.size(); ++m) {
      nb[m + 1] += b[m];
      if (m >= 1) nb[m - 1] += c * b[m];
    }
    b = std::move(nb);
  }
  return s;
}

u64 checked_power(u64 p, std::size_t J) {
  u64 r = 1;
  for (std::size_t i = 0; i < J; ++i) {
    if (r > u64{1000000000000} / p) throw UnsupportedError("power_sums: p^J too large for direct traces");
    r *= p;
  }
  return r;
}

void check_prime(const SpaceParams& s, u64 p) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (s.N % p == 0) throw DomainError("p = " + std::to_string(p) + " divides the level");
}

IntPoly charpoly_power_sums(const SpaceParams& s, u64 p, std::size_t d) {
  checked_power(p, d);
  std::vector<mpq_class> u;
  u64 pm = 1;
  for (std::size_t m = 0; m <= d; ++m) {
    u.push_back(mpq_class(trace_new_integer(s, pm)));
    if (m < d) pm *= p;
  }
  const mpq_class c(upow(p, static_cast<u64>(s.k - 1)) * chi_sign(s.chi, p));
  const auto ps = power_sums_from_traces<mpq_class>(u, c, d);
  return poly::to_integer(poly::from_power_sums<mpq_class>(ps));
}

Interval scale_for(int k, u64 p) {
  return Interval(mpq_class(upow(p, static_cast<u64>(k - 1)))).sqrt() * Interval(2);
}

bool is_x(const IntPoly& f) { return f.size() == 2 && f[0] == 0; }

}  // namespace

std::vector<CycNum> power_sums(const SpaceParams& s, u64 p, std::size_t J) {
  check_prime(s, p);
  if (J == 0) throw DomainError("power_sums: J must be positive");
  checked_power(p, J);
  std::vector<CycNum> u;
  u64 pm = 1;
  for (std::size_t m = 0; m <= J; ++m) {
    u.push_back(trace_new(s, pm).value);
    if (m < J) pm *= p;
  }
  const CycNum c = CycNum(mpq_class(upow(p, static_cast<u64>(s.k - 1)))) * s.chi.evaluate(static_cast<i64>(p));
  return power_sums_from_traces<CycNum>(u, c, J);
}

HeckeCharPoly charpoly_new(const SpaceParams& s, u64 p, std::optional<CharPolyRoute> route) {
  check_prime(s, p);
  if (s.chi.order() > 2)
    throw NotExactlySupported("charpoly_new: character " + s.chi.label_string() +
                              " has order > 2; use numeric_normalized_roots");
  HeckeCharPoly P;
  P.params = s;
  P.p = p;
  P.chi_p = chi_sign(s.chi, p);
  const i64 d = dim_new(s);
  if (!route) {
    u64 pd = 1;
    bool small = true;
    for (i64 i = 0; i < d && small; ++i) {
      if (pd > kPowerSumLimit / p) small = false;
      pd *= p;
    }
    route = small ? CharPolyRoute::PowerSums : CharPolyRoute::HeckeAlgebra;
  }
  P.route = *route;
  if (d == 0) {
    P.coefficients = {1};
    return P;
  }
  if (*route == CharPolyRoute::PowerSums) {
    P.coefficients = charpoly_power_sums(s, p, static_cast<std::size_t>(d));
  } else {
    HeckeAlgebra alg(s);
    P.coefficients = alg.charpoly_of({{p, 1}}, ramanujan_bound(p, s.k));
    // sanity: the trace must agree with the trace formula
    if (P.coefficients.size() != static_cast<std::size_t>(d) + 1 || P.coefficients.back() != 1 ||
        -P.coefficients[static_cast<std::size_t>(d) - 1] != trace_new_integer(s, p))
      throw PrecisionError("charpoly_new: Hecke algebra reconstruction inconsistent for " + s.str());
  }
  P.factors = factor_over_z(P.coefficients);
  return P;
}

std::vector<int> factor_degrees(const std::vector<PolyFactor>& factors) {
  std::vector<int> out;
  for (const auto& f : factors)
    for (int i = 0; i < f.multiplicity; ++i) out.push_back(poly::degree(f.poly));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> factor_degrees(const HeckeCharPoly& P) { return factor_degrees(P.factors); }

IntPoly real_model(const IntPoly& P, int chi_p) {
  if (chi_p == 1) return P;
  if (chi_p != -1) throw DomainError("real_model: chi(p) must be 1 or -1");
  // R(y) = P(i y) / i^d
  const int d = poly::degree(P);
  IntPoly R(P.size(), 0);
  for (int j = 0; j <= d; ++j) {
    if ((d - j) % 2 != 0) {
      if (P[j] != 0) throw DomainError("real_model: roots are not purely imaginary");
      continue;
    }
    R[j] = ((d - j) / 2) % 2 == 0 ? P[j] : mpz_class(-P[j]);
  }
  poly::trim(R);
  return R;
}

IntPoly squared_roots_poly(const IntPoly& f) {
  // f(x) = E(x^2) + x O(x^2); f(x) f(-x) = E(u)^2 - u O(u)^2
  IntPoly E, O;
  for (std::size_t i = 0; i < f.size(); ++i) (i % 2 == 0 ? E : O).push_back(f[i]);
  poly::trim(E);
  poly::trim(O);
  IntPoly S = poly::sub(poly::mul(E, E), poly::mul(IntPoly{0, 1}, poly::mul(O, O)));
  if (!S.empty() && S.back() < 0)
    for (auto& c : S) c = -c;
  return S;
}

std::vector<Interval> normalized_roots(const HeckeCharPoly& P, const mpq_class& width) {
  const Interval scale = scale_for(P.params.k, P.p);
  std::vector<Interval> out;
  for (const auto& f : P.factors) {
    const IntPoly R = real_model(f.poly, P.chi_p);
    for (auto r : isolate_real_roots(R)) {
      refine_root(R, r, width * 2);
      const Interval v = r.enclosure() / scale;
      for (int i = 0; i < f.multiplicity; ++i) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.mid_double() < b.mid_double(); });
  return out;
}

std::optional<Interval> min_nonzero_normalized_root(const HeckeCharPoly& P, const IntPoly& factor) {
  if (is_x(factor) || poly::degree(factor) <= 0) return std::nullopt;
  const Interval scale = scale_for(P.params.k, P.p);
  const IntPoly R = real_model(factor, P.chi_p);
  std::optional<Interval> best;
  for (auto r : isolate_real_roots(R)) {
    refine_root(R, r, mpq_class(1, 1000000000) / 1000000);
    const Interval v = (r.enclosure() / scale).abs();
    best = best ? best->min(v) : v;
  }
  return best;
}

std::optional<Interval> min_nonzero_normalized_root(const HeckeCharPoly& P) {
  std::optional<Interval> best;
  for (const auto& f : P.factors) {
    const auto v = min_nonzero_normalized_root(P, f.poly);
    if (v) best = best ? best->min(*v) : *v;
  }
  return best;
}

std::size_t count_normalized_in(const HeckeCharPoly& P, const IntPoly& factor, const mpq_class& A, bool strict) {
  if (is_x(factor) || poly::degree(factor) <= 0 || A <= 0) return 0;
  // 0 < |a'| <= A  <=>  0 < y^2 <= 4 A^2 p^{k-1}
  const mpq_class c = 4 * A * A * mpq_class(upow(P.p, static_cast<u64>(P.params.k - 1)));
  const IntPoly S = squared_roots_poly(real_model(factor, P.chi_p));
  std::size_t total = 0;
  for (const auto& [h, mult] : squarefree_decomposition(S)) {
    const SturmSequence sturm(h);
    std::size_t n = sturm.count(0, c);
    if (strict && n > 0 && poly::sign_at(h, c) == 0) --n;
    total += n * static_cast<std::size_t>(mult);
  }
  return total;
}

std::size_t count_normalized_in(const HeckeCharPoly& P, const mpq_class& A, bool strict) {
  std::size_t total = 0;
  for (const auto& f : P.factors)
    total += count_normalized_in(P, f.poly, A, strict) * static_cast<std::size_t>(f.multiplicity);
  return total;
}

std::vector<Interval> numeric_normalized_roots(const SpaceParams& s, u64 p) {
  check_prime(s, p);
  const i64 d = dim_new(s);
  if (d == 0) return {};
  u64 pd = 1;
  for (i64 i = 0; i < d; ++i) {
    if (pd > kPowerSumLimit / p) throw UnsupportedError("numeric_normalized_roots: p^dim too large for " + s.str());
    pd *= p;
  }
  const auto ps = power_sums(s, p, static_cast<std::size_t>(d));
  const auto coeffs = poly::from_power_sums<CycNum>(ps);
  std::vector<ComplexInterval> c;
  for (const auto& x : coeffs) c.push_back(x.embed());
  const auto roots = certified_complex_roots(c);
  const ComplexInterval rot = s.chi.sqrt_value(static_cast<i64>(p)).conj().embed();
  const Interval scale = scale_for(s.k, p);
  std::vector<Interval> out;
  for (const auto& z : roots) {
    const ComplexInterval w = z * rot;
    if (!w.im.contains_zero()) throw PrecisionError("numeric_normalized_roots: normalized root is not real");
    out.push_back(w.re / scale);
  }
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.mid_double() < b.mid_double(); });
  return out;
}

std::vector<int> galois_orbit_degrees(const SpaceParams& s) {
  HeckeAlgebra alg(s);
  if (alg.dim() == 0) return {};
  std::vector<u64> primes;
  for (u64 q = 2; primes.size() < 6; ++q)
    if (is_prime(q) && s.N % q != 0) primes.push_back(q);
  std::mt19937_64 rng(0x0b17ull + s.N);
  for (std::size_t attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::pair<u64, i64>> combo;
    mpz_class R = 0;
    const std::size_t used = std::min<std::size_t>(primes.size(), 2 + attempt);
    for (std::size_t i = 0; i < used; ++i) {
      const i64 r = (attempt == 0 && i == 0) ? 1 : static_cast<i64>(rng() % 7) + 1;
      combo.emplace_back(primes[i], r);
      R += ramanujan_bound(primes[i], s.k) * r;
    }
    const IntPoly f = alg.charpoly_of(combo, R);
    const auto sq = squarefree_decomposition(f);
    if (sq.size() != 1 || sq[0].multiplicity != 1) continue;
    std::vector<int> out;
    for (const auto& g : factor_squarefree_monic(f)) out.push_back(poly::degree(g));
    std::sort(out.begin(), out.end());
    return out;
  }
  throw PrecisionError("galois_orbit_degrees: no generating element found for " + s.str());
}

}  // namespace heckebound
