#include "heckebound/traceformula.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "heckebound/errors.hpp"
#include "heckebound/hurwitz.hpp"

namespace heckebound {

namespace {

// Sieve shared by all trace computations; beyond the cap factor() falls back to trial division.
constexpr u64 kSieveCap = u64{1} << 23;

// Growth replaces the sieve, so callers holding the old one are unaffected.
std::shared_ptr<const SmallFactorSieve> shared_sieve(u64 want) {
  static std::shared_ptr<const SmallFactorSieve> sieve = std::make_shared<SmallFactorSieve>(1024);
  static std::mutex mu;
  want = std::min(want, kSieveCap);
  std::lock_guard<std::mutex> lock(mu);
  if (sieve->limit() < want)
    sieve = std::make_shared<SmallFactorSieve>(std::max(want, std::min(2 * sieve->limit(), kSieveCap)));
  return sieve;
}

using i128 = __int128;

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 inv_mod(u64 a, u64 m) {
  i128 t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    const i128 q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw DomainError("inv_mod: not invertible");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

// y = a mod m1, y = b mod m2, assuming compatibility; result modulo lcm(m1, m2).
u64 crt_general(u64 a, u64 m1, u64 b, u64 m2) {
  const u64 g = std::gcd(m1, m2);
  const u64 m2g = m2 / g;
  const u64 L = m1 * m2g;
  a %= m1;
  b %= m2;
  const i128 diff = (static_cast<i128>(b) - static_cast<i128>(a)) / static_cast<i128>(g);
  if (m2g == 1) return a;
  i128 d = diff % static_cast<i128>(m2g);
  if (d < 0) d += m2g;
  const u64 k = mulmod(static_cast<u64>(d), inv_mod((m1 / g) % m2g, m2g), m2g);
  return static_cast<u64>((static_cast<i128>(a) + static_cast<i128>(k) * m1) % L);
}

// 12 * h_w(-m) = sum over g^2 | m with m/g^2 = 0,3 mod 4 of mu(g) * 12 H(m/g^2).
class ClassNumberTable {
 public:
  i64 get(u64 m) {
    {
      std::shared_lock lock(mu_);
      if (m < values_.size()) return values_[m];
    }
    std::unique_lock lock(mu_);
    if (m >= values_.size()) rebuild(std::max<u64>({m, 2 * values_.size(), 4096}));
    return values_[m];
  }

 private:
  void rebuild(u64 limit) {
    global_hurwitz_table().ensure(limit);
    const std::vector<i64> h = global_hurwitz_table().snapshot();
    std::vector<int> mu(isqrt(limit) + 2, 1);
    {
      std::vector<bool> composite(mu.size(), false);
      for (u64 p = 2; p < mu.size(); ++p) {
        if (composite[p]) continue;
        for (u64 j = p; j < mu.size(); j += p) {
          if (j > p) composite[j] = true;
          mu[j] = -mu[j];
        }
        for (u64 j = p * p; j < mu.size(); j += p * p) mu[j] = 0;
      }
    }
    std::vector<i64> v(limit + 1, 0);
    for (u64 g = 1; g * g <= limit; ++g) {
      if (mu[g] == 0) continue;
      const u64 g2 = g * g;
      for (u64 q = 0; q * g2 <= limit; ++q) {
        const u64 r = q % 4;
        if (q == 0 || r == 1 || r == 2) continue;
        v[q * g2] += mu[g] * h[q];
      }
    }
    values_ = std::move(v);
  }

  std::shared_mutex mu_;
  std::vector<i64> values_;
};

ClassNumberTable& class_numbers() {
  static ClassNumberTable t;
  return t;
}

// Exponent distribution: counts[r] = number of terms with value zeta_O^r.
using Dist = std::vector<std::pair<u64, i64>>;

Dist convolve(const Dist& a, const Dist& b, u64 order) {
  if (a.empty() || b.empty()) return {};
  std::map<u64, i64> acc;
  for (const auto& [ra, ca] : a)
    for (const auto& [rb, cb] : b) acc[(ra + rb) % order] += ca * cb;
  Dist out;
  for (const auto& [r, c] : acc)
    if (c != 0) out.emplace_back(r, c);
  return out;
}

// Local root counts sum_{x mod l^e, x^2 - t x + n = 0 mod l^{e+v}} chi_l(x), bucketed by t mod l^{e+v}.
struct LocalRoots {
  u64 modulus = 1;  // l^{e+v}
  std::unordered_map<u64, Dist> by_t;
};

LocalRoots build_local_roots(const DirichletCharacter& chi, std::size_t comp, unsigned v, u64 n) {
  const LocalCharacter& c = chi.components()[comp];
  LocalRoots out;
  out.modulus = c.q * ipow(c.p, v);
  const u64 nm = n % out.modulus;
  std::unordered_map<u64, std::map<u64, i64>> acc;
  for (u64 x = 1; x < c.q; ++x) {
    if (x % c.p == 0) continue;
    const u64 t0 = (x + mulmod(nm, inv_mod(x, out.modulus), out.modulus)) % out.modulus;
    acc[t0][chi.local_exponent(comp, x)] += 1;
  }
  for (auto& [t0, m] : acc) {
    Dist d;
    for (const auto& [r, cnt] : m) d.emplace_back(r, cnt);
    out.by_t.emplace(t0, std::move(d));
  }
  return out;
}

struct Accum {
  std::vector<mpz_class> main, ell, hyp, par;
  explicit Accum(u64 order) : main(order, 0), ell(order, 0), hyp(order, 0), par(order, 0) {}
};

CycNum finish(u64 order, const std::vector<mpz_class>& v) { return CycNum::from_exponent_sums(order, v, 24); }

TraceValue compute_full(const SpaceParams& s, u64 n) {
  const u64 N = s.N;
  const int k = s.k;
  const DirichletCharacter& chi = s.chi;
  const u64 O = chi.order();
  Accum acc(O);

  const u64 psiN = psi(N);
  const Factorization fN = factorize(N);

  // main term
  const u64 sq = isqrt(n);
  if (sq * sq == n) {
    const u64 r = *chi.exponent(static_cast<i64>(sq));
    mpz_class term = 2 * (k - 1);
    term *= psiN;
    mpz_class spow;
    mpz_ui_pow_ui(spow.get_mpz_t(), sq, static_cast<unsigned long>(k - 2));
    acc.main[r] += term * spow;
  }

  // elliptic term; t and -t contribute equally when the parity condition holds
  std::map<std::pair<std::size_t, unsigned>, LocalRoots> local_cache;
  auto local = [&](std::size_t comp, unsigned v) -> const LocalRoots& {
    auto key = std::make_pair(comp, v);
    auto it = local_cache.find(key);
    if (it == local_cache.end()) it = local_cache.emplace(key, build_local_roots(chi, comp, v, n)).first;
    return it->second;
  };
  const auto sieve = shared_sieve(4 * n);
  const mpz_class nz(static_cast<unsigned long>(n));
  for (u64 t = 0; t * t < 4 * n; ++t) {
    const u64 D = 4 * n - t * t;
    std::vector<i64> inner(O, 0);
    bool any = false;
    // f^2 | D with D/f^2 = 0, 3 mod 4
    std::vector<u64> fs{1};
    for (const auto& [q, e] : sieve->factor(D)) {
      const std::size_t base = fs.size();
      u64 qp = 1;
      for (unsigned j = 1; 2 * j <= e; ++j) {
        qp *= q;
        for (std::size_t i = 0; i < base; ++i) fs.push_back(fs[i] * qp);
      }
    }
    for (u64 f : fs) {
      const u64 m = D / (f * f);
      if (m % 4 == 1 || m % 4 == 2) continue;
      const i64 h12 = class_numbers().get(m);
      if (h12 == 0) continue;
      const u64 Nf = std::gcd(N, f);
      Dist dist{{0, 1}};
      for (std::size_t i = 0; i < fN.size() && !dist.empty(); ++i) {
        const unsigned v = valuation(Nf, fN[i].p);
        const LocalRoots& lr = local(i, v);
        auto it = lr.by_t.find(t % lr.modulus);
        if (it == lr.by_t.end()) {
          dist.clear();
          break;
        }
        dist = convolve(dist, it->second, O);
      }
      if (dist.empty()) continue;
      const i64 ratio = static_cast<i64>(psiN / psi(N / Nf));
      for (const auto& [r, c] : dist) {
        inner[r] += h12 * ratio * c;
        any = true;
      }
    }
    if (!any) continue;
    // P_k(t, n) by the recurrence P_j = t P_{j-1} - n P_{j-2}
    mpz_class p0 = 1, p1 = static_cast<unsigned long>(t);
    mpz_class P = 1;
    if (k == 2) {
      P = 1;
    } else {
      for (int j = 4; j <= k; ++j) {
        mpz_class p2 = p1 * static_cast<unsigned long>(t) - nz * p0;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      P = p1;
    }
    const long weight = t == 0 ? 1 : 2;
    for (u64 r = 0; r < O; ++r)
      if (inner[r] != 0) acc.ell[r] -= P * weight * inner[r];
  }

  // hyperbolic term
  const u64 cond = chi.conductor();
  const std::vector<u64> divN = divisors(fN);
  for (u64 d : divisors(n)) {
    const u64 d2 = n / d;
    mpz_class mn;
    mpz_ui_pow_ui(mn.get_mpz_t(), std::min(d, d2), static_cast<unsigned long>(k - 1));
    const i64 diff = static_cast<i64>(d2) - static_cast<i64>(d);
    const u64 adiff = static_cast<u64>(diff < 0 ? -diff : diff);
    for (u64 tau : divN) {
      const u64 g = std::gcd(tau, N / tau);
      if ((N / cond) % g != 0 || adiff % g != 0) continue;
      const u64 y = crt_general(d % tau, tau, d2 % (N / tau), N / tau);
      const u64 r = *chi.exponent(static_cast<i64>(y % N));
      acc.hyp[r] -= mn * (12 * static_cast<long>(euler_phi(g)));
    }
  }

  // parabolic correction
  if (k == 2 && chi.is_principal()) acc.par[0] += mpz_class(static_cast<unsigned long>(sigma(n))) * 24;

  TraceTerms terms{finish(O, acc.main), finish(O, acc.ell), finish(O, acc.hyp), finish(O, acc.par)};
  TraceValue out{terms.main + terms.elliptic + terms.hyperbolic + terms.parabolic, terms};
  return out;
}

void check_coprime(const SpaceParams& s, u64 n) {
  if (n == 0) throw DomainError("trace: n must be positive");
  if (std::gcd(n, s.N) != 1) throw UnsupportedError("(n, N) must be coprime");
}

TraceValue zero_value(u64 order) {
  const CycNum z = CycNum::zero(order);
  return {z, TraceTerms{z, z, z, z}};
}

}  // namespace

SpaceParams::SpaceParams(int weight, u64 level, const DirichletCharacter& character) : k(weight), N(level) {
  if (weight < 2) throw DomainError("weight must be at least 2");
  if (level == 0) throw DomainError("level must be positive");
  if (level % character.modulus() != 0)
    throw DomainError("character modulus " + std::to_string(character.modulus()) + " does not divide N = " +
                      std::to_string(level));
  chi = character.induced(level);
}

std::string SpaceParams::str() const {
  return "S_" + std::to_string(k) + "(" + std::to_string(N) + ", " + chi.label_string() + ")";
}

i64 class_number12(u64 m) { return class_numbers().get(m); }

TraceValue trace_full(const SpaceParams& s, u64 n) {
  check_coprime(s, n);
  if (!s.parity_ok()) return zero_value(s.chi.order());
  TraceCache& cache = global_trace_cache();
  if (auto hit = cache.lookup(s, n)) return *hit;
  TraceValue v = compute_full(s, n);
  cache.store(s, n, v);
  return v;
}

TraceValue trace_new(const SpaceParams& s, u64 n) {
  check_coprime(s, n);
  const u64 O = s.chi.order();
  if (!s.parity_ok()) return zero_value(O);
  CycNum total = CycNum::zero(O);
  TraceTerms terms{total, total, total, total};
  bool have_terms = true;
  const u64 cond = s.chi.conductor();
  for (u64 N1 : divisors(s.N)) {
    if (N1 % cond != 0) continue;
    const i64 w = dstar(s.N / N1);
    if (w == 0) continue;
    const TraceValue t = trace_full(SpaceParams(s.k, N1, s.chi.induced(N1)), n);
    const CycNum cw(mpq_class(static_cast<long>(w)));
    total += cw * t.value.lifted(std::lcm(t.value.order(), O));
    if (t.terms) {
      terms.main += cw * t.terms->main;
      terms.elliptic += cw * t.terms->elliptic;
      terms.hyperbolic += cw * t.terms->hyperbolic;
      terms.parabolic += cw * t.terms->parabolic;
    } else {
      have_terms = false;
    }
  }
  TraceValue out{total, std::nullopt};
  if (have_terms) out.terms = terms;
  return out;
}

mpz_class trace_new_integer(const SpaceParams& s, u64 n) {
  if (!s.chi.is_real()) throw DomainError("trace_new_integer needs a real character");
  const mpq_class q = trace_new(s, n).value.rational_value();
  if (q.get_den() != 1) throw DomainError("trace of T_n is not an integer: " + q.get_str());
  return q.get_num();
}

namespace {
i64 to_dim(const CycNum& v) {
  const mpq_class q = v.rational_value();
  if (q.get_den() != 1 || q < 0) throw DomainError("dimension is not a non-negative integer: " + q.get_str());
  return q.get_num().get_si();
}
}  // namespace

i64 dim_full(const SpaceParams& s) { return to_dim(trace_full(s, 1).value); }
i64 dim_new(const SpaceParams& s) { return to_dim(trace_new(s, 1).value); }

CycNum twisted_trace_new(const SpaceParams& s, u64 p, i64 m) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (s.N % p == 0) throw DomainError("p must not divide N");
  if (m < 0) return CycNum(0);
  u64 pm = 1;
  for (i64 i = 0; i < m; ++i) {
    if (pm > (~u64{0}) / p / 4) throw UnsupportedError("p^m too large");
    pm *= p;
  }
  const CycNum tr = trace_new(s, pm).value;
  const CycNum x = tr * s.chi.sqrt_value(static_cast<i64>(pm)).conj();
  if (x != x.conj()) throw PrecisionError("normalized trace is not real: " + x.str());
  return x;
}

Interval normalized_trace_new(const SpaceParams& s, u64 p, i64 m) {
  const CycNum x = twisted_trace_new(s, p, m);
  if (m < 0) return Interval(0L);
  const Interval num = x.is_rational() ? Interval(x.rational_value()) : x.embed().re;
  // 2 p^{m(k-1)/2}
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), p, static_cast<unsigned long>(m * (s.k - 1)));
  const Interval den = Interval(2L) * Interval(pw).sqrt();
  return num / den;
}

// ----------------------------------------------------------------------------

void TraceCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::unique_lock lock(mu_);
  dir_ = std::move(dir);
  loaded_.clear();
  if (dir_) std::filesystem::create_directories(*dir_);
}

std::optional<std::filesystem::path> TraceCache::directory() const {
  std::shared_lock lock(mu_);
  return dir_;
}

std::filesystem::path TraceCache::file_for(const SpaceParams& s) const {
  return *dir_ / ("k" + std::to_string(s.k) + "_N" + std::to_string(s.N) + "_chi" + s.chi.label_string() + ".jsonl");
}

void TraceCache::load_file_locked(const SpaceParams& s) {
  const auto fkey = std::make_tuple(s.k, s.N, s.chi.label());
  if (loaded_[fkey]) return;
  loaded_[fkey] = true;
  std::ifstream is(file_for(s));
  if (!is) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      // a torn final line from an interrupted writer is skipped
      continue;
    }
    try {
      if (j.at("k").get<int>() != s.k || j.at("N").get<u64>() != s.N || j.at("chi").get<std::string>() != s.chi.label_string())
        throw DataError("record parameters do not match file");
      const u64 order = j.at("zeta_order").get<u64>();
      std::vector<mpz_class> num;
      for (const auto& c : j.at("num")) num.emplace_back(c.get<std::string>());
      const mpz_class den(j.at("den").get<std::string>());
      memo_[{s.k, s.N, s.chi.label(), j.at("n").get<u64>()}] = TraceValue{CycNum::from_integer_vector(order, num, den), std::nullopt};
    } catch (const std::exception& e) {
      throw DataError("trace cache " + file_for(s).string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::optional<TraceValue> TraceCache::lookup(const SpaceParams& s, u64 n) {
  const Key key{s.k, s.N, s.chi.label(), n};
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (!dir_) return std::nullopt;
  }
  std::unique_lock lock(mu_);
  if (!dir_) return std::nullopt;
  load_file_locked(s);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  return std::nullopt;
}

void TraceCache::store(const SpaceParams& s, u64 n, const TraceValue& value) {
  std::unique_lock lock(mu_);
  const Key key{s.k, s.N, s.chi.label(), n};
  const bool fresh = memo_.find(key) == memo_.end();
  memo_[key] = value;
  if (!dir_ || !fresh) return;
  std::vector<mpz_class> num;
  mpz_class den;
  value.value.to_integer_vector(num, den);
  nlohmann::json j;
  j["k"] = s.k;
  j["N"] = s.N;
  j["chi"] = s.chi.label_string();
  j["n"] = n;
  j["num"] = nlohmann::json::array();
  for (const auto& c : num) j["num"].push_back(c.get_str());
  j["den"] = den.get_str();
  j["zeta_order"] = value.value.order();
  std::ofstream os(file_for(s), std::ios::app);
  os << j.dump() << '\n';
  os.flush();
}

std::size_t TraceCache::memory_entries() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

void TraceCache::clear_memory() {
  std::unique_lock lock(mu_);
  memo_.clear();
  loaded_.clear();
}

std::size_t TraceCache::clear_disk() {
  std::unique_lock lock(mu_);
  loaded_.clear();
  if (!dir_ || !std::filesystem::exists(*dir_)) return 0;
  std::size_t removed = 0;
  for (const auto& entry : std::filesystem::directory_iterator(*dir_))
    if (entry.path().extension() == ".jsonl") removed += std::filesystem::remove(entry.path()) ? 1 : 0;
  return removed;
}

std::pair<std::size_t, std::size_t> TraceCache::disk_stats() const {
  std::shared_lock lock(mu_);
  if (!dir_ || !std::filesystem::exists(*dir_)) return {0, 0};
  std::size_t files = 0, records = 0;
  for (const auto& entry : std::filesystem::directory_iterator(*dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    ++files;
    std::ifstream is(entry.path());
    std::string line;
    while (std::getline(is, line))
      if (!line.empty()) ++records;
  }
  return {files, records};
}

TraceCache& global_trace_cache() {
  static TraceCache cache;
  static std::once_flag env_once;
  std::call_once(env_once, [] {
    if (const char* env = std::getenv("HECKEBOUND_CACHE"); env && *env) cache.set_directory(std::filesystem::path(env));
  });
  return cache;
}

}  // namespace heckebound
