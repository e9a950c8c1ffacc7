#include "heckebound/character.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "heckebound/errors.hpp"

namespace heckebound {

namespace {

constexpr u64 kTableLimit = 1u << 22;

bool is_primitive_root_mod_p(u64 g, u64 p) {
  const u64 n = p - 1;
  for (const auto& [r, e] : factorize(n)) {
    (void)e;
    if (powmod(g, n / r, p) == 1) return false;
  }
  return true;
}

// Discrete logarithm base gen in a cyclic group of order n modulo q.
class LogTable {
 public:
  LogTable(u64 q, u64 gen, u64 n) : q_(q), gen_(gen), n_(n) {
    if (q_ <= kTableLimit) {
      table_.assign(q_, 0);
      u64 x = 1;
      for (u64 k = 0; k < n_; ++k) {
        table_[x] = static_cast<std::uint32_t>(k);
        x = mulmod(x, gen_, q_);
      }
    } else {
      step_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(n_))));
      u64 x = 1;
      for (u64 j = 0; j < step_; ++j) {
        baby_.emplace(x, j);
        x = mulmod(x, gen_, q_);
      }
      // gen^{-step}
      giant_ = powmod(gen_, n_ - (step_ % n_), q_);
    }
  }

  u64 log(u64 x) const {
    x %= q_;
    if (!table_.empty()) return table_[x];
    u64 y = x;
    for (u64 i = 0; i <= step_; ++i) {
      auto it = baby_.find(y);
      if (it != baby_.end()) return (i * step_ + it->second) % n_;
      y = mulmod(y, giant_, q_);
    }
    throw DomainError("discrete logarithm: element outside the cyclic subgroup");
  }

 private:
  u64 q_, gen_, n_;
  std::vector<std::uint32_t> table_;
  std::unordered_map<u64, u64> baby_;
  u64 step_ = 0;
  u64 giant_ = 1;
};

const LogTable& log_table(u64 q, u64 gen, u64 n) {
  static std::mutex mu;
  static std::map<u64, std::unique_ptr<LogTable>> tables;
  std::lock_guard lock(mu);
  auto& slot = tables[q];
  if (!slot) slot = std::make_unique<LogTable>(q, gen, n);
  return *slot;
}

// Cyclic part used for discrete logs at q = p^e: (generator, group order).
std::pair<u64, u64> cyclic_part(u64 p, unsigned e, u64 q) {
  if (p == 2) return {5 % q, e >= 2 ? q / 4 : 1};
  return {conrey_generator(p) % q, q / p * (p - 1)};
}

u64 local_log(u64 p, unsigned e, u64 q, u64 x) {
  x %= q;
  if (p == 2) {
    if (e <= 2) return 0;
    if (x % 4 == 3) x = q - x;
  }
  const auto [g, n] = cyclic_part(p, e, q);
  if (n == 1) return 0;
  return log_table(q, g, n).log(x);
}

void finish_local(LocalCharacter& c) {
  if (c.p == 2) {
    const u64 n = c.e >= 2 ? c.q / 4 : 1;
    const u64 a = c.log % n;
    const u64 oa = a == 0 ? 1 : n / std::gcd(a, n);
    c.order = std::lcm(oa, u64{c.minus ? 2u : 1u});
    if (a != 0) {
      c.conductor = ipow(2, c.e - valuation(a, 2));
    } else {
      c.conductor = c.minus ? 4 : 1;
    }
  } else {
    const u64 n = c.q / c.p * (c.p - 1);
    const u64 a = c.log % n;
    c.order = a == 0 ? 1 : n / std::gcd(a, n);
    if (a == 0) {
      c.conductor = 1;
    } else {
      const unsigned v = std::min(valuation(a, c.p), c.e - 1);
      c.conductor = ipow(c.p, c.e - v);
    }
  }
}

u64 local_label(const LocalCharacter& c) {
  if (c.p == 2) {
    if (c.e == 1) return 1;
    const u64 base = c.e >= 3 ? powmod(5, c.log, c.q) : 1;
    return c.minus ? (c.q - base) % c.q : base;
  }
  return powmod(conrey_generator(c.p), c.log, c.q);
}

u64 crt_pair(u64 a1, u64 m1, u64 a2, u64 m2) {
  // m1, m2 coprime
  const u64 m = m1 * m2;
  // inverse of m1 modulo m2
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(m2), nr = static_cast<i64>(m1 % m2);
  while (nr != 0) {
    const i64 qq = r / nr;
    t -= qq * nt;
    std::swap(t, nt);
    r -= qq * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += static_cast<i64>(m2);
  const u64 diff = (a2 % m2 + m2 - a1 % m2) % m2;
  const u64 k = mulmod(diff, static_cast<u64>(t), m2);
  return (a1 + mulmod(k, m1, m)) % m;
}

}  // namespace

u64 conrey_generator(u64 p) {
  static std::mutex mu;
  static std::map<u64, u64> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  if (p == 2) return 5;
  u64 g = 2;
  const u64 p2 = p * p;
  for (;; ++g) {
    if (!is_primitive_root_mod_p(g, p)) continue;
    if (p2 / p == p && powmod(g, p - 1, p2) == 1) continue;
    break;
  }
  std::lock_guard lock(mu);
  cache[p] = g;
  return g;
}

DirichletCharacter DirichletCharacter::from_label(u64 modulus, u64 label) {
  if (modulus == 0) throw DomainError("character modulus must be positive");
  if (std::gcd(label % modulus, modulus) != 1 && modulus != 1)
    throw DomainError("invalid Conrey label " + std::to_string(modulus) + "." + std::to_string(label));
  std::vector<LocalCharacter> comps;
  for (const auto& [p, e] : factorize(modulus)) {
    LocalCharacter c;
    c.p = p;
    c.e = e;
    c.q = ipow(p, e);
    const u64 x = label % c.q;
    if (p == 2) {
      c.minus = e >= 2 && x % 4 == 3;
      c.log = local_log(p, e, c.q, x);
    } else {
      c.log = local_log(p, e, c.q, x);
    }
    comps.push_back(c);
  }
  return from_components(modulus, comps);
}

DirichletCharacter DirichletCharacter::from_components(u64 modulus, const std::vector<LocalCharacter>& comps) {
  DirichletCharacter chi;
  chi.modulus_ = modulus;
  chi.comps_ = comps;
  chi.order_ = 1;
  chi.conductor_ = 1;
  chi.parity_ = 1;
  u64 label = 1 % modulus, m = 1;
  u64 check = 1;
  for (auto& c : chi.comps_) {
    finish_local(c);
    chi.order_ = std::lcm(chi.order_, c.order);
    chi.conductor_ *= c.conductor;
    const bool odd = c.p == 2 ? c.minus : (c.log % 2 == 1);
    if (odd) chi.parity_ = -chi.parity_;
    label = crt_pair(label, m, local_label(c), c.q);
    m *= c.q;
    check *= c.q;
  }
  if (check != modulus) throw DomainError("local components do not match the modulus");
  chi.label_ = modulus == 1 ? 1 : label;
  return chi;
}

DirichletCharacter DirichletCharacter::parse(const std::string& text, u64 default_modulus) {
  if (text == "trivial") {
    if (default_modulus == 0) throw DomainError("'trivial' needs a modulus");
    return trivial(default_modulus);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) throw DomainError("character must be 'N.i' or 'trivial': " + text);
  try {
    std::size_t used = 0;
    const u64 n = std::stoull(text.substr(0, dot), &used);
    if (used != dot) throw DomainError("bad modulus");
    const std::string rest = text.substr(dot + 1);
    const u64 i = std::stoull(rest, &used);
    if (used != rest.size()) throw DomainError("bad label");
    return from_label(n, i);
  } catch (const std::logic_error&) {
    throw DomainError("cannot parse character '" + text + "'");
  }
}

std::string DirichletCharacter::label_string() const {
  return std::to_string(modulus_) + "." + std::to_string(label_);
}

u64 DirichletCharacter::local_exponent(std::size_t i, u64 x) const {
  const LocalCharacter& c = comps_.at(i);
  if (c.order == 1) return 0;
  x %= c.q;
  u64 r = 0;
  if (c.p == 2) {
    if (c.minus && x % 4 == 3) r = order_ / 2;
    if (c.e >= 3) {
      const u64 n = c.q / 4;
      const u64 a = c.log % n;
      if (a != 0) {
        const u64 g = std::gcd(a, n);
        const u64 o = n / g;
        const u64 lx = local_log(2, c.e, c.q, x) % o;
        r = (r + mulmod(mulmod(a / g, lx, order_), order_ / o, order_)) % order_;
      }
    }
  } else {
    const u64 n = c.q / c.p * (c.p - 1);
    const u64 a = c.log % n;
    const u64 g = std::gcd(a, n);
    const u64 o = n / g;
    const u64 lx = local_log(c.p, c.e, c.q, x) % o;
    r = mulmod(mulmod(a / g, lx, order_), order_ / o, order_);
  }
  return r;
}

std::optional<u64> DirichletCharacter::exponent(i64 n) const {
  const i64 m = static_cast<i64>(modulus_);
  i64 r = n % m;
  if (r < 0) r += m;
  const u64 x = static_cast<u64>(r);
  if (std::gcd(x, modulus_) != 1 && modulus_ != 1) return std::nullopt;
  u64 total = 0;
  for (std::size_t i = 0; i < comps_.size(); ++i) total = (total + local_exponent(i, x)) % order_;
  return total;
}

CycNum DirichletCharacter::evaluate(i64 n) const {
  const auto r = exponent(n);
  if (!r) return CycNum::zero(order_);
  return CycNum::root_of_unity(order_, static_cast<i64>(*r));
}

CycNum DirichletCharacter::sqrt_value(i64 n) const {
  const auto r = exponent(n);
  if (!r) throw DomainError("sqrt_value: argument not coprime to the modulus");
  return CycNum::root_of_unity(2 * order_, static_cast<i64>(*r));
}

DirichletCharacter DirichletCharacter::induced(u64 M) const {
  if (M == 0 || M % conductor_ != 0)
    throw DomainError("cannot view " + label_string() + " modulo " + std::to_string(M));
  std::vector<LocalCharacter> out;
  for (const auto& [p, f] : factorize(M)) {
    LocalCharacter c;
    c.p = p;
    c.e = f;
    c.q = ipow(p, f);
    for (const auto& src : comps_) {
      if (src.p != p || src.order == 1) continue;
      c.minus = src.minus;
      if (p == 2) {
        // exponent of 5 lives in Z/2^{e-2}
        if (src.e >= 3) {
          const u64 a = src.log % (src.q / 4);
          if (f >= src.e) {
            c.log = a * ipow(2, f - src.e);
          } else {
            c.log = f >= 3 ? a / ipow(2, src.e - f) : 0;
          }
        }
        if (f < 2) c.minus = false;
      } else {
        const u64 a = src.log % (src.q / p * (p - 1));
        c.log = f >= src.e ? a * ipow(p, f - src.e) : a / ipow(p, src.e - f);
      }
    }
    out.push_back(c);
  }
  DirichletCharacter chi = from_components(M, out);
  if (chi.conductor_ != conductor_ || chi.order_ != order_)
    throw DomainError("induction changed the character; conductor bookkeeping failed");
  return chi;
}

DirichletCharacter DirichletCharacter::local(u64 p) const {
  for (const auto& c : comps_)
    if (c.p == p) return from_components(c.q, {c});
  return trivial(1);
}

DirichletCharacter DirichletCharacter::away_from(u64 p) const {
  std::vector<LocalCharacter> rest;
  u64 m = 1;
  for (const auto& c : comps_) {
    if (c.p == p) continue;
    rest.push_back(c);
    m *= c.q;
  }
  return from_components(m, rest);
}

u64 n2_part(const DirichletCharacter& chi, u64 N) {
  if (!is_squarefree(N)) throw UnsupportedError("n2_part needs a square-free level");
  if (chi.modulus() != N) throw DomainError("n2_part: character modulus differs from N");
  u64 out = 1;
  for (const auto& c : chi.components())
    if (c.is_trivial()) out *= c.p;
  return out;
}

std::vector<DirichletCharacter> all_characters(u64 N) {
  std::vector<DirichletCharacter> out;
  for (u64 i = 1; i <= std::max<u64>(N, 1); ++i)
    if (std::gcd(i, N) == 1 || N == 1) out.push_back(DirichletCharacter::from_label(N, i));
  if (N == 1) out.resize(1);
  return out;
}

}  // namespace heckebound
