#ifndef HECKEBOUND_CHARACTER_HPP
#define HECKEBOUND_CHARACTER_HPP

#include <optional>
#include <string>
#include <vector>

#include "heckebound/arith.hpp"
#include "heckebound/cycnum.hpp"

namespace heckebound {

/// Character of (Z/p^e)^x in Conrey coordinates.
///
/// Odd p: chi(g^k) = e(log * k / phi(p^e)) for the Conrey generator g.
/// p = 2: chi(eps * 5^k) = e((1 - eps_label)(1 - eps) / 8 + log * k / 2^{e-2}).
struct LocalCharacter {
  u64 p = 0;
  unsigned e = 0;
  u64 q = 1;
  u64 log = 0;        // discrete log of the local label
  bool minus = false; // p = 2 only: local label = -1 mod 4
  u64 order = 1;
  u64 conductor = 1;

  bool is_trivial() const { return order == 1; }
};

/// Dirichlet character modulo N, labeled by its Conrey index.
class DirichletCharacter {
 public:
  DirichletCharacter() = default;  // trivial character mod 1

  static DirichletCharacter trivial(u64 modulus) { return from_label(modulus, 1); }
  /// Conrey character N.label; throws DomainError if gcd(label, N) > 1.
  static DirichletCharacter from_label(u64 modulus, u64 label);
  /// "N.i", or "trivial" which needs default_modulus.
  static DirichletCharacter parse(const std::string& text, u64 default_modulus = 0);
  /// Product of characters given by their local labels.
  static DirichletCharacter from_components(u64 modulus, const std::vector<LocalCharacter>& comps);

  u64 modulus() const { return modulus_; }
  u64 label() const { return label_; }
  u64 order() const { return order_; }
  u64 conductor() const { return conductor_; }
  int parity() const { return parity_; }
  bool is_principal() const { return order_ == 1; }
  bool is_real() const { return order_ <= 2; }
  const std::vector<LocalCharacter>& components() const { return comps_; }
  std::string label_string() const;

  /// r with chi(n) = zeta_order^r and 0 <= r < order; nullopt when gcd(n, N) > 1.
  std::optional<u64> exponent(i64 n) const;
  /// r in Z/order of the value of the i-th local component at x (x a unit mod q_i).
  u64 local_exponent(std::size_t i, u64 x) const;
  CycNum evaluate(i64 n) const;
  /// zeta_{2m}^a where chi(n) = zeta_m^a, m = order, 0 <= a < m.
  CycNum sqrt_value(i64 n) const;

  /// The same primitive character viewed modulo M; requires conductor | M.
  DirichletCharacter induced(u64 M) const;
  DirichletCharacter primitive() const { return induced(conductor_); }
  /// Component at p as a character modulo p^e (trivial if p does not divide N).
  DirichletCharacter local(u64 p) const;
  /// Character modulo N / p^{v_p(N)} obtained by dropping the p-component.
  DirichletCharacter away_from(u64 p) const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus_ == b.modulus_ && a.label_ == b.label_;
  }

 private:
  u64 modulus_ = 1;
  u64 label_ = 1;
  std::vector<LocalCharacter> comps_;
  u64 order_ = 1;
  u64 conductor_ = 1;
  int parity_ = 1;
};

/// Conrey generator modulo odd p: least primitive root mod p^2.
u64 conrey_generator(u64 p);

/// Product of primes p | N whose local component is trivial. N must be square-free.
u64 n2_part(const DirichletCharacter& chi, u64 N);

/// All characters modulo N (Conrey labels in increasing order).
std::vector<DirichletCharacter> all_characters(u64 N);

}  // namespace heckebound

#endif
