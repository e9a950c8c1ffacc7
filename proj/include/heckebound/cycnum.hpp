#ifndef HECKEBOUND_CYCNUM_HPP
#define HECKEBOUND_CYCNUM_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "heckebound/arith.hpp"
#include "heckebound/interval.hpp"

namespace heckebound {

/// Integer coefficients (lowest degree first) of the m-th cyclotomic polynomial.
const std::vector<mpz_class>& cyclotomic_polynomial(u64 m);

/// Exact element of Q(zeta_m), stored in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
///
/// Values of different orders combine in Q(zeta_lcm). The representation in a
/// fixed order is unique, so equality is exact.
class CycNum {
 public:
  CycNum();
  explicit CycNum(const mpq_class& q, u64 order = 1);
  CycNum(long v) : CycNum(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)

  static CycNum zero(u64 order) { return CycNum(mpq_class(0), order); }
  static CycNum root_of_unity(u64 order, i64 exponent);
  /// sum_j sums[j] * zeta_order^j / den, with sums indexed by exponent mod order.
  static CycNum from_exponent_sums(u64 order, const std::vector<mpz_class>& sums, const mpz_class& den = 1);
  /// Inverse of to_integer_vector.
  static CycNum from_integer_vector(u64 order, const std::vector<mpz_class>& num, const mpz_class& den);

  u64 order() const { return order_; }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  /// Numerators over the least common denominator.
  void to_integer_vector(std::vector<mpz_class>& num, mpz_class& den) const;

  /// Same value in Q(zeta_new_order); new_order must be a multiple of order().
  CycNum lifted(u64 new_order) const;

  bool is_zero() const;
  bool is_rational() const;
  /// Throws DomainError if not rational.
  mpq_class rational_value() const;
  CycNum conj() const;
  /// Throws DomainError on zero.
  CycNum inverse() const;
  ComplexInterval embed() const;

  CycNum operator-() const;
  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }
  CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
  CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
  CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Human-readable, e.g. "3", "-1/2 + z8^2", with zN = exp(2 pi i / N).
  std::string str() const;

 private:
  u64 order_ = 1;
  std::vector<mpq_class> coeffs_;
};

}  // namespace heckebound

#endif
