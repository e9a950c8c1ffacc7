#ifndef HECKEBOUND_POLY_HPP
#define HECKEBOUND_POLY_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "heckebound/cycnum.hpp"

namespace heckebound {

/// Integer polynomial, coefficients lowest degree first; the zero polynomial is empty.
using IntPoly = std::vector<mpz_class>;

namespace poly {

void trim(IntPoly& f);
inline int degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }
inline const mpz_class& lead(const IntPoly& f) { return f.back(); }

IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly scale(const IntPoly& a, const mpz_class& c);
IntPoly derivative(const IntPoly& f);
/// x -> -x.
IntPoly reflect(const IntPoly& f);

mpz_class content(const IntPoly& f);
/// Divides by the content and makes the leading coefficient positive.
IntPoly primitive_part(const IntPoly& f);

/// Exact quotient over Z if g divides f, else false.
bool divides(const IntPoly& g, const IntPoly& f, IntPoly* quotient = nullptr);
/// lc(b)^{deg a - deg b + 1} a mod b, with |lc(b)| in place of lc(b) so signs are kept.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);
/// Primitive gcd with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Sign of f(q), computed exactly.
int sign_at(const IntPoly& f, const mpq_class& q);
mpq_class eval(const IntPoly& f, const mpq_class& q);

/// "x^2 + x - 1".
std::string to_string(const IntPoly& f, const std::string& var = "x");

/// Monic polynomial with the given power sums s_1..s_d (Newton's identities).
/// Returned coefficients are lowest degree first. T is mpq_class or CycNum.
template <class T>
std::vector<T> from_power_sums(const std::vector<T>& s) {
  const std::size_t d = s.size();
  // e_0 = 1, j e_j = sum_{i=1}^{j} (-1)^{i-1} e_{j-i} s_i
  std::vector<T> e(d + 1, T(0));
  e[0] = T(1);
  for (std::size_t j = 1; j <= d; ++j) {
    T acc(0);
    for (std::size_t i = 1; i <= j; ++i) {
      const T term = e[j - i] * s[i - 1];
      if (i % 2 == 1) acc += term;
      else acc -= term;
    }
    e[j] = acc * T(mpq_class(1, static_cast<long>(j)));
  }
  std::vector<T> c(d + 1, T(0));
  for (std::size_t j = 0; j <= d; ++j) c[d - j] = (j % 2 == 0) ? e[j] : T(0) - e[j];
  return c;
}

/// Power sums s_1..s_J of the roots of a monic polynomial (coefficients lowest first).
template <class T>
std::vector<T> power_sums_of(const std::vector<T>& c, std::size_t J) {
  const std::size_t d = c.size() - 1;
  // s_j = -j a_{d-j} - sum_{i=1}^{j-1} a_{d-i} s_{j-i}, with a_{<0} = 0
  std::vector<T> s;
  for (std::size_t j = 1; j <= J; ++j) {
    T acc(0);
    if (j <= d) acc -= T(mpq_class(static_cast<long>(j))) * c[d - j];
    for (std::size_t i = 1; i < j && i <= d; ++i) acc -= c[d - i] * s[j - i - 1];
    s.push_back(acc);
  }
  return s;
}

/// Rational coefficients that are integers, as an IntPoly; throws DomainError otherwise.
IntPoly to_integer(const std::vector<mpq_class>& c);

}  // namespace poly
}  // namespace heckebound

#endif
