#include "heckebound/poly.hpp"

#include <sstream>

#include "heckebound/errors.hpp"

namespace heckebound::poly {

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

IntPoly scale(const IntPoly& a, const mpz_class& c) {
  IntPoly r = a;
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

IntPoly derivative(const IntPoly& f) {
  if (f.size() <= 1) return {};
  IntPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<unsigned long>(i);
  trim(r);
  return r;
}

IntPoly reflect(const IntPoly& f) {
  IntPoly r = f;
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return r;
}

mpz_class content(const IntPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  IntPoly r = f;
  trim(r);
  if (r.empty()) return r;
  mpz_class g = content(r);
  if (r.back() < 0) g = -g;
  for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

bool divides(const IntPoly& g, const IntPoly& f, IntPoly* quotient) {
  if (g.empty()) throw DomainError("division by the zero polynomial");
  if (f.empty()) {
    if (quotient) quotient->clear();
    return true;
  }
  if (f.size() < g.size()) return false;
  IntPoly r = f;
  IntPoly q(f.size() - g.size() + 1, 0);
  const mpz_class& lc = g.back();
  for (std::size_t i = f.size(); i-- >= g.size();) {
    if (r[i] == 0) {
      if (i == 0) break;
      continue;
    }
    if (!mpz_divisible_p(r[i].get_mpz_t(), lc.get_mpz_t())) return false;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), r[i].get_mpz_t(), lc.get_mpz_t());
    const std::size_t shift = i - (g.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < g.size(); ++j) r[shift + j] -= c * g[j];
    if (i == 0) break;
  }
  trim(r);
  if (!r.empty()) return false;
  if (quotient) {
    trim(q);
    *quotient = std::move(q);
  }
  return true;
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.empty()) throw DomainError("pseudo_remainder by zero");
  IntPoly r = a;
  trim(r);
  const mpz_class lc = abs(b.back());
  const mpz_class sgn = b.back() < 0 ? -1 : 1;
  while (!r.empty() && r.size() >= b.size()) {
    const mpz_class c = r.back() * sgn;
    const std::size_t shift = r.size() - b.size();
    for (auto& x : r) x *= lc;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
  return r;
}

IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = primitive_part(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return primitive_part(a);
}

int sign_at(const IntPoly& f, const mpq_class& q) {
  if (f.empty()) return 0;
  // Horner on numerator/denominator: sum c_i a^i b^{d-i}
  const mpz_class& a = q.get_num();
  const mpz_class& b = q.get_den();
  mpz_class acc = f.back();
  mpz_class bp = 1;
  for (std::size_t i = f.size() - 1; i-- > 0;) {
    bp *= b;
    acc = acc * a + f[i] * bp;
  }
  return sgn(acc);
}

mpq_class eval(const IntPoly& f, const mpq_class& q) {
  mpq_class acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * q + f[i];
  return acc;
}

std::string to_string(const IntPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    const mpz_class& c = f[i];
    if (c == 0) continue;
    const mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

IntPoly to_integer(const std::vector<mpq_class>& c) {
  IntPoly r;
  r.reserve(c.size());
  for (const auto& q : c) {
    if (q.get_den() != 1) throw DomainError("non-integral coefficient " + q.get_str());
    r.push_back(q.get_num());
  }
  trim(r);
  return r;
}

}  // namespace heckebound::poly
