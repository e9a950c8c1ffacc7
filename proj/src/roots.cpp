#include "heckebound/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "heckebound/errors.hpp"

namespace heckebound {
namespace {

IntPoly divide_positive_content(IntPoly f) {
  const mpz_class g = poly::content(f);
  if (g > 1)
    for (auto& c : f) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return f;
}

Interval thin(const Interval& x) { return Interval(mpq_class((x.lo_rational() + x.hi_rational()) / 2)); }

ComplexInterval thin(const ComplexInterval& z) { return {thin(z.re), thin(z.im)}; }

using cld = std::complex<long double>;

}  // namespace

SturmSequence::SturmSequence(const IntPoly& f) {
  IntPoly p0 = poly::primitive_part(f);
  if (p0.empty()) throw DomainError("SturmSequence: zero polynomial");
  seq_.push_back(p0);
  IntPoly p1 = divide_positive_content(poly::derivative(p0));
  while (!p1.empty()) {
    IntPoly r = poly::pseudo_remainder(seq_.back(), p1);
    for (auto& c : r) c = -c;
    seq_.push_back(std::move(p1));
    p1 = divide_positive_content(std::move(r));
  }
  if (poly::degree(seq_.back()) > 0) throw DomainError("SturmSequence: polynomial is not squarefree");
}

int SturmSequence::variations(const mpq_class& x) const {
  int v = 0, last = 0;
  for (const auto& p : seq_) {
    const int s = poly::sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int SturmSequence::variations_at_infinity(int side) const {
  int v = 0, last = 0;
  for (const auto& p : seq_) {
    int s = sgn(p.back());
    if (side < 0 && poly::degree(p) % 2 == 1) s = -s;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t SturmSequence::count(const mpq_class& a, const mpq_class& b) const {
  if (b <= a) return 0;
  return static_cast<std::size_t>(variations(a) - variations(b));
}

std::size_t SturmSequence::count_all() const {
  return static_cast<std::size_t>(variations_at_infinity(-1) - variations_at_infinity(1));
}

mpz_class root_bound(const IntPoly& f) {
  if (f.size() < 2) return 1;
  // Cauchy: 1 + max |c_i / c_n|
  mpz_class m = 0;
  const mpz_class lc = abs(f.back());
  for (std::size_t i = 0; i + 1 < f.size(); ++i) m = std::max(m, mpz_class(abs(f[i])));
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), m.get_mpz_t(), lc.get_mpz_t());
  return q + 2;
}

std::vector<RootInterval> isolate_real_roots(const IntPoly& f0) {
  const IntPoly f = poly::primitive_part(f0);
  std::vector<RootInterval> out;
  if (poly::degree(f) <= 0) return out;
  const SturmSequence sturm(f);
  const mpq_class B(root_bound(f));
  // roots in (a, b] with f(a), f(b) nonzero
  auto rec = [&](auto&& self, const mpq_class& a, const mpq_class& b, std::size_t n) -> void {
    if (n == 0) return;
    if (n == 1) {
      out.push_back({a, b});
      return;
    }
    mpq_class mid = (a + b) / 2;
    if (poly::sign_at(f, mid) == 0) {
      mpq_class delta = (b - a) / 4;
      while (sturm.count(mid - delta, mid + delta) != 1 || poly::sign_at(f, mid - delta) == 0 ||
             poly::sign_at(f, mid + delta) == 0)
        delta /= 2;
      out.push_back({mid, mid});
      self(self, a, mid - delta, sturm.count(a, mid - delta));
      self(self, mid + delta, b, sturm.count(mid + delta, b));
      return;
    }
    const std::size_t left = sturm.count(a, mid);
    self(self, a, mid, left);
    self(self, mid, b, n - left);
  };
  rec(rec, -B, B, sturm.count(-B, B));
  for (auto& r : out) {
    if (!r.exact() && poly::sign_at(f, r.hi) == 0) r.lo = r.hi;
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

void refine_root(const IntPoly& f, RootInterval& r, const mpq_class& width) {
  if (r.exact()) return;
  const int slo = poly::sign_at(f, r.lo);
  while (r.hi - r.lo > width) {
    const mpq_class mid = (r.lo + r.hi) / 2;
    const int s = poly::sign_at(f, mid);
    if (s == 0) {
      r.lo = r.hi = mid;
      return;
    }
    if (s == slo) r.lo = mid;
    else r.hi = mid;
  }
}

std::vector<ComplexInterval> certified_complex_roots(const std::vector<ComplexInterval>& coeffs) {
  const std::size_t n = coeffs.size() - 1;
  if (coeffs.empty() || n == 0) return {};
  if (!coeffs.back().re.contains(1) || !coeffs.back().im.contains(0))
    throw DomainError("certified_complex_roots: polynomial must be monic");

  // Aberth iteration in long double
  std::vector<cld> c(n + 1);
  long double R = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    c[i] = cld(static_cast<long double>(coeffs[i].re.mid_double()), static_cast<long double>(coeffs[i].im.mid_double()));
    if (i < n) R = std::max(R, std::pow(std::abs(c[i]), 1.0L / static_cast<long double>(n - i)));
  }
  R = 2 * R + 1;
  std::vector<cld> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long double ang = 2 * M_PI * (static_cast<long double>(i) + 0.25L) / static_cast<long double>(n) + 0.4L;
    z[i] = std::polar(R * 0.5L, ang);
  }
  auto eval = [&](const cld& x, cld& p, cld& dp) {
    p = c[n];
    dp = 0;
    for (std::size_t i = n; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
  };
  for (int it = 0; it < 2000; ++it) {
    long double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cld p, dp;
      eval(z[i], p, dp);
      if (p == cld(0)) continue;
      const cld w = p / dp;
      cld s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      const cld corr = w / (1.0L - w * s);
      z[i] -= corr;
      worst = std::max(worst, std::abs(corr) / (1 + std::abs(z[i])));
    }
    if (worst < 1e-18L) break;
  }

  // polish at full interval precision, then certify with Weierstrass corrections:
  // the discs D(z_i, n |W_i|) cover the roots, and disjoint ones hold exactly one each
  std::vector<ComplexInterval> Z(n);
  for (std::size_t i = 0; i < n; ++i)
    Z[i] = {Interval(mpq_class(static_cast<double>(z[i].real()))), Interval(mpq_class(static_cast<double>(z[i].imag())))};
  auto peval = [&](const ComplexInterval& x) {
    ComplexInterval p = coeffs[n];
    for (std::size_t i = n; i-- > 0;) p = p * x + coeffs[i];
    return p;
  };
  for (int it = 0; it < 4; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      ComplexInterval prod{Interval(1), Interval(0)};
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) prod = prod * (Z[i] - Z[j]);
      if (prod.norm().contains_zero()) throw PrecisionError("certified_complex_roots: coincident approximations");
      Z[i] = thin(Z[i] - peval(Z[i]) / prod);
    }
  }
  std::vector<Interval> rad(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexInterval prod{Interval(1), Interval(0)};
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) prod = prod * (Z[i] - Z[j]);
    if (prod.norm().contains_zero()) throw PrecisionError("certified_complex_roots: coincident approximations");
    const Interval w = (peval(Z[i]) / prod).abs();
    rad[i] = Interval(mpq_class(w.hi_rational() * static_cast<long>(n)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(rad[i] + rad[j]).certainly_less((Z[i] - Z[j]).abs()))
        throw PrecisionError("certified_complex_roots: inclusion discs overlap");
  std::vector<ComplexInterval> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const mpq_class r = rad[i].hi_rational();
    const mpq_class re = Z[i].re.lo_rational(), im = Z[i].im.lo_rational();
    out[i] = {Interval(mpq_class(re - r), mpq_class(re + r)), Interval(mpq_class(im - r), mpq_class(im + r))};
  }
  return out;
}

}  // namespace heckebound
