#include "heckebound/equidist.hpp"

#include <algorithm>
#include <cmath>

#include "heckebound/bounds.hpp"
#include "heckebound/charpoly.hpp"
#include "heckebound/errors.hpp"

namespace heckebound {
namespace {

// With x = sin(phi) the integrand sqrt(1-x^2) dx / (c - 4x^2) becomes
// g(phi) = (1 + w) / (2(c - 2 + 2w)), w = cos(2 phi), c = (p+1)^2 / p.
constexpr int kOrder = 24;  // Taylor degree of the remainder term

// Taylor coefficients of g at every point of `at`, degrees 0..n.
std::vector<Interval> g_series(const Interval& c, const Interval& at, int n) {
  const Interval two_at = Interval(2) * at;
  const Interval cs = two_at.cos().max(Interval(-1)).min(Interval(1));
  const Interval sn = two_at.sin().max(Interval(-1)).min(Interval(1));
  std::vector<Interval> w(static_cast<std::size_t>(n) + 1);
  Interval f(1);  // 2^j / j!
  for (int j = 0; j <= n; ++j) {
    if (j > 0) f = f * Interval(2) / Interval(static_cast<long>(j));
    switch (j % 4) {
      case 0: w[j] = f * cs; break;
      case 1: w[j] = -(f * sn); break;
      case 2: w[j] = -(f * cs); break;
      default: w[j] = f * sn; break;
    }
  }
  std::vector<Interval> q(w.size());
  const Interval b0 = Interval(2) * (c - Interval(2) + Interval(2) * w[0]);
  for (std::size_t j = 0; j < w.size(); ++j) {
    Interval a = j == 0 ? Interval(1) + w[0] : w[j];
    for (std::size_t i = 0; i < j; ++i) a -= q[i] * Interval(4) * w[j - i];
    q[j] = a / b0;
  }
  return q;
}

// int_lo^hi g, width at most tol (bisecting as needed).
Interval integrate_g(const Interval& c, const mpq_class& lo, const mpq_class& hi, const mpq_class& tol) {
  const mpq_class mid = (lo + hi) / 2, rad = (hi - lo) / 2;
  const auto at_mid = g_series(c, Interval(mid), kOrder - 1);
  const auto over = g_series(c, Interval(lo, hi), kOrder);
  const Interval r(rad);
  Interval sum(0);
  Interval rp = r;  // r^{j+1}
  for (int j = 0; j < kOrder; ++j) {
    if (j % 2 == 0) sum += Interval(2) * at_mid[j] * rp / Interval(static_cast<long>(j + 1));
    rp *= r;
  }
  // the remainder g_K(xi) t^K has an even power, so its integral lies in g_K(I) 2 r^{K+1}/(K+1)
  sum += Interval(2) * over[kOrder] * rp / Interval(static_cast<long>(kOrder + 1));
  if (sum.width_double() <= tol.get_d() || hi - lo < mpq_class(1, 1 << 30)) return sum;
  return integrate_g(c, lo, mid, tol / 2) + integrate_g(c, mid, hi, tol / 2);
}

Interval c_of(u64 p) { return Interval(mpq_class((p + 1) * (p + 1), p)); }

void check_density_prime(u64 p) {
  if (!is_prime(p)) throw DomainError("density: p must be prime");
}

mpq_class count_fraction(std::size_t count, i64 d) {
  mpq_class r(static_cast<long>(count), d);
  r.canonicalize();
  return r;
}

// Fraction with 0 < |a'| <= A from precomputed data.
mpq_class empirical_C_of(const SpaceParams& s, u64 p, const std::optional<HeckeCharPoly>& P, const mpq_class& A) {
  const i64 d = dim_new(s);
  if (d == 0) throw DomainError("empirical_C: the new space of " + s.str() + " is zero");
  if (P) return count_fraction(count_normalized_in(*P, A), d);
  std::size_t n = 0;
  for (const auto& r : numeric_normalized_roots(s, p)) {
    const Interval a = r.abs();
    if (a.contains_zero()) throw PrecisionError("empirical_C: cannot separate a normalized root from 0");
    if (a.contains(A)) throw PrecisionError("empirical_C: a normalized root straddles A = " + A.get_str());
    if (a.certainly_le(Interval(A))) ++n;
  }
  return count_fraction(n, d);
}

std::optional<HeckeCharPoly> exact_charpoly(const SpaceParams& s, u64 p) {
  if (!s.chi.is_real()) return std::nullopt;
  return charpoly_new(s, p);
}

// Violated only if even the smallest possible |C - main| exceeds the largest right side.
bool inequality_holds(const EquiReport& r, const mpq_class& slack) {
  const Interval diff = (Interval(r.lhs_empirical) - r.main_term).abs();
  return diff.lo_rational() <= r.et_rhs.hi_rational() + slack;
}

}  // namespace

std::vector<mpq_class> moments(u64 p, unsigned M) {
  if (M == 0) throw DomainError("moments: M must be positive");
  std::vector<mpq_class> c(M, 0);
  mpq_class prev = 1;  // p^{-(m-2)/2}
  for (unsigned m = 2; m <= M; m += 2) {
    const mpq_class cur = prev / p;
    c[m - 1] = cur - prev;
    prev = cur;
  }
  return c;
}

mpq_class density_scale(const SpaceParams& s) {
  const i64 d = dim_new(s);
  if (d == 0) throw DomainError("density_scale: the new space of " + s.str() + " is zero");
  mpq_class r(psi_new(s.N) * (s.k - 1), 12 * d);
  r.canonicalize();
  return r;
}

Interval density_F(u64 p, const mpq_class& x, const mpq_class& scale) {
  check_density_prime(p);
  if (abs(x) >= 1) throw DomainError("density_F: need |x| < 1");
  const Interval X(x);
  const Interval num = (Interval(1) - X * X).sqrt();
  const Interval den = c_of(p) - Interval(4) * X * X;
  return Interval(scale) * Interval(2 * static_cast<long>(p + 1)) / Interval::pi() * num / den;
}

Interval bare_integral(u64 p, const mpq_class& A, const mpq_class& width) {
  check_density_prime(p);
  if (A <= 0 || A > 1) throw DomainError("cdf: need 0 < A <= 1");
  const Interval c = c_of(p);
  const Interval phi = Interval(A).asin();
  const mpq_class top = phi.lo_rational();
  Interval total = integrate_g(c, 0, top, width / 2);
  // the sliver [top, phi.hi] where g is positive
  const Interval sliver(mpq_class(0), mpq_class(phi.hi_rational() - top));
  const Interval w = (Interval(2) * phi).cos();
  const Interval g = (Interval(1) + w) / (Interval(2) * (c - Interval(2) + Interval(2) * w));
  return total + sliver * g.max(Interval(0));
}

Interval cdf_F(u64 p, const mpq_class& A, const mpq_class& scale, const mpq_class& width) {
  // 2 * scale * (2(p+1)/pi) * bare; 4(p+1)/pi < 2(p+1)
  const mpq_class factor = 2 * abs(scale) * (p + 1) + 1;
  const Interval bare = bare_integral(p, A, width / factor);
  return Interval(scale) * Interval(4 * static_cast<long>(p + 1)) / Interval::pi() * bare;
}

Interval empirical_moment(const SpaceParams& s, u64 p, unsigned m) {
  const i64 d = dim_new(s);
  if (d == 0) throw DomainError("empirical_moment: the new space of " + s.str() + " is zero");
  const i64 mm = static_cast<i64>(m);
  return (normalized_trace_new(s, p, mm) - normalized_trace_new(s, p, mm - 2)) / Interval(static_cast<long>(d));
}

Interval erdos_turan_rhs(const SpaceParams& s, u64 p, const mpq_class& A, unsigned M) {
  if (A <= 0 || A >= 1) throw DomainError("erdos_turan_rhs: need 0 < A < 1");
  const auto c = moments(p, M);
  const Interval inv(mpq_class(1, M + 1));
  const Interval twoA(mpq_class(2 * A));
  Interval sum = inv;
  for (unsigned m = 1; m <= M; ++m) {
    const Interval dev = (empirical_moment(s, p, m) - Interval(c[m - 1])).abs();
    const Interval w = twoA.min(Interval(1) / (Interval::pi() * Interval(static_cast<long>(m))));
    // m and -m contribute equally
    sum += Interval(2) * (inv + w) * dev;
  }
  return sum;
}

mpq_class empirical_C(const SpaceParams& s, u64 p, const mpq_class& A) {
  if (A <= 0) return 0;
  return empirical_C_of(s, p, exact_charpoly(s, p), A);
}

EquiReport equi_report(const SpaceParams& s, u64 p, const mpq_class& A, unsigned M, const mpq_class& slack) {
  EquiReport r;
  r.params = s;
  r.p = p;
  r.A = A;
  r.M = M;
  r.lhs_empirical = empirical_C(s, p, A);
  r.main_term = cdf_F(p, A, density_scale(s));
  r.et_rhs = erdos_turan_rhs(s, p, A, M);
  r.holds = inequality_holds(r, slack);
  return r;
}

std::vector<EquiReport> equi_grid(const SpaceParams& s, u64 p, const std::vector<mpq_class>& As,
                                  const std::vector<unsigned>& Ms, const mpq_class& slack) {
  const auto P = exact_charpoly(s, p);
  const mpq_class scale = density_scale(s);
  std::vector<EquiReport> out;
  for (const auto& A : As) {
    const mpq_class C = empirical_C_of(s, p, P, A);
    const Interval main = cdf_F(p, A, scale);
    for (unsigned M : Ms) {
      EquiReport r;
      r.params = s;
      r.p = p;
      r.A = A;
      r.M = M;
      r.lhs_empirical = C;
      r.main_term = main;
      r.et_rhs = erdos_turan_rhs(s, p, A, M);
      r.holds = inequality_holds(r, slack);
      out.push_back(std::move(r));
    }
  }
  return out;
}

Interval small_eigenvalue_threshold(u64 N, u64 p) {
  if (N < 2) throw DomainError("threshold: log N must be positive (N >= 2)");
  check_density_prime(p);
  const Interval ratio = Interval(static_cast<long>(p)).log() / Interval(static_cast<long>(N)).log();
  return Interval::pi() / Interval(2) * Interval(mpq_class(p + 1, p)) * ratio;
}

unsigned small_eigenvalue_moments(u64 N, u64 p) {
  if (N < 2) throw DomainError("moments recipe: N must be at least 2");
  const Interval v = Interval(mpq_class(2, 3)) * Interval(static_cast<long>(N)).log() / Interval(static_cast<long>(p)).log();
  // never an integer since p does not divide N; the enclosure is far narrower than any gap
  return static_cast<unsigned>(std::max(1.0, std::floor(v.mid_double())));
}

SmallEigenformReport find_small_eigenform(const SpaceParams& s, u64 p) {
  if (s.N % p == 0) throw DomainError("find_small_eigenform: p must not divide N");
  SmallEigenformReport out;
  out.threshold = small_eigenvalue_threshold(s.N, p);
  const unsigned M = small_eigenvalue_moments(s.N, p);
  const auto P = exact_charpoly(s, p);
  const mpq_class lo = out.threshold.lo_rational(), hi = out.threshold.hi_rational();
  const mpq_class c_lo = empirical_C_of(s, p, P, lo), c_hi = empirical_C_of(s, p, P, hi);
  if (c_lo != c_hi) throw PrecisionError("find_small_eigenform: an eigenvalue sits on the threshold");
  out.equi.params = s;
  out.equi.p = p;
  out.equi.A = hi < 1 ? hi : mpq_class(999999, 1000000);
  out.equi.M = M;
  out.equi.lhs_empirical = c_hi;
  out.equi.main_term = cdf_F(p, out.equi.A, density_scale(s));
  out.equi.et_rhs = erdos_turan_rhs(s, p, out.equi.A, M);
  out.equi.holds = inequality_holds(out.equi, mpq_class(1, 100000000));
  out.witness = c_hi > 0;
  if (P) {
    out.min_abs = min_nonzero_normalized_root(*P);
  } else {
    for (const auto& r : numeric_normalized_roots(s, p)) {
      const Interval a = r.abs();
      if (a.contains_zero()) continue;
      out.min_abs = out.min_abs ? out.min_abs->min(a) : a;
    }
  }
  if (out.min_abs) out.degree_bound = degree_bound_from_eigenvalue(s.k, p, *out.min_abs);
  return out;
}

}  // namespace heckebound
