#include "heckebound/bounds.hpp"

#include <numeric>

#include "heckebound/errors.hpp"

namespace heckebound {
namespace {

Interval log_of(u64 n) { return Interval(static_cast<long>(n)).log(); }

mpz_class upow(u64 b, u64 e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

bool within(const Interval& x, double tol) { return x.abs().hi_double() <= tol; }

bool within(const ComplexInterval& z, double tol) { return z.abs().hi_double() <= tol; }

bool is_x(const IntPoly& f) { return f.size() == 2 && f[0] == 0; }

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Prop1: return "prop1";
    case BoundKind::Thm1: return "thm1";
    case BoundKind::Thm2: return "thm2";
    case BoundKind::Thm3: return "thm3";
    case BoundKind::AL: return "al";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violated: return "violated";
    case Verdict::NoData: return "no-data";
  }
  return "?";
}

Interval degree_bound_from_eigenvalue(int k, u64 p, const Interval& a_prime_abs) {
  if (k < 2) throw DomainError("degree bound: k must be at least 2");
  if (!is_prime(p)) throw DomainError("degree bound: p must be prime");
  if (!a_prime_abs.certainly_positive()) throw DomainError("degree bound: need a_f(p) != 0");
  if (!a_prime_abs.certainly_le(Interval(1)) && a_prime_abs.lo_rational() > 1)
    throw DomainError("degree bound: |a'| exceeds 1");
  const Interval a = a_prime_abs.min(Interval(1));
  const Interval b = Interval(2) * (Interval(1) / a).log() / (Interval(static_cast<long>(k - 1)) * log_of(4 * p));
  return b.max(Interval(0));
}

Thm2Bound thm2_bound(int k, u64 N, u64 p, u64 chi_order) {
  if (k < 2) throw DomainError("thm2: k must be at least 2");
  if (!is_prime(p)) throw DomainError("thm2: p must be prime");
  if (N < 2) throw DomainError("thm2: N must be at least 2");
  Thm2Bound r;
  r.p_divides_N = N % p == 0;
  r.trivial = euler_phi(chi_order);
  const Interval ratio = log_of(N) / (Interval(2) * Interval::pi() * log_of(p));
  if (!ratio.certainly_positive() || !Interval(1).certainly_less(ratio)) {
    r.below_domain = true;
    r.value = Interval(static_cast<long>(r.trivial));
    return r;
  }
  r.value = Interval(2) * ratio.log() / (Interval(static_cast<long>(k - 1)) * log_of(4 * p));
  return r;
}

Thm1Bound thm1_bound(int k, u64 N) {
  if (k % 2 != 0) throw DomainError("thm1: k must be even");
  if (N < 3) throw DomainError("thm1: N must be at least 3");
  Thm1Bound r;
  r.p_N = smallest_coprime_prime(N);
  r.bound = thm2_bound(k, N, r.p_N);
  return r;
}

Thm3Bound thm3_bound(int k, u64 N, const DirichletCharacter& chi) {
  if (k < 3 || k % 2 == 0) throw DomainError("thm3: k must be odd and at least 3");
  if (!is_squarefree(N)) throw UnsupportedError("thm3: N must be square-free");
  if (N % chi.modulus() != 0) throw DomainError("thm3: the character modulus must divide N");
  const DirichletCharacter c = chi.modulus() == N ? chi : chi.induced(N);
  if (c.parity() != -1) throw DomainError("thm3: chi(-1) must equal (-1)^k, the space is zero");
  Thm3Bound r;
  const u64 ord = c.order();
  r.trivial = euler_phi(ord);
  r.N2 = n2_part(c, N);
  r.coprime_form = std::gcd(r.N2, 2 * ord) == 1;
  r.exponent = omega(r.N2) - omega(std::gcd(r.N2, 2 * ord)) - 1;
  r.trivial_branch = r.exponent < 0;
  r.value = r.trivial << std::max(r.exponent, 0);
  return r;
}

PseudoEigenvalue al_pseudo_eigenvalue(int k, u64 N, const DirichletCharacter& chi, u64 p, const ComplexInterval& a_p,
                                      double tol) {
  if (N % chi.modulus() != 0) throw DomainError("al: the character modulus must divide N");
  const DirichletCharacter c = chi.modulus() == N ? chi : chi.induced(N);
  if (!is_prime(p) || valuation(N, p) != 1 || !c.local(p).is_principal())
    throw DomainError("al: need p || N with chi unramified at p");
  if (a_p.norm().contains_zero()) throw DataError("al: a_p = 0 contradicts the nonvanishing at p | N2");
  PseudoEigenvalue r;
  // p^{k/2 - 1} = sqrt(p^{k-2})
  const Interval scale = k >= 2 ? Interval(upow(p, static_cast<u64>(k - 2))).sqrt()
                                : Interval(1) / Interval(upow(p, static_cast<u64>(2 - k))).sqrt();
  r.lambda = ComplexInterval{-scale, Interval(0)} / a_p;
  const ComplexInterval one{Interval(1), Interval(0)};
  r.abs_ok = within(r.lambda.abs() - Interval(1), tol);
  const DirichletCharacter rest = c.away_from(p);
  const ComplexInterval target = rest.evaluate(static_cast<i64>(p)).conj().embed();
  const ComplexInterval sq = r.lambda * r.lambda;
  r.square_ok = within(sq - target, tol);
  ComplexInterval pw = one;
  for (u64 i = 0; i < c.order(); ++i) pw = pw * sq;
  r.field_ok = within(pw - one, tol);
  return r;
}

PseudoEigenvalue al_pseudo_eigenvalue(int k, u64 N, const DirichletCharacter& chi, u64 p, const mpq_class& a_p,
                                      double tol) {
  auto r = al_pseudo_eigenvalue(k, N, chi, p, ComplexInterval{Interval(a_p), Interval(0)}, tol);
  if (k % 2 == 0 && k >= 2) r.exact = mpq_class(-upow(p, static_cast<u64>(k / 2 - 1))) / a_p;
  return r;
}

bool prop1_violated(const HeckeCharPoly& P, const IntPoly& factor) {
  if (is_x(factor) || poly::degree(factor) <= 0) return false;
  // |a'| < (4p)^{-D(k-1)/2}  <=>  y^2 < 4 p^{k-1} (4p)^{-D(k-1)}
  const u64 D = static_cast<u64>(poly::degree(factor));
  const u64 k1 = static_cast<u64>(P.params.k - 1);
  const mpq_class T = mpq_class(4 * upow(P.p, k1)) / mpq_class(upow(4 * P.p, D * k1));
  const IntPoly S = squared_roots_poly(real_model(factor, P.chi_p));
  for (const auto& [h, mult] : squarefree_decomposition(S)) {
    const SturmSequence sturm(h);
    std::size_t n = sturm.count(0, T);
    if (n > 0 && poly::sign_at(h, T) == 0) --n;
    if (n > 0) return true;
  }
  return false;
}

std::vector<BoundReport> prop1_reports(const HeckeCharPoly& P) {
  std::vector<BoundReport> out;
  for (const auto& f : P.factors) {
    BoundReport r;
    r.kind = BoundKind::Prop1;
    r.inputs = P.params.str() + " p=" + std::to_string(P.p) + " factor=" + poly::to_string(f.poly);
    r.observed = poly::degree(f.poly);
    const auto a = min_nonzero_normalized_root(P, f.poly);
    if (!a) {
      r.bound = Interval(0);
      r.verdict = Verdict::NoData;
      r.note = "a_f(p) = 0";
    } else {
      r.bound = degree_bound_from_eigenvalue(P.params.k, P.p, *a);
      r.verdict = prop1_violated(P, f.poly) ? Verdict::Violated : Verdict::Consistent;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace heckebound
