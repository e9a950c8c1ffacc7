#ifndef HECKEBOUND_BOUNDS_HPP
#define HECKEBOUND_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "heckebound/charpoly.hpp"
#include "heckebound/interval.hpp"

namespace heckebound {

enum class BoundKind { Prop1, Thm1, Thm2, Thm3, AL };
enum class Verdict { Consistent, Violated, NoData };

std::string to_string(BoundKind kind);
std::string to_string(Verdict verdict);

/// One row of a bounds table: a lower bound on a degree and, when known, the
/// degree it should bound.
struct BoundReport {
  BoundKind kind = BoundKind::Prop1;
  std::string inputs;
  Interval bound;
  std::optional<i64> observed;
  Verdict verdict = Verdict::NoData;
  std::string note;
};

/// (2/(k-1)) log(1/|a'|) / log(4p). Throws DomainError unless 0 < |a'| <= 1.
Interval degree_bound_from_eigenvalue(int k, u64 p, const Interval& a_prime_abs);

struct Thm2Bound {
  Interval value;
  /// phi(ord chi); the bound reported when the formula is out of its domain.
  u64 trivial = 1;
  /// log N <= 2 pi log p (or undecided), so `value` is the trivial bound.
  bool below_domain = false;
  /// The theorem wants p coprime to N; the formula itself only sees log N.
  bool p_divides_N = false;
};

/// (2/((k-1) log 4p)) log(log N / (2 pi log p)).
Thm2Bound thm2_bound(int k, u64 N, u64 p, u64 chi_order = 1);

struct Thm1Bound {
  u64 p_N = 2;
  Thm2Bound bound;
};

/// Thm2 at the smallest prime not dividing N. Requires k even and N >= 3.
Thm1Bound thm1_bound(int k, u64 N);

struct Thm3Bound {
  u64 value = 1;
  u64 trivial = 1;  // phi(ord chi)
  u64 N2 = 1;
  /// omega(N2) - omega(gcd(N2, 2 ord chi)) - 1
  int exponent = 0;
  /// The exponent is negative and the trivial bound is returned instead.
  bool trivial_branch = false;
  /// gcd(N2, 2 ord chi) = 1, so the bound reads phi(ord chi) 2^{omega(N2) - 1}.
  bool coprime_form = false;
};

/// phi(ord chi) 2^{omega(N2) - omega(gcd(N2, 2 ord chi)) - 1}, never below phi(ord chi).
/// Requires k >= 3 odd and chi odd (DomainError), N square-free (UnsupportedError).
Thm3Bound thm3_bound(int k, u64 N, const DirichletCharacter& chi);

struct PseudoEigenvalue {
  ComplexInterval lambda;
  /// Set when a_p is rational and p^{k/2-1} is an integer.
  std::optional<mpq_class> exact;
  bool abs_ok = false;     // |lambda| = 1
  bool square_ok = false;  // lambda^2 = conj(chi_{N/p}(p))
  bool field_ok = false;   // lambda^{2 ord chi} = 1
  bool ok() const { return abs_ok && square_ok && field_ok; }
};

/// lambda_p = -p^{k/2-1} / a_p for p || N with trivial local component (p | N2 when N
/// is square-free), with the three checks at tolerance `tol`.
/// Throws DomainError for any other p, DataError if a_p may be zero.
PseudoEigenvalue al_pseudo_eigenvalue(int k, u64 N, const DirichletCharacter& chi, u64 p, const ComplexInterval& a_p,
                                      double tol = 1e-9);
PseudoEigenvalue al_pseudo_eigenvalue(int k, u64 N, const DirichletCharacter& chi, u64 p, const mpq_class& a_p,
                                      double tol = 1e-9);

/// Whether some root of `factor` has 0 < |a'| < (4p)^{-deg(factor)(k-1)/2}, which is
/// exactly a violation of the degree bound. Decided with Sturm sequences.
bool prop1_violated(const HeckeCharPoly& P, const IntPoly& factor);

/// One Prop1 row per distinct irreducible factor of P.
std::vector<BoundReport> prop1_reports(const HeckeCharPoly& P);

}  // namespace heckebound

#endif
