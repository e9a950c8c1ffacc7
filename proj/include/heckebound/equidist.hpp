#ifndef HECKEBOUND_EQUIDIST_HPP
#define HECKEBOUND_EQUIDIST_HPP

#include <optional>
#include <string>
#include <vector>

#include "heckebound/interval.hpp"
#include "heckebound/traceformula.hpp"

namespace heckebound {

/// c_1 .. c_M: limits of tr(T'_{p^m} - T'_{p^{m-2}}) / dim, main term only.
std::vector<mpq_class> moments(u64 p, unsigned M);

/// psi_new(N) (k - 1) / (12 dim_new); the weight that turns the limit density into
/// the main-term density of this space. Throws DomainError if dim_new = 0.
mpq_class density_scale(const SpaceParams& s);

/// scale * (2(p+1)/pi) * sqrt(1 - x^2) / (p + 2 + 1/p - 4x^2), for |x| < 1.
Interval density_F(u64 p, const mpq_class& x, const mpq_class& scale = 1);

/// 2 * int_0^A F(x) dx by certified Taylor quadrature, width at most `width`.
Interval cdf_F(u64 p, const mpq_class& A, const mpq_class& scale = 1, const mpq_class& width = mpq_class(1, 10000000000));

/// int_0^A sqrt(1 - x^2) / (p + 2 + 1/p - 4x^2) dx, the integral without the density's
/// normalizing constant; behaves like p/(p+1)^2 * A as A -> 0.
Interval bare_integral(u64 p, const mpq_class& A, const mpq_class& width = mpq_class(1, 10000000000));

/// tr(T'_{p^m} - T'_{p^{m-2}}) / dim_new, m >= 1.
Interval empirical_moment(const SpaceParams& s, u64 p, unsigned m);

/// 1/(M+1) + sum_{1 <= |m| <= M} (1/(M+1) + min(2A, 1/(pi |m|))) |empirical_moment - c_m|.
Interval erdos_turan_rhs(const SpaceParams& s, u64 p, const mpq_class& A, unsigned M);

/// Fraction of newforms with 0 < |a'_f(p)| <= A, exact.
mpq_class empirical_C(const SpaceParams& s, u64 p, const mpq_class& A);

struct EquiReport {
  SpaceParams params;
  u64 p = 2;
  mpq_class A;
  unsigned M = 1;
  mpq_class lhs_empirical;
  Interval main_term;  // 2 int_0^A F with the space's scale
  Interval et_rhs;
  bool holds = true;

  std::string verdict() const { return holds ? "holds" : "violated"; }
};

/// Evaluates both sides of the Erdos-Turan inequality at one grid point.
/// The verdict is "holds" unless |C - main| exceeds the right side for every
/// value in the enclosures, beyond `slack`.
EquiReport equi_report(const SpaceParams& s, u64 p, const mpq_class& A, unsigned M,
                       const mpq_class& slack = mpq_class(1, 100000000));

/// equi_report over every (A, M) pair, A-major, sharing one characteristic polynomial.
std::vector<EquiReport> equi_grid(const SpaceParams& s, u64 p, const std::vector<mpq_class>& As,
                                  const std::vector<unsigned>& Ms, const mpq_class& slack = mpq_class(1, 100000000));

/// The threshold (pi/2) ((p+1)/p) (log p / log N). Throws DomainError for N < 2.
Interval small_eigenvalue_threshold(u64 N, u64 p);

/// max(1, floor((2/3) log N / log p)).
unsigned small_eigenvalue_moments(u64 N, u64 p);

struct SmallEigenformReport {
  EquiReport equi;  // evaluated at A = upper end of the threshold enclosure
  Interval threshold;
  bool witness = false;
  std::optional<Interval> min_abs;     // smallest nonzero |a'| in the space
  std::optional<Interval> degree_bound;  // the Proposition 1 bound at min_abs
};

/// Looks for a newform with 0 < |a'_f(p)| <= A* and reports the resulting degree bound.
SmallEigenformReport find_small_eigenform(const SpaceParams& s, u64 p);

}  // namespace heckebound

#endif
