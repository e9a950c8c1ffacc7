#ifndef HECKEBOUND_CHARPOLY_HPP
#define HECKEBOUND_CHARPOLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "heckebound/factor.hpp"
#include "heckebound/poly.hpp"
#include "heckebound/roots.hpp"
#include "heckebound/traceformula.hpp"

namespace heckebound {

enum class CharPolyRoute {
  /// Newton's identities on tr T_p^j, j <= dim; needs traces of T_{p^dim}.
  PowerSums,
  /// Regular representation of T_p on the Hecke algebra, via the trace form and
  /// multimodular reconstruction; only needs traces of T_n for small n.
  HeckeAlgebra,
};

/// Largest p^dim for which the automatic choice uses PowerSums.
inline constexpr u64 kPowerSumLimit = 300'000;

/// Characteristic polynomial of T_p on the new subspace (real characters only).
struct HeckeCharPoly {
  SpaceParams params;
  u64 p = 2;
  /// chi(p), which is +1 or -1.
  int chi_p = 1;
  IntPoly coefficients;  // monic, lowest degree first
  std::vector<PolyFactor> factors;
  CharPolyRoute route = CharPolyRoute::PowerSums;

  int degree() const { return poly::degree(coefficients); }
  std::string str() const { return poly::to_string(coefficients); }
};

/// tr T_p^j on the new space for j = 1..J. Throws DomainError if p | N.
std::vector<CycNum> power_sums(const SpaceParams& s, u64 p, std::size_t J);

/// Throws NotExactlySupported for characters of order > 2, DomainError if p | N.
HeckeCharPoly charpoly_new(const SpaceParams& s, u64 p, std::optional<CharPolyRoute> route = std::nullopt);

/// Irreducible factor degrees with multiplicity, increasing.
std::vector<int> factor_degrees(const HeckeCharPoly& P);
std::vector<int> factor_degrees(const std::vector<PolyFactor>& factors);

/// Polynomial whose roots are a_f(p)/sqrt(chi(p)), all real; equals P when chi(p) = 1.
IntPoly real_model(const IntPoly& P, int chi_p);

/// Integer polynomial in u whose roots are the squares of the roots of f, with multiplicity.
IntPoly squared_roots_poly(const IntPoly& f);

/// Normalized eigenvalues a' = a_f(p)/(2 p^{(k-1)/2} sqrt(chi(p))), one per newform,
/// increasing, each of width at most `width`.
std::vector<Interval> normalized_roots(const HeckeCharPoly& P, const mpq_class& width = mpq_class(1, 1000000000) / 1000000);

/// min |a'| over nonzero roots; nullopt if there is none.
std::optional<Interval> min_nonzero_normalized_root(const HeckeCharPoly& P);
/// Same for a single factor of P (k and p taken from P).
std::optional<Interval> min_nonzero_normalized_root(const HeckeCharPoly& P, const IntPoly& factor);

/// Number of roots, with multiplicity, with 0 < |a'| <= A (or < A when strict). Exact.
std::size_t count_normalized_in(const HeckeCharPoly& P, const mpq_class& A, bool strict = false);
/// Same for one factor, without its multiplicity.
std::size_t count_normalized_in(const HeckeCharPoly& P, const IntPoly& factor, const mpq_class& A, bool strict);

/// Certified normalized eigenvalues for any character, from exact power sums over the
/// cyclotomic field. Requires p^dim <= kPowerSumLimit (UnsupportedError otherwise).
std::vector<Interval> numeric_normalized_roots(const SpaceParams& s, u64 p);

/// Degrees [K_f : Q] of the Galois orbits of newforms (real characters), increasing.
std::vector<int> galois_orbit_degrees(const SpaceParams& s);

}  // namespace heckebound

#endif
