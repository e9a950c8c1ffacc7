// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls the trace formula.
#ifndef HECKEBOUND_TESTS_ORACLES_HPP
#define HECKEBOUND_TESTS_ORACLES_HPP

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

#include "heckebound/arith.hpp"
#include "heckebound/character.hpp"

namespace oracle {

using heckebound::i64;
using heckebound::u64;

/// tau(0..B) from Delta = q prod (1 - q^m)^24.
std::vector<mpz_class> ramanujan_tau(u64 B);

/// Weierstrass coefficients [a1, a2, a3, a4, a6].
struct Curve {
  std::string label;
  std::array<i64, 5> a;
};

struct CurveLevel {
  u64 level;
  std::vector<Curve> curves;  // one per rational newform at this level
};

/// Levels whose weight-2 new space is spanned by rational newforms of the listed curves.
const std::vector<CurveLevel>& elliptic_curve_levels();

/// Affine points plus the point at infinity over F_p.
u64 count_points(const Curve& E, u64 p);
/// p + 1 - #E(F_p); for bad p this is the usual 0 / +1 / -1.
i64 ap_by_point_count(const Curve& E, u64 p);

/// Genus-2 curve y^2 = f(x), deg f = 6, coefficients lowest first.
struct Hyperelliptic {
  std::string label;
  std::array<i64, 7> f;
};

/// Models of X0(23) and X0(37).
const std::vector<std::pair<u64, Hyperelliptic>>& genus_two_modular_curves();

/// #C(F_p) and #C(F_{p^2}) on the smooth model, p odd and of good reduction.
std::pair<u64, u64> count_points(const Hyperelliptic& C, u64 p);

/// x^2 - t x + n with roots the two Frobenius traces a_f(p), from point counts.
std::array<i64, 3> frobenius_trace_poly(const Hyperelliptic& C, u64 p);

/// 12 H(n) as a weighted count of reduced forms (a, b, c) with b^2 - 4ac = -n.
i64 twelve_h_by_forms(u64 n);

/// dim S_k(Gamma0(N), chi) by the Cohen-Oesterle formula, N = chi.modulus().
i64 cusp_dimension(int k, const heckebound::DirichletCharacter& chi);

}  // namespace oracle

#endif
