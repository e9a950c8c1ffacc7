#ifndef HECKEBOUND_ROOTS_HPP
#define HECKEBOUND_ROOTS_HPP

#include <vector>

#include "heckebound/interval.hpp"
#include "heckebound/poly.hpp"

namespace heckebound {

/// Isolating interval of a real root: the root is lo when lo == hi, otherwise it
/// lies strictly inside (lo, hi) and f(lo), f(hi) have opposite signs.
struct RootInterval {
  mpq_class lo, hi;
  bool exact() const { return lo == hi; }
  Interval enclosure() const { return Interval(lo, hi); }
};

/// Sturm sequence of a squarefree polynomial, in primitive form.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& f);
  /// Number of distinct real roots in (a, b].
  std::size_t count(const mpq_class& a, const mpq_class& b) const;
  std::size_t count_all() const;
  const IntPoly& poly() const { return seq_.front(); }

 private:
  int variations(const mpq_class& x) const;
  int variations_at_infinity(int side) const;
  std::vector<IntPoly> seq_;
};

/// Every real root of a squarefree polynomial, increasing.
std::vector<RootInterval> isolate_real_roots(const IntPoly& f);
/// Shrinks r until hi - lo <= width.
void refine_root(const IntPoly& f, RootInterval& r, const mpq_class& width);
/// Integer B with every root of f in (-B, B).
mpz_class root_bound(const IntPoly& f);

/// Certified roots of a monic polynomial with complex interval coefficients
/// (lowest degree first). Each box contains exactly one root, counted with multiplicity.
/// Throws PrecisionError when the roots cannot be separated (for instance a repeated root).
std::vector<ComplexInterval> certified_complex_roots(const std::vector<ComplexInterval>& coeffs);

}  // namespace heckebound

#endif
