#ifndef HECKEBOUND_FACTOR_HPP
#define HECKEBOUND_FACTOR_HPP

#include <vector>

#include "heckebound/poly.hpp"

namespace heckebound {

struct PolyFactor {
  IntPoly poly;  // primitive, positive leading coefficient
  int multiplicity = 1;
};

/// Yun's algorithm: f = c * prod g_i^i with g_i squarefree and pairwise coprime.
/// Entries with g_i = 1 are omitted.
std::vector<PolyFactor> squarefree_decomposition(const IntPoly& f);

/// Irreducible factors over Z of a polynomial whose primitive part is monic up to sign
/// (characteristic polynomials always are). Sorted by degree, then coefficients.
/// Throws UnsupportedError for other leading coefficients.
std::vector<PolyFactor> factor_over_z(const IntPoly& f);

/// Same for a squarefree monic polynomial; returns monic irreducible factors.
std::vector<IntPoly> factor_squarefree_monic(const IntPoly& f);

}  // namespace heckebound

#endif
