#ifndef HECKEBOUND_HURWITZ_HPP
#define HECKEBOUND_HURWITZ_HPP

#include <gmpxx.h>

#include <filesystem>
#include <shared_mutex>
#include <vector>

#include "heckebound/arith.hpp"

namespace heckebound {

/// Table of 12*H(n) for 0 <= n <= limit, H the Hurwitz class number.
///
/// Built by sweeping reduced forms (a, b, c) with |b| <= a <= c and weighting
/// the classes of a(x^2 + y^2) and a(x^2 + xy + y^2) by 1/2 and 1/3. Extension
/// doubles the covered range. Reads may run concurrently with each other; an
/// extension takes the write lock.
class HurwitzTable {
 public:
  explicit HurwitzTable(u64 limit = 0);

  u64 limit() const;
  /// Grows the table so that it covers n (at least doubling the range).
  void ensure(u64 n);
  /// 12*H(n); extends on demand.
  i64 twelve_h(u64 n);
  mpq_class hurwitz(u64 n) {
    mpq_class q(static_cast<long>(twelve_h(n)), 12L);
    q.canonicalize();
    return q;
  }

  /// Copy of the stored values 12H(0) .. 12H(limit).
  std::vector<i64> snapshot() const;

  /// Binary cache: "HURWITZ1", u64 LE count C, then C i64 LE values.
  void save(const std::filesystem::path& file) const;
  static HurwitzTable load(const std::filesystem::path& file);

  HurwitzTable(const HurwitzTable& other);
  HurwitzTable& operator=(const HurwitzTable& other);

 private:
  static std::vector<i64> build(u64 limit);

  mutable std::shared_mutex mu_;
  std::vector<i64> values_;
};

/// Process-wide table shared by the trace formula.
HurwitzTable& global_hurwitz_table();

/// 12*H(n) from the global table.
i64 hurwitz12(u64 n);
mpq_class hurwitz(u64 n);

}  // namespace heckebound

#endif
