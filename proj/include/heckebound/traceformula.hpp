#ifndef HECKEBOUND_TRACEFORMULA_HPP
#define HECKEBOUND_TRACEFORMULA_HPP

#include <gmpxx.h>

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "heckebound/character.hpp"
#include "heckebound/cycnum.hpp"
#include "heckebound/interval.hpp"

namespace heckebound {

/// Weight, level and nebentypus of S_k(Gamma0(N), chi).
struct SpaceParams {
  int k = 2;
  u64 N = 1;
  DirichletCharacter chi;  // always stored modulo N

  SpaceParams() = default;
  /// chi may have any modulus dividing N; it is viewed modulo N.
  SpaceParams(int weight, u64 level, const DirichletCharacter& character);
  SpaceParams(int weight, u64 level) : SpaceParams(weight, level, DirichletCharacter::trivial(level)) {}

  /// chi(-1) = (-1)^k; otherwise the space is zero.
  bool parity_ok() const { return chi.parity() == ((k % 2 == 0) ? 1 : -1); }
  std::string str() const;
};

/// The four pieces of the trace formula, kept separately for provenance.
struct TraceTerms {
  CycNum main, elliptic, hyperbolic, parabolic;
};

struct TraceValue {
  CycNum value;
  /// Absent when the value came from the on-disk cache.
  std::optional<TraceTerms> terms;
};

/// tr T_n on S_k(Gamma0(N), chi); requires gcd(n, N) = 1 (UnsupportedError otherwise).
TraceValue trace_full(const SpaceParams& s, u64 n);
/// sum_{N1 | N, cond | N1} d*(N/N1) tr T_n on S_k(Gamma0(N1), chi).
TraceValue trace_new(const SpaceParams& s, u64 n);
/// Same as trace_new, as an integer; needs a real character. Throws DomainError otherwise.
mpz_class trace_new_integer(const SpaceParams& s, u64 n);

i64 dim_full(const SpaceParams& s);
i64 dim_new(const SpaceParams& s);

/// tr T'_{p^m} on the new space, T'_n = T_n / (2 n^{(k-1)/2} sqrt(chi(n))).
/// m < 0 gives exactly 0. Throws DomainError when p | N.
Interval normalized_trace_new(const SpaceParams& s, u64 p, i64 m);
/// The same quantity as an exact real element of Q(zeta_{2 ord chi}), before the
/// division by 2 p^{m(k-1)/2}.
CycNum twisted_trace_new(const SpaceParams& s, u64 p, i64 m);

/// 12 times the weighted class number h(D)/(w(D)/2) of the discriminant D = -m.
i64 class_number12(u64 m);

/// Memo of full-space traces, optionally persisted as JSON lines.
///
/// One file per (k, N, chi) named "k<k>_N<N>_chi<N.i>.jsonl"; each line is
/// {"k","N","chi","n","num","den","zeta_order"}. Lines are appended under a
/// lock, so a reader never sees a half-written record from this process.
class TraceCache {
 public:
  TraceCache() = default;
  explicit TraceCache(std::filesystem::path dir) { set_directory(std::move(dir)); }

  void set_directory(std::optional<std::filesystem::path> dir);
  std::optional<std::filesystem::path> directory() const;

  std::optional<TraceValue> lookup(const SpaceParams& s, u64 n);
  /// Keeps the terms in memory; only the value is persisted.
  void store(const SpaceParams& s, u64 n, const TraceValue& value);

  std::size_t memory_entries() const;
  void clear_memory();
  /// Removes the persisted files; returns the number of files removed.
  std::size_t clear_disk();
  /// (files, records) on disk.
  std::pair<std::size_t, std::size_t> disk_stats() const;

 private:
  using Key = std::tuple<int, u64, u64, u64>;
  void load_file_locked(const SpaceParams& s);
  std::filesystem::path file_for(const SpaceParams& s) const;

  mutable std::shared_mutex mu_;
  std::map<Key, TraceValue> memo_;
  std::map<std::tuple<int, u64, u64>, bool> loaded_;
  std::optional<std::filesystem::path> dir_;
};

/// Cache used by trace_full; picks up HECKEBOUND_CACHE on first use.
TraceCache& global_trace_cache();

}  // namespace heckebound

#endif
