#ifndef HECKEBOUND_VERIFY_HPP
#define HECKEBOUND_VERIFY_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heckebound/arith.hpp"

namespace heckebound {

enum class Suite { Arith, Trace, Prop1, Equi, Thm3 };

Suite parse_suite(std::string_view text);
std::string to_string(Suite s);

struct VerifyOptions {
  u64 max_N = 60;
  /// Worker threads; results do not depend on it.
  unsigned jobs = 1;
  /// hbnf-1 files checked by the trace suite (levels up to max_N).
  std::optional<std::filesystem::path> fixtures;
};

/// One named invariant and how often it failed.
struct CheckSummary {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

struct VerifyResult {
  Suite suite = Suite::Arith;
  std::vector<CheckSummary> checks;
  /// Description of each failing case, in parameter order.
  std::vector<std::string> failures;

  std::size_t failure_count() const;
  bool ok() const { return failure_count() == 0; }
};

/// arith: psi_new and dstar multiplicativity, sum_{M | N} d(N/M) psi_new(M) = psi(N),
///   and 12 H(n) against the per-order class numbers, for arguments up to max_N.
/// trace: old/new sieves for dimensions and traces, integrality and parity vanishing
///   (k in {2,4,6}, n <= 50), plus fixture crosschecks.
/// prop1: the factor-degree bound, k in {2,4,6}, square-free N, p in {2,3,5}.
/// equi: the Erdos-Turan inequality, k in {2,4}, square-free N, p in {2,3},
///   A in {1/10, 1/4, 1/2}, M in 1..8.
/// thm3: orbit degrees against thm3_bound, k = 3, square-free N, odd real characters.
VerifyResult verify_suite(Suite suite, const VerifyOptions& options);

}  // namespace heckebound

#endif
