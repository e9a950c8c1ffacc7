#include "heckebound/verify.hpp"

#include <atomic>
#include <functional>
#include <numeric>
#include <random>
#include <thread>

#include "heckebound/bounds.hpp"
#include "heckebound/equidist.hpp"
#include "heckebound/errors.hpp"
#include "heckebound/hurwitz.hpp"
#include "heckebound/ingest.hpp"

namespace heckebound {
namespace {

// Outcome of one parameter tuple: per-check case and failure counts plus messages.
struct Partial {
  std::vector<CheckSummary> checks;
  std::vector<std::string> failures;

  CheckSummary& check(const std::string& name) {
    for (auto& c : checks)
      if (c.name == name) return c;
    return checks.emplace_back(CheckSummary{name, 0, 0});
  }
  void record(const std::string& name, bool ok, const std::function<std::string()>& what) {
    auto& c = check(name);
    ++c.cases;
    if (!ok) {
      ++c.failures;
      failures.push_back(name + ": " + what());
    }
  }
};

template <typename Task>
VerifyResult run(Suite suite, const std::vector<Task>& tasks, unsigned jobs, const std::function<Partial(const Task&)>& fn,
                 const std::vector<std::string>& names) {
  std::vector<Partial> parts(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        parts[i] = fn(tasks[i]);
      } catch (const std::exception& e) {
        parts[i].record("errors", false, [&] { return std::string(e.what()); });
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  VerifyResult out;
  out.suite = suite;
  Partial merged;
  for (const auto& name : names) merged.check(name);
  for (auto& part : parts) {
    for (const auto& c : part.checks) {
      auto& m = merged.check(c.name);
      m.cases += c.cases;
      m.failures += c.failures;
    }
    for (auto& f : part.failures) out.failures.push_back(std::move(f));
  }
  out.checks = std::move(merged.checks);
  return out;
}

std::vector<u64> levels(u64 max_N, bool squarefree_only) {
  std::vector<u64> out;
  for (u64 N = 1; N <= max_N; ++N)
    if (!squarefree_only || is_squarefree(N)) out.push_back(N);
  return out;
}

std::string str(const SpaceParams& s, u64 p) { return s.str() + " p=" + std::to_string(p); }

VerifyResult arith_suite(const VerifyOptions& o) {
  const u64 B = std::max<u64>(o.max_N, 2);
  std::vector<u64> tasks = levels(B, false);
  std::vector<std::pair<u64, u64>> pairs;
  std::mt19937_64 rng(20240917);
  while (pairs.size() < 500) {
    const u64 m = rng() % B + 1, n = rng() % B + 1;
    if (std::gcd(m, n) == 1) pairs.emplace_back(m, n);
  }
  Partial mult;
  for (const auto& [m, n] : pairs) {
    mult.record("psi_new multiplicative", psi_new(m * n) == psi_new(m) * psi_new(n),
                [&] { return std::to_string(m) + " * " + std::to_string(n); });
    mult.record("dstar multiplicative", dstar(m * n) == dstar(m) * dstar(n),
                [&] { return std::to_string(m) + " * " + std::to_string(n); });
  }
  auto result = run<u64>(Suite::Arith, tasks, o.jobs,
                         [](const u64& N) {
                           Partial part;
                           i64 total = 0;
                           for (u64 M : divisors(N)) total += static_cast<i64>(num_divisors(N / M)) * psi_new(M);
                           part.record("divisor sum of psi_new", total == static_cast<i64>(psi(N)),
                                       [&] { return "N=" + std::to_string(N); });
                           if (N >= 3 && N % 4 != 1 && N % 4 != 2) {
                             i64 h = 0;
                             for (u64 f = 1; f * f <= N; ++f) {
                               if (N % (f * f) != 0) continue;
                               const u64 m = N / (f * f);
                               if (m % 4 == 0 || m % 4 == 3) h += class_number12(m);
                             }
                             part.record("Hurwitz by orders", h == hurwitz12(N), [&] { return "n=" + std::to_string(N); });
                           }
                           return part;
                         },
                         {"psi_new multiplicative", "dstar multiplicative", "divisor sum of psi_new", "Hurwitz by orders"});
  for (auto& c : result.checks)
    for (const auto& m : mult.checks)
      if (c.name == m.name) c = m;
  result.failures.insert(result.failures.begin(), mult.failures.begin(), mult.failures.end());
  return result;
}

VerifyResult trace_suite(const VerifyOptions& o) {
  struct Task {
    int k;
    u64 N;
  };
  std::vector<Task> tasks;
  for (int k : {2, 3, 4, 6})
    for (u64 N : levels(o.max_N, false)) tasks.push_back({k, N});
  auto result = run<Task>(
      Suite::Trace, tasks, o.jobs,
      [](const Task& t) {
        Partial part;
        const SpaceParams s(t.k, t.N);
        const auto name = [&] { return s.str(); };
        if (t.k % 2 == 1) {
          // trivial chi is even, so every odd-weight value vanishes
          part.record("parity vanishing", dim_full(s) == 0 && dim_new(s) == 0 && trace_full(s, 1).value == CycNum(0),
                      name);
          return part;
        }
        i64 dims = 0;
        for (u64 M : divisors(t.N)) dims += static_cast<i64>(num_divisors(t.N / M)) * dim_new(SpaceParams(t.k, M));
        part.record("dim old/new", dims == dim_full(s), name);
        for (u64 n = 1; n <= 50; ++n) {
          if (std::gcd(n, t.N) != 1) continue;
          const CycNum full = trace_full(s, n).value, fresh = trace_new(s, n).value;
          const auto what = [&] { return s.str() + " n=" + std::to_string(n); };
          part.record("integrality", full.is_rational() && full.rational_value().get_den() == 1 && fresh.is_rational() &&
                                         fresh.rational_value().get_den() == 1,
                      what);
          CycNum sum(0);
          for (u64 M : divisors(t.N))
            sum += CycNum(static_cast<long>(num_divisors(t.N / M))) * trace_new(SpaceParams(t.k, M), n).value;
          part.record("trace old/new", sum == full, what);
        }
        return part;
      },
      {"dim old/new", "trace old/new", "integrality", "parity vanishing"});
  if (o.fixtures) {
    auto& c = result.checks.emplace_back(CheckSummary{"fixture crosscheck", 0, 0});
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(*o.fixtures))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      NewformFile file;
      try {
        file = load_newform_file(path);
      } catch (const DataError&) {
        continue;  // deliberately invalid fixtures
      }
      if (file.level > o.max_N) continue;
      for (const auto& x : crosscheck_all(file, 50)) {
        if (x.verdict == CrosscheckVerdict::Incomplete) continue;
        ++c.cases;
        if (x.verdict == CrosscheckVerdict::Mismatch) {
          ++c.failures;
          result.failures.push_back("fixture crosscheck: " + path.filename().string() + " p=" + std::to_string(x.p) +
                                    " " + x.detail);
        }
      }
    }
  }
  return result;
}

VerifyResult prop1_suite(const VerifyOptions& o) {
  struct Task {
    int k;
    u64 N, p;
  };
  std::vector<Task> tasks;
  for (int k : {2, 4, 6})
    for (u64 N : levels(o.max_N, true))
      for (u64 p : {2u, 3u, 5u})
        if (N % p != 0) tasks.push_back({k, N, p});
  return run<Task>(
      Suite::Prop1, tasks, o.jobs,
      [](const Task& t) {
        Partial part;
        const SpaceParams s(t.k, t.N);
        if (dim_new(s) == 0) return part;
        const auto P = charpoly_new(s, t.p);
        for (const auto& row : prop1_reports(P))
          part.record("factor degree bound", row.verdict != Verdict::Violated,
                      [&] { return str(s, t.p) + " " + row.inputs + " " + row.note; });
        return part;
      },
      {"factor degree bound"});
}

VerifyResult equi_suite(const VerifyOptions& o) {
  struct Task {
    int k;
    u64 N, p;
  };
  std::vector<Task> tasks;
  for (int k : {2, 4})
    for (u64 N : levels(o.max_N, true))
      for (u64 p : {2u, 3u})
        if (N % p != 0) tasks.push_back({k, N, p});
  const std::vector<mpq_class> As{mpq_class(1, 10), mpq_class(1, 4), mpq_class(1, 2)};
  const std::vector<unsigned> Ms{1, 2, 3, 4, 5, 6, 7, 8};
  return run<Task>(
      Suite::Equi, tasks, o.jobs,
      [&](const Task& t) {
        Partial part;
        const SpaceParams s(t.k, t.N);
        if (dim_new(s) == 0) return part;
        for (const auto& r : equi_grid(s, t.p, As, Ms))
          part.record("Erdos-Turan inequality", r.holds, [&] {
            return str(s, t.p) + " A=" + r.A.get_str() + " M=" + std::to_string(r.M) + " C=" + r.lhs_empirical.get_str() +
                   " main=" + r.main_term.str(6) + " rhs=" + r.et_rhs.str(6);
          });
        return part;
      },
      {"Erdos-Turan inequality"});
}

VerifyResult thm3_suite(const VerifyOptions& o) {
  struct Task {
    u64 N;
    DirichletCharacter chi;
  };
  std::vector<Task> tasks;
  for (u64 N : levels(o.max_N, true))
    for (const auto& chi : all_characters(N))
      if (chi.order() == 2 && chi.parity() == -1) tasks.push_back({N, chi});
  return run<Task>(
      Suite::Thm3, tasks, o.jobs,
      [](const Task& t) {
        Partial part;
        const SpaceParams s(3, t.N, t.chi);
        if (dim_new(s) == 0) return part;
        const Thm3Bound b = thm3_bound(3, t.N, t.chi);
        for (int d : galois_orbit_degrees(s))
          part.record("orbit degree bound", static_cast<u64>(d) >= b.value, [&] {
            return s.str() + " orbit of degree " + std::to_string(d) + " < " + std::to_string(b.value);
          });
        return part;
      },
      {"orbit degree bound"});
}

}  // namespace

Suite parse_suite(std::string_view text) {
  for (Suite s : {Suite::Arith, Suite::Trace, Suite::Prop1, Suite::Equi, Suite::Thm3})
    if (text == to_string(s)) return s;
  throw DomainError("unknown suite '" + std::string(text) + "' (arith, trace, prop1, equi, thm3)");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Arith: return "arith";
    case Suite::Trace: return "trace";
    case Suite::Prop1: return "prop1";
    case Suite::Equi: return "equi";
    case Suite::Thm3: return "thm3";
  }
  return "?";
}

std::size_t VerifyResult::failure_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.failures;
  return n;
}

VerifyResult verify_suite(Suite suite, const VerifyOptions& options) {
  if (options.max_N < 1) throw DomainError("verify: max-N must be positive");
  switch (suite) {
    case Suite::Arith: return arith_suite(options);
    case Suite::Trace: return trace_suite(options);
    case Suite::Prop1: return prop1_suite(options);
    case Suite::Equi: return equi_suite(options);
    case Suite::Thm3: return thm3_suite(options);
  }
  throw DomainError("verify: unknown suite");
}

}  // namespace heckebound
