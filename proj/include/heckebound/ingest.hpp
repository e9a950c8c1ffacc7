#ifndef HECKEBOUND_INGEST_HPP
#define HECKEBOUND_INGEST_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "heckebound/bounds.hpp"
#include "heckebound/poly.hpp"

namespace heckebound {

/// a_f(p) at a bad prime: a root of `minpoly`, the `root_index`-th in the order
/// of increasing real part, then increasing imaginary part.
struct BadAp {
  IntPoly minpoly;
  int root_index = 0;
};

/// One Galois orbit of newforms.
struct NewformRecord {
  std::string label;
  int degree = 1;
  /// Trace over the orbit of a_f(p).
  std::map<u64, mpz_class> ap_traces;
  /// Minimal polynomial of a_f(p), monic.
  std::map<u64, IntPoly> ap_minpoly;
  std::map<u64, BadAp> bad_ap;
};

/// Contents of an "hbnf-1" file: the orbits of one space S_k(Gamma0(N), chi).
struct NewformFile {
  u64 level = 1;
  int weight = 2;
  DirichletCharacter chi;
  std::vector<NewformRecord> records;
  std::vector<std::string> warnings;

  SpaceParams params() const { return SpaceParams(weight, level, chi); }
};

/// Parses and validates. Throws DataError naming the line (for malformed JSON)
/// or the field path (for schema and consistency violations).
NewformFile parse_newform_file(std::string_view bytes);
NewformFile load_newform_file(const std::filesystem::path& file);
/// Inverse of parse_newform_file, pretty-printed.
std::string to_json(const NewformFile& file);

/// Enclosure of the value described by a BadAp.
ComplexInterval bad_ap_value(const BadAp& b);

enum class CrosscheckVerdict { Match, Mismatch, Incomplete };
std::string to_string(CrosscheckVerdict v);

struct Crosscheck {
  CrosscheckVerdict verdict = CrosscheckVerdict::Incomplete;
  u64 p = 2;
  /// Sums over the conjugates of chi; for a real character, just the space itself.
  mpz_class expected_trace, observed_trace;
  i64 expected_dim = 0, observed_dim = 0;
  std::string detail;
};

/// Compares the orbit traces at p (p must not divide N) with the trace formula.
/// The records must cover every character in the Galois orbit of chi.
Crosscheck crosscheck_traces(const NewformFile& file, u64 p);
/// crosscheck_traces for every prime p <= max_p not dividing N.
std::vector<Crosscheck> crosscheck_all(const NewformFile& file, u64 max_p);

/// One Thm3 row per record and one AL row per bad_ap entry at p | N2. When the
/// hypotheses (k odd, N square-free, chi odd) fail, every row is no-data with the reason.
std::vector<BoundReport> check_thm3_on_data(const NewformFile& file);

/// One AL row per bad_ap entry at a prime p || N where chi is unramified.
std::vector<BoundReport> check_atkin_lehner(const NewformFile& file);

}  // namespace heckebound

#endif
