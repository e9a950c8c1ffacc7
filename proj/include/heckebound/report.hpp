#ifndef HECKEBOUND_REPORT_HPP
#define HECKEBOUND_REPORT_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heckebound/bounds.hpp"
#include "heckebound/equidist.hpp"

namespace heckebound {

enum class Format { Table, Csv, Json };

Format parse_format(std::string_view text);
std::string to_string(Format f);
BoundKind parse_bound_kind(std::string_view text);
Verdict parse_verdict(std::string_view text);

/// Settings of one run. `params` mirrors the command line flags.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  Format format = Format::Table;
  std::optional<std::filesystem::path> cache_dir;
  /// Significant digits for interval endpoints.
  int precision = 15;
};

/// "p/q", or "p" for integers.
std::string format_rational(const mpq_class& q);
/// Accepts "p/q", integers and finite decimals ("0.25" is exactly 1/4).
mpq_class parse_rational(std::string_view text);

/// Endpoints rounded outward to `digits` significant digits.
std::string format_lo(const Interval& x, int digits);
std::string format_hi(const Interval& x, int digits);

/// Rows of strings rendered as an aligned table or as CSV.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render(Format f) const;
};

std::string csv_escape(const std::string& field);

/// One JSON object per line. Intervals keep their exact endpoints as rationals,
/// next to the decimal display.
std::string to_json_line(const EquiReport& r, int digits = 15);
EquiReport equi_report_from_json(std::string_view line);
std::string to_json_line(const BoundReport& r, int digits = 15);
BoundReport bound_report_from_json(std::string_view line);

Table equi_table(const std::vector<EquiReport>& rows, int digits = 15);
Table bound_table(const std::vector<BoundReport>& rows, int digits = 15);

/// Same fields and the same interval endpoints.
bool same_report(const EquiReport& a, const EquiReport& b);
bool same_report(const BoundReport& a, const BoundReport& b);

}  // namespace heckebound

#endif
