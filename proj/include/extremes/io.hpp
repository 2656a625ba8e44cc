#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "extremes/blocks.hpp"
#include "extremes/gev.hpp"

namespace extremes::io {

/// Malformed input file. The message names the source and, where known,
/// the offending line or year.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that parses back to exactly `value`. Non-finite values
/// print as "nan", "inf" or "-inf".
std::string format_double(double value);

/// Parses a daily CSV with header `year,day,value`. Rows must run day 1..365
/// of consecutive years with no gaps or duplicates. `source` labels errors.
DailySeries parse_daily_csv(std::istream& in, std::string_view source = "<input>");
DailySeries read_daily_csv(const std::filesystem::path& path);

void write_daily_csv(std::ostream& out, const DailySeries& series);

/// One grid cell of a manifest. `path` is resolved against the manifest's
/// directory when relative.
struct CellRecord {
  std::string cell_id;
  double latitude = 0.0;
  double longitude = 0.0;
  std::filesystem::path path;
  Variable variable = Variable::Tmax;
};

using GridManifest = std::vector<CellRecord>;

/// Parses a manifest: a JSON array of objects with keys cell_id, latitude,
/// longitude, path and variable ("tmax"/"tmin"). Cell ids must be unique.
GridManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir,
                            std::string_view source = "<manifest>");
GridManifest read_manifest(const std::filesystem::path& path);

/// Reads the cell's daily file and attaches the record's metadata.
DailySeries load_cell(const CellRecord& record);

Variable parse_variable(std::string_view text);

struct QqPoint {
  double probability = 0.0;
  double empirical = 0.0;
  double fitted = 0.0;
};

/// Sorted data y_(i) paired with the fitted quantile at p_i = i / (n + 1).
/// Minima use the lower-tail distribution function so both columns rise
/// together.
std::vector<QqPoint> qq_pairs(const BlockExtremes& extremes, const GevParams& params);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace extremes::io
