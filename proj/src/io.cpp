#include "extremes/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace extremes::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
  throw ParseError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf.data(), ptr};
}

DailySeries parse_daily_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3 || fields[0] != "year" || fields[1] != "day" || fields[2] != "value") {
      fail(source, line_no, "expected header 'year,day,value'");
    }
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError(std::string(source) + ": empty file");

  DailySeries series;
  long long year = 0;
  int expected_day = 1;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) fail(source, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    long long row_year = 0;
    int day = 0;
    double value = 0.0;
    if (!parse_number(fields[0], row_year)) fail(source, line_no, "invalid year '" + std::string(fields[0]) + "'");
    if (!parse_number(fields[1], day)) fail(source, line_no, "invalid day '" + std::string(fields[1]) + "'");
    if (!parse_number(fields[2], value) || !std::isfinite(value)) {
      fail(source, line_no, "invalid value '" + std::string(fields[2]) + "'");
    }
    if (day < 1 || day > static_cast<int>(kDaysPerYear)) {
      fail(source, line_no, "day " + std::to_string(day) + " outside the 365-day calendar");
    }
    if (first_row) {
      if (day != 1) fail(source, line_no, "series must start on day 1, got day " + std::to_string(day));
      year = row_year;
      series.start_year = static_cast<int>(row_year);
      first_row = false;
    } else if (expected_day > static_cast<int>(kDaysPerYear)) {
      if (row_year == year) fail(source, line_no, "duplicate day " + std::to_string(day) + " of year " + std::to_string(year));
      if (row_year != year + 1 || day != 1) {
        fail(source, line_no, "expected day 1 of year " + std::to_string(year + 1) + ", got year " +
                                  std::to_string(row_year) + " day " + std::to_string(day));
      }
      year = row_year;
      expected_day = 1;
    } else if (row_year != year) {
      throw ParseError(std::string(source) + ": incomplete year " + std::to_string(year) + " (" +
                       std::to_string(expected_day - 1) + " of 365 days)");
    } else if (day < expected_day) {
      fail(source, line_no, "duplicate or out-of-order day " + std::to_string(day) + " of year " + std::to_string(year));
    } else if (day > expected_day) {
      fail(source, line_no, "missing day " + std::to_string(expected_day) + " of year " + std::to_string(year));
    }
    series.values.push_back(value);
    ++expected_day;
  }
  if (first_row) throw ParseError(std::string(source) + ": no data rows");
  if (expected_day <= static_cast<int>(kDaysPerYear)) {
    throw ParseError(std::string(source) + ": incomplete year " + std::to_string(year) + " (" +
                     std::to_string(expected_day - 1) + " of 365 days)");
  }
  return series;
}

DailySeries read_daily_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  DailySeries s = parse_daily_csv(in, path.string());
  s.cell_id = path.stem().string();
  return s;
}

void write_daily_csv(std::ostream& out, const DailySeries& series) {
  validate(series);
  out << "year,day,value\n";
  for (std::size_t t = 0; t < series.values.size(); ++t) {
    out << series.start_year + static_cast<long long>(t / kDaysPerYear) << ',' << t % kDaysPerYear + 1 << ','
        << format_double(series.values[t]) << '\n';
  }
}

Variable parse_variable(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "tmax") return Variable::Tmax;
  if (lower == "tmin") return Variable::Tmin;
  throw std::invalid_argument("unknown variable '" + std::string(text) + "' (expected tmax or tmin)");
}

GridManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir,
                            std::string_view source) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
  if (!doc.is_array()) throw ParseError(std::string(source) + ": manifest must be a JSON array");
  GridManifest cells;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& rec = doc[i];
    const std::string where = std::string(source) + ": cell " + std::to_string(i);
    if (!rec.is_object()) throw ParseError(where + " is not an object");
    CellRecord cell;
    try {
      cell.cell_id = rec.at("cell_id").get<std::string>();
      cell.latitude = rec.value("latitude", 0.0);
      cell.longitude = rec.value("longitude", 0.0);
      cell.path = rec.at("path").get<std::string>();
      cell.variable = parse_variable(rec.at("variable").get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (cell.cell_id.empty()) throw ParseError(where + ": empty cell_id");
    if (!seen.insert(cell.cell_id).second) throw ParseError(where + ": duplicate cell_id '" + cell.cell_id + "'");
    if (cell.path.is_relative()) cell.path = base_dir / cell.path;
    cells.push_back(std::move(cell));
  }
  return cells;
}

GridManifest read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path(), path.string());
}

DailySeries load_cell(const CellRecord& record) {
  DailySeries s = read_daily_csv(record.path);
  s.cell_id = record.cell_id;
  s.latitude = record.latitude;
  s.longitude = record.longitude;
  s.variable = record.variable;
  return s;
}

std::vector<QqPoint> qq_pairs(const BlockExtremes& extremes, const GevParams& params) {
  validate(params);
  std::vector<double> sorted = extremes.values;
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<QqPoint> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = static_cast<double>(i + 1) / (n + 1.0);
    out.push_back({p, sorted[i], quantile(params, p)});
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace extremes::io
