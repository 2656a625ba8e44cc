#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "extremes/blocks.hpp"
#include "extremes/bootstrap.hpp"
#include "extremes/changes.hpp"
#include "extremes/fit.hpp"
#include "extremes/io.hpp"
#include "extremes/sensitivity.hpp"
#include "extremes/synth.hpp"

/// JSON and CSV renderings of analysis results. Every JSON document carries
/// "schema": "v1" and a "kind" tag and validates against
/// schemas/report.v1.schema.json. Non-finite numbers are written as null.
namespace extremes::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "v1";

/// Document skeleton {"schema": "v1", "kind": kind}.
Json document(const std::string& kind);

Json to_json(const GevParams& params);
Json to_json(const BootstrapConfig& config);
Json to_json(const SyntheticSpec& spec);

/// One fitted cell, with bootstrap standard errors and envelopes when given.
Json fit_cell(const DailySeries& series, const FitResult& fit, const std::vector<double>& periods,
              const BootstrapResult* boot);

Json return_levels(const GevParams& params, double block_length, const std::vector<double>& periods);

Json change_cell(const ChangeReport& report, const std::optional<BlockRlComparison>& by_block, int compare_block);

Json qq_cell(const std::string& cell_id, const FitResult& fit, const std::vector<io::QqPoint>& points);

Json diagnostic_cell(const BlockDiagnostic& diag, std::size_t n_years,
                     const std::vector<std::pair<double, std::pair<double, double>>>& level_comparison);

Json segment_experiment(const SegmentExperiment& exp);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& doc);

/// Plain CSV tables; floats are written losslessly.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row();
  CsvTable& add(const std::string& text);
  CsvTable& add(double value);
  CsvTable& add(long long value);
  [[nodiscard]] std::string str() const;

 private:
  std::size_t width_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> header_;
};

}  // namespace extremes::report
