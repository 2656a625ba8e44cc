#include "extremes/report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace extremes::report {
namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json interval(const Interval& i) { return Json::array({number(i.lower), number(i.upper)}); }

Json parameter_change(const ParameterChange& c) {
  Json j;
  j["delta"] = number(c.delta);
  j["se"] = number(c.se);
  j["p_value"] = number(c.p_value);
  j["degenerate"] = c.degenerate;
  j["mark"] = c.mark;
  return j;
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (const double x : v) a.push_back(number(x));
  return a;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json document(const std::string& kind) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

Json to_json(const GevParams& params) {
  Json j;
  j["mu"] = number(params.mu);
  j["sigma"] = number(params.sigma);
  j["xi"] = number(params.xi);
  j["orientation"] = std::string(to_string(params.orientation));
  return j;
}

Json to_json(const BootstrapConfig& config) {
  Json j;
  j["n_replicates"] = config.n_replicates;
  j["block_length"] = config.block_length;
  j["seed"] = config.seed;
  j["scheme"] = config.scheme == BootstrapScheme::CircularBlock ? "circular_block" : "simple";
  j["envelope_level"] = config.envelope_level;
  return j;
}

Json to_json(const SyntheticSpec& spec) {
  Json j;
  j["cell_id"] = spec.cell_id;
  j["variable"] = std::string(to_string(spec.variable));
  j["n_years"] = spec.n_years;
  j["annual_cycle_mean"] = number(spec.annual_cycle_mean);
  j["annual_cycle_amplitude"] = number(spec.annual_cycle_amplitude);
  j["ar1_phi"] = number(spec.ar1_phi);
  j["noise_sd"] = number(spec.noise_sd);
  j["winter_sd_scale"] = number(spec.winter_sd_scale);
  j["seed"] = spec.seed;
  return j;
}

Json fit_cell(const DailySeries& series, const FitResult& fit, const std::vector<double>& periods,
              const BootstrapResult* boot) {
  Json j;
  j["cell_id"] = series.cell_id;
  j["latitude"] = number(series.latitude);
  j["longitude"] = number(series.longitude);
  j["method"] = std::string(to_string(fit.method));
  j["block_length"] = fit.block_length;
  j["n_obs"] = fit.n_obs;
  j["params"] = to_json(fit.params);
  j["nll"] = number(fit.nll);
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["warnings"] = fit.warnings;

  Json levels = Json::array();
  for (std::size_t i = 0; i < periods.size(); ++i) {
    Json row;
    row["return_period"] = periods[i];
    row["level"] = number(return_level(fit.params, periods[i], fit.block_length));
    if (boot != nullptr) {
      row["se"] = number(boot->se_return_levels[i]);
      row["lower"] = number(boot->env_return_levels[i].lower);
      row["upper"] = number(boot->env_return_levels[i].upper);
    } else {
      row["se"] = nullptr;
      row["lower"] = nullptr;
      row["upper"] = nullptr;
    }
    levels.push_back(row);
  }
  j["return_levels"] = levels;

  if (boot == nullptr) {
    j["bootstrap"] = nullptr;
  } else {
    Json b;
    b["n_succeeded"] = boot->n_succeeded();
    b["n_failed"] = boot->n_failed;
    b["unreliable"] = boot->unreliable;
    b["envelope_level"] = boot->envelope_level;
    b["se_mu"] = number(boot->se_mu);
    b["se_log_sigma"] = number(boot->se_log_sigma);
    b["se_sigma"] = number(boot->se_sigma);
    b["se_xi"] = number(boot->se_xi);
    b["envelope_mu"] = interval(boot->env_mu);
    b["envelope_sigma"] = interval(boot->env_sigma);
    b["envelope_xi"] = interval(boot->env_xi);
    j["bootstrap"] = b;
  }
  return j;
}

Json return_levels(const GevParams& params, double block_length, const std::vector<double>& periods) {
  Json j = document("return_levels");
  j["params"] = to_json(params);
  j["block_length"] = block_length;
  Json levels = Json::array();
  for (const double r : periods) {
    Json row;
    row["return_period"] = r;
    row["level"] = number(return_level(params, r, block_length));
    levels.push_back(row);
  }
  j["levels"] = levels;
  return j;
}

Json change_cell(const ChangeReport& report, const std::optional<BlockRlComparison>& by_block, int compare_block) {
  Json j;
  j["cell_id"] = report.cell_id;
  j["orientation"] = std::string(to_string(report.orientation));
  j["params_a"] = to_json(report.params_a);
  j["params_b"] = to_json(report.params_b);
  j["n_replicate_pairs"] = report.n_replicate_pairs;
  Json changes;
  changes["mu"] = parameter_change(report.mu);
  changes["log_sigma"] = parameter_change(report.log_sigma);
  changes["xi"] = parameter_change(report.xi);
  j["changes"] = changes;

  Json curve = Json::array();
  for (const RlChangePoint& p : report.rl_change_curve) {
    Json row;
    row["return_period"] = p.return_period;
    row["delta"] = number(p.delta);
    row["lower"] = number(p.envelope.lower);
    row["upper"] = number(p.envelope.upper);
    curve.push_back(row);
  }
  j["rl_change_curve"] = curve;

  if (report.seasonal) {
    const LocationShiftDecomposition& d = *report.seasonal;
    Json s;
    s["season"] = report.orientation == Orientation::Maxima ? "JJA" : "DJF";
    s["m1"] = number(d.m1);
    s["s1"] = number(d.s1);
    s["m2"] = number(d.m2);
    s["s2"] = number(d.s2);
    s["predicted_mu2"] = number(d.predicted_mu2);
    s["observed_mu2"] = number(d.observed_mu2);
    s["predicted_delta_mu"] = number(d.predicted_delta_mu);
    s["observed_delta_mu"] = number(d.observed_delta_mu);
    s["delta_m"] = number(d.delta_m);
    s["ratio_mu_over_mean"] = d.ratio_mu_over_mean ? number(*d.ratio_mu_over_mean) : Json(nullptr);
    j["seasonal"] = s;
  } else {
    j["seasonal"] = nullptr;
  }

  if (by_block) {
    Json b;
    b["block_length"] = compare_block;
    Json rows = Json::array();
    for (std::size_t i = 0; i < by_block->periods.size(); ++i) {
      Json row;
      row["return_period"] = by_block->periods[i];
      row["delta_annual"] = number(by_block->delta_annual[i]);
      row["delta_long_block"] = number(by_block->delta_long_block[i]);
      rows.push_back(row);
    }
    b["curve"] = rows;
    j["block_comparison"] = b;
  } else {
    j["block_comparison"] = nullptr;
  }
  return j;
}

Json qq_cell(const std::string& cell_id, const FitResult& fit, const std::vector<io::QqPoint>& points) {
  Json j;
  j["cell_id"] = cell_id;
  j["method"] = std::string(to_string(fit.method));
  j["params"] = to_json(fit.params);
  Json rows = Json::array();
  for (const io::QqPoint& p : points) {
    Json row;
    row["probability"] = p.probability;
    row["empirical"] = number(p.empirical);
    row["fitted"] = number(p.fitted);
    rows.push_back(row);
  }
  j["points"] = rows;
  return j;
}

Json diagnostic_cell(const BlockDiagnostic& diag, std::size_t n_years,
                     const std::vector<std::pair<double, std::pair<double, double>>>& level_comparison) {
  Json j;
  j["cell_id"] = diag.cell_id;
  j["n_years"] = n_years;
  Json xi = Json::array();
  for (const auto& [b, value] : diag.xi_by_block) {
    Json row;
    row["block_length"] = b;
    row["xi"] = number(value);
    xi.push_back(row);
  }
  j["xi_by_block"] = xi;
  j["xi_diff"] = number(diag.xi_diff);
  j["p_value"] = number(diag.p_value);
  j["flagged"] = diag.flagged;
  j["n_replicates"] = diag.n_replicates;
  j["n_failed"] = diag.n_failed;
  j["bootstrap_block_length"] = diag.bootstrap_block_length;
  Json levels = Json::array();
  for (const auto& [r, pair] : level_comparison) {
    Json row;
    row["return_period"] = r;
    row["annual"] = number(pair.first);
    row["long_block"] = number(pair.second);
    levels.push_back(row);
  }
  j["return_level_comparison"] = levels;
  return j;
}

Json segment_experiment(const SegmentExperiment& exp) {
  Json j = document("segment_experiment");
  j["method"] = std::string(to_string(exp.options.method));
  j["orientation"] = std::string(to_string(exp.options.orientation));
  j["segment_years"] = exp.options.segment_years;
  j["n_years"] = exp.n_years;
  j["return_periods"] = exp.options.periods;
  Json truth;
  truth["params_a"] = to_json(exp.truth_a);
  truth["params_b"] = to_json(exp.truth_b);
  truth["delta_rl"] = numbers(exp.truth_delta_rl);
  j["truth"] = truth;
  j["n_pairs"] = exp.pairs.size();
  j["n_failed"] = exp.n_failed;
  Json pairs = Json::array();
  for (const SegmentPair& p : exp.pairs) {
    Json row;
    row["index"] = p.index;
    row["ok"] = p.ok;
    row["error"] = p.ok ? Json(nullptr) : Json(p.error);
    row["params_a"] = p.ok ? to_json(p.params_a) : Json(nullptr);
    row["params_b"] = p.ok ? to_json(p.params_b) : Json(nullptr);
    row["delta_rl"] = numbers(p.delta_rl);
    pairs.push_back(row);
  }
  j["pairs"] = pairs;
  Json summary = Json::array();
  for (std::size_t i = 0; i < exp.summary.size(); ++i) {
    const ErrorSummary& s = exp.summary[i];
    Json row;
    row["return_period"] = exp.options.periods[i];
    row["n"] = s.n;
    row["mean"] = number(s.mean);
    row["sd"] = number(s.sd);
    row["min"] = number(s.min);
    row["q25"] = number(s.q25);
    row["median"] = number(s.median);
    row["q75"] = number(s.q75);
    row["max"] = number(s.max);
    summary.push_back(row);
  }
  j["error_summary"] = summary;
  return j;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()), header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  if (!rows_.empty() && rows_.back().size() != width_) throw std::logic_error("incomplete CSV row");
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(const std::string& text) {
  if (rows_.empty() || rows_.back().size() == width_) throw std::logic_error("CSV row overflow");
  rows_.back().push_back(quote_csv(text));
  return *this;
}

CsvTable& CsvTable::add(double value) { return add(io::format_double(value)); }

CsvTable& CsvTable::add(long long value) { return add(std::to_string(value)); }

std::string CsvTable::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace extremes::report
