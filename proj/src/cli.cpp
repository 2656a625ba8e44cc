#include "extremes/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "extremes/blocks.hpp"
#include "extremes/bootstrap.hpp"
#include "extremes/changes.hpp"
#include "extremes/fit.hpp"
#include "extremes/io.hpp"
#include "extremes/report.hpp"
#include "extremes/sensitivity.hpp"
#include "extremes/synth.hpp"

namespace extremes::cli {
namespace {

namespace fs = std::filesystem;
using report::CsvTable;
using report::Json;

struct Settings {
  std::uint64_t seed = 0;
  std::size_t bootstrap = 0;
  std::size_t block_boot_b = 1;
  std::string method = "ml";
  std::string extreme = "warm";
  unsigned threads = 1;
  std::vector<double> periods;
  std::string out;
  std::string csv;
  std::string input;
  std::string manifest;
  std::string input_a;
  std::string input_b;
  int block_length = 1;
};

FitMethod method_of(const Settings& s) { return s.method == "pwm" ? FitMethod::PWM : FitMethod::ML; }

Orientation orientation_of(const Settings& s) {
  return s.extreme == "cold" ? Orientation::Minima : Orientation::Maxima;
}

BootstrapConfig bootstrap_of(const Settings& s) {
  BootstrapConfig c;
  c.n_replicates = s.bootstrap;
  c.block_length = s.block_boot_b;
  c.seed = s.seed;
  c.threads = s.threads;
  return c;
}

void add_method(CLI::App* cmd, Settings& s) {
  cmd->add_option("--method", s.method, "Estimator")->check(CLI::IsMember({"ml", "pwm"}))->capture_default_str();
}

void add_extreme(CLI::App* cmd, Settings& s) {
  cmd->add_option("--extreme", s.extreme, "warm: annual maxima of Tmax; cold: July-June minima of Tmin")
      ->check(CLI::IsMember({"warm", "cold"}))
      ->capture_default_str();
}

void add_seed_threads(CLI::App* cmd, Settings& s) {
  cmd->add_option("--seed", s.seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", s.threads, "Worker threads (0 = all cores); results do not depend on it")
      ->capture_default_str();
}

void add_outputs(CLI::App* cmd, Settings& s) {
  cmd->add_option("--out", s.out, "JSON report path (default: stdout)");
  cmd->add_option("--csv", s.csv, "CSV output path");
}

void add_periods(CLI::App* cmd, Settings& s, std::vector<double> defaults) {
  s.periods = std::move(defaults);
  cmd->add_option("--periods", s.periods, "Return periods in years")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_cell_inputs(CLI::App* cmd, Settings& s) {
  auto* group = cmd->add_option_group("input", "Cells to analyse");
  group->add_option("--input", s.input, "Daily CSV (year,day,value)")->check(CLI::ExistingFile);
  group->add_option("--manifest", s.manifest, "Manifest of grid cells")->check(CLI::ExistingFile);
  group->require_option(1);
}

/// Cells named by --input or --manifest. A bare CSV is labelled by its file
/// stem and takes the variable implied by --extreme.
std::vector<DailySeries> load_cells(const Settings& s) {
  std::vector<DailySeries> cells;
  if (!s.manifest.empty()) {
    for (const io::CellRecord& rec : io::read_manifest(s.manifest)) cells.push_back(io::load_cell(rec));
  } else {
    cells.push_back(io::read_daily_csv(s.input));
    cells.back().variable = orientation_of(s) == Orientation::Maxima ? Variable::Tmax : Variable::Tmin;
  }
  return cells;
}

/// Cells of one climate state: a manifest (.json) or a single daily CSV.
std::vector<DailySeries> load_state(const std::string& path, const Settings& s) {
  Settings one = s;
  one.input.clear();
  one.manifest.clear();
  (fs::path(path).extension() == ".json" ? one.manifest : one.input) = path;
  return load_cells(one);
}

void require_periods_above(const std::vector<double>& periods, double block) {
  for (const double r : periods) {
    if (!(r > block)) {
      throw std::invalid_argument("return period " + io::format_double(r) + " must exceed the block length " +
                                  io::format_double(block));
    }
  }
}

void emit(const Settings& s, const Json& doc, const std::optional<CsvTable>& csv, std::ostream& out) {
  const std::string text = report::dump(doc);
  if (s.out.empty()) {
    out << text;
  } else {
    io::write_file_atomic(s.out, text);
  }
  if (!s.csv.empty() && csv) io::write_file_atomic(s.csv, csv->str());
}

Json header(const std::string& kind, const Settings& s) {
  Json doc = report::document(kind);
  doc["method"] = s.method;
  doc["extreme"] = s.extreme;
  return doc;
}

BlockExtremes cell_extremes(const DailySeries& series, const Settings& s) {
  BlockExtremes annual = annual_extremes(series, orientation_of(s));
  return s.block_length == 1 ? annual : multi_year_extremes(annual, s.block_length);
}

void run_fit(const Settings& s, std::ostream& out) {
  require_periods_above(s.periods, s.block_length);
  Json doc = header("fit", s);
  doc["block_length"] = s.block_length;
  doc["bootstrap"] = s.bootstrap > 0 ? report::to_json(bootstrap_of(s)) : Json(nullptr);
  CsvTable csv({"cell_id", "mu", "sigma", "xi", "n_obs", "return_period", "level", "se", "lower", "upper"});
  Json cells = Json::array();
  for (const DailySeries& series : load_cells(s)) {
    const BlockExtremes extremes = cell_extremes(series, s);
    const FitResult result = fit(extremes, method_of(s));
    std::optional<BootstrapResult> boot;
    if (s.bootstrap > 0) boot = bootstrap_fit(extremes, bootstrap_of(s), method_of(s), s.periods, result.params);
    cells.push_back(report::fit_cell(series, result, s.periods, boot ? &*boot : nullptr));
    for (std::size_t i = 0; i < s.periods.size(); ++i) {
      csv.row().add(series.cell_id).add(result.params.mu).add(result.params.sigma).add(result.params.xi);
      csv.add(static_cast<long long>(result.n_obs)).add(s.periods[i]);
      csv.add(return_level(result.params, s.periods[i], s.block_length));
      const double nan = std::numeric_limits<double>::quiet_NaN();
      csv.add(boot ? boot->se_return_levels[i] : nan);
      csv.add(boot ? boot->env_return_levels[i].lower : nan).add(boot ? boot->env_return_levels[i].upper : nan);
    }
  }
  doc["cells"] = cells;
  emit(s, doc, csv, out);
}

void run_return_levels(const Settings& s, const std::vector<double>& params, const std::string& orientation,
                       std::ostream& out) {
  require_periods_above(s.periods, s.block_length);
  GevParams p;
  if (!params.empty()) {
    if (params.size() != 3) throw std::invalid_argument("--params expects mu,sigma,xi");
    p = {params[0], params[1], params[2],
         orientation.empty() ? orientation_of(s)
                             : (orientation.rfind("min", 0) == 0 ? Orientation::Minima : Orientation::Maxima)};
    validate(p);
  } else {
    const std::vector<DailySeries> cells = load_cells(s);
    if (cells.size() != 1) throw std::invalid_argument("return-levels fits exactly one cell");
    p = fit(cell_extremes(cells.front(), s), method_of(s)).params;
  }
  const Json doc = report::return_levels(p, s.block_length, s.periods);
  CsvTable csv({"return_period", "level"});
  for (const double r : s.periods) csv.row().add(r).add(return_level(p, r, s.block_length));
  emit(s, doc, csv, out);
}

void run_change(const Settings& s, int compare_block, std::ostream& out) {
  const std::vector<DailySeries> cells_a = load_state(s.input_a, s);
  const std::vector<DailySeries> cells_b = load_state(s.input_b, s);
  const bool single = cells_a.size() == 1 && cells_b.size() == 1;
  ChangeOptions options;
  options.orientation = orientation_of(s);
  options.method = method_of(s);
  options.bootstrap = bootstrap_of(s);
  options.periods = s.periods;
  std::vector<double> block_periods;
  if (compare_block > 1) {
    std::copy_if(s.periods.begin(), s.periods.end(), std::back_inserter(block_periods),
                 [&](double r) { return r > compare_block; });
  }

  Json doc = header("change", s);
  doc["bootstrap"] = report::to_json(options.bootstrap);
  Json cells = Json::array();
  CsvTable csv({"cell_id", "return_period", "delta", "lower", "upper"});
  for (const DailySeries& a : cells_a) {
    const DailySeries* b = nullptr;
    if (single) {
      b = &cells_b.front();
    } else {
      const auto it = std::find_if(cells_b.begin(), cells_b.end(), [&](const DailySeries& c) {
        return c.cell_id == a.cell_id;
      });
      if (it == cells_b.end()) throw std::invalid_argument("cell '" + a.cell_id + "' missing from state B");
      b = &*it;
    }
    const ChangeReport rep = analyze_change({a.cell_id, a, *b}, options);
    std::optional<BlockRlComparison> by_block;
    if (compare_block > 1) {
      const BlockExtremes ea = annual_extremes(a, options.orientation);
      const BlockExtremes eb = annual_extremes(*b, options.orientation);
      by_block = rl_change_by_block(fit(ea, options.method), fit(eb, options.method),
                                    fit(multi_year_extremes(ea, compare_block), options.method),
                                    fit(multi_year_extremes(eb, compare_block), options.method), block_periods);
    }
    cells.push_back(report::change_cell(rep, by_block, compare_block));
    for (const RlChangePoint& p : rep.rl_change_curve) {
      csv.row().add(rep.cell_id).add(p.return_period).add(p.delta).add(p.envelope.lower).add(p.envelope.upper);
    }
  }
  doc["cells"] = cells;
  emit(s, doc, csv, out);
}

void run_qq(const Settings& s, std::ostream& out) {
  Json doc = header("qq", s);
  doc["block_length"] = s.block_length;
  Json cells = Json::array();
  CsvTable csv({"cell_id", "probability", "empirical", "fitted"});
  for (const DailySeries& series : load_cells(s)) {
    const BlockExtremes extremes = cell_extremes(series, s);
    const FitResult result = fit(extremes, method_of(s));
    const std::vector<io::QqPoint> points = io::qq_pairs(extremes, result.params);
    cells.push_back(report::qq_cell(series.cell_id, result, points));
    for (const io::QqPoint& p : points) csv.row().add(series.cell_id).add(p.probability).add(p.empirical).add(p.fitted);
  }
  doc["cells"] = cells;
  emit(s, doc, csv, out);
}

void run_block_diagnostic(const Settings& s, const std::vector<int>& blocks, double level, std::ostream& out) {
  BlockDiagnosticConfig config;
  config.block_lengths = blocks;
  config.n_replicates = s.bootstrap;
  config.seed = s.seed;
  config.method = method_of(s);
  config.significance_level = level;
  config.threads = s.threads;
  const int longest = *std::max_element(blocks.begin(), blocks.end());
  require_periods_above(s.periods, longest);

  Json doc = header("block_diagnostic", s);
  doc["block_lengths"] = blocks;
  doc["n_replicates"] = config.n_replicates;
  doc["seed"] = config.seed;
  doc["significance_level"] = level;
  Json cells = Json::array();
  CsvTable csv({"cell_id", "block_length", "xi", "xi_diff", "p_value", "flagged"});
  for (const DailySeries& series : load_cells(s)) {
    const BlockExtremes annual = annual_extremes(series, orientation_of(s));
    BlockDiagnostic diag = block_size_diagnostic(annual, config);
    diag.cell_id = series.cell_id;
    const FitResult annual_fit = fit(annual, config.method);
    const FitResult long_fit = fit(multi_year_extremes(annual, longest), config.method);
    std::vector<std::pair<double, std::pair<double, double>>> levels;
    for (const double r : s.periods) {
      levels.push_back({r, {block_return_level(annual_fit, r), block_return_level(long_fit, r)}});
    }
    cells.push_back(report::diagnostic_cell(diag, annual.n_blocks(), levels));
    for (const auto& [b, xi] : diag.xi_by_block) {
      csv.row().add(series.cell_id).add(static_cast<long long>(b)).add(xi).add(diag.xi_diff).add(diag.p_value);
      csv.add(std::string(diag.flagged ? "true" : "false"));
    }
  }
  doc["cells"] = cells;
  emit(s, doc, csv, out);
}

void run_segment_experiment(const Settings& s, std::size_t segment_years, std::ostream& out) {
  const std::vector<DailySeries> a = load_state(s.input_a, s);
  const std::vector<DailySeries> b = load_state(s.input_b, s);
  if (a.size() != 1 || b.size() != 1) throw std::invalid_argument("segment-experiment takes one cell per state");
  SegmentOptions options;
  options.segment_years = segment_years;
  options.periods = s.periods;
  options.method = method_of(s);
  options.orientation = orientation_of(s);
  options.threads = s.threads;
  const SegmentExperiment exp = segment_experiment(a.front(), b.front(), options);
  Json doc = report::segment_experiment(exp);
  doc["extreme"] = s.extreme;
  CsvTable csv({"pair", "return_period", "estimate", "truth", "error"});
  for (const SegmentPair& p : exp.pairs) {
    for (std::size_t j = 0; j < options.periods.size(); ++j) {
      csv.row().add(static_cast<long long>(p.index)).add(options.periods[j]).add(p.delta_rl[j]);
      csv.add(exp.truth_delta_rl[j]).add(p.delta_rl[j] - exp.truth_delta_rl[j]);
    }
  }
  emit(s, doc, csv, out);
}

struct SimulateArgs {
  SyntheticSpec spec;
  std::string variable = "tmax";
  std::string csv_b;
  double delta_mean = 0.0;
  double winter_ratio = 1.0;
};

void run_simulate(const Settings& s, SimulateArgs args, std::ostream& out) {
  args.spec.seed = s.seed;
  args.spec.variable = io::parse_variable(args.variable);
  Json doc = report::document("simulate");
  Json states = Json::array();
  auto write_state = [&](const SyntheticSpec& spec, const std::string& label, const std::string& path) {
    const DailySeries series = generate_daily(spec);
    std::ostringstream text;
    io::write_daily_csv(text, series);
    io::write_file_atomic(path, text.str());
    Json st;
    st["label"] = label;
    st["spec"] = report::to_json(spec);
    st["n_days"] = series.values.size();
    states.push_back(st);
  };
  write_state(args.spec, "a", s.csv);
  if (!args.csv_b.empty()) write_state(state_b_spec(args.spec, args.delta_mean, args.winter_ratio), "b", args.csv_b);
  doc["states"] = states;
  Settings json_only = s;
  json_only.csv.clear();
  emit(json_only, doc, std::nullopt, out);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-extrema GEV analysis of daily temperature series", "extremes"};
  app.require_subcommand(1);
  Settings s;

  auto* fit_cmd = app.add_subcommand("fit", "Fit a GEV to each cell's annual extremes");
  add_cell_inputs(fit_cmd, s);
  add_method(fit_cmd, s);
  add_extreme(fit_cmd, s);
  add_seed_threads(fit_cmd, s);
  add_outputs(fit_cmd, s);
  add_periods(fit_cmd, s, {20.0, 50.0, 100.0});
  fit_cmd->add_option("--block-length", s.block_length, "GEV block length in years")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--bootstrap", s.bootstrap, "Bootstrap replicates (0 = none)");
  fit_cmd->add_option("--block-boot-b", s.block_boot_b, "Bootstrap block length in years")
      ->check(CLI::IsMember({1, 2, 5, 10}));

  auto* rl_cmd = app.add_subcommand("return-levels", "Return levels from parameters or a fitted cell");
  std::vector<double> params;
  std::string orientation;
  rl_cmd->add_option("--params", params, "mu,sigma,xi")->delimiter(',')->expected(3);
  rl_cmd->add_option("--orientation", orientation, "Tail of the parameters")
      ->check(CLI::IsMember({"max", "min", "maxima", "minima"}));
  rl_cmd->add_option("--input", s.input, "Daily CSV to fit instead of --params")->check(CLI::ExistingFile);
  add_method(rl_cmd, s);
  add_extreme(rl_cmd, s);
  add_outputs(rl_cmd, s);
  add_periods(rl_cmd, s, default_period_grid());
  rl_cmd->add_option("--block-length", s.block_length, "GEV block length in years")->check(CLI::PositiveNumber);

  auto* change_cmd = app.add_subcommand("change", "Compare two climate states cell by cell");
  int compare_block = 0;
  change_cmd->add_option("--a", s.input_a, "State A manifest (.json) or daily CSV")->required()->check(CLI::ExistingFile);
  change_cmd->add_option("--b", s.input_b, "State B manifest (.json) or daily CSV")->required()->check(CLI::ExistingFile);
  add_method(change_cmd, s);
  add_extreme(change_cmd, s);
  add_seed_threads(change_cmd, s);
  add_outputs(change_cmd, s);
  add_periods(change_cmd, s, default_period_grid());
  change_cmd->add_option("--bootstrap", s.bootstrap, "Bootstrap replicates per state")->check(CLI::PositiveNumber);
  change_cmd->add_option("--block-boot-b", s.block_boot_b, "Bootstrap block length in years")
      ->check(CLI::IsMember({1, 2, 5, 10}));
  change_cmd->add_option("--compare-block", compare_block, "Also report changes from fits at this block length");

  auto* qq_cmd = app.add_subcommand("qq", "Empirical vs fitted quantiles");
  add_cell_inputs(qq_cmd, s);
  add_method(qq_cmd, s);
  add_extreme(qq_cmd, s);
  add_outputs(qq_cmd, s);
  qq_cmd->add_option("--block-length", s.block_length, "GEV block length in years")->check(CLI::PositiveNumber);

  auto* diag_cmd = app.add_subcommand("block-diagnostic", "Shape consistency across block lengths");
  std::vector<int> blocks{1, 2, 5, 10};
  double level = 0.05;
  add_cell_inputs(diag_cmd, s);
  add_method(diag_cmd, s);
  add_extreme(diag_cmd, s);
  add_seed_threads(diag_cmd, s);
  add_outputs(diag_cmd, s);
  add_periods(diag_cmd, s, {20.0, 50.0, 100.0, 200.0, 500.0, 1000.0});
  diag_cmd->add_option("--bootstrap", s.bootstrap, "Bootstrap replicates")->check(CLI::PositiveNumber);
  diag_cmd->add_option("--blocks", blocks, "Block lengths; the last is compared with the first")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  diag_cmd->add_option("--level", level, "Significance level")->check(CLI::Range(0.0, 1.0))->capture_default_str();

  auto* seg_cmd = app.add_subcommand("segment-experiment", "Sampling error of return-level changes from short segments");
  std::size_t segment_years = 20;
  seg_cmd->add_option("--a", s.input_a, "State A daily CSV")->required()->check(CLI::ExistingFile);
  seg_cmd->add_option("--b", s.input_b, "State B daily CSV")->required()->check(CLI::ExistingFile);
  seg_cmd->add_option("--L", segment_years, "Segment length in years")
      ->check(CLI::IsMember({20, 50}))
      ->capture_default_str();
  add_method(seg_cmd, s);
  add_extreme(seg_cmd, s);
  add_seed_threads(seg_cmd, s);
  add_outputs(seg_cmd, s);
  add_periods(seg_cmd, s, {20.0, 50.0, 100.0});

  auto* sim_cmd = app.add_subcommand("simulate", "Write synthetic daily series");
  SimulateArgs sim;
  sim_cmd->add_option("--years", sim.spec.n_years, "Years to simulate")->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_option("--mean", sim.spec.annual_cycle_mean, "Annual-cycle mean")->capture_default_str();
  sim_cmd->add_option("--amplitude", sim.spec.annual_cycle_amplitude, "Annual-cycle amplitude")->capture_default_str();
  sim_cmd->add_option("--phi", sim.spec.ar1_phi, "AR(1) coefficient")->capture_default_str();
  sim_cmd->add_option("--noise-sd", sim.spec.noise_sd, "Innovation SD")->capture_default_str();
  sim_cmd->add_option("--winter-scale", sim.spec.winter_sd_scale, "DJF innovation multiplier")->capture_default_str();
  sim_cmd->add_option("--variable", sim.variable, "tmax or tmin")->check(CLI::IsMember({"tmax", "tmin"}));
  sim_cmd->add_option("--cell-id", sim.spec.cell_id, "Cell identifier")->capture_default_str();
  sim_cmd->add_option("--csv", s.csv, "State A daily CSV path")->required();
  auto* csv_b = sim_cmd->add_option("--csv-b", sim.csv_b, "State B daily CSV path");
  sim_cmd->add_option("--delta-mean", sim.delta_mean, "State B mean shift")->needs(csv_b);
  sim_cmd->add_option("--winter-ratio", sim.winter_ratio, "State B DJF innovation ratio")->needs(csv_b);
  sim_cmd->add_option("--seed", s.seed, "Seed")->capture_default_str();
  sim_cmd->add_option("--out", s.out, "JSON summary path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (change_cmd->parsed() && s.bootstrap == 0) s.bootstrap = 1000;
  if (diag_cmd->parsed() && s.bootstrap == 0) s.bootstrap = 500;

  try {
    if (fit_cmd->parsed()) {
      run_fit(s, out);
    } else if (rl_cmd->parsed()) {
      if (params.empty() == s.input.empty()) throw std::invalid_argument("give exactly one of --params or --input");
      run_return_levels(s, params, orientation, out);
    } else if (change_cmd->parsed()) {
      run_change(s, compare_block, out);
    } else if (qq_cmd->parsed()) {
      run_qq(s, out);
    } else if (diag_cmd->parsed()) {
      run_block_diagnostic(s, blocks, level, out);
    } else if (seg_cmd->parsed()) {
      run_segment_experiment(s, segment_years, out);
    } else if (sim_cmd->parsed()) {
      run_simulate(s, sim, out);
    }
  } catch (const std::exception& e) {
    err << "extremes: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace extremes::cli
