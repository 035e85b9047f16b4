#include "ddca/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "ddca/analysis.hpp"
#include "ddca/csv.hpp"
#include "ddca/data_model.hpp"
#include "ddca/errors.hpp"
#include "ddca/estimators.hpp"
#include "ddca/instrumentation.hpp"
#include "ddca/logging.hpp"
#include "ddca/reports.hpp"
#include "ddca/synthetic.hpp"

namespace fs = std::filesystem;

namespace ddca::cli {

LifespanDistribution parse_lifespan(std::string_view text, std::uint64_t seed) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("lifespan must look like arithmetic:<x1>,<step> or gaussian:<mu>,<sigma>");
  }
  const auto kind = text.substr(0, colon);
  const auto params = csv::split(text.substr(colon + 1));
  if (params.size() != 2) throw ConfigError("lifespan needs exactly two parameters");
  const auto p0 = csv::parse_double(params[0]);
  const auto p1 = csv::parse_double(params[1]);
  if (!p0 || !p1) throw ConfigError("lifespan parameters must be numbers");
  if (kind == "arithmetic") return ArithmeticLifespans{*p0, *p1};
  if (kind == "gaussian") return GaussianLifespans{*p0, *p1, seed};
  throw ConfigError("unknown lifespan distribution '" + std::string(kind) + "'");
}

namespace {

struct EngineOptions {
  std::size_t dim = 3;
  std::string weights_path;
  std::size_t population = 100;
  std::string lifespan = "arithmetic:10,1";
  std::string segment = "off";
  double threshold = 0.0;
  bool flush = false;
  std::uint64_t seed = 0;
  bool count_ops = false;
  bool strict_range = false;
  std::vector<std::string> intervals;
  std::string out_dir = ".";
};

void add_engine_options(CLI::App* cmd, EngineOptions& o, CLI::Option*& threshold_opt) {
  cmd->add_option("--signal-dim", o.dim, "Signal dimensionality m")->capture_default_str();
  cmd->add_option("--weights", o.weights_path, "Weight matrix CSV (two rows of m numbers)");
  cmd->add_option("--population-size", o.population, "Number of DCs N")->capture_default_str();
  cmd->add_option("--lifespan", o.lifespan, "arithmetic:<x1>,<step> | gaussian:<mu>,<sigma>")
      ->capture_default_str();
  cmd->add_option("--segment-size", o.segment, "Records per segment, or off")->capture_default_str();
  threshold_opt = cmd->add_option("--threshold", o.threshold, "Anomaly threshold epsilon");
  cmd->add_flag("--flush-at-end", o.flush, "Present remaining antigens once the stream ends");
  cmd->add_option("--seed", o.seed, "Seed for Gaussian lifespans")->capture_default_str();
  cmd->add_flag("--count-ops", o.count_ops, "Also write per-phase operation counts");
  cmd->add_flag("--strict-range", o.strict_range, "Reject signal values outside [0,1]");
  cmd->add_option("--interval", o.intervals, "Estimator interval <tb>:<te> (repeatable)");
  cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
}

std::optional<std::size_t> parse_segment(const std::string& text) {
  if (text == "off") return std::nullopt;
  auto z = csv::parse_int<std::size_t>(text);
  if (!z || *z < 1) throw ConfigError("--segment-size must be a positive integer or off");
  return z;
}

TimeInterval parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("interval must look like <tb>:<te>");
  auto tb = csv::parse_int<std::uint64_t>(std::string_view(text).substr(0, colon));
  auto te = csv::parse_int<std::uint64_t>(std::string_view(text).substr(colon + 1));
  if (!tb || !te) throw ConfigError("interval bounds must be integers: " + text);
  return make_interval(*tb, *te);
}

DetectionConfig make_detection(const EngineOptions& o) {
  DetectionConfig config;
  if (o.dim < 1) throw ConfigError("--signal-dim must be >= 1");
  if (o.population < 1) throw ConfigError("--population-size must be >= 1");
  config.population_size = o.population;
  config.lifespans = parse_lifespan(o.lifespan, o.seed);
  config.weights = o.weights_path.empty() ? default_weights(o.dim) : load_weights(o.weights_path, o.dim);
  config.flush_at_end = o.flush;
  return config;
}

std::ofstream open_output(const fs::path& dir, const char* name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw Error("cannot write " + (dir / name).string());
  return out;
}

void warn_default_threshold(const CLI::Option* threshold_opt) {
  if (threshold_opt->count() == 0) {
    spdlog::warn("no --threshold given; using epsilon = 0, which is dataset-dependent");
  }
}

void write_reports(const fs::path& dir, const EngineState& state, bool flush,
                   const std::optional<AnomalyReport>& whole, const std::vector<SegmentReport>& segments) {
  auto list_out = open_output(dir, "output_list.csv");
  reports::write_output_list(list_out, state.output_list, flush);
  auto report_out = open_output(dir, "report.csv");
  reports::write_report_header(report_out);
  if (whole) reports::write_report_rows(report_out, 0, false, *whole);
  for (const auto& seg : segments) reports::write_report_rows(report_out, seg.index, seg.partial, seg.report);
}

ScalingRow row_from_run(const InstrumentedRun& run, std::size_t n_cells, std::optional<std::size_t> z) {
  ScalingRow row;
  row.n = run.stats.n;
  row.a = run.stats.a;
  row.b = run.stats.b;
  row.n_cells = n_cells;
  row.segment_size = z;
  row.totals = run.totals;
  row.t1_formula = t1_formula(n_cells);
  row.t2_formula = t2_formula(row.n, row.a, n_cells);
  row.t3_bound = z ? t3_segmented_bound(row.a, row.n, *z) : t3_bound(row.a, row.b);
  row.sum_records_times_types = run.sum_records_times_types;
  return row;
}

int cmd_detect(const EngineOptions& o, const std::string& stream_path, const CLI::Option* threshold_opt) {
  warn_default_threshold(threshold_opt);
  const auto config = make_detection(o);
  const auto segment = parse_segment(o.segment);
  const auto parsed = load_stream(stream_path, ParseOptions{o.dim, o.strict_range});
  spdlog::info("stream: n={} a={} b={}", parsed.stats.n, parsed.stats.a, parsed.stats.b);

  const fs::path dir = o.out_dir;
  if (o.count_ops) {
    InstrumentedConfig ic{config, segment, o.threshold};
    auto run = instrumented_run(parsed.events, ic);
    write_reports(dir, run.state, o.flush,
                  segment ? std::nullopt : std::optional<AnomalyReport>(run.whole_run), run.segments);
    auto ops_out = open_output(dir, "instrumentation.csv");
    reports::write_instrumentation_header(ops_out);
    reports::write_instrumentation_row(ops_out, row_from_run(run, config.population_size, segment), std::nullopt);
    std::cout << "records=" << run.state.output_list.size() << " total_ops=" << run.totals.total << '\n';
    return 0;
  }

  auto state = initialise(config.population_size, config.lifespans);
  if (!segment) {
    for (const auto& ev : parsed.events) step(state, ev, config.weights);
    if (config.flush_at_end) flush(state);
    write_reports(dir, state, o.flush, anomaly_metrics(state.output_list, o.threshold), {});
  } else {
    // Segments are analysed on a worker thread while detection proceeds.
    ConcurrentSegmenter segmenter(*segment, o.threshold);
    std::size_t forwarded = 0;
    auto forward = [&] {
      segmenter.push(std::span<const OutputRecord>(state.output_list).subspan(forwarded));
      forwarded = state.output_list.size();
    };
    for (const auto& ev : parsed.events) {
      step(state, ev, config.weights);
      if (state.output_list.size() != forwarded) forward();
    }
    if (config.flush_at_end) {
      flush(state);
      forward();
    }
    auto segments = segmenter.finish();
    write_reports(dir, state, o.flush, std::nullopt, segments);
    std::cout << "segments=" << segments.size() << ' ';
  }
  std::cout << "records=" << state.output_list.size() << '\n';
  return 0;
}

struct GenerateOptions {
  std::size_t n = 1000;
  double fraction = 0.2;
  std::size_t types = 2;
  std::vector<std::uint64_t> anomalous{1};
  std::size_t lag = 0;
  std::size_t episode = 50;
  std::uint64_t seed = 1;
  std::size_t dim = 3;
};

int cmd_generate(const GenerateOptions& g, const std::string& out_path) {
  SynthSpec spec;
  spec.n = g.n;
  spec.antigen_fraction = g.fraction;
  spec.types = g.types;
  spec.anomalous_types = g.anomalous;
  spec.lag = g.lag;
  spec.episode_length = g.episode;
  spec.seed = g.seed;
  if (g.dim != spec.anomalous.ranges.size()) {
    throw ConfigError("the built-in signal regimes are 3-dimensional");
  }
  const auto events = generate_stream(spec);
  save_stream(out_path, events);
  const auto stats = compute_stats(events);
  std::cout << "wrote " << out_path << ": n=" << stats.n << " a=" << stats.a << " b=" << stats.b << '\n';
  return 0;
}

struct ValidateOptions {
  std::vector<std::size_t> scaling_sizes;
  bool antigen_sweep = false;
  std::size_t sweep_max_cells = 10;
  std::uint64_t sweep_max_theta = 50;
};

void estimator_rows(std::ostream& out, const RunTrace& trace, const DetectionConfig& config,
                    TimeInterval interval) {
  const auto csm = csm_window(trace, interval);
  const auto matured = static_cast<std::int64_t>(measure_matured(trace, interval));
  const auto per_tick = matured / static_cast<std::int64_t>(interval.length());
  const std::size_t n_cells = config.population_size;

  if (const auto* arith = std::get_if<ArithmeticLifespans>(&config.lifespans)) {
    const auto est = estimate_matured_uniform(n_cells, *arith, interval, csm);
    reports::write_estimator_row(out, {interval, "matured_uniform", est.interval_total, est.interval_total, matured});
    reports::write_estimator_row(out, {interval, "matured_uniform_per_tick", est.delta, est.delta, per_tick});
  } else {
    const auto& gauss = std::get<GaussianLifespans>(config.lifespans);
    const auto band = estimate_matured_gaussian(n_cells, gauss.mu, gauss.sigma, interval, csm);
    reports::write_estimator_row(out, {interval, "matured_gaussian", band.total_lower, band.total_upper, matured});
    reports::write_estimator_row(out, {interval, "matured_gaussian_per_tick", band.lower, band.upper, per_tick});
  }
  const auto theta = measure_antigens(trace, interval);
  const auto nu = estimate_processed_antigens(n_cells, static_cast<std::uint64_t>(matured), theta);
  reports::write_estimator_row(out, {interval, "processed_antigens", nu.nu, nu.nu,
                                     static_cast<std::int64_t>(measure_processed_antigens(trace, interval))});
}

void run_antigen_sweep(const fs::path& dir, const ValidateOptions& v) {
  auto out = open_output(dir, "antigen_sweep.csv");
  out << "N,delta,theta,case,c,d_mod,formula,simulated,agree\n";
  std::size_t within = 0, within_bad = 0, beyond = 0, beyond_bad = 0;
  for (std::size_t n = 1; n <= v.sweep_max_cells; ++n) {
    for (std::uint64_t delta = 0; delta <= 2 * n; ++delta) {
      for (std::uint64_t theta = 0; theta <= v.sweep_max_theta; ++theta) {
        const auto est = estimate_processed_antigens(n, delta, theta);
        const auto sim = simulate_processed_antigens(n, delta, theta);
        const bool agree = est.nu == static_cast<std::int64_t>(sim);
        (delta <= n ? within : beyond) += 1;
        if (!agree) (delta <= n ? within_bad : beyond_bad) += 1;
        out << n << ',' << delta << ',' << theta << ',' << to_string(est.case_used) << ',' << est.c << ','
            << est.d_mod << ',' << est.nu << ',' << sim << ',' << (agree ? 1 : 0) << '\n';
      }
    }
  }
  std::cout << "antigen sweep: delta<=N mismatches " << within_bad << '/' << within
            << ", delta>N mismatches " << beyond_bad << '/' << beyond << '\n';
}

int cmd_validate(const EngineOptions& o, const ValidateOptions& v, const std::string& stream_path,
                 const CLI::Option* lifespan_opt) {
  if (stream_path.empty() && v.scaling_sizes.empty() && !v.antigen_sweep) {
    throw ConfigError("validate needs a stream, --scaling-sizes or --antigen-sweep");
  }
  const fs::path dir = o.out_dir;
  const auto segment = parse_segment(o.segment);

  if (!stream_path.empty()) {
    const auto config = make_detection(o);
    const auto parsed = load_stream(stream_path, ParseOptions{o.dim, o.strict_range});
    RunTrace trace;
    const auto run = instrumented_run(parsed.events, InstrumentedConfig{config, segment, o.threshold}, &trace);
    auto ops_out = open_output(dir, "instrumentation.csv");
    reports::write_instrumentation_header(ops_out);
    const auto row = row_from_run(run, config.population_size, segment);
    reports::write_instrumentation_row(ops_out, row, std::nullopt);
    std::cout << "t1 " << (row.totals.t1 == row.t1_formula ? "==" : "!=") << " formula, t2 "
              << (row.totals.t2 == row.t2_formula ? "==" : "!=") << " formula, t3 "
              << (row.totals.t3 <= row.t3_bound ? "<=" : ">") << " bound\n";

    auto est_out = open_output(dir, "estimators.csv");
    reports::write_estimator_header(est_out);
    for (const auto& text : o.intervals) estimator_rows(est_out, trace, config, parse_interval(text));
  }

  if (!v.scaling_sizes.empty()) {
    ScalingConfig sc;
    sc.mode = segment ? ScalingMode::segmented : ScalingMode::standard;
    sc.n_cells = o.population;
    if (segment) sc.segment_size = *segment;
    if (lifespan_opt->count() > 0) sc.lifespans = parse_lifespan(o.lifespan, o.seed);
    const auto result = scaling_experiment(v.scaling_sizes, sc);
    auto out = open_output(dir, "scaling.csv");
    reports::write_instrumentation_header(out);
    for (const auto& row : result.rows) reports::write_instrumentation_row(out, row, result.slope);
    std::cout << "scaling slope=" << csv::format_double(result.slope) << '\n';
  }

  if (v.antigen_sweep) run_antigen_sweep(dir, v);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  configure_logging();
  CLI::App app{"Deterministic dendritic cell algorithm: detection, segmentation and runtime validation"};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags take precedence)");
  app.require_subcommand(1);

  EngineOptions detect_opts;
  CLI::Option* detect_threshold = nullptr;
  std::string detect_stream;
  auto* detect = app.add_subcommand("detect", "Run detection and write output list and anomaly report");
  detect->add_option("stream", detect_stream, "Stream CSV")->required();
  add_engine_options(detect, detect_opts, detect_threshold);

  GenerateOptions gen_opts;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic stream");
  generate->add_option("output", gen_out, "Output stream CSV")->required();
  generate->add_option("--n", gen_opts.n, "Number of events")->capture_default_str();
  generate->add_option("--antigen-fraction", gen_opts.fraction, "Fraction of antigen rows")->capture_default_str();
  generate->add_option("--types", gen_opts.types, "Number of antigen types")->capture_default_str();
  generate->add_option("--anomalous", gen_opts.anomalous, "Anomalous antigen types")->delimiter(',');
  generate->add_option("--lag", gen_opts.lag, "Ticks between antigen and its signal context")->capture_default_str();
  generate->add_option("--episode-length", gen_opts.episode, "Ticks per context episode")->capture_default_str();
  generate->add_option("--seed", gen_opts.seed, "Generator seed")->capture_default_str();
  generate->add_option("--signal-dim", gen_opts.dim, "Signal dimensionality")->capture_default_str();

  EngineOptions val_opts;
  ValidateOptions val_extra;
  CLI::Option* val_threshold = nullptr;
  std::string val_stream;
  auto* validate = app.add_subcommand("validate", "Check operation counts and runtime estimators");
  validate->add_option("stream", val_stream, "Stream CSV");
  add_engine_options(validate, val_opts, val_threshold);
  auto* val_lifespan = validate->get_option("--lifespan");
  validate->add_option("--scaling-sizes", val_extra.scaling_sizes, "Sizes n for the worst-case scaling fit")
      ->delimiter(',');
  validate->add_flag("--antigen-sweep", val_extra.antigen_sweep, "Compare the processed-antigen closed form with simulation");
  validate->add_option("--sweep-max-cells", val_extra.sweep_max_cells)->capture_default_str();
  validate->add_option("--sweep-max-theta", val_extra.sweep_max_theta)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*detect) return cmd_detect(detect_opts, detect_stream, detect_threshold);
    if (*generate) return cmd_generate(gen_opts, gen_out);
    if (*validate) return cmd_validate(val_opts, val_extra, val_stream, val_lifespan);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ddca::cli
