#include "ddca/instrumentation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "ddca/errors.hpp"

namespace ddca {

PhaseTotals phase_totals(const OpCounters& c) {
  PhaseTotals p;
  p.t1 = c.init_loop + c.dc_init;
  p.t2 = c.detect_loop + c.antigen_if + c.select_dc + c.antigen_update + c.signal_if +
         c.signal_transform + c.cell_loop + c.lifespan_update + c.profile_update + c.mature_if +
         c.output_record;
  p.t3 = c.analysis_loop + c.type_loop + c.antigen_counter + c.profile_abstraction + c.metric_calc;
  p.total = p.t1 + p.t2 + p.t3;
  return p;
}

std::uint64_t t1_formula(std::uint64_t n_cells) { return n_cells + n_cells; }

std::uint64_t t2_formula(std::uint64_t n, std::uint64_t a, std::uint64_t n_cells) {
  return n + 3 * a + 2 * (n - a) + 5 * (n - a) * n_cells;
}

std::uint64_t t3_bound(std::uint64_t a, std::uint64_t b) { return a + a * b + 3 * a * b; }

std::uint64_t t3_segmented_bound(std::uint64_t a, std::uint64_t n, std::uint64_t z) {
  const std::uint64_t segments = (n + z - 1) / z;
  return a + 4 * segments * z * z;
}

InstrumentedRun instrumented_run(std::span<const InputEvent> events, const InstrumentedConfig& config,
                                 RunTrace* trace) {
  InstrumentedRun run;
  run.stats = compute_stats(events);
  Observers obs{&run.counters, trace};
  run.state = run_detection(events, config.detection, obs);

  if (config.segment_size) {
    SegmentedAnalyzer analyzer(*config.segment_size, config.epsilon, &run.counters);
    for (const auto& r : run.state.output_list) {
      if (auto seg = analyzer.push(r)) run.segments.push_back(std::move(*seg));
    }
    if (auto seg = analyzer.finish()) run.segments.push_back(std::move(*seg));
    for (const auto& seg : run.segments) {
      run.sum_records_times_types += static_cast<std::uint64_t>(seg.records) * seg.report.size();
    }
  } else {
    run.whole_run = anomaly_metrics(run.state.output_list, config.epsilon, &run.counters);
  }
  run.totals = phase_totals(run.counters);
  return run;
}

AnomalyReport literal_analysis(std::span<const OutputRecord> records, double epsilon,
                               OpCounters* counters) {
  std::set<AntigenType> type_set;
  for (const auto& r : records) type_set.insert(r.antigen);
  const std::vector<AntigenType> types(type_set.begin(), type_set.end());

  std::vector<std::uint64_t> beta(types.size(), 0);
  std::vector<double> gamma(types.size(), 0.0);
  std::vector<double> metric(types.size(), 0.0);
  OpCounters local;
  OpCounters& c = counters ? *counters : local;

  for (const auto& record : records) {
    ++c.analysis_loop;
    for (std::size_t t = 0; t < types.size(); ++t) {
      ++c.type_loop;
      const bool match = record.antigen == types[t];
      ++c.antigen_counter;
      beta[t] += match ? 1 : 0;
      ++c.profile_abstraction;
      gamma[t] += match ? record.profile : 0.0;
      ++c.metric_calc;
      if (beta[t] > 0) metric[t] = gamma[t] / static_cast<double>(beta[t]);
    }
  }

  AnomalyReport report;
  report.entries.reserve(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) {
    report.entries.push_back(AnomalyEntry{types[t], beta[t], gamma[t], metric[t],
                                          metric[t] > epsilon ? Label::anomalous : Label::normal});
  }
  return report;
}

std::vector<InputEvent> worst_case_stream(std::size_t n) {
  std::vector<InputEvent> events;
  events.reserve(n);
  const SignalVector strong{{1.0, 1.0, 1.0}};
  std::uint64_t next_id = 1;
  for (std::size_t t = 1; t <= n; ++t) {
    const bool antigen = t % 2 == 0 && t != n;
    if (antigen) {
      events.push_back(InputEvent{t, AntigenType{next_id++}});
    } else {
      events.push_back(InputEvent{t, strong});
    }
  }
  return events;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs >= 2 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ConfigError("slope fit needs distinct sizes");
  return sxy / sxx;
}

ScalingResult scaling_experiment(std::span<const std::size_t> sizes, const ScalingConfig& config) {
  std::vector<std::size_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 4) throw ConfigError("scaling experiment needs at least 4 distinct sizes");
  if (sorted.front() == 0 || sorted.back() < 100 * sorted.front()) {
    throw ConfigError("scaling sizes must span at least two decades");
  }

  InstrumentedConfig run_config;
  run_config.detection.population_size = config.n_cells;
  run_config.detection.lifespans = config.lifespans;
  run_config.detection.weights = config.weights;
  if (config.mode == ScalingMode::segmented) run_config.segment_size = config.segment_size;

  ScalingResult result;
  std::vector<double> xs, ys;
  for (std::size_t n : sorted) {
    const auto events = config.generator(n);
    const auto start = std::chrono::steady_clock::now();
    const auto run = instrumented_run(events, run_config);
    const auto stop = std::chrono::steady_clock::now();

    ScalingRow row;
    row.n = run.stats.n;
    row.a = run.stats.a;
    row.b = run.stats.b;
    row.n_cells = config.n_cells;
    row.totals = run.totals;
    row.t1_formula = t1_formula(row.n_cells);
    row.t2_formula = t2_formula(row.n, row.a, row.n_cells);
    if (config.mode == ScalingMode::segmented) {
      row.segment_size = config.segment_size;
      row.t3_bound = t3_segmented_bound(row.a, row.n, config.segment_size);
      row.sum_records_times_types = run.sum_records_times_types;
    } else {
      row.t3_bound = t3_bound(row.a, row.b);
    }
    row.seconds = std::chrono::duration<double>(stop - start).count();
    xs.push_back(static_cast<double>(row.n));
    ys.push_back(static_cast<double>(row.totals.total));
    result.rows.push_back(row);
  }
  result.slope = fit_loglog_slope(xs, ys);
  return result;
}

}  // namespace ddca
