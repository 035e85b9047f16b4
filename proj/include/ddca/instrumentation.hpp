#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ddca/analysis.hpp"
#include "ddca/data_model.hpp"
#include "ddca/engine.hpp"
#include "ddca/op_counters.hpp"

namespace ddca {

struct PhaseTotals {
  std::uint64_t t1 = 0;  ///< initialisation
  std::uint64_t t2 = 0;  ///< detection
  std::uint64_t t3 = 0;  ///< analysis
  std::uint64_t total = 0;

  friend bool operator==(const PhaseTotals&, const PhaseTotals&) = default;
};

PhaseTotals phase_totals(const OpCounters& c);

/// Closed forms of the per-phase operation counts.
std::uint64_t t1_formula(std::uint64_t n_cells);                                      // 2N
std::uint64_t t2_formula(std::uint64_t n, std::uint64_t a, std::uint64_t n_cells);   // n + 3a + 2(n-a) + 5(n-a)N
std::uint64_t t3_bound(std::uint64_t a, std::uint64_t b);                            // a + 4ab
/// a + 4 * ceil(n / z) * z^2
std::uint64_t t3_segmented_bound(std::uint64_t a, std::uint64_t n, std::uint64_t z);

struct InstrumentedConfig {
  DetectionConfig detection;
  std::optional<std::size_t> segment_size;  ///< nullopt: whole-run analysis
  double epsilon = 0.0;
};

struct InstrumentedRun {
  EngineState state;
  StreamStats stats;
  OpCounters counters;
  PhaseTotals totals;
  AnomalyReport whole_run;              ///< filled in standard mode
  std::vector<SegmentReport> segments;  ///< filled in segmented mode
  /// Sum over segments of records * distinct types (segmented mode only).
  std::uint64_t sum_records_times_types = 0;
};

InstrumentedRun instrumented_run(std::span<const InputEvent> events, const InstrumentedConfig& config,
                                 RunTrace* trace = nullptr);

/// The analysis phase executed as the reference nested loop: for each record,
/// for each distinct type, evaluate C, R and K. Quadratic; intended for
/// cross-checking the counts charged by anomaly_metrics.
AnomalyReport literal_analysis(std::span<const OutputRecord> records, double epsilon,
                               OpCounters* counters = nullptr);

/// Worst-case analysis load (every antigen a new type, b = a). Tick 1 is a
/// signal, then antigen and signal alternate, and the stream always ends on a
/// signal. With lifespans below 3 every cell matures on every signal tick after
/// the first, so every antigen reaches the output list.
std::vector<InputEvent> worst_case_stream(std::size_t n);

enum class ScalingMode { standard, segmented };

struct ScalingRow {
  std::uint64_t n = 0, a = 0, b = 0, n_cells = 0;
  std::optional<std::uint64_t> segment_size;
  PhaseTotals totals;
  std::uint64_t t1_formula = 0, t2_formula = 0, t3_bound = 0;
  std::uint64_t sum_records_times_types = 0;
  double seconds = 0.0;  ///< wall clock, informational
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double slope = 0.0;  ///< least-squares slope of log(total) against log(n)
};

using StreamGenerator = std::function<std::vector<InputEvent>(std::size_t n)>;

struct ScalingConfig {
  ScalingMode mode = ScalingMode::standard;
  std::size_t n_cells = 100;
  std::size_t segment_size = 100;
  /// Lifespans 1, 1.01, ... keep every cell below the worst-case CSM of 3.
  LifespanDistribution lifespans = ArithmeticLifespans{1.0, 0.01};
  WeightMatrix weights = default_weights();
  StreamGenerator generator = worst_case_stream;
};

/// Needs at least 4 distinct sizes spanning at least two decades.
ScalingResult scaling_experiment(std::span<const std::size_t> sizes, const ScalingConfig& config);

double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace ddca
