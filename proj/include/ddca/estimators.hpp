#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ddca/engine.hpp"

namespace ddca {

/// Inclusive tick range [begin, end], begin >= 1, end > begin.
struct TimeInterval {
  std::uint64_t begin = 1;
  std::uint64_t end = 2;

  /// end - begin: the divisor used by the per-tick estimates.
  std::uint64_t length() const noexcept { return end - begin; }
  /// end - begin + 1: number of ticks covered.
  std::uint64_t ticks() const noexcept { return end - begin + 1; }
};

/// Throws DomainError unless 1 <= begin < end.
TimeInterval make_interval(std::uint64_t begin, std::uint64_t end);

/// Matured-DC estimate under arithmetic lifespans.
///
/// `delta` is floor(N * sum(csm) / ((end - begin) * mu1)), the average number of
/// maturations per tick over the interval. `interval_total` is
/// floor(N * sum(csm) / mu1), the same rate integrated over the interval, which
/// is what an event count over the interval is compared against.
/// Both are clamped at 0.
struct MaturationPoint {
  std::int64_t delta = 0;
  std::int64_t interval_total = 0;
};

/// Matured-DC band under Gaussian lifespans, normalised so lower <= upper.
struct MaturationBand {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::int64_t total_lower = 0;
  std::int64_t total_upper = 0;
  double confidence = 0.95;
};

/// `csm` holds one value per tick of `interval` (interval.ticks() entries).
MaturationPoint estimate_matured_uniform(std::size_t n_cells, const ArithmeticLifespans& lifespans,
                                         TimeInterval interval, std::span<const double> csm);

/// Requires mu > 2 sigma / sqrt(N) so both band denominators are positive.
MaturationBand estimate_matured_gaussian(std::size_t n_cells, double mu, double sigma,
                                         TimeInterval interval, std::span<const double> csm);

enum class SamplingCase { c_less_than_d, c_at_least_d };

const char* to_string(SamplingCase c) noexcept;

struct ProcessedAntigenEstimate {
  std::int64_t nu = 0;
  SamplingCase case_used = SamplingCase::c_at_least_d;
  std::int64_t c = 0;      ///< delta mod N
  std::int64_t d_mod = 0;  ///< theta mod N
};

/// Closed form for the number of antigens presented when `delta` cells,
/// counted from cell 1, mature after `theta` antigens were sampled round-robin.
ProcessedAntigenEstimate estimate_processed_antigens(std::size_t n_cells, std::uint64_t delta,
                                                     std::uint64_t theta);

/// Ground truth for the closed form: runs the engine on a stream that feeds
/// `theta` antigens to N cells with lifespans 1..N, then one signal that drives
/// cells 1..min(delta, N) to nonpositive lifespan and a zero signal that makes them
/// present. Returns the number of records presented on that last tick.
std::uint64_t simulate_processed_antigens(std::size_t n_cells, std::uint64_t delta,
                                          std::uint64_t theta);

/// CSM values of the interval's ticks. Throws RangeError when the interval leaves the run.
std::span<const double> csm_window(const RunTrace& trace, TimeInterval interval);

/// Maturation events (guard firings) with tick in the interval.
std::uint64_t measure_matured(const RunTrace& trace, TimeInterval interval);

/// Output records appended with tick in the interval.
std::uint64_t measure_processed_antigens(const RunTrace& trace, TimeInterval interval);

/// Antigen events with tick in the interval.
std::uint64_t measure_antigens(const RunTrace& trace, TimeInterval interval);

}  // namespace ddca
