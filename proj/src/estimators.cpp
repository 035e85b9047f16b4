#include "ddca/estimators.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ddca/errors.hpp"

namespace ddca {

namespace {

// Floor that tolerates the last-ulp error of a long floating sum landing just
// below an integer.
std::int64_t floor_count(double x) {
  double f = std::floor(x + 1e-9 * std::max(1.0, std::abs(x)));
  return f <= 0.0 ? 0 : static_cast<std::int64_t>(f);
}

double checked_sum(TimeInterval interval, std::span<const double> csm) {
  if (csm.size() != interval.ticks()) {
    throw DomainError("csm series has " + std::to_string(csm.size()) + " values, interval covers " +
                      std::to_string(interval.ticks()) + " ticks");
  }
  return std::accumulate(csm.begin(), csm.end(), 0.0);
}

void check_trace_range(const RunTrace& trace, TimeInterval interval) {
  if (interval.begin < 1 || interval.end <= interval.begin || interval.end > trace.ticks()) {
    throw RangeError("interval [" + std::to_string(interval.begin) + "," +
                     std::to_string(interval.end) + "] outside run of " +
                     std::to_string(trace.ticks()) + " ticks");
  }
}

template <typename T>
std::uint64_t window_sum(const std::vector<T>& series, TimeInterval interval) {
  auto first = series.begin() + static_cast<std::ptrdiff_t>(interval.begin - 1);
  auto last = series.begin() + static_cast<std::ptrdiff_t>(interval.end);
  return std::accumulate(first, last, std::uint64_t{0});
}

}  // namespace

TimeInterval make_interval(std::uint64_t begin, std::uint64_t end) {
  if (begin < 1) throw DomainError("interval start must be >= 1");
  if (end <= begin) throw DomainError("interval end must be greater than its start");
  return TimeInterval{begin, end};
}

MaturationPoint estimate_matured_uniform(std::size_t n_cells, const ArithmeticLifespans& lifespans,
                                         TimeInterval interval, std::span<const double> csm) {
  if (n_cells == 0) throw DomainError("population size must be >= 1");
  if (lifespans.x1 <= 0.0) throw DomainError("x1 must be > 0");
  const double mean_lifespan =
      lifespans.x1 + static_cast<double>(n_cells - 1) * lifespans.step / 2.0;
  if (!(mean_lifespan > 0.0)) throw DomainError("mean lifespan must be > 0");
  const double sum = checked_sum(interval, csm);
  const double n = static_cast<double>(n_cells);
  return MaturationPoint{
      floor_count(n * sum / (static_cast<double>(interval.length()) * mean_lifespan)),
      floor_count(n * sum / mean_lifespan)};
}

MaturationBand estimate_matured_gaussian(std::size_t n_cells, double mu, double sigma,
                                         TimeInterval interval, std::span<const double> csm) {
  if (n_cells == 0) throw DomainError("population size must be >= 1");
  if (sigma < 0.0) throw DomainError("sigma must be >= 0");
  const double n = static_cast<double>(n_cells);
  const double half_width = 2.0 * sigma / std::sqrt(n);
  if (!(mu > half_width)) throw DomainError("mu must exceed 2 sigma / sqrt(N)");
  const double sum = checked_sum(interval, csm);
  const double len = static_cast<double>(interval.length());
  // The larger mean lifespan gives the smaller count.
  MaturationBand band;
  band.lower = floor_count(n * sum / ((mu + half_width) * len));
  band.upper = floor_count(n * sum / ((mu - half_width) * len));
  band.total_lower = floor_count(n * sum / (mu + half_width));
  band.total_upper = floor_count(n * sum / (mu - half_width));
  return band;
}

const char* to_string(SamplingCase c) noexcept {
  return c == SamplingCase::c_less_than_d ? "c<d" : "c>=d";
}

ProcessedAntigenEstimate estimate_processed_antigens(std::size_t n_cells, std::uint64_t delta,
                                                     std::uint64_t theta) {
  if (n_cells == 0) throw DomainError("population size must be >= 1");
  const auto n = static_cast<std::int64_t>(n_cells);
  const auto dl = static_cast<std::int64_t>(delta);
  const auto th = static_cast<std::int64_t>(theta);
  const std::int64_t delta_rounds = dl / n;
  const std::int64_t theta_rounds = th / n;

  ProcessedAntigenEstimate est;
  est.c = dl - n * delta_rounds;
  est.d_mod = th - n * theta_rounds;
  if (est.c < est.d_mod) {
    est.case_used = SamplingCase::c_less_than_d;
    est.nu = (dl - n * delta_rounds) * (1 + theta_rounds);
  } else {
    est.case_used = SamplingCase::c_at_least_d;
    est.nu = (dl - n - n * delta_rounds) * theta_rounds + th;
  }
  return est;
}

std::uint64_t simulate_processed_antigens(std::size_t n_cells, std::uint64_t delta,
                                          std::uint64_t theta) {
  if (n_cells == 0) throw DomainError("population size must be >= 1");
  const std::uint64_t matured = std::min<std::uint64_t>(delta, n_cells);
  // Lifespans 1..N; a CSM of matured + 0.5 leaves exactly cells 1..matured at or below zero.
  const WeightMatrix w{{1.0}, {0.0}};
  auto state = initialise(n_cells, ArithmeticLifespans{1.0, 1.0});
  std::uint64_t t = 0;
  for (std::uint64_t q = 1; q <= theta; ++q) {
    step(state, InputEvent{++t, AntigenType{q}}, w);
  }
  const double drive = matured == 0 ? 0.0 : static_cast<double>(matured) + 0.5;
  step(state, InputEvent{++t, SignalVector{{drive}}}, w);
  const std::size_t before = state.output_list.size();
  step(state, InputEvent{++t, SignalVector{{0.0}}}, w);
  return state.output_list.size() - before;
}

std::span<const double> csm_window(const RunTrace& trace, TimeInterval interval) {
  check_trace_range(trace, interval);
  return std::span<const double>(trace.csm).subspan(interval.begin - 1, interval.ticks());
}

std::uint64_t measure_matured(const RunTrace& trace, TimeInterval interval) {
  check_trace_range(trace, interval);
  return window_sum(trace.matured, interval);
}

std::uint64_t measure_processed_antigens(const RunTrace& trace, TimeInterval interval) {
  check_trace_range(trace, interval);
  return window_sum(trace.records, interval);
}

std::uint64_t measure_antigens(const RunTrace& trace, TimeInterval interval) {
  check_trace_range(trace, interval);
  return window_sum(trace.antigen, interval);
}

}  // namespace ddca
