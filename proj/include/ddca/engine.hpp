#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ddca/data_model.hpp"
#include "ddca/op_counters.hpp"

namespace ddca {

/// CSM decides when a cell matures, K decides its polarity.
struct OutputSignals {
  double csm = 0.0;
  double k = 0.0;

  friend bool operator==(const OutputSignals&, const OutputSignals&) = default;
};

/// csm = <csm_row, s>, k = <k_row, s>. Throws DimensionError on arity mismatch.
OutputSignals transform_signal(const WeightMatrix& w, const SignalVector& s);

/// x_i = x1 + (i - 1) * step for cell i.
struct ArithmeticLifespans {
  double x1 = 10.0;
  double step = 1.0;
};

/// Draws from N(mu, sigma^2); nonpositive draws and duplicates are redrawn.
struct GaussianLifespans {
  double mu = 20.0;
  double sigma = 2.0;
  std::uint64_t seed = 0;
};

using LifespanDistribution = std::variant<ArithmeticLifespans, GaussianLifespans>;

/// Initial lifespans for cells 1..n_cells. Deterministic for a given distribution.
std::vector<double> generate_lifespans(std::size_t n_cells, const LifespanDistribution& dist);

struct DendriticCell {
  std::size_t index = 0;          ///< 1-based
  double initial_lifespan = 0.0;  ///< restored on every reset
  double lifespan = 0.0;
  double signal_profile = 0.0;
  std::vector<AntigenType> antigen_profile;
};

struct OutputRecord {
  AntigenType antigen;
  double profile = 0.0;
  /// Emitted by the optional end-of-stream pass rather than by maturation.
  bool flushed = false;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

struct EngineState {
  std::vector<DendriticCell> population;
  std::uint64_t theta = 0;  ///< antigen events consumed
  std::vector<OutputRecord> output_list;
  std::uint64_t tick = 0;
};

/// Per-tick observations used by the runtime estimators. Index t - 1 holds tick t.
struct RunTrace {
  std::vector<double> csm;              ///< CSM output of the tick, 0 on antigen ticks
  std::vector<std::uint32_t> matured;   ///< guard firings during the tick
  std::vector<std::uint32_t> records;   ///< output records appended during the tick
  std::vector<std::uint8_t> antigen;    ///< 1 when the tick carried an antigen

  std::size_t ticks() const noexcept { return csm.size(); }
};

/// Optional instrumentation hooked into initialise/step. Null members are skipped.
struct Observers {
  OpCounters* counters = nullptr;
  RunTrace* trace = nullptr;
};

EngineState initialise(std::size_t n_cells, const LifespanDistribution& dist,
                       const Observers& obs = {});

/// Consumes the event at tick state.tick + 1.
///
/// Antigen: appended to cell ((theta - 1) mod N) + 1 after theta is incremented.
/// Signal: O = transform_signal(w, s) once, then for each cell in index order:
/// if its lifespan from the previous update is <= 0 it presents one record per
/// sampled antigen carrying its current profile and resets to
/// (initial - O.csm, O.k, no antigens); otherwise lifespan -= O.csm, profile += O.k.
void step(EngineState& state, const InputEvent& event, const WeightMatrix& w,
          const Observers& obs = {});

/// Presents every remaining antigen profile with the cell's current signal profile.
/// Records are marked flushed; cells are reset to (initial, 0).
void flush(EngineState& state);

struct DetectionConfig {
  std::size_t population_size = 100;
  LifespanDistribution lifespans = ArithmeticLifespans{};
  WeightMatrix weights = default_weights();
  bool flush_at_end = false;
};

/// initialise + step over all events (+ flush when configured).
EngineState run_detection(std::span<const InputEvent> events, const DetectionConfig& config,
                          const Observers& obs = {});

}  // namespace ddca
