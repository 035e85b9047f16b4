#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ddca/data_model.hpp"

namespace ddca {

/// Per-component uniform ranges [lo, hi] for signals drawn under one context.
struct SignalRegime {
  std::vector<std::pair<double, double>> ranges;
};

/// PAMP and Danger high, Safe low.
SignalRegime default_anomalous_regime();
/// PAMP and Danger low, Safe high.
SignalRegime default_normal_regime();

/// Seeded synthetic stream.
///
/// The stream is cut into episodes of `episode_length` ticks; each episode is
/// owned by one antigen type drawn uniformly from 1..types. Antigen rows
/// (exactly round(n * antigen_fraction) of them, at seeded positions) carry the
/// type of their episode. The signal at tick t is drawn from the regime of the
/// episode containing tick t - lag, so context trails its antigen by `lag`.
struct SynthSpec {
  std::size_t n = 1000;
  double antigen_fraction = 0.2;
  std::size_t types = 2;
  std::vector<std::uint64_t> anomalous_types{1};
  SignalRegime anomalous = default_anomalous_regime();
  SignalRegime normal = default_normal_regime();
  std::size_t episode_length = 50;
  std::size_t lag = 0;
  std::uint64_t seed = 1;
};

/// Throws ConfigError on an unsatisfiable spec (fraction outside [0,1],
/// fraction 1 with lag > 0, lag >= episode_length, unknown anomalous type,
/// regimes of different dimensionality).
std::vector<InputEvent> generate_stream(const SynthSpec& spec);

}  // namespace ddca
