#include "ddca/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "ddca/errors.hpp"

namespace ddca {

SignalRegime default_anomalous_regime() { return SignalRegime{{{0.6, 1.0}, {0.6, 1.0}, {0.0, 0.2}}}; }

SignalRegime default_normal_regime() { return SignalRegime{{{0.0, 0.2}, {0.0, 0.3}, {0.6, 1.0}}}; }

namespace {

void validate(const SynthSpec& spec) {
  if (!(spec.antigen_fraction >= 0.0 && spec.antigen_fraction <= 1.0)) {
    throw ConfigError("antigen fraction must lie in [0,1]");
  }
  if (spec.antigen_fraction == 1.0 && spec.lag > 0) {
    throw ConfigError("an all-antigen stream has no signals to lag behind its antigens");
  }
  if (spec.episode_length == 0) throw ConfigError("episode length must be >= 1");
  if (spec.lag >= spec.episode_length) {
    throw ConfigError("lag must be shorter than the episode length");
  }
  if (spec.types == 0 && spec.antigen_fraction > 0.0) throw ConfigError("need at least one antigen type");
  for (auto id : spec.anomalous_types) {
    if (id < 1 || id > spec.types) {
      throw ConfigError("anomalous type " + std::to_string(id) + " not in 1.." + std::to_string(spec.types));
    }
  }
  const auto dim = spec.anomalous.ranges.size();
  if (dim == 0 || spec.normal.ranges.size() != dim) {
    throw ConfigError("anomalous and normal regimes need the same nonzero dimensionality");
  }
  for (const auto* regime : {&spec.anomalous, &spec.normal}) {
    for (auto [lo, hi] : regime->ranges) {
      if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) throw ConfigError("bad regime range");
    }
  }
}

}  // namespace

std::vector<InputEvent> generate_stream(const SynthSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);

  const std::size_t episodes = (spec.n + spec.episode_length - 1) / spec.episode_length;
  std::vector<std::uint64_t> episode_type(episodes, 1);
  if (spec.types > 0) {
    std::uniform_int_distribution<std::uint64_t> pick(1, spec.types);
    for (auto& t : episode_type) t = pick(rng);
  }

  // Partial Fisher-Yates: the first `antigens` slots become antigen ticks.
  const auto antigens = static_cast<std::size_t>(std::llround(spec.antigen_fraction * static_cast<double>(spec.n)));
  std::vector<std::size_t> ticks(spec.n);
  std::iota(ticks.begin(), ticks.end(), std::size_t{1});
  for (std::size_t i = 0; i < antigens; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, spec.n - 1);
    std::swap(ticks[i], ticks[pick(rng)]);
  }
  std::vector<bool> is_antigen(spec.n + 1, false);
  for (std::size_t i = 0; i < antigens; ++i) is_antigen[ticks[i]] = true;

  auto type_at = [&](std::size_t t) { return episode_type[(t - 1) / spec.episode_length]; };
  auto anomalous = [&](std::uint64_t type) {
    return std::find(spec.anomalous_types.begin(), spec.anomalous_types.end(), type) !=
           spec.anomalous_types.end();
  };

  std::vector<InputEvent> events;
  events.reserve(spec.n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t t = 1; t <= spec.n; ++t) {
    if (is_antigen[t]) {
      events.push_back(InputEvent{t, AntigenType{type_at(t)}});
      continue;
    }
    const std::size_t cause = t > spec.lag ? t - spec.lag : 1;
    const auto& regime = anomalous(type_at(cause)) ? spec.anomalous : spec.normal;
    SignalVector s;
    s.values.reserve(regime.ranges.size());
    for (auto [lo, hi] : regime.ranges) s.values.push_back(lo + (hi - lo) * unit(rng));
    events.push_back(InputEvent{t, std::move(s)});
  }
  return events;
}

}  // namespace ddca
