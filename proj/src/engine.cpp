#include "ddca/engine.hpp"

#include <cmath>
#include <random>
#include <string>
#include <unordered_set>

#include "ddca/errors.hpp"

namespace ddca {

OutputSignals transform_signal(const WeightMatrix& w, const SignalVector& s) {
  if (s.dim() != w.dim() || w.k_row.size() != w.dim()) {
    throw DimensionError("signal has " + std::to_string(s.dim()) + " components, weights expect " +
                         std::to_string(w.dim()));
  }
  OutputSignals o;
  for (std::size_t j = 0; j < s.dim(); ++j) {
    o.csm += w.csm_row[j] * s.values[j];
    o.k += w.k_row[j] * s.values[j];
  }
  return o;
}

namespace {

std::vector<double> arithmetic_lifespans(std::size_t n, const ArithmeticLifespans& d) {
  if (!std::isfinite(d.x1) || d.x1 <= 0.0) throw ConfigError("arithmetic lifespans need x1 > 0");
  if (!std::isfinite(d.step) || d.step < 0.0) throw ConfigError("arithmetic lifespans need step >= 0");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = d.x1 + static_cast<double>(i) * d.step;
  return out;
}

std::vector<double> gaussian_lifespans(std::size_t n, const GaussianLifespans& d) {
  if (!std::isfinite(d.mu) || d.mu <= 0.0) throw ConfigError("gaussian lifespans need mu > 0");
  if (!std::isfinite(d.sigma) || d.sigma < 0.0) throw ConfigError("gaussian lifespans need sigma >= 0");
  std::vector<double> out;
  out.reserve(n);
  if (d.sigma == 0.0) {
    out.assign(n, d.mu);
    return out;
  }
  std::mt19937_64 rng(d.seed);
  std::normal_distribution<double> normal(d.mu, d.sigma);
  std::unordered_set<double> seen;
  while (out.size() < n) {
    double x = normal(rng);
    if (x <= 0.0 || !seen.insert(x).second) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<double> generate_lifespans(std::size_t n_cells, const LifespanDistribution& dist) {
  return std::visit(
      [n_cells](const auto& d) {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, ArithmeticLifespans>) {
          return arithmetic_lifespans(n_cells, d);
        } else {
          return gaussian_lifespans(n_cells, d);
        }
      },
      dist);
}

EngineState initialise(std::size_t n_cells, const LifespanDistribution& dist, const Observers& obs) {
  if (n_cells == 0) throw ConfigError("population size must be >= 1");
  auto lifespans = generate_lifespans(n_cells, dist);
  EngineState state;
  state.population.reserve(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    DendriticCell cell;
    cell.index = i + 1;
    cell.initial_lifespan = lifespans[i];
    cell.lifespan = lifespans[i];
    state.population.push_back(std::move(cell));
  }
  if (obs.counters) {
    obs.counters->init_loop += n_cells;
    obs.counters->dc_init += n_cells;
  }
  return state;
}

void step(EngineState& state, const InputEvent& event, const WeightMatrix& w, const Observers& obs) {
  if (event.time != state.tick + 1) {
    throw RangeError("event time " + std::to_string(event.time) + " does not follow tick " +
                     std::to_string(state.tick));
  }
  OpCounters* c = obs.counters;
  if (c) ++c->detect_loop;

  if (event.is_antigen()) {
    ++state.theta;
    const std::size_t n = state.population.size();
    auto& cell = state.population[(state.theta - 1) % n];
    cell.antigen_profile.push_back(event.antigen());
    if (c) {
      ++c->antigen_if;
      ++c->select_dc;
      ++c->antigen_update;
    }
    if (obs.trace) {
      obs.trace->csm.push_back(0.0);
      obs.trace->matured.push_back(0);
      obs.trace->records.push_back(0);
      obs.trace->antigen.push_back(1);
    }
    state.tick = event.time;
    return;
  }

  const OutputSignals o = transform_signal(w, event.signal());
  const std::size_t records_before = state.output_list.size();
  std::uint32_t matured = 0;
  for (auto& cell : state.population) {
    if (cell.lifespan <= 0.0) {
      for (const auto& antigen : cell.antigen_profile) {
        state.output_list.push_back(OutputRecord{antigen, cell.signal_profile, false});
      }
      cell.antigen_profile.clear();
      cell.lifespan = cell.initial_lifespan - o.csm;
      cell.signal_profile = o.k;
      ++matured;
    } else {
      cell.lifespan -= o.csm;
      cell.signal_profile += o.k;
    }
  }
  const auto emitted = static_cast<std::uint32_t>(state.output_list.size() - records_before);

  if (c) {
    // Lines 11-15 each run once per cell per signal tick.
    const std::uint64_t n = state.population.size();
    ++c->signal_if;
    ++c->signal_transform;
    c->cell_loop += n;
    c->lifespan_update += n;
    c->profile_update += n;
    c->mature_if += n;
    c->output_record += n;
    c->maturations += matured;
    c->records_emitted += emitted;
  }
  if (obs.trace) {
    obs.trace->csm.push_back(o.csm);
    obs.trace->matured.push_back(matured);
    obs.trace->records.push_back(emitted);
    obs.trace->antigen.push_back(0);
  }
  state.tick = event.time;
}

void flush(EngineState& state) {
  for (auto& cell : state.population) {
    for (const auto& antigen : cell.antigen_profile) {
      state.output_list.push_back(OutputRecord{antigen, cell.signal_profile, true});
    }
    cell.antigen_profile.clear();
    cell.lifespan = cell.initial_lifespan;
    cell.signal_profile = 0.0;
  }
}

EngineState run_detection(std::span<const InputEvent> events, const DetectionConfig& config,
                          const Observers& obs) {
  validate_weights(config.weights, config.weights.dim());
  auto state = initialise(config.population_size, config.lifespans, obs);
  if (obs.trace) {
    obs.trace->csm.reserve(events.size());
    obs.trace->matured.reserve(events.size());
    obs.trace->records.reserve(events.size());
    obs.trace->antigen.reserve(events.size());
  }
  for (const auto& ev : events) step(state, ev, config.weights, obs);
  if (config.flush_at_end) flush(state);
  return state;
}

}  // namespace ddca
