// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs one criterion.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddca/analysis.hpp"
#include "ddca/engine.hpp"
#include "ddca/estimators.hpp"
#include "ddca/instrumentation.hpp"
#include "ddca/synthetic.hpp"
#include "support/oracles.hpp"

using namespace ddca;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr std::uint64_t kSeed = 20261014;

bool close_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(1.0, std::abs(want));
}

// Stream of `ticks` one-component signals of constant value.
std::vector<InputEvent> constant_stream(std::size_t ticks, double csm) {
  std::vector<InputEvent> events;
  events.reserve(ticks);
  for (std::uint64_t t = 1; t <= ticks; ++t) events.push_back({t, SignalVector{{csm}}});
  return events;
}

const WeightMatrix kCsmOnly{{1.0}, {0.0}};

RunTrace trace_run(std::span<const InputEvent> events, std::size_t cells, LifespanDistribution lifespans) {
  RunTrace trace;
  run_detection(events, DetectionConfig{cells, lifespans, kCsmOnly, false}, Observers{nullptr, &trace});
  return trace;
}

// 1. Phase totals against the closed forms on random configurations.
Outcome operation_counts() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> log_n(0.0, 5.0);
  std::uniform_int_distribution<std::size_t> cells(1, 100);
  std::uniform_real_distribution<double> p(0.05, 0.95);
  int configs = 0, t1_bad = 0, t2_bad = 0, t3_bad = 0, eq_checked = 0;
  for (int i = 0; i < 50; ++i) {
    const auto n = static_cast<std::size_t>(std::pow(10.0, log_n(rng)));
    const std::size_t n_cells = cells(rng);
    const bool distinct = i % 2 == 0;
    std::vector<InputEvent> events;
    if (distinct) {
      // every antigen a new type; the end-of-stream flush drains all of them
      std::bernoulli_distribution antigen(p(rng));
      std::uint64_t next = 1;
      for (std::uint64_t t = 1; t <= n; ++t) {
        if (antigen(rng)) events.push_back({t, AntigenType{next++}});
        else events.push_back({t, SignalVector{{0.3, 0.5, 0.2}}});
      }
    } else {
      events = oracle::random_stream(rng, n, p(rng), 1 + rng() % 60);
    }
    InstrumentedConfig cfg;
    cfg.detection.population_size = n_cells;
    cfg.detection.lifespans = ArithmeticLifespans{0.5 + static_cast<double>(rng() % 20), 0.25};
    cfg.detection.flush_at_end = distinct;
    const auto run = instrumented_run(events, cfg);
    const auto& s = run.stats;
    ++configs;
    if (run.totals.t1 != 2 * n_cells) ++t1_bad;
    if (run.totals.t2 != s.n + 3 * s.a + 2 * (s.n - s.a) + 5 * (s.n - s.a) * n_cells) ++t2_bad;
    const std::uint64_t bound = s.a + 4 * s.a * s.b;
    if (run.totals.t3 > bound) ++t3_bad;
    if (distinct) {
      ++eq_checked;
      if (s.b != s.a || run.totals.t3 != bound) ++t3_bad;
    }
  }
  std::ostringstream d;
  d << configs << " configs: t1 mismatches " << t1_bad << ", t2 mismatches " << t2_bad
    << ", t3 bound violations " << t3_bad << " (equality required on " << eq_checked << " b=a runs)";
  return {t1_bad == 0 && t2_bad == 0 && t3_bad == 0, d.str()};
}

const std::vector<std::size_t> kScalingSizes{1000, 10000, 100000, 1000000};

// 2. Standard-mode worst case grows quadratically.
Outcome standard_scaling() {
  ScalingConfig cfg;
  cfg.n_cells = 100;
  const auto result = scaling_experiment(kScalingSizes, cfg);
  bool exact = true;
  for (const auto& r : result.rows) {
    exact = exact && r.totals.t1 == r.t1_formula && r.totals.t2 == r.t2_formula && r.totals.t3 == r.t3_bound;
  }
  std::ostringstream d;
  d << "slope " << result.slope << " (want [1.9, 2.1]); totals";
  for (const auto& r : result.rows) d << ' ' << r.totals.total;
  d << (exact ? "; closed forms met" : "; closed forms NOT met");
  return {result.slope >= 1.9 && result.slope <= 2.1 && exact, d.str()};
}

// 3. Segmented worst case grows linearly.
Outcome segmented_scaling() {
  ScalingConfig cfg;
  cfg.n_cells = 100;
  cfg.mode = ScalingMode::segmented;
  cfg.segment_size = 100;
  const auto result = scaling_experiment(kScalingSizes, cfg);
  bool within = true;
  for (const auto& r : result.rows) {
    const std::uint64_t segs = (r.n + 99) / 100;
    within = within && r.sum_records_times_types <= segs * 100 * 100 && r.totals.t3 <= r.t3_bound;
  }
  std::ostringstream d;
  d << "slope " << result.slope << " (want [0.9, 1.1]); sum a_k*b_k";
  for (const auto& r : result.rows) d << ' ' << r.sum_records_times_types;
  d << (within ? " all within ceil(n/z)*z^2" : " EXCEEDS ceil(n/z)*z^2");
  return {result.slope >= 0.9 && result.slope <= 1.1 && within, d.str()};
}

// 4. Processed-antigen closed form against balls in bins.
Outcome processed_antigens() {
  std::size_t below = 0, below_bad = 0, full = 0, full_bad = 0, beyond = 0, beyond_bad = 0, sim_bad = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint64_t delta = 0; delta <= 2 * n; ++delta) {
      for (std::uint64_t theta = 0; theta <= 50; ++theta) {
        const auto formula = estimate_processed_antigens(n, delta, theta).nu;
        const auto truth = static_cast<std::int64_t>(oracle::balls_in_bins(n, delta, theta));
        if (static_cast<std::int64_t>(simulate_processed_antigens(n, delta, theta)) != truth) ++sim_bad;
        const bool agree = formula == truth;
        if (delta < n) {
          ++below;
          below_bad += !agree;
        } else if (delta == n) {
          ++full;
          full_bad += !agree;
        } else {
          ++beyond;
          beyond_bad += !agree;
        }
      }
    }
  }
  std::ostringstream d;
  d << "mismatches: delta<N " << below_bad << '/' << below << ", delta=N " << full_bad << '/' << full
    << " (closed form gives 0 whenever delta mod N = 0); reported only, delta>N " << beyond_bad << '/'
    << beyond << "; engine simulation vs oracle " << sim_bad;
  return {below_bad == 0 && full_bad == 0 && sim_bad == 0, d.str()};
}

// 5. Arithmetic-lifespan maturation estimate on constant-csm streams.
Outcome uniform_maturation() {
  std::mt19937_64 rng(kSeed + 5);
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
  const std::array<double, 5> csm_values{0.25, 0.5, 1.0, 2.0, 4.0};

  // step = 0, x1 = k * csm: every cell matures every k ticks from tick k + 1.
  int exact_runs = 0, exact_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n_cells = pick(1, 100);
    const double c = csm_values[rng() % csm_values.size()];
    const std::uint64_t k = pick(1, 20), m = pick(1, 10);
    if (m * k < 2) continue;
    const std::uint64_t begin = pick(2, 50), end = begin + m * k - 1;
    const ArithmeticLifespans life{static_cast<double>(k) * c, 0.0};
    const auto events = constant_stream(end, c);
    const auto trace = trace_run(events, n_cells, life);
    const auto iv = make_interval(begin, end);
    const auto est = estimate_matured_uniform(n_cells, life, iv, csm_window(trace, iv));
    ++exact_runs;
    if (est.interval_total != static_cast<std::int64_t>(measure_matured(trace, iv))) ++exact_bad;
  }

  // step > 0 with lifespans spanning at most a factor of two, intervals of
  // one to three population sweeps (mean lifespan / csm) after every cell has matured.
  int spread_runs = 0, spread_bad = 0;
  std::int64_t worst = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n_cells = pick(2, 100);
    const double c = csm_values[rng() % 3];
    const double x1 = static_cast<double>(pick(10, 40)) * c;
    const double step = x1 / static_cast<double>(n_cells - 1) * std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const ArithmeticLifespans life{x1, step};
    const double mu1 = x1 + static_cast<double>(n_cells - 1) * step / 2.0;
    const auto sweep = static_cast<std::uint64_t>(std::ceil(mu1 / c));
    const auto warm = static_cast<std::uint64_t>(std::ceil((x1 + static_cast<double>(n_cells - 1) * step) / c)) + 2;
    const std::uint64_t begin = warm + pick(0, 50), end = begin + pick(sweep, 3 * sweep);
    const auto events = constant_stream(end, c);
    const auto trace = trace_run(events, n_cells, life);
    const auto iv = make_interval(begin, end);
    const auto est = estimate_matured_uniform(n_cells, life, iv, csm_window(trace, iv));
    const auto diff = std::abs(est.interval_total - static_cast<std::int64_t>(measure_matured(trace, iv)));
    worst = std::max(worst, diff * 1000 / static_cast<std::int64_t>(n_cells));
    ++spread_runs;
    if (diff > static_cast<std::int64_t>(n_cells)) ++spread_bad;
  }

  // Informational: wide spread (x1 = 1, step = 1) over a long interval.
  const std::size_t wide_n = 100;
  const ArithmeticLifespans wide{1.0, 1.0};
  const auto wide_events = constant_stream(2000, 1.0);
  const auto wide_trace = trace_run(wide_events, wide_n, wide);
  const auto wide_iv = make_interval(201, 2000);
  const auto wide_est = estimate_matured_uniform(wide_n, wide, wide_iv, csm_window(wide_trace, wide_iv));

  std::ostringstream d;
  d << "step=0 exact: " << exact_runs - exact_bad << '/' << exact_runs << "; step>0 |err|<=N: "
    << spread_runs - spread_bad << '/' << spread_runs << " (worst |err|/N " << static_cast<double>(worst) / 1000.0
    << "); info, x1=1 step=1 N=100 over [201,2000]: estimate " << wide_est.interval_total << " measured "
    << measure_matured(wide_trace, wide_iv);
  return {exact_bad == 0 && spread_bad == 0, d.str()};
}

struct Coverage {
  int inside = 0, runs = 0;
  double mean_measured = 0.0;
  MaturationBand band;
};

Coverage gaussian_coverage(double csm, std::uint64_t begin, std::uint64_t end, int seeds) {
  const auto events = constant_stream(end, csm);
  const auto iv = make_interval(begin, end);
  Coverage cov;
  for (int s = 1; s <= seeds; ++s) {
    const auto trace = trace_run(events, 100, GaussianLifespans{20.0, 2.0, static_cast<std::uint64_t>(s)});
    cov.band = estimate_matured_gaussian(100, 20.0, 2.0, iv, csm_window(trace, iv));
    const auto measured = static_cast<std::int64_t>(measure_matured(trace, iv));
    cov.mean_measured += static_cast<double>(measured);
    cov.inside += measured >= cov.band.total_lower && measured <= cov.band.total_upper;
    ++cov.runs;
  }
  cov.mean_measured /= cov.runs;
  return cov;
}

// 6. Gaussian-lifespan band coverage.
Outcome gaussian_coverage_check() {
  // unit csm; interval starts after ten mean lifespans
  const auto main = gaussian_coverage(1.0, 201, 1200, 1000);
  const double rate = static_cast<double>(main.inside) / main.runs;
  const auto fine = gaussian_coverage(0.1, 2001, 12000, 100);
  std::ostringstream d;
  d << "csm=1 over [201,1200]: " << main.inside << '/' << main.runs << " inside [" << main.band.total_lower << ','
    << main.band.total_upper << "] (coverage " << rate << ", want >= 0.93), mean measured " << main.mean_measured
    << "; info, csm=0.1 over [2001,12000]: " << fine.inside << '/' << fine.runs << " inside ["
    << fine.band.total_lower << ',' << fine.band.total_upper << "], mean measured " << fine.mean_measured;
  return {rate >= 0.93, d.str()};
}

std::vector<OutputRecord> random_engine_output(std::mt19937_64& rng, std::size_t n) {
  const auto events = oracle::random_stream(rng, n, 0.4, 1 + rng() % 40);
  DetectionConfig cfg{1 + rng() % 100, ArithmeticLifespans{0.5 + static_cast<double>(rng() % 10), 0.1},
                      default_weights(), true};
  return run_detection(events, cfg).output_list;
}

// 7. Per-type statistics against the two-pass scan.
Outcome analysis_oracle() {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> log_len(0.0, 5.0);
  int lists = 0, bad = 0;
  std::size_t longest = 0;
  for (int i = 0; i < 100; ++i) {
    const auto len = i == 0 ? 100000 : static_cast<std::size_t>(std::pow(10.0, log_len(rng)));
    const auto list = i % 2 == 0 ? oracle::random_records(rng, len, 1 + rng() % 50)
                                 : random_engine_output(rng, std::max<std::size_t>(len, 2) * 2);
    longest = std::max(longest, list.size());
    const auto report = anomaly_metrics(list, 0.0);
    const auto ref = oracle::two_pass_analysis(list);
    ++lists;
    bool ok = report.size() == ref.size();
    for (const auto& e : report.entries) {
      const auto it = ref.find(e.antigen.id);
      ok = ok && it != ref.end() && e.beta == it->second.beta && close_rel(e.gamma, it->second.gamma, 1e-9) &&
           close_rel(e.metric, it->second.k, 1e-9);
    }
    bad += !ok;
  }
  std::ostringstream d;
  d << lists - bad << '/' << lists << " lists agree (longest " << longest << " records)";
  return {bad == 0, d.str()};
}

// 8. Worked traces.
Outcome hand_traces() {
  const WeightMatrix w = default_weights();
  std::vector<InputEvent> single{{1, AntigenType{9}},
                                 {2, SignalVector{{1, 1, 0}}},
                                 {3, SignalVector{{1, 1, 0}}},
                                 {4, SignalVector{{1, 1, 0}}},
                                 {5, SignalVector{{1, 1, 0}}}};
  const auto a = run_detection(single, DetectionConfig{1, ArithmeticLifespans{5, 0}, w, false});
  const bool single_ok = a.output_list == std::vector<OutputRecord>{{AntigenType{9}, 6.0, false}};

  auto s = initialise(3, ArithmeticLifespans{10, 1});
  for (std::uint64_t q = 1; q <= 7; ++q) step(s, InputEvent{q, AntigenType{q}}, w);
  const std::vector<std::vector<std::uint64_t>> want{{1, 4, 7}, {2, 5}, {3, 6}};
  bool three_ok = true;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<std::uint64_t> got;
    for (auto x : s.population[i].antigen_profile) got.push_back(x.id);
    three_ok = three_ok && got == want[i];
  }
  std::ostringstream d;
  d << "N=1 output list " << (single_ok ? "[(9, 6)]" : "WRONG") << "; N=3 profiles "
    << (three_ok ? "{1,4,7}/{2,5}/{3,6}" : "WRONG");
  return {single_ok && three_ok, d.str()};
}

// 9. Per-segment sums merge back to the whole-run statistics.
Outcome merge_identity() {
  std::mt19937_64 rng(kSeed + 9);
  int runs = 0, bad = 0;
  for (int i = 0; i < 50; ++i) {
    const auto list = random_engine_output(rng, 200 + rng() % 20000);
    const std::size_t z = 1 + rng() % std::max<std::size_t>(list.size(), 1);
    const auto whole = anomaly_metrics(list, 0.0);
    std::map<std::uint64_t, std::pair<std::uint64_t, double>> merged;
    for (const auto& seg : segmented_analysis(list, z, 0.0)) {
      for (const auto& e : seg.report.entries) {
        merged[e.antigen.id].first += e.beta;
        merged[e.antigen.id].second += e.gamma;
      }
    }
    bool ok = merged.size() == whole.size();
    for (const auto& e : whole.entries) {
      ok = ok && merged[e.antigen.id].first == e.beta && close_rel(merged[e.antigen.id].second, e.gamma, 1e-9);
    }
    ++runs;
    bad += !ok;
  }
  std::ostringstream d;
  d << runs - bad << '/' << runs << " random runs merge exactly";
  return {bad == 0, d.str()};
}

// 10. Synthetic streams: the anomalous type scores higher.
Outcome synthetic_detection() {
  int wins = 0, runs = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SynthSpec spec;
    spec.n = 5000;
    spec.seed = seed;
    const auto state = run_detection(generate_stream(spec), DetectionConfig{});
    const auto report = anomaly_metrics(state.output_list, 0.0);
    const auto* anomalous = report.find(AntigenType{1});
    const auto* normal = report.find(AntigenType{2});
    ++runs;
    wins += anomalous && normal && anomalous->metric > normal->metric;
  }
  std::ostringstream d;
  d << "K(1) > K(2) in " << wins << '/' << runs << " seeded runs (want >= 95)";
  return {wins >= 95, d.str()};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {"operation counts match the closed forms", operation_counts},
      {"standard worst case is quadratic", standard_scaling},
      {"segmented worst case is linear", segmented_scaling},
      {"processed-antigen closed form vs balls in bins", processed_antigens},
      {"arithmetic-lifespan maturation estimate", uniform_maturation},
      {"gaussian-lifespan band coverage", gaussian_coverage_check},
      {"analysis vs two-pass oracle", analysis_oracle},
      {"engine hand traces", hand_traces},
      {"segmentation merge identity", merge_identity},
      {"synthetic end-to-end detection", synthetic_detection},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = criteria[i].check();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
