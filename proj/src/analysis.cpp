#include "ddca/analysis.hpp"

#include <algorithm>
#include <unordered_map>

#include "ddca/errors.hpp"

namespace ddca {

const char* to_string(Label label) noexcept {
  return label == Label::anomalous ? "anomalous" : "normal";
}

const AnomalyEntry* AnomalyReport::find(AntigenType antigen) const noexcept {
  auto it = std::lower_bound(entries.begin(), entries.end(), antigen,
                             [](const AnomalyEntry& e, AntigenType a) { return e.antigen < a; });
  return it != entries.end() && it->antigen == antigen ? &*it : nullptr;
}

std::uint64_t count_antigen(std::span<const OutputRecord> records, AntigenType antigen) {
  return static_cast<std::uint64_t>(std::count_if(
      records.begin(), records.end(), [antigen](const OutputRecord& r) { return r.antigen == antigen; }));
}

double sum_profiles(std::span<const OutputRecord> records, AntigenType antigen) {
  double sum = 0.0;
  for (const auto& r : records) {
    if (r.antigen == antigen) sum += r.profile;
  }
  return sum;
}

AnomalyReport anomaly_metrics(std::span<const OutputRecord> records, double epsilon,
                              OpCounters* counters) {
  std::unordered_map<std::uint64_t, std::size_t> slot;
  AnomalyReport report;
  for (const auto& r : records) {
    auto [it, inserted] = slot.try_emplace(r.antigen.id, report.entries.size());
    if (inserted) report.entries.push_back(AnomalyEntry{r.antigen});
    auto& e = report.entries[it->second];
    ++e.beta;
    e.gamma += r.profile;
  }
  for (auto& e : report.entries) {
    e.metric = e.gamma / static_cast<double>(e.beta);
    e.label = e.metric > epsilon ? Label::anomalous : Label::normal;
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const AnomalyEntry& x, const AnomalyEntry& y) { return x.antigen < y.antigen; });

  if (counters) {
    const std::uint64_t records_n = records.size();
    const std::uint64_t inner = records_n * report.entries.size();
    counters->analysis_loop += records_n;
    counters->type_loop += inner;
    counters->antigen_counter += inner;
    counters->profile_abstraction += inner;
    counters->metric_calc += inner;
  }
  return report;
}

SegmentedAnalyzer::SegmentedAnalyzer(std::size_t segment_size, double epsilon, OpCounters* counters)
    : z_(segment_size), epsilon_(epsilon), counters_(counters) {
  if (z_ < 1) throw ConfigError("segment size must be >= 1");
  buffer_.reserve(z_);
}

std::optional<SegmentReport> SegmentedAnalyzer::push(const OutputRecord& record) {
  buffer_.push_back(record);
  if (buffer_.size() < z_) return std::nullopt;
  return close(false);
}

std::optional<SegmentReport> SegmentedAnalyzer::finish() {
  if (buffer_.empty()) return std::nullopt;
  return close(true);
}

SegmentReport SegmentedAnalyzer::close(bool partial) {
  SegmentReport seg;
  seg.index = next_index_++;
  seg.partial = partial;
  seg.records = buffer_.size();
  seg.report = anomaly_metrics(buffer_, epsilon_, counters_);
  sum_ab_ += static_cast<std::uint64_t>(seg.records) * seg.report.size();
  buffer_.clear();
  return seg;
}

std::vector<SegmentReport> segmented_analysis(std::span<const OutputRecord> records,
                                              std::size_t segment_size, double epsilon,
                                              OpCounters* counters) {
  SegmentedAnalyzer analyzer(segment_size, epsilon, counters);
  std::vector<SegmentReport> out;
  for (const auto& r : records) {
    if (auto seg = analyzer.push(r)) out.push_back(std::move(*seg));
  }
  if (auto seg = analyzer.finish()) out.push_back(std::move(*seg));
  return out;
}

ConcurrentSegmenter::ConcurrentSegmenter(std::size_t segment_size, double epsilon)
    : analyzer_(segment_size, epsilon), worker_([this] { run(); }) {}

ConcurrentSegmenter::~ConcurrentSegmenter() {
  if (worker_.joinable()) finish();
}

void ConcurrentSegmenter::push(std::span<const OutputRecord> records) {
  if (records.empty()) return;
  {
    std::lock_guard lock(mutex_);
    queue_.insert(queue_.end(), records.begin(), records.end());
  }
  ready_.notify_one();
}

std::vector<SegmentReport> ConcurrentSegmenter::finish() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  ready_.notify_one();
  if (worker_.joinable()) worker_.join();
  return std::move(reports_);
}

void ConcurrentSegmenter::run() {
  std::deque<OutputRecord> batch;
  while (true) {
    bool done = false;
    {
      std::unique_lock lock(mutex_);
      ready_.wait(lock, [this] { return closed_ || !queue_.empty(); });
      batch.swap(queue_);
      done = closed_ && batch.empty();
    }
    if (done) break;
    for (const auto& r : batch) {
      if (auto seg = analyzer_.push(r)) reports_.push_back(std::move(*seg));
    }
    batch.clear();
  }
  if (auto seg = analyzer_.finish()) reports_.push_back(std::move(*seg));
}

}  // namespace ddca
