#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "ddca/engine.hpp"
#include "ddca/op_counters.hpp"

namespace ddca {

enum class Label { normal, anomalous };

const char* to_string(Label label) noexcept;

struct AnomalyEntry {
  AntigenType antigen;
  std::uint64_t beta = 0;  ///< records of this type
  double gamma = 0.0;      ///< sum of their profiles
  double metric = 0.0;     ///< gamma / beta
  Label label = Label::normal;
};

/// One entry per antigen type present, ascending by id.
struct AnomalyReport {
  std::vector<AnomalyEntry> entries;

  const AnomalyEntry* find(AntigenType antigen) const noexcept;
  std::size_t size() const noexcept { return entries.size(); }
};

std::uint64_t count_antigen(std::span<const OutputRecord> records, AntigenType antigen);
double sum_profiles(std::span<const OutputRecord> records, AntigenType antigen);

/// Per-type beta, gamma, K = gamma / beta, labelled anomalous iff K > epsilon.
///
/// When `counters` is given, the analysis-phase control points are charged as the
/// reference nested loop would execute them: one outer iteration per record and
/// one inner iteration (C, R, K) per record per distinct type.
AnomalyReport anomaly_metrics(std::span<const OutputRecord> records, double epsilon,
                              OpCounters* counters = nullptr);

struct SegmentReport {
  std::size_t index = 0;  ///< 1-based
  bool partial = false;   ///< fewer than z records, emitted at finalization
  std::size_t records = 0;
  AnomalyReport report;
};

/// Antigen-based segmentation: a segment closes whenever z records have
/// accumulated and is analysed on its own.
class SegmentedAnalyzer {
public:
  SegmentedAnalyzer(std::size_t segment_size, double epsilon, OpCounters* counters = nullptr);

  /// Returns the closed segment when this record completes one.
  std::optional<SegmentReport> push(const OutputRecord& record);
  /// Analyses buffered records as a partial segment, if any.
  std::optional<SegmentReport> finish();

  std::size_t segment_size() const noexcept { return z_; }
  /// Sum over closed segments of (records * distinct types).
  std::uint64_t sum_records_times_types() const noexcept { return sum_ab_; }
  std::size_t segments_emitted() const noexcept { return next_index_ - 1; }

private:
  SegmentReport close(bool partial);

  std::size_t z_;
  double epsilon_;
  OpCounters* counters_;
  std::vector<OutputRecord> buffer_;
  std::size_t next_index_ = 1;
  std::uint64_t sum_ab_ = 0;
};

std::vector<SegmentReport> segmented_analysis(std::span<const OutputRecord> records,
                                              std::size_t segment_size, double epsilon,
                                              OpCounters* counters = nullptr);

/// Runs a SegmentedAnalyzer on a worker thread fed by one producer.
/// Reports come back in segment order.
class ConcurrentSegmenter {
public:
  ConcurrentSegmenter(std::size_t segment_size, double epsilon);
  ~ConcurrentSegmenter();

  ConcurrentSegmenter(const ConcurrentSegmenter&) = delete;
  ConcurrentSegmenter& operator=(const ConcurrentSegmenter&) = delete;

  void push(std::span<const OutputRecord> records);
  /// Closes the feed, waits for the worker and returns every report including the partial one.
  std::vector<SegmentReport> finish();

private:
  void run();

  SegmentedAnalyzer analyzer_;
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<OutputRecord> queue_;
  bool closed_ = false;
  std::vector<SegmentReport> reports_;
  std::thread worker_;
};

}  // namespace ddca
