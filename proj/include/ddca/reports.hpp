#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "ddca/analysis.hpp"
#include "ddca/engine.hpp"
#include "ddca/estimators.hpp"
#include "ddca/instrumentation.hpp"

namespace ddca::reports {

/// `antigen_id,profile` rows in emission order; a third `flushed` column when
/// `with_flushed` is set.
void write_output_list(std::ostream& out, std::span<const OutputRecord> records, bool with_flushed);

/// Header `segment,antigen_id,beta,gamma,k_metric,label,partial`.
void write_report_header(std::ostream& out);
/// Segment 0 denotes whole-run analysis.
void write_report_rows(std::ostream& out, std::size_t segment, bool partial, const AnomalyReport& report);

/// Header `n,a,b,N,z,t1,t2,t3,total,t1_formula,t2_formula,t3_bound,slope_fit`.
void write_instrumentation_header(std::ostream& out);
void write_instrumentation_row(std::ostream& out, const ScalingRow& row, std::optional<double> slope);

struct EstimatorRow {
  TimeInterval interval;
  std::string estimator;
  std::int64_t predicted_lower = 0;
  std::int64_t predicted_upper = 0;
  std::int64_t measured = 0;
};

/// Header `interval_start,interval_end,estimator,predicted_lower,predicted_upper,measured`.
void write_estimator_header(std::ostream& out);
void write_estimator_row(std::ostream& out, const EstimatorRow& row);

}  // namespace ddca::reports
