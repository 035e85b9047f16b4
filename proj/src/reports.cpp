#include "ddca/reports.hpp"

#include <ostream>

#include "ddca/csv.hpp"

namespace ddca::reports {

void write_output_list(std::ostream& out, std::span<const OutputRecord> records, bool with_flushed) {
  out << (with_flushed ? "antigen_id,profile,flushed\n" : "antigen_id,profile\n");
  for (const auto& r : records) {
    out << r.antigen.id << ',' << csv::format_double(r.profile);
    if (with_flushed) out << ',' << (r.flushed ? 1 : 0);
    out << '\n';
  }
}

void write_report_header(std::ostream& out) {
  out << "segment,antigen_id,beta,gamma,k_metric,label,partial\n";
}

void write_report_rows(std::ostream& out, std::size_t segment, bool partial, const AnomalyReport& report) {
  for (const auto& e : report.entries) {
    out << segment << ',' << e.antigen.id << ',' << e.beta << ',' << csv::format_double(e.gamma) << ','
        << csv::format_double(e.metric) << ',' << to_string(e.label) << ',' << (partial ? 1 : 0) << '\n';
  }
}

void write_instrumentation_header(std::ostream& out) {
  out << "n,a,b,N,z,t1,t2,t3,total,t1_formula,t2_formula,t3_bound,slope_fit\n";
}

void write_instrumentation_row(std::ostream& out, const ScalingRow& row, std::optional<double> slope) {
  out << row.n << ',' << row.a << ',' << row.b << ',' << row.n_cells << ',';
  if (row.segment_size) {
    out << *row.segment_size;
  } else {
    out << "off";
  }
  out << ',' << row.totals.t1 << ',' << row.totals.t2 << ',' << row.totals.t3 << ','
      << row.totals.total << ',' << row.t1_formula << ',' << row.t2_formula << ',' << row.t3_bound
      << ',';
  if (slope) out << csv::format_double(*slope);
  out << '\n';
}

void write_estimator_header(std::ostream& out) {
  out << "interval_start,interval_end,estimator,predicted_lower,predicted_upper,measured\n";
}

void write_estimator_row(std::ostream& out, const EstimatorRow& row) {
  out << row.interval.begin << ',' << row.interval.end << ',' << row.estimator << ','
      << row.predicted_lower << ',' << row.predicted_upper << ',' << row.measured << '\n';
}

}  // namespace ddca::reports
