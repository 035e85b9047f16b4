#include "ddca/data_model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "ddca/csv.hpp"
#include "ddca/errors.hpp"

namespace ddca {

namespace {

std::ifstream open_input(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(std::string(what) + " file not found: " + path.string());
  return in;
}

}  // namespace

ParsedStream parse_stream(std::istream& in, const ParseOptions& options) {
  if (options.dim == 0) throw ConfigError("signal dimensionality must be >= 1");

  ParsedStream result;
  std::unordered_set<std::uint64_t> types;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (csv::is_skippable(line)) continue;
    auto fields = csv::split(line);
    const auto& kind = fields.front();
    InputEvent ev;
    ev.time = result.events.size() + 1;

    if (kind == "antigen") {
      if (fields.size() != 2) throw ParseError(line_no, "antigen row needs exactly one id");
      // Accept the sign so that "-3" is reported as a domain problem, not a syntax one.
      auto id = csv::parse_int<std::int64_t>(fields[1]);
      if (!id) throw ParseError(line_no, "antigen id is not an integer: '" + std::string(fields[1]) + "'");
      if (*id < 1) {
        throw DomainError("line " + std::to_string(line_no) + ": antigen id must be >= 1, got " +
                          std::to_string(*id));
      }
      ev.payload = AntigenType{static_cast<std::uint64_t>(*id)};
      types.insert(static_cast<std::uint64_t>(*id));
      ++result.stats.a;
    } else if (kind == "signal") {
      if (fields.size() - 1 != options.dim) {
        throw DimensionError("line " + std::to_string(line_no) + ": signal row has " +
                             std::to_string(fields.size() - 1) + " values, expected " +
                             std::to_string(options.dim));
      }
      SignalVector s;
      s.values.reserve(options.dim);
      for (std::size_t j = 1; j < fields.size(); ++j) {
        auto v = csv::parse_double(fields[j]);
        if (!v) throw ParseError(line_no, "not a number: '" + std::string(fields[j]) + "'");
        if (!std::isfinite(*v)) {
          throw DomainError("line " + std::to_string(line_no) + ": signal value is not finite");
        }
        if (*v < 0.0 || *v > 1.0) {
          if (options.strict_range) {
            throw DomainError("line " + std::to_string(line_no) + ": signal value " +
                              csv::format_double(*v) + " outside [0,1]");
          }
          ++result.out_of_range_values;
        }
        s.values.push_back(*v);
      }
      ev.payload = std::move(s);
    } else if (csv::parse_double(kind)) {
      throw ParseError(line_no, "explicit timestamps are not supported; time is the row order");
    } else {
      throw ParseError(line_no, "unknown row kind '" + std::string(kind) + "'");
    }
    result.events.push_back(std::move(ev));
  }

  result.stats.n = result.events.size();
  result.stats.b = types.size();
  if (result.out_of_range_values > 0) {
    spdlog::warn("{} signal values outside [0,1] accepted", result.out_of_range_values);
  }
  return result;
}

ParsedStream load_stream(const std::filesystem::path& path, const ParseOptions& options) {
  auto in = open_input(path, "stream");
  return parse_stream(in, options);
}

void write_stream(std::ostream& out, std::span<const InputEvent> events) {
  for (const auto& ev : events) {
    if (ev.is_antigen()) {
      out << "antigen," << ev.antigen().id << '\n';
    } else {
      out << "signal";
      for (double v : ev.signal().values) out << ',' << csv::format_double(v);
      out << '\n';
    }
  }
}

void save_stream(const std::filesystem::path& path, std::span<const InputEvent> events) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_stream(out, events);
}

StreamStats compute_stats(std::span<const InputEvent> events) {
  StreamStats stats;
  std::unordered_set<std::uint64_t> types;
  stats.n = events.size();
  for (const auto& ev : events) {
    if (!ev.is_antigen()) continue;
    ++stats.a;
    types.insert(ev.antigen().id);
  }
  stats.b = types.size();
  return stats;
}

WeightMatrix validate_weights(WeightMatrix w, std::size_t dim) {
  if (w.csm_row.size() != dim || w.k_row.size() != dim) {
    throw ConfigError("weight rows must have " + std::to_string(dim) + " entries (got " +
                      std::to_string(w.csm_row.size()) + " and " + std::to_string(w.k_row.size()) +
                      ")");
  }
  for (const auto* row : {&w.csm_row, &w.k_row}) {
    for (double v : *row) {
      if (!std::isfinite(v)) throw ConfigError("weight matrix has a non-finite entry");
    }
  }
  return w;
}

WeightMatrix parse_weights(std::istream& in, std::size_t dim) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::is_skippable(line)) continue;
    std::vector<double> row;
    for (auto field : csv::split(line)) {
      auto v = csv::parse_double(field);
      if (!v) throw ParseError(line_no, "weight is not a number: '" + std::string(field) + "'");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != 2) {
    throw ConfigError("weights file must have exactly 2 rows, found " + std::to_string(rows.size()));
  }
  return validate_weights(WeightMatrix{std::move(rows[0]), std::move(rows[1])}, dim);
}

WeightMatrix load_weights(const std::filesystem::path& path, std::size_t dim) {
  auto in = open_input(path, "weights");
  return parse_weights(in, dim);
}

WeightMatrix default_weights(std::size_t dim) {
  if (dim != 3) {
    throw ConfigError("default weights are only defined for 3 signal categories; pass --weights");
  }
  return WeightMatrix{{1.0, 1.0, 1.0}, {1.0, 1.0, -1.0}};
}

}  // namespace ddca
