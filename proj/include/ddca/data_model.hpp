#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

namespace ddca {

/// Categorical antigen identifier. Valid ids are >= 1; ordering carries no meaning
/// beyond giving reports a deterministic order.
struct AntigenType {
  std::uint64_t id = 0;

  friend auto operator<=>(const AntigenType&, const AntigenType&) = default;
};

/// One m-dimensional input signal (PAMP, Danger, Safe in the usual m = 3 case).
struct SignalVector {
  std::vector<double> values;

  std::size_t dim() const noexcept { return values.size(); }
  friend bool operator==(const SignalVector&, const SignalVector&) = default;
};

/// One tick of the input stream. Ticks are consecutive integers starting at 1.
struct InputEvent {
  std::uint64_t time = 0;
  std::variant<SignalVector, AntigenType> payload;

  bool is_antigen() const noexcept { return std::holds_alternative<AntigenType>(payload); }
  bool is_signal() const noexcept { return std::holds_alternative<SignalVector>(payload); }
  const AntigenType& antigen() const { return std::get<AntigenType>(payload); }
  const SignalVector& signal() const { return std::get<SignalVector>(payload); }

  friend bool operator==(const InputEvent&, const InputEvent&) = default;
};

/// 2 x m transformation matrix. Row one produces CSM, row two produces K.
struct WeightMatrix {
  std::vector<double> csm_row;
  std::vector<double> k_row;

  std::size_t dim() const noexcept { return csm_row.size(); }
  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;
};

struct StreamStats {
  std::size_t n = 0;  ///< events
  std::size_t a = 0;  ///< antigen events
  std::size_t b = 0;  ///< distinct antigen types

  friend bool operator==(const StreamStats&, const StreamStats&) = default;
};

struct ParseOptions {
  std::size_t dim = 3;
  /// Reject signal values outside [0, 1] instead of counting them.
  bool strict_range = false;
};

struct ParsedStream {
  std::vector<InputEvent> events;
  StreamStats stats;
  /// Signal components outside [0, 1] that were accepted in non-strict mode.
  std::size_t out_of_range_values = 0;
};

/// Parses the CSV stream format: `signal,v1,...,vm` / `antigen,<id>` rows,
/// `#` comments and blank lines skipped. Row k (ignoring skipped lines) is tick k.
ParsedStream parse_stream(std::istream& in, const ParseOptions& options);
ParsedStream load_stream(const std::filesystem::path& path, const ParseOptions& options);

/// Writes events in the same format parse_stream reads. Numbers use the shortest
/// representation that round-trips.
void write_stream(std::ostream& out, std::span<const InputEvent> events);
void save_stream(const std::filesystem::path& path, std::span<const InputEvent> events);

StreamStats compute_stats(std::span<const InputEvent> events);

/// Returns `w` unchanged when both rows have `dim` finite entries, throws ConfigError otherwise.
WeightMatrix validate_weights(WeightMatrix w, std::size_t dim);

/// Two CSV rows of m numbers, CSM row first. Comments and blank lines allowed.
WeightMatrix parse_weights(std::istream& in, std::size_t dim);
WeightMatrix load_weights(const std::filesystem::path& path, std::size_t dim);

/// [[1,1,1],[1,1,-1]]: PAMP and Danger raise K, Safe suppresses it. Only defined for m = 3.
WeightMatrix default_weights(std::size_t dim = 3);

}  // namespace ddca
