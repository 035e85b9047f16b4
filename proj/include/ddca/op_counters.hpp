#pragma once

#include <cstdint>

namespace ddca {

/// Execution counts for each control point of the reference pseudocode.
struct OpCounters {
  // initialisation phase
  std::uint64_t init_loop = 0;        // for each DC
  std::uint64_t dc_init = 0;          // DC initialisation
  // detection phase
  std::uint64_t detect_loop = 0;      // while input data
  std::uint64_t antigen_if = 0;       // if antigen
  std::uint64_t select_dc = 0;        // select a DC i
  std::uint64_t antigen_update = 0;   // H(t, i)
  std::uint64_t signal_if = 0;        // if signal
  std::uint64_t signal_transform = 0; // O(t)
  std::uint64_t cell_loop = 0;        // for each DC
  std::uint64_t lifespan_update = 0;  // F(t, i)
  std::uint64_t profile_update = 0;   // G(t, i)
  std::uint64_t mature_if = 0;        // if F(t-1, i) <= 0
  std::uint64_t output_record = 0;    // L(j), counted once per guard check
  // analysis phase
  std::uint64_t analysis_loop = 0;      // while output list
  std::uint64_t type_loop = 0;          // for each antigen type
  std::uint64_t antigen_counter = 0;    // C(j, alpha)
  std::uint64_t profile_abstraction = 0;// R(j, alpha)
  std::uint64_t metric_calc = 0;        // K(alpha)

  // Observed events, not part of the phase totals.
  std::uint64_t maturations = 0;      // guard firings
  std::uint64_t records_emitted = 0;  // L(j) elements actually appended

  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

}  // namespace ddca
