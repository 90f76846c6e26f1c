#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blockade {

enum class ErrorCode {
  invalid_cutoff,
  dimension_mismatch,
  invalid_params,
  unsupported_phase,
  resonance_singularity,
  undefined_correlation,
  empty_mode,
  dimension_overflow,
  singular_liouvillian,
  non_unique_steady_state,
  unphysical_state,
  step_instability,
  invalid_grid,
  invalid_sweep,
  unknown_figure,
  io_failure,
};

/// Short stable identifier, used in CSV sentinels ("err:<code>") and logs.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blockade
