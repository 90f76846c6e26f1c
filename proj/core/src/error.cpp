#include "blockade/error.hpp"

namespace blockade {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_cutoff: return "invalid_cutoff";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_params: return "invalid_params";
    case ErrorCode::unsupported_phase: return "unsupported_phase";
    case ErrorCode::resonance_singularity: return "resonance_singularity";
    case ErrorCode::undefined_correlation: return "undefined_correlation";
    case ErrorCode::empty_mode: return "empty_mode";
    case ErrorCode::dimension_overflow: return "dimension_overflow";
    case ErrorCode::singular_liouvillian: return "singular_liouvillian";
    case ErrorCode::non_unique_steady_state: return "non_unique_steady_state";
    case ErrorCode::unphysical_state: return "unphysical_state";
    case ErrorCode::step_instability: return "step_instability";
    case ErrorCode::invalid_grid: return "invalid_grid";
    case ErrorCode::invalid_sweep: return "invalid_sweep";
    case ErrorCode::unknown_figure: return "unknown_figure";
    case ErrorCode::io_failure: return "io_failure";
  }
  return "unknown";
}

}  // namespace blockade
