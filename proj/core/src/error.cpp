#include "dqw/error.hpp"

namespace dqw {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::not_eigenoperator: return "NotEigenoperator";
    case Errc::linearly_dependent_basis: return "LinearlyDependentBasis";
    case Errc::not_closed: return "NotClosed";
    case Errc::not_hermitian_basis: return "NotHermitianBasis";
    case Errc::non_hermitian_generator: return "NonHermitianGenerator";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::invalid_grid: return "InvalidGrid";
    case Errc::invalid_state: return "InvalidState";
    case Errc::invalid_bargmann_index: return "InvalidBargmannIndex";
    case Errc::truncation_too_small: return "TruncationTooSmall";
    case Errc::truncation_exceeded: return "TruncationExceeded";
    case Errc::insufficient_samples: return "InsufficientSamples";
    case Errc::degenerate_grouping: return "DegenerateGrouping";
    case Errc::positivity_breakdown: return "PositivityBreakdown";
    case Errc::support_violation: return "SupportViolation";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::invalid_parameter: return "InvalidParameter";
    case Errc::negative_amplitude: return "NegativeAmplitude";
    case Errc::malformed_header: return "MalformedHeader";
    case Errc::malformed_row: return "MalformedRow";
    case Errc::non_monotonic_time: return "NonMonotonicTime";
    case Errc::negative_value: return "NegativeValue";
    case Errc::value_out_of_range: return "ValueOutOfRange";
    case Errc::insufficient_rows: return "InsufficientRows";
    case Errc::unsupported_kind: return "UnsupportedKind";
    case Errc::config_error: return "ConfigError";
    case Errc::io_error: return "IOError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace dqw
