#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dqw {

// One code per failure mode named in the library contracts.
enum class Errc {
  // algebra
  not_eigenoperator,
  linearly_dependent_basis,
  not_closed,
  not_hermitian_basis,
  // dynamics
  non_hermitian_generator,
  dimension_mismatch,
  invalid_grid,
  invalid_state,
  invalid_bargmann_index,
  truncation_too_small,
  truncation_exceeded,
  insufficient_samples,
  // thermal
  degenerate_grouping,
  positivity_breakdown,
  support_violation,
  precondition_violated,
  // bounds
  invalid_parameter,
  negative_amplitude,
  // ingestion / cli
  malformed_header,
  malformed_row,
  non_monotonic_time,
  negative_value,
  value_out_of_range,
  insufficient_rows,
  unsupported_kind,
  config_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dqw
