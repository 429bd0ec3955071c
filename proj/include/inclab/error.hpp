#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inclab {

enum class ErrorCode {
  composite_modulus,
  out_of_range,
  division_by_zero,
  modulus_mismatch,
  coincident_points,
  vertical_line_present,
  point_sent_to_infinity,
  line_sent_to_infinity,
  characteristic_too_small,
  too_many_requested,
  empty_instance,
  empty_grid,
  no_incidences,
  empty_input,
  degenerate_input,
  too_few_points,
  parse_error,
  config_error,
  insufficient_data,
  non_positive_value,
};

std::string_view to_string(ErrorCode code);

// Single exception type for every domain failure; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inclab
