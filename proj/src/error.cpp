#include "inclab/error.hpp"

namespace inclab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::composite_modulus: return "CompositeModulus";
    case ErrorCode::out_of_range: return "OutOfRange";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::modulus_mismatch: return "ModulusMismatch";
    case ErrorCode::coincident_points: return "CoincidentPoints";
    case ErrorCode::vertical_line_present: return "VerticalLinePresent";
    case ErrorCode::point_sent_to_infinity: return "PointSentToInfinity";
    case ErrorCode::line_sent_to_infinity: return "LineSentToInfinity";
    case ErrorCode::characteristic_too_small: return "CharacteristicTooSmall";
    case ErrorCode::too_many_requested: return "TooManyRequested";
    case ErrorCode::empty_instance: return "EmptyInstance";
    case ErrorCode::empty_grid: return "EmptyGrid";
    case ErrorCode::no_incidences: return "NoIncidences";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::degenerate_input: return "DegenerateInput";
    case ErrorCode::too_few_points: return "TooFewPoints";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::config_error: return "ConfigError";
    case ErrorCode::insufficient_data: return "InsufficientData";
    case ErrorCode::non_positive_value: return "NonPositiveValue";
  }
  return "Unknown";
}

}  // namespace inclab
