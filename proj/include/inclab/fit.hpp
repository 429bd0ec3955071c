#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inclab/sweep.hpp"

namespace inclab {

// Least-squares line through (log x, log y): y ~ e^intercept * x^slope.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;  // 1 when y is constant
  std::size_t samples = 0;
};

// Throws Error{insufficient_data} for fewer than two samples or a single distinct x, and
// Error{non_positive_value} when some x or y is not positive.
FitResult fit_exponent(std::span<const double> x, std::span<const double> y);

// Uses every record where both fields are present; failed cells are skipped.
FitResult fit_exponent(const std::vector<SweepRecord>& records, std::string_view x_field,
                       std::string_view y_field);

// Standalone SVG: log-log scatter of the samples with the fitted line.
std::string fit_svg(std::span<const double> x, std::span<const double> y, const FitResult& fit,
                    std::string_view x_label, std::string_view y_label);

}  // namespace inclab
