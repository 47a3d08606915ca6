#pragma once

#include <string>

namespace gwregion {

/// Locale-independent general format with `digits` significant digits.
/// Infinities print as "inf" / "-inf" and NaN as "nan".
std::string format_number(double v, int digits = 9);

/// Scientific notation with `digits` digits after the point, e.g. 1.234e-09.
std::string format_scientific(double v, int digits = 3);

}  // namespace gwregion
