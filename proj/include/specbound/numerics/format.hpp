#pragma once

#include <string>

namespace specbound::numerics {

/// 12 significant digits, lowercase exponent, '.' separator; "inf", "-inf", "nan" otherwise.
std::string format_number(double value);

}  // namespace specbound::numerics
