#include "specbound/numerics/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace specbound::numerics {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buffer[64];
  // to_chars ignores the global locale.
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 12);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer, end);
}

}  // namespace specbound::numerics
