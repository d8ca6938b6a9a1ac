#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace lfd {

/// Fixed-point text with at most `max_places` decimals, trailing zeros and a
/// bare '.' removed, '.' as separator regardless of locale. Negative zero
/// prints as "0".
std::string format_decimal(double value, int max_places = 4);

/// Parses a complete decimal token ("12", "-0.5", "+3.", ".25"). Returns
/// nullopt for anything else, including exponents and trailing garbage.
std::optional<double> parse_decimal(std::string_view text);

}  // namespace lfd
