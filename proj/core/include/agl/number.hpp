#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace agl
{

// Shortest decimal text that reads back to the same double.
std::string format_number( double value );

// Correctly rounded (round-half-even) decimal to double. Accepts an optional
// leading '-', digits, optional fraction and exponent. Returns nullopt if
// the whole string is not a number.
std::optional< double > parse_number( std::string_view text );

} // namespace agl
