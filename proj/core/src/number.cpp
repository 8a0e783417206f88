#include "agl/number.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace agl
{

std::string format_number( double value )
{
    if ( value == 0.0 )
        return std::signbit( value ) ? "-0" : "0";

    char buf[ 64 ];
    const auto res = std::to_chars( buf, buf + sizeof buf, value );
    return std::string( buf, res.ptr );
}

std::optional< double > parse_number( std::string_view text )
{
    if ( text.empty() )
        return std::nullopt;

    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto res = std::from_chars( first, last, value, std::chars_format::general );
    if ( res.ec != std::errc() || res.ptr != last || !std::isfinite( value ) )
        return std::nullopt;
    return value;
}

} // namespace agl
