#include "agl/plfun.hpp"

#include "agl/errors.hpp"
#include "agl/number.hpp"

#include <algorithm>
#include <cmath>

namespace agl
{

namespace
{

bool collinear( const Breakpoint& a, const Breakpoint& b, const Breakpoint& c )
{
    return ( b.value - a.value ) * ( c.r - b.r ) == ( c.value - b.value ) * ( b.r - a.r );
}

} // namespace

PLFun::PLFun( std::vector< Breakpoint > breakpoints, double final_slope )
    : _bps{ std::move( breakpoints ) }, _final_slope{ final_slope }
{
    if ( _bps.empty() || _bps.front().r != 0.0 )
        throw InvariantViolation( "piecewise-linear function must start with a breakpoint at r = 0" );
    if ( !std::isfinite( _final_slope ) )
        throw InvariantViolation( "piecewise-linear final slope must be finite" );
    for ( std::size_t i = 0; i < _bps.size(); ++i )
    {
        if ( !std::isfinite( _bps[ i ].r ) || !std::isfinite( _bps[ i ].value ) )
            throw InvariantViolation( "piecewise-linear breakpoints must be finite" );
        if ( i > 0 && !( _bps[ i ].r > _bps[ i - 1 ].r ) )
            throw InvariantViolation( "piecewise-linear breakpoint radii must be strictly increasing" );
    }

    std::vector< Breakpoint > kept{ _bps.front() };
    for ( std::size_t i = 1; i < _bps.size(); ++i )
    {
        const auto& cur = _bps[ i ];
        const bool last = i + 1 == _bps.size();
        const Breakpoint next = last ? Breakpoint{ cur.r + 1.0, cur.value + _final_slope } : _bps[ i + 1 ];
        if ( !collinear( kept.back(), cur, next ) )
            kept.push_back( cur );
    }
    _bps = std::move( kept );
}

double PLFun::operator()( double r ) const
{
    if ( r < 0.0 || std::isnan( r ) )
        throw InvariantViolation( "piecewise-linear function evaluated at negative radius " + format_number( r ) );

    const auto it = std::upper_bound( _bps.begin(), _bps.end(), r,
                                      []( double x, const Breakpoint& b ) { return x < b.r; } );
    const auto& left = *( it - 1 );
    if ( it == _bps.end() )
        return left.value + _final_slope * ( r - left.r );
    const auto& right = *it;
    if ( r == left.r )
        return left.value;
    const double t = ( r - left.r ) / ( right.r - left.r );
    return left.value + t * ( right.value - left.value );
}

std::vector< double > PLFun::slopes() const
{
    std::vector< double > out;
    for ( std::size_t i = 1; i < _bps.size(); ++i )
        out.push_back( ( _bps[ i ].value - _bps[ i - 1 ].value ) / ( _bps[ i ].r - _bps[ i - 1 ].r ) );
    out.push_back( _final_slope );
    return out;
}

std::string PLFun::str() const
{
    std::string out = "pl [";
    for ( std::size_t i = 0; i < _bps.size(); ++i )
    {
        if ( i > 0 )
            out += ',';
        out += '(' + format_number( _bps[ i ].r ) + ',' + format_number( _bps[ i ].value ) + ')';
    }
    out += "] slope " + format_number( _final_slope );
    return out;
}

double pl_eval( const PLFun& f, double r )
{
    return f( r );
}

namespace
{

std::vector< double > merged_radii( const PLFun& f, const PLFun& g )
{
    std::vector< double > rs;
    for ( const auto& b : f.breakpoints() )
        rs.push_back( b.r );
    for ( const auto& b : g.breakpoints() )
        rs.push_back( b.r );
    std::sort( rs.begin(), rs.end() );
    rs.erase( std::unique( rs.begin(), rs.end() ), rs.end() );
    return rs;
}

template < class Op >
PLFun pointwise( const PLFun& f, const PLFun& g, Op op )
{
    std::vector< Breakpoint > bps;
    for ( double r : merged_radii( f, g ) )
        bps.push_back( { r, op( f( r ), g( r ) ) } );
    return PLFun( std::move( bps ), op( f.final_slope(), g.final_slope() ) );
}

} // namespace

PLFun pl_add( const PLFun& f, const PLFun& g )
{
    return pointwise( f, g, []( double x, double y ) { return x + y; } );
}

PLFun pl_sub( const PLFun& f, const PLFun& g )
{
    return pointwise( f, g, []( double x, double y ) { return x - y; } );
}

PLFun pl_scale( const PLFun& f, double k )
{
    std::vector< Breakpoint > bps;
    for ( const auto& b : f.breakpoints() )
        bps.push_back( { b.r, k * b.value } );
    return PLFun( std::move( bps ), k * f.final_slope() );
}

PLFun pl_compose( const PLFun& f, const PLFun& g )
{
    const auto& gb = g.breakpoints();
    for ( const auto& b : gb )
        if ( b.value < 0.0 )
            throw InvariantViolation( "pl_compose: inner function is negative at r = " + format_number( b.r ) );
    if ( g.final_slope() < 0.0 )
        throw InvariantViolation( "pl_compose: inner function eventually becomes negative" );

    std::vector< double > rs;
    for ( const auto& b : gb )
        rs.push_back( b.r );

    // Preimages of the outer breakpoints on each inner segment.
    const auto& fb = f.breakpoints();
    for ( std::size_t i = 0; i < gb.size(); ++i )
    {
        const double r0 = gb[ i ].r;
        const double v0 = gb[ i ].value;
        const bool ray = i + 1 == gb.size();
        const double slope = ray ? g.final_slope() : ( gb[ i + 1 ].value - v0 ) / ( gb[ i + 1 ].r - r0 );
        if ( slope == 0.0 )
            continue;
        const double v1 = ray ? 0.0 : gb[ i + 1 ].value;
        const double lo = ray ? v0 : std::min( v0, v1 );
        const double hi = ray ? INFINITY : std::max( v0, v1 );
        for ( const auto& b : fb )
        {
            if ( b.r > lo && b.r < hi )
            {
                double r = r0 + ( b.r - v0 ) / slope;
                if ( !ray )
                    r = std::clamp( r, r0, gb[ i + 1 ].r );
                rs.push_back( r );
            }
        }
    }
    std::sort( rs.begin(), rs.end() );
    rs.erase( std::unique( rs.begin(), rs.end() ), rs.end() );

    std::vector< Breakpoint > bps;
    for ( double r : rs )
        bps.push_back( { r, f( g( r ) ) } );

    // Past the last merged radius g is linear and f . g is linear too.
    double final_slope = 0.0;
    if ( g.final_slope() > 0.0 )
        final_slope = f.final_slope() * g.final_slope();
    return PLFun( std::move( bps ), final_slope );
}

const char* to_string( ComparisonClass c )
{
    switch ( c )
    {
    case ComparisonClass::none:
        return "none";
    case ComparisonClass::K:
        return "K";
    case ComparisonClass::Kinf:
        return "Kinf";
    case ComparisonClass::Kinf0:
        return "Kinf0";
    }
    return "?";
}

ComparisonClass classify( const PLFun& f )
{
    const auto& bps = f.breakpoints();
    if ( bps.front().value != 0.0 )
        return ComparisonClass::none;

    const auto s = f.slopes();
    if ( std::all_of( s.begin(), s.end(), []( double x ) { return x == 0.0; } ) )
        return ComparisonClass::Kinf0;

    const bool increasing = std::all_of( s.begin(), s.end() - 1, []( double x ) { return x > 0.0; } );
    if ( !increasing )
        return ComparisonClass::none;
    if ( f.final_slope() > 0.0 )
        return ComparisonClass::Kinf;
    if ( f.final_slope() == 0.0 && bps.size() > 1 )
        return ComparisonClass::K;
    return ComparisonClass::none;
}

bool in_class( const PLFun& f, ComparisonClass c )
{
    const auto tag = classify( f );
    switch ( c )
    {
    case ComparisonClass::none:
        return true;
    case ComparisonClass::K:
        return tag == ComparisonClass::K || tag == ComparisonClass::Kinf;
    case ComparisonClass::Kinf:
        return tag == ComparisonClass::Kinf;
    case ComparisonClass::Kinf0:
        return tag == ComparisonClass::Kinf || tag == ComparisonClass::Kinf0;
    }
    return false;
}

bool id_minus_in_kinf( const PLFun& lambda )
{
    if ( lambda.breakpoints().front().value != 0.0 )
        return false;
    const auto s = lambda.slopes();
    return std::all_of( s.begin(), s.end(), []( double x ) { return x < 1.0; } );
}

} // namespace agl
