#include "agl/grid.hpp"

#include "agl/errors.hpp"
#include "agl/number.hpp"

#include <cmath>

namespace agl
{

std::size_t Axis::count() const
{
    if ( hi == lo )
        return 1;
    const double n = std::round( ( hi - lo ) / step );
    return static_cast< std::size_t >( std::max( 1.0, n ) ) + 1;
}

double Axis::at( std::size_t i ) const
{
    const std::size_t n = count() - 1;
    if ( n == 0 )
        return lo;
    if ( i == n )
        return hi;
    return lo + static_cast< double >( i ) * ( hi - lo ) / static_cast< double >( n );
}

double Axis::spacing() const
{
    const std::size_t n = count() - 1;
    return n == 0 ? 0.0 : ( hi - lo ) / static_cast< double >( n );
}

SamplePlan::SamplePlan( std::vector< Axis > axes ) : _axes{ std::move( axes ) }
{
    for ( const auto& a : _axes )
    {
        if ( !std::isfinite( a.lo ) || !std::isfinite( a.hi ) || a.hi < a.lo )
            throw InvariantViolation( "sample axis needs finite bounds with lo <= hi" );
        if ( a.hi > a.lo && !( a.step > 0.0 ) )
            throw InvariantViolation( "sample axis step must be positive" );
        _size *= a.count();
    }
}

SamplePlan SamplePlan::cube( std::size_t dims, double lo, double hi, double step )
{
    return SamplePlan( std::vector< Axis >( dims, Axis{ lo, hi, step } ) );
}

void SamplePlan::point( std::size_t index, std::vector< double >& out ) const
{
    out.resize( _axes.size() );
    for ( std::size_t d = _axes.size(); d-- > 0; )
    {
        const std::size_t n = _axes[ d ].count();
        out[ d ] = _axes[ d ].at( index % n );
        index /= n;
    }
}

std::vector< double > SamplePlan::point( std::size_t index ) const
{
    std::vector< double > out;
    point( index, out );
    return out;
}

SamplePlan SamplePlan::join( const SamplePlan& other ) const
{
    auto axes = _axes;
    axes.insert( axes.end(), other._axes.begin(), other._axes.end() );
    return SamplePlan( std::move( axes ) );
}

SamplePlan SamplePlan::slice( std::size_t first, std::size_t count ) const
{
    if ( first + count > _axes.size() )
        throw InvariantViolation( "sample plan slice out of range" );
    return SamplePlan( std::vector< Axis >( _axes.begin() + static_cast< std::ptrdiff_t >( first ),
                                            _axes.begin() + static_cast< std::ptrdiff_t >( first + count ) ) );
}

std::string SamplePlan::str() const
{
    std::string out = "[";
    for ( std::size_t i = 0; i < _axes.size(); ++i )
    {
        if ( i > 0 )
            out += ", ";
        out += format_number( _axes[ i ].lo ) + ".." + format_number( _axes[ i ].hi ) + " step " +
               format_number( _axes[ i ].step );
    }
    return out + "]";
}

} // namespace agl
