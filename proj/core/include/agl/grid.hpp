#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace agl
{

// One sampled dimension: lo, hi and a nominal step. The axis is cut into
// n = max(1, round((hi - lo) / step)) equal intervals, so both ends are
// always sampled. lo == hi gives a single point.
struct Axis
{
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.01;

    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] double at( std::size_t i ) const;
    // Actual spacing between neighbouring samples (0 for a single point).
    [[nodiscard]] double spacing() const;

    friend bool operator==( const Axis&, const Axis& ) = default;
};

// A row-major product of axes (last axis varies fastest).
class SamplePlan
{
public:
    SamplePlan() = default;
    explicit SamplePlan( std::vector< Axis > axes );

    // Every axis over [lo, hi] with the same step.
    static SamplePlan cube( std::size_t dims, double lo, double hi, double step );

    [[nodiscard]] const std::vector< Axis >& axes() const { return _axes; }
    [[nodiscard]] std::size_t dims() const { return _axes.size(); }
    [[nodiscard]] std::size_t size() const { return _size; }
    void point( std::size_t index, std::vector< double >& out ) const;
    [[nodiscard]] std::vector< double > point( std::size_t index ) const;

    // Concatenation of axes (the product plan).
    [[nodiscard]] SamplePlan join( const SamplePlan& other ) const;
    // Axes [first, first + count).
    [[nodiscard]] SamplePlan slice( std::size_t first, std::size_t count ) const;

    [[nodiscard]] std::string str() const;
    friend bool operator==( const SamplePlan&, const SamplePlan& ) = default;

private:
    std::vector< Axis > _axes;
    std::size_t _size = 1;
};

// Smallest margin seen so far. Ties go to the smaller sample index, so a
// merge of per-thread results does not depend on how work was split.
struct WorstSample
{
    double margin = std::numeric_limits< double >::infinity();
    std::size_t index = std::numeric_limits< std::size_t >::max();
    std::string condition;

    void consider( double m, std::size_t idx, const char* cond )
    {
        if ( m < margin || ( m == margin && idx < index ) )
        {
            margin = m;
            index = idx;
            condition = cond;
        }
    }
    void merge( const WorstSample& other )
    {
        if ( other.index != std::numeric_limits< std::size_t >::max() )
            consider( other.margin, other.index, other.condition.c_str() );
    }
    [[nodiscard]] bool empty() const { return index == std::numeric_limits< std::size_t >::max(); }
};

// Run body(chunk, begin, end) over [0, n) split into chunk_count(n, jobs)
// contiguous chunks.
// jobs == 0 means one. Exceptions from workers are rethrown (first chunk wins).
inline std::size_t chunk_count( std::size_t n, unsigned jobs )
{
    return ( jobs <= 1 || n < 2 ) ? 1 : std::min< std::size_t >( jobs, n );
}

template < class Body >
void for_chunks( std::size_t n, unsigned jobs, Body body )
{
    const std::size_t k = chunk_count( n, jobs );
    if ( k == 1 )
    {
        body( std::size_t{ 0 }, std::size_t{ 0 }, n );
        return;
    }
    std::vector< std::exception_ptr > errors( k );
    std::vector< std::thread > threads;
    for ( std::size_t c = 0; c < k; ++c )
    {
        const std::size_t begin = n * c / k;
        const std::size_t end = n * ( c + 1 ) / k;
        threads.emplace_back( [ &, c, begin, end ] {
            try
            {
                body( c, begin, end );
            }
            catch ( ... )
            {
                errors[ c ] = std::current_exception();
            }
        } );
    }
    for ( auto& t : threads )
        t.join();
    for ( auto& e : errors )
        if ( e )
            std::rethrow_exception( e );
}

} // namespace agl
