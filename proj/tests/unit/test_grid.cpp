#include "agl/grid.hpp"
#include "agl/errors.hpp"

#include "doctest.h"

#include <atomic>
#include <stdexcept>

using namespace agl;

TEST_CASE( "axes sample both ends" )
{
    const Axis a{ -2.0, 2.0, 0.01 };
    CHECK( a.count() == 401 );
    CHECK( a.at( 0 ) == -2.0 );
    CHECK( a.at( 400 ) == 2.0 );
    CHECK( a.at( 200 ) == doctest::Approx( 0.0 ) );
    CHECK( Axis{ 1.0, 1.0, 0.5 }.count() == 1 );
    CHECK( Axis{ 0.0, 1.0, 0.3 }.count() == 4 ); // round(3.33) intervals
}

TEST_CASE( "plans are row-major with the last axis fastest" )
{
    const SamplePlan p( { { 0, 1, 1 }, { 0, 2, 1 } } );
    REQUIRE( p.size() == 6 );
    CHECK( p.point( 0 ) == std::vector< double >{ 0, 0 } );
    CHECK( p.point( 1 ) == std::vector< double >{ 0, 1 } );
    CHECK( p.point( 3 ) == std::vector< double >{ 1, 0 } );
    CHECK( p.join( p ).dims() == 4 );
    CHECK( p.join( p ).slice( 2, 2 ) == p );
    CHECK_THROWS_AS( SamplePlan( { { 1, 0, 1 } } ), InvariantViolation );
    CHECK_THROWS_AS( SamplePlan( { { 0, 1, 0 } } ), InvariantViolation );
}

TEST_CASE( "worst sample ties go to the smaller index" )
{
    WorstSample a, b;
    a.consider( -1.0, 10, "x" );
    b.consider( -1.0, 3, "y" );
    a.merge( b );
    CHECK( a.index == 3 );
    CHECK( a.condition == "y" );
    WorstSample empty;
    a.merge( empty );
    CHECK( a.index == 3 );
}

TEST_CASE( "chunked loops cover the range and rethrow" )
{
    for ( unsigned jobs : { 0u, 1u, 3u, 8u } )
    {
        std::vector< std::atomic< int > > hits( 100 );
        for_chunks( hits.size(), jobs, [ & ]( std::size_t, std::size_t b, std::size_t e ) {
            for ( auto i = b; i < e; ++i )
                ++hits[ i ];
        } );
        for ( auto& h : hits )
            CHECK( h == 1 );
    }
    CHECK_THROWS_AS( for_chunks( 10, 4, []( std::size_t c, std::size_t, std::size_t ) {
                         if ( c == 2 )
                             throw std::runtime_error( "boom" );
                     } ),
                     std::runtime_error );
}
