#include "agl/symbol.hpp"
#include "agl/errors.hpp"

#include "doctest.h"

using namespace agl;

TEST_CASE( "symbols print and parse back" )
{
    const auto s = Symbol::pair( Symbol( "ok" ), Symbol::pair( "m0", "a" ) );
    CHECK( s.str() == "(ok,(m0,a))" );
    CHECK( parse_symbol( s.str() ) == s );
    CHECK( parse_symbol( "x" ) == Symbol( "x" ) );
    CHECK_THROWS_AS( parse_symbol( "(a,b" ), Error );
    CHECK_THROWS_AS( parse_symbol( "" ), Error );
}

TEST_CASE( "finite sets are sorted and reject duplicates" )
{
    FiniteSet s{ "b", "a", "c" };
    CHECK( s[ 0 ] == Symbol( "a" ) );
    CHECK( s.index_of( "c" ) == 2 );
    CHECK_FALSE( s.find( "z" ).has_value() );
    CHECK_THROWS_AS( ( FiniteSet{ "a", "a" } ), InvariantViolation );
    CHECK_THROWS_AS( (void)s.index_of( "z" ), InvariantViolation );
}

TEST_CASE( "products enumerate the first factor slowest" )
{
    FiniteSet a{ "x", "y" };
    FiniteSet b{ "0", "1", "2" };
    const auto p = FiniteSet::product( a, b );
    REQUIRE( p.size() == 6 );
    for ( std::size_t i = 0; i < 2; ++i )
        for ( std::size_t j = 0; j < 3; ++j )
            CHECK( p[ i * 3 + j ] == Symbol::pair( a[ i ], b[ j ] ) );
}
