#include "agl/dsl.hpp"
#include "agl/errors.hpp"
#include "agl/expr.hpp"

#include "doctest.h"
#include "generators.hpp"

#include <cmath>

using namespace agl;

namespace
{

const Expr x = Expr::var( "x1" );
const Expr a = Expr::var( "a1" );

double at( const Expr& e, double xv, double av = 0.0 )
{
    return eval_expr( e, { { "x1", xv }, { "a1", av } } );
}

} // namespace

TEST_CASE( "evaluation" )
{
    CHECK( at( x * x + a * x, 3.0, 2.0 ) == 15.0 );
    CHECK( at( pow( x, -2 ), 2.0 ) == 0.25 );
    CHECK( at( min( x, a ) + max( x, a ) + abs( -x ), -1.0, 4.0 ) == 4.0 );
    CHECK_THROWS_AS( at( x / a, 1.0, 0.0 ), EvaluationError );
    CHECK_THROWS_AS( at( pow( x, -1 ), 0.0 ), EvaluationError );
    CHECK_THROWS_AS( eval_expr( x, {} ), EvaluationError );
    CHECK_THROWS_AS( at( exp( x ), 1000.0 ), EvaluationError );
}

TEST_CASE( "derivatives" )
{
    const auto d = diff_expr( pow( x, 2 ) + a * x, "x1" );
    for ( double xv : { -1.0, 0.0, 2.5 } )
        for ( double av : { -2.0, 3.0 } )
            CHECK( at( d, xv, av ) == doctest::Approx( 2 * xv + av ) );
    CHECK( at( diff_expr( sin( x ), "x1" ), 0.0 ) == 1.0 );
    CHECK( diff_expr( a * a, "x1" ).is_constant( 0.0 ) );
    CHECK_THROWS_AS( diff_expr( abs( x ), "x1" ), EvaluationError );
    CHECK_THROWS_AS( diff_expr( max( x, a ), "x1" ), EvaluationError );
}

TEST_CASE( "random cubic polynomials match central differences" )
{
    gen::Rng rng( 51 );
    std::uniform_real_distribution< double > coeff( -3.0, 3.0 ), point( -2.0, 2.0 );
    for ( int poly = 0; poly < 20; ++poly )
    {
        const Expr p = Expr::constant( coeff( rng ) ) * pow( x, 3 ) + Expr::constant( coeff( rng ) ) * pow( x, 2 ) * a +
                       Expr::constant( coeff( rng ) ) * x + Expr::constant( coeff( rng ) );
        const auto dp = diff_expr( p, "x1" );
        for ( int i = 0; i < 100; ++i )
        {
            const double xv = point( rng ), av = point( rng ), h = 1e-4;
            const double fd = ( at( p, xv + h, av ) - at( p, xv - h, av ) ) / ( 2 * h );
            const double sym = at( dp, xv, av );
            CHECK( std::fabs( sym - fd ) / std::max( { 1.0, std::fabs( sym ), std::fabs( fd ) } ) < 1e-6 );
        }
    }
}

TEST_CASE( "substitution and renaming" )
{
    const auto e = x * a + x;
    const auto s = substitute( e, { { "x1", a }, { "a1", x } } );
    CHECK( s.str() == "a1*x1 + a1" );
    CHECK( rename_vars( e, { { "x1", "x2" } } ).str() == "x2*a1 + x2" );
    CHECK( free_vars( e ) == std::set< std::string >{ "a1", "x1" } );
}

TEST_CASE( "compiled expressions agree with the tree evaluator" )
{
    gen::Rng rng( 52 );
    std::uniform_real_distribution< double > point( -2.0, 2.0 );
    const std::vector< std::string > vars{ "x1", "a1" };
    int compared = 0;
    for ( int trial = 0; trial < 300; ++trial )
    {
        const auto e = gen::random_expr( rng, vars, 4 );
        const CompiledExpr c( e, vars );
        const std::vector< double > v{ point( rng ), point( rng ) };
        double tree = 0.0;
        try
        {
            tree = eval_expr( e, { { "x1", v[ 0 ] }, { "a1", v[ 1 ] } } );
        }
        catch ( const EvaluationError& )
        {
            CHECK_THROWS_AS( (void)c( v ), EvaluationError );
            continue;
        }
        CHECK( c( v ) == tree );
        ++compared;
    }
    CHECK( compared > 100 );
}

TEST_CASE( "printing follows precedence" )
{
    CHECK( ( x - ( a - x ) ).str() == "x1 - (a1 - x1)" );
    CHECK( ( ( x - a ) - x ).str() == "x1 - a1 - x1" );
    CHECK( ( x * ( a / x ) ).str() == "x1*(a1/x1)" );
    CHECK( pow( -x, 2 ).str() == "(-x1)^2" );
    CHECK( ( -pow( x, 2 ) ).str() == "-x1^2" );
    CHECK( pow( Expr::constant( -2 ), 2 ).str() == "(-2)^2" );
    CHECK( ( x + Expr::constant( -2 ) ).str() == "x1 + -2" );
    CHECK( ( -Expr::constant( 2 ) ).str() == "-(2)" );
    CHECK( min( x, a ).str() == "min(x1, a1)" );
}

TEST_CASE( "parsing" )
{
    CHECK( parse_expr( "2*x1 + sin(a1)" ) ==
           Expr::binary( ExprOp::add, Expr::constant( 2 ) * x, Expr::unary( ExprOp::sin, a ) ) );
    CHECK( parse_expr( "x1^2 - 0.5*x1" ) == pow( x, 2 ) - Expr::constant( 0.5 ) * x );
    CHECK( parse_expr( "-2^2" ) == -pow( Expr::constant( 2 ), 2 ) );
    CHECK( parse_expr( "-2" ) == Expr::constant( -2 ) );
    CHECK( parse_expr( "x1^-2" ) == pow( x, -2 ) );
    CHECK( parse_expr( ".5e1" ) == Expr::constant( 5 ) );

    try
    {
        (void)parse_expr( "2*(x1" );
        FAIL( "expected a parse error" );
    }
    catch ( const ParseError& e )
    {
        CHECK( e.span().column == 6 );
        CHECK( std::find( e.expected().begin(), e.expected().end(), ")" ) != e.expected().end() );
    }
    CHECK_THROWS_AS( parse_expr( "x1 $ 2" ), ParseError );
    CHECK_THROWS_AS( parse_expr( "foo(x1)" ), ParseError );
    CHECK_THROWS_AS( parse_expr( "x1^0.5" ), ParseError );
    CHECK_THROWS_AS( parse_expr( "" ), ParseError );
}

TEST_CASE( "random expressions survive printing and parsing" )
{
    gen::Rng rng( 53 );
    for ( int trial = 0; trial < 500; ++trial )
    {
        const auto e = gen::random_expr( rng, { "x1", "x2", "a1", "o1" }, 5 );
        CHECK_MESSAGE( parse_expr( e.str() ) == e, e.str() );
    }
}
