#include "agl/ode.hpp"
#include "agl/dsl.hpp"
#include "agl/errors.hpp"

#include "doctest.h"
#include "fixtures.hpp"

#include <cmath>

using namespace agl;

namespace
{

OpenODE linear() { return fixture::load< OpenODE >( "linear_ode.agl" ); }
OpenODE decay() { return fixture::load< OpenODE >( "decay_ode.agl" ); }
OpenODE unstable() { return fixture::load< OpenODE >( "unstable_ode.agl" ); }
LyapunovCandidate linear_cand() { return fixture::load< LyapunovCandidate >( "linear_lyap.agl" ); }
LyapunovCandidate closed_cand() { return fixture::load< LyapunovCandidate >( "closed_lyap.agl" ); }

const std::vector< Interval > unit_box{ { -1.0, 1.0 } };

} // namespace

TEST_CASE( "storage functions" )
{
    CHECK( check_storage( parse_expr( "x1^2" ), unit_box, { 0.0 }, 0.01 ).holds );
    const auto tilted = check_storage( parse_expr( "x1^2 - 0.5*x1" ), { { -2, 2 } }, { 0.0 }, 0.01 );
    REQUIRE_FALSE( tilted.holds );
    CHECK( tilted.witness[ 0 ] > 0.0 );
    CHECK( tilted.witness[ 0 ] < 0.5 );
    CHECK_FALSE( check_storage( Expr(), unit_box, { 0.0 }, 0.01 ).holds );
    CHECK_FALSE( check_storage( parse_expr( "x1^2 + 1" ), unit_box, { 0.0 }, 0.01 ).holds );
}

TEST_CASE( "equilibrium and candidate validation" )
{
    auto ode = linear();
    CHECK_NOTHROW( ode.validate() );
    ode.field[ 0 ] = parse_expr( "-x1 + a1 + 1" );
    CHECK_THROWS_AS( ode.validate(), InvariantViolation );

    auto cand = linear_cand();
    cand.alpha = parse_expr( "a1^2 + x1" );
    CHECK_THROWS_AS( cand.validate( linear() ), InvariantViolation );
    cand = linear_cand();
    cand.lambda = PLFun::identity();
    CHECK_THROWS_AS( cand.validate( linear() ), InvariantViolation );
    cand = linear_cand();
    cand.phi = parse_expr( "x1^2 + 1" );
    CHECK_THROWS_AS( cand.validate( linear() ), InvariantViolation );
}

TEST_CASE( "LISS certification" )
{
    const auto v = certify_liss( linear(), linear_cand() );
    CHECK( v.holds );
    CHECK( v.worst_margin >= -1e-8 );
    CHECK( v.samples == 401 * 201 );
    CHECK( v.gradient.max_error < 1e-4 );

    CHECK( certify_liss( decay(), closed_cand() ).holds );

    const auto bad = certify_liss( unstable(), closed_cand() );
    REQUIRE_FALSE( bad.holds );
    CHECK( bad.condition == "decrease" );
    CHECK( bad.witness[ 0 ] != 0.0 );
}

TEST_CASE( "LISS verdicts do not depend on the number of jobs" )
{
    LissOptions one;
    LissOptions four;
    four.jobs = 4;
    const auto a = certify_liss( unstable(), closed_cand(), one );
    const auto b = certify_liss( unstable(), closed_cand(), four );
    CHECK( a.witness_index == b.witness_index );
    CHECK( a.worst_margin == b.worst_margin );
}

TEST_CASE( "gradient gate" )
{
    const auto plan = box_plan( unit_box, 0.01 );
    CHECK( gradient_gate( parse_expr( "x1^2 + sin(x1)" ), 1, plan ).max_error < 1e-6 );
    CHECK_THROWS_AS( gradient_gate( parse_expr( "cos(10000*x1)" ), 1, plan ), GradientGateFailure );
    CHECK_THROWS_AS( gradient_gate( parse_expr( "abs(x1)" ), 1, plan ), EvaluationError );
}

TEST_CASE( "K approximation" )
{
    const auto k = k_approx( parse_expr( "x1^2" ), unit_box, { 0.0 }, 0.01 );
    for ( int i = 0; i <= 100; ++i )
    {
        const double r = 0.01 * i;
        CHECK( std::fabs( k.upper( r ) - r * r ) <= 1e-12 );
        CHECK( std::fabs( k.lower( r ) - r * r ) <= 1e-12 );
    }
    CHECK( k.unbounded );
    CHECK( k.upper( 0.0 ) == 0.0 );

    const auto wavy = parse_expr( "x1^2*(2 + cos(10*x1))" );
    const auto w = k_approx( wavy, { { -1, 1 } }, { 0.0 }, 0.001 );
    for ( int i = -1000; i <= 1000; ++i )
    {
        const double x = 0.001 * i;
        const double phi = eval_expr( wavy, { { "x1", x } } );
        CHECK( w.lower( std::fabs( x ) ) <= phi + 1e-6 );
        CHECK( w.upper( std::fabs( x ) ) >= phi - 1e-6 );
    }
    CHECK_THROWS_AS( k_approx( parse_expr( "x1^2 - 0.5*x1" ), unit_box, { 0.0 }, 0.01 ), PremiseFailure );
}

TEST_CASE( "simulation against closed forms" )
{
    const auto t = simulate( decay(), { 1.0 }, {}, 1.0, 0.001 );
    CHECK( std::fabs( t.x.back()[ 0 ] - std::exp( -1.0 ) ) < 1e-6 );
    CHECK( t.t.back() == doctest::Approx( 1.0 ) );

    const auto driven = simulate( linear(), { 0.0 }, InputSignal::constant( { 1.0 } ), 1.0, 0.001 );
    CHECK( std::fabs( driven.x.back()[ 0 ] - ( 1.0 - std::exp( -1.0 ) ) ) < 1e-6 );
    CHECK( driven.input_sup == 1.0 );

    auto still = decay();
    still.field[ 0 ] = Expr();
    const auto c = simulate( still, { 0.7 }, {}, 2.0, 0.01 );
    for ( const auto& x : c.x )
        CHECK( x[ 0 ] == 0.7 );

    const auto escape = simulate( unstable(), { 1.0 }, {}, 5.0, 0.01 );
    CHECK( escape.left_domain );
    CHECK( escape.t.back() < 5.0 );
}

TEST_CASE( "piecewise-constant inputs" )
{
    const InputSignal s( { { 0.0, { 1.0 } }, { 0.5, { -2.0 } } } );
    CHECK( s.at( 0.2 )[ 0 ] == 1.0 );
    CHECK( s.at( 0.5 )[ 0 ] == -2.0 );
    CHECK( s.sup_norm( 0.4, { 0.0 } ) == 1.0 );
    CHECK( s.sup_norm( 1.0, { 0.0 } ) == 2.0 );
    CHECK_THROWS_AS( InputSignal( std::vector< InputPiece >{ { 0.1, { 1.0 } } } ), InvariantViolation );
    CHECK_THROWS_AS( InputSignal( { { 0.0, { 1.0 } }, { 0.0, { 2.0 } } } ), InvariantViolation );
}

TEST_CASE( "ISS bounds" )
{
    std::vector< Trajectory > free;
    for ( double x0 : { -2.0, -1.0, 0.5, 1.5 } )
        free.push_back( simulate( decay(), { x0 }, {}, 5.0, 0.001 ) );
    CHECK( check_iss_bound( free, PLFun::identity(), PLFun::identity(), PLFun::zero(), 1e-5 ).holds );

    std::vector< Trajectory > driven;
    for ( double x0 : { 0.0, 0.1, -0.5 } )
        driven.push_back( simulate( linear(), { x0 }, InputSignal::constant( { 1.0 } ), 5.0, 0.001 ) );
    CHECK( check_iss_bound( driven, PLFun::identity(), PLFun::identity(), PLFun::identity(), 1e-5 ).holds );
    const auto v = check_iss_bound( driven, PLFun::identity(), PLFun::identity(), PLFun::zero(), 1e-5 );
    CHECK_FALSE( v.holds );

    CHECK_THROWS_AS( check_iss_bound( free, PLFun::zero(), PLFun::identity(), PLFun::zero() ), InvariantViolation );
}

TEST_CASE( "falsification" )
{
    const auto found = falsify( unstable(), closed_cand(), { 1.0 }, 100 );
    REQUIRE( found.point );
    CHECK( found.evaluations < 100 );
    CHECK( found.margin < -1e-8 );

    CHECK_FALSE( falsify( linear(), linear_cand(), { 0.5, 0.2 }, 500 ).point );
    const auto none = falsify( unstable(), closed_cand(), { 1.0 }, 0 );
    CHECK_FALSE( none.point );
    CHECK( none.evaluations == 0 );
}

TEST_CASE( "certified systems decrease along trajectories" )
{
    // phi(x(t+h)) <= phi(x(t)) + h (alpha(a) - phi(x(t))) + C h^2 for the
    // linear fixture under a few constant inputs.
    const double h = 0.01, C = 10.0;
    for ( double a : { -1.0, 0.0, 0.5 } )
        for ( double x0 : { -2.0, 0.3, 1.9 } )
        {
            const auto t = simulate( linear(), { x0 }, InputSignal::constant( { a } ), 2.0, h );
            for ( std::size_t i = 0; i + 1 < t.x.size(); ++i )
            {
                const double phi = t.x[ i ][ 0 ] * t.x[ i ][ 0 ];
                const double next = t.x[ i + 1 ][ 0 ] * t.x[ i + 1 ][ 0 ];
                CHECK( next <= phi + h * ( a * a - phi ) + C * h * h );
            }
        }
}

TEST_CASE( "parallel systems are block diagonal" )
{
    const auto p = parallel_odes( linear(), decay() );
    CHECK( p.n == 2 );
    CHECK( p.m == 1 );
    CHECK( p.k == 2 );
    CHECK( p.field[ 1 ].str() == "-x2" );
    CHECK( p.view[ 1 ].str() == "x2" );
    CHECK_NOTHROW( p.validate() );
}
