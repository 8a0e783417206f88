#include "agl/machine.hpp"
#include "agl/errors.hpp"

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace agl;

namespace
{

Machine toggle()
{
    return Machine::tabulate(
        FiniteSet{ "off", "on" }, Interface::simple( FiniteSet{ "lamp" }, FiniteSet{ "press" } ),
        ChangeKind::deterministic, []( const Symbol& ) { return Symbol( "lamp" ); },
        []( const Symbol& s, const Symbol& ) { return std::vector< Symbol >{ s == Symbol( "on" ) ? "off" : "on" }; } );
}

Machine one_state( const std::string& state, const Interface& iface, const Symbol& obs )
{
    return Machine::tabulate(
        FiniteSet{ state }, iface, ChangeKind::deterministic, [ obs ]( const Symbol& ) { return obs; },
        [ state ]( const Symbol&, const Symbol& ) { return std::vector< Symbol >{ state }; } );
}

} // namespace

TEST_CASE( "traces" )
{
    const auto m = toggle();
    CHECK( run_trace( m, "off", {} ) == std::vector< Symbol >{ "off" } );
    const std::vector< Symbol > presses{ "press", "press", "press" };
    CHECK( run_trace( m, "off", presses ) == std::vector< Symbol >{ "off", "on", "off", "on" } );
    const std::vector< Symbol > bad{ "press", "kick" };
    CHECK_THROWS_AS( run_trace( m, "off", bad ), TraceError );
}

TEST_CASE( "machines reject partial or ill-typed tables" )
{
    const auto iface = Interface::simple( FiniteSet{ "o" }, FiniteSet{ "a", "b" } );
    CHECK_THROWS_AS( Machine( FiniteSet{ "s" }, iface, ChangeKind::deterministic, { 0 }, { { { 0 } } } ),
                     InvariantViolation );
    CHECK_THROWS_AS( Machine( FiniteSet{ "s" }, iface, ChangeKind::deterministic, { 0 }, { { { 0 }, { 0, 0 } } } ),
                     InvariantViolation );
    CHECK_THROWS_AS( Machine( FiniteSet{ "s" }, iface, ChangeKind::deterministic, { 1 }, { { { 0 }, { 0 } } } ),
                     InvariantViolation );
    CHECK_NOTHROW( Machine( FiniteSet{ "s" }, iface, ChangeKind::nondeterministic, { 0 }, { { {}, { 0 } } } ) );
}

TEST_CASE( "simulations" )
{
    const auto iface = Interface::simple( FiniteSet{ "ok" }, FiniteSet{ "go" } );
    const auto pair = Machine( FiniteSet{ "s0", "s1" }, iface, ChangeKind::deterministic, { 0, 0 }, { { { 1 } }, { { 0 } } } );
    const auto single = one_state( "t", iface, "ok" );

    CHECK( check_simulation( identity_simulation( pair ) ) );

    const Simulation collapse( pair, single, identity_chart( iface ), { 0, 0 } );
    CHECK( check_simulation( collapse ) );
    CHECK( oracle::check_simulation( collapse ) );

    // Perturb the source on one transition so its image leaves the target.
    const auto two = Machine( FiniteSet{ "t", "u" }, iface, ChangeKind::deterministic, { 0, 0 }, { { { 0 } }, { { 1 } } } );
    const Simulation broken( pair, two, identity_chart( iface ), { 0, 1 } );
    const auto v = check_simulation( broken );
    REQUIRE_FALSE( v.holds );
    REQUIRE( v.counterexample );
    CHECK( v.counterexample->point == Symbol( "s0" ) );
    CHECK( v.counterexample->action == Symbol( "go" ) );
    CHECK_FALSE( oracle::check_simulation( broken ) );
}

TEST_CASE( "generated simulations commute" )
{
    gen::Rng rng( 21 );
    for ( int trial = 0; trial < 200; ++trial )
    {
        const auto iface = gen::random_interface( rng, "", 3, 3 );
        const auto kind = gen::coin( rng ) ? ChangeKind::deterministic : ChangeKind::nondeterministic;
        const auto target = gen::random_machine( rng, iface, 3, kind, "t" );
        const auto sim = gen::random_simulation( rng, target, 6 );
        CHECK( check_simulation( sim ).holds );
        CHECK( oracle::check_simulation( sim ) );
    }
}

TEST_CASE( "cascade product of two one-state machines" )
{
    FiniteSet a{ "a" }, o1{ "p" }, m{ "m" }, o2{ "q" };
    const auto first = one_state( "x", Interface::simple( FiniteSet::product( o1, m ), a ), Symbol::pair( "p", "m" ) );
    const auto second = one_state( "y", Interface::simple( o2, FiniteSet::product( m, a ) ), "q" );
    const std::vector< Machine > parts{ first, second };
    const auto coupled = couple( parts, make_cascade( a, o1, m, o2 ) );
    CHECK( coupled.states().size() == 1 );
    CHECK( coupled.states()[ 0 ] == Symbol::pair( "x", "y" ) );
    CHECK( coupled.iface().obs()[ coupled.view( 0 ) ] == Symbol::pair( "p", "q" ) );
    CHECK( coupled.fiber( 0 ) == a );
    CHECK( coupled.update( 0, 0 ) == Change{ 0 } );
}

TEST_CASE( "coupling follows view = w . v and update = u(s, w#(v(s), a))" )
{
    gen::Rng rng( 22 );
    for ( int trial = 0; trial < 100; ++trial )
    {
        const auto i1 = gen::random_interface( rng, "p", 2, 2 );
        const auto i2 = gen::random_interface( rng, "q", 2, 2 );
        const auto kind = gen::coin( rng ) ? ChangeKind::deterministic : ChangeKind::nondeterministic;
        const std::vector< Machine > parts{ gen::random_machine( rng, i1, 2, kind, "s" ),
                                            gen::random_machine( rng, i2, 2, kind, "t" ) };
        const auto product = parallel_machines( parts );
        const auto outer = gen::random_interface( rng, "r", 3, 2 );
        const auto wiring = gen::random_lens( rng, product.iface(), outer );
        const auto m = couple( parts, wiring );
        REQUIRE( m.states() == product.states() );
        for ( std::size_t s = 0; s < m.states().size(); ++s )
        {
            const auto inner_obs = product.iface().obs()[ product.view( s ) ];
            CHECK( m.iface().obs()[ m.view( s ) ] == wiring.fwd( inner_obs ) );
            for ( std::size_t a = 0; a < m.fiber( s ).size(); ++a )
            {
                const auto inner_act = wiring.bwd( inner_obs, m.fiber( s )[ a ] );
                const auto ai = product.fiber( s ).index_of( inner_act );
                CHECK( m.update( s, a ) == product.update( s, ai ) );
            }
        }
    }
}
