#include "agl/bool_cert.hpp"
#include "agl/lens.hpp"
#include "agl/machine.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace agl;

namespace
{

FiniteSet atoms( const std::string& prefix, std::size_t n )
{
    std::vector< Symbol > xs;
    for ( std::size_t i = 0; i < n; ++i )
        xs.emplace_back( prefix + std::to_string( i ) );
    return FiniteSet( xs );
}

// A counter modulo n that reports its parity and can only step or hold.
Machine counter( std::size_t n )
{
    const auto iface = Interface::simple( FiniteSet{ "even", "odd" }, FiniteSet{ "hold", "step" } );
    const auto states = atoms( "c", n );
    return Machine::tabulate(
        states, iface, ChangeKind::deterministic,
        [ & ]( const Symbol& s ) { return Symbol( states.index_of( s, "state" ) % 2 ? "odd" : "even" ); },
        [ & ]( const Symbol& s, const Symbol& a ) {
            const auto i = states.index_of( s, "state" );
            return std::vector< Symbol >{ a == Symbol( "step" ) ? states[ ( i + 1 ) % states.size() ] : s };
        } );
}

void certify_counter( benchmark::State& state )
{
    const auto m = counter( static_cast< std::size_t >( state.range( 0 ) ) );
    const MachineCertificate cert{ Predicate::constant( m.states(), true ),
                                   InterfaceCertificate::tabulate(
                                       m.iface(), []( const Symbol& ) { return true; },
                                       []( const Symbol&, const Symbol& ) { return true; } ) };
    for ( auto _ : state )
        benchmark::DoNotOptimize( certify_machine( m, cert ) );
    state.SetItemsProcessed( state.iterations() * state.range( 0 ) * 2 );
}
BENCHMARK( certify_counter )->RangeMultiplier( 4 )->Range( 16, 16384 );

void couple_cascade( benchmark::State& state )
{
    const auto n = static_cast< std::size_t >( state.range( 0 ) );
    const auto a = atoms( "a", 2 );
    const auto o1 = atoms( "p", 2 );
    const auto mid = atoms( "m", 2 );
    const auto o2 = atoms( "q", 2 );
    const auto first_iface = Interface::simple( FiniteSet::product( o1, mid ), a );
    const auto second_iface = Interface::simple( o2, FiniteSet::product( mid, a ) );
    const auto s1 = atoms( "x", n );
    const auto s2 = atoms( "y", n );
    const auto first = Machine::tabulate(
        s1, first_iface, ChangeKind::deterministic,
        [ & ]( const Symbol& s ) { return first_iface.obs()[ s1.index_of( s, "state" ) % first_iface.obs().size() ]; },
        [ & ]( const Symbol& s, const Symbol& ) {
            return std::vector< Symbol >{ s1[ ( s1.index_of( s, "state" ) + 1 ) % s1.size() ] };
        } );
    const auto second = Machine::tabulate(
        s2, second_iface, ChangeKind::deterministic,
        [ & ]( const Symbol& s ) { return o2[ s2.index_of( s, "state" ) % o2.size() ]; },
        [ & ]( const Symbol& s, const Symbol& ) {
            return std::vector< Symbol >{ s2[ ( s2.index_of( s, "state" ) * 3 + 1 ) % s2.size() ] };
        } );
    const std::vector< Machine > parts{ first, second };
    const auto wiring = make_cascade( a, o1, mid, o2 );
    for ( auto _ : state )
        benchmark::DoNotOptimize( couple( parts, wiring ) );
    state.SetItemsProcessed( state.iterations() * state.range( 0 ) * state.range( 0 ) );
}
BENCHMARK( couple_cascade )->RangeMultiplier( 2 )->Range( 4, 64 );

void compose_lenses( benchmark::State& state )
{
    const auto n = static_cast< std::size_t >( state.range( 0 ) );
    const auto iface = Interface::simple( atoms( "o", n ), atoms( "a", n ) );
    const auto shift = Lens::tabulate(
        iface, iface,
        [ & ]( const Symbol& o ) { return iface.obs()[ ( iface.obs().index_of( o, "obs" ) + 1 ) % n ]; },
        [ & ]( const Symbol&, const Symbol& a ) { return a; } );
    for ( auto _ : state )
        benchmark::DoNotOptimize( compose_lens( shift, shift ) );
}
BENCHMARK( compose_lenses )->RangeMultiplier( 4 )->Range( 4, 256 );

} // namespace
