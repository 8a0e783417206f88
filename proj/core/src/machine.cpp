#include "agl/machine.hpp"

#include <algorithm>

namespace agl
{

const char* to_string( ChangeKind kind )
{
    switch ( kind )
    {
    case ChangeKind::deterministic:
        return "deterministic";
    case ChangeKind::nondeterministic:
        return "nondeterministic";
    }
    return "?";
}

Change pair_changes( ChangeKind kind, const Change& c1, const Change& c2, std::size_t n2 )
{
    if ( kind == ChangeKind::deterministic )
        return { c1.at( 0 ) * n2 + c2.at( 0 ) };

    // i-major product of two sorted lists is sorted.
    Change out;
    out.reserve( c1.size() * c2.size() );
    for ( auto x : c1 )
        for ( auto y : c2 )
            out.push_back( x * n2 + y );
    return out;
}

Change push_change( ChangeKind kind, const Change& c, std::span< const Index > sigma )
{
    if ( kind == ChangeKind::deterministic )
        return { sigma[ c.at( 0 ) ] };

    Change out;
    out.reserve( c.size() );
    for ( auto s : c )
        out.push_back( sigma[ s ] );
    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    return out;
}

Machine::Machine( FiniteSet states, Interface iface, ChangeKind kind, std::vector< Index > view,
                  std::vector< std::vector< Change > > update )
    : _states{ std::move( states ) }, _iface{ std::move( iface ) }, _kind{ kind }, _view{ std::move( view ) },
      _update{ std::move( update ) }
{
    const auto n = _states.size();
    if ( _view.size() != n )
        throw InvariantViolation( "machine view is not total on its states" );
    if ( _update.size() != n )
        throw InvariantViolation( "machine update is not total on its states" );

    for ( Index s = 0; s < n; ++s )
    {
        const auto& name = _states[ s ];
        if ( _view[ s ] >= _iface.obs().size() )
            throw InvariantViolation( "view of state " + name.str() + " is not an observation" );

        const auto& fiber = _iface.actions( _view[ s ] );
        if ( _update[ s ].size() != fiber.size() )
            throw InvariantViolation( "update at state " + name.str() + " must be defined exactly on the actions "
                                      + fiber.str() );

        for ( Index a = 0; a < fiber.size(); ++a )
        {
            const auto& c = _update[ s ][ a ];
            const auto where = "update(" + name.str() + ", " + fiber[ a ].str() + ")";
            if ( _kind == ChangeKind::deterministic && c.size() != 1 )
                throw InvariantViolation( where + " must be a single state in a deterministic machine" );
            if ( !std::is_sorted( c.begin(), c.end() ) || std::adjacent_find( c.begin(), c.end() ) != c.end() )
                throw InvariantViolation( where + " is not a canonical state set" );
            if ( !c.empty() && c.back() >= n )
                throw InvariantViolation( where + " names an unknown state" );
        }
    }
}

Machine Machine::tabulate( FiniteSet states, Interface iface, ChangeKind kind, const ViewFn& view,
                           const UpdateFn& update )
{
    const auto n = states.size();
    std::vector< Index > v( n );
    std::vector< std::vector< Change > > u( n );
    for ( Index s = 0; s < n; ++s )
    {
        v[ s ] = iface.obs().index_of( view( states[ s ] ), "view image" );
        for ( const auto& a : iface.actions( v[ s ] ) )
        {
            Change c;
            for ( const auto& next : update( states[ s ], a ) )
                c.push_back( states.index_of( next, "update image" ) );
            std::sort( c.begin(), c.end() );
            c.erase( std::unique( c.begin(), c.end() ), c.end() );
            u[ s ].push_back( std::move( c ) );
        }
    }
    return Machine( std::move( states ), std::move( iface ), kind, std::move( v ), std::move( u ) );
}

Machine parallel_machines( const Machine& m1, const Machine& m2 )
{
    if ( m1.kind() != m2.kind() )
        throw InterfaceMismatch( std::string( "cannot run a " ) + to_string( m1.kind() ) + " machine alongside a "
                                 + to_string( m2.kind() ) + " one" );

    auto states = FiniteSet::product( m1.states(), m2.states() );
    auto iface = parallel_interface( m1.iface(), m2.iface() );

    const auto n1 = m1.states().size();
    const auto n2 = m2.states().size();
    const auto obs2 = m2.iface().obs().size();
    std::vector< Index > view( n1 * n2 );
    std::vector< std::vector< Change > > update( n1 * n2 );
    for ( Index i = 0; i < n1; ++i )
    {
        for ( Index j = 0; j < n2; ++j )
        {
            const auto s = i * n2 + j;
            view[ s ] = m1.view( i ) * obs2 + m2.view( j );
            const auto k1 = m1.fiber( i ).size();
            const auto k2 = m2.fiber( j ).size();
            update[ s ].reserve( k1 * k2 );
            for ( Index x = 0; x < k1; ++x )
                for ( Index y = 0; y < k2; ++y )
                    update[ s ].push_back( pair_changes( m1.kind(), m1.update( i, x ), m2.update( j, y ), n2 ) );
        }
    }
    return Machine( std::move( states ), std::move( iface ), m1.kind(), std::move( view ), std::move( update ) );
}

Machine parallel_machines( std::span< const Machine > machines )
{
    if ( machines.empty() )
        throw InvariantViolation( "parallel product of zero machines" );
    Machine acc = machines[ 0 ];
    for ( std::size_t i = 1; i < machines.size(); ++i )
        acc = parallel_machines( acc, machines[ i ] );
    return acc;
}

Machine couple( const Machine& m, const Lens& wiring )
{
    require_same_interface( wiring.src(), m.iface(), "couple: wiring source vs machine interface" );

    const auto n = m.states().size();
    std::vector< Index > view( n );
    std::vector< std::vector< Change > > update( n );
    for ( Index s = 0; s < n; ++s )
    {
        const auto o = m.view( s );
        view[ s ] = wiring.fwd( o );
        const auto k = wiring.dst().actions( view[ s ] ).size();
        update[ s ].reserve( k );
        for ( Index a = 0; a < k; ++a )
            update[ s ].push_back( m.update( s, wiring.bwd( o, a ) ) );
    }
    return Machine( m.states(), wiring.dst(), m.kind(), std::move( view ), std::move( update ) );
}

Machine couple( std::span< const Machine > machines, const Lens& wiring )
{
    return couple( parallel_machines( machines ), wiring );
}

Simulation::Simulation( Machine src, Machine dst, Chart chart, std::vector< Index > state_map )
    : _src{ std::move( src ) }, _dst{ std::move( dst ) }, _chart{ std::move( chart ) }, _map{ std::move( state_map ) }
{
    if ( _src.kind() != _dst.kind() )
        throw InterfaceMismatch( "simulation between machines of different change kinds" );
    require_same_interface( _src.iface(), _chart.src(), "simulation: chart source vs source machine" );
    require_same_interface( _dst.iface(), _chart.dst(), "simulation: chart target vs target machine" );
    if ( _map.size() != _src.states().size() )
        throw InvariantViolation( "simulation state map is not total" );
    for ( auto t : _map )
        if ( t >= _dst.states().size() )
            throw InvariantViolation( "simulation state map leaves the target states" );
}

Simulation identity_simulation( const Machine& m )
{
    std::vector< Index > id( m.states().size() );
    for ( Index s = 0; s < id.size(); ++s )
        id[ s ] = s;
    return Simulation( m, m, identity_chart( m.iface() ), std::move( id ) );
}

Verdict check_simulation( const Simulation& sim )
{
    const auto& m1 = sim.src();
    const auto& m2 = sim.dst();
    const auto& f = sim.chart();

    for ( Index s = 0; s < m1.states().size(); ++s )
    {
        const auto t = sim.map( s );
        const auto o1 = m1.view( s );
        if ( m2.view( t ) != f.fwd( o1 ) )
            return Verdict::fail( "view square v2(sigma(s)) = f(v1(s))", m1.states()[ s ] );

        for ( Index a = 0; a < m1.fiber( s ).size(); ++a )
        {
            const auto pushed = f.push( o1, a );
            const auto lhs = m2.update( t, pushed );
            const auto rhs = push_change( m1.kind(), m1.update( s, a ), sim.state_map() );
            if ( lhs != rhs )
                return Verdict::fail( "update square u2(sigma(s), f#(v1(s), a)) = T sigma(u1(s, a))",
                                      m1.states()[ s ], m1.fiber( s )[ a ] );
        }
    }
    return Verdict::pass();
}

std::vector< Symbol > run_trace( const Machine& m, const Symbol& s0, std::span< const Symbol > actions )
{
    if ( m.kind() != ChangeKind::deterministic )
        throw InvariantViolation( "run_trace needs a deterministic machine" );

    auto s = m.states().index_of( s0, "initial state" );
    std::vector< Symbol > trace{ m.states()[ s ] };
    trace.reserve( actions.size() + 1 );
    for ( std::size_t i = 0; i < actions.size(); ++i )
    {
        const auto a = m.fiber( s ).find( actions[ i ] );
        if ( !a )
            throw TraceError( i, "step " + std::to_string( i ) + ": action " + actions[ i ].str()
                                     + " is not available in state " + m.states()[ s ].str() );
        s = m.update( s, *a ).front();
        trace.push_back( m.states()[ s ] );
    }
    return trace;
}

} // namespace agl
