#include "agl/lens.hpp"

#include "agl/errors.hpp"

#include <set>

namespace agl
{

Interface::Interface( FiniteSet obs, std::vector< FiniteSet > actions )
    : _obs{ std::move( obs ) }, _actions{ std::move( actions ) }
{
    if ( _actions.size() != _obs.size() )
        throw InvariantViolation( "interface has " + std::to_string( _obs.size() ) + " observations but "
                                  + std::to_string( _actions.size() ) + " action sets" );
}

Interface Interface::simple( FiniteSet obs, FiniteSet actions )
{
    std::vector< FiniteSet > fibers( obs.size(), actions );
    return Interface( std::move( obs ), std::move( fibers ) );
}

const FiniteSet& Interface::actions( const Symbol& o ) const
{
    return _actions[ _obs.index_of( o, "observation" ) ];
}

bool Interface::is_simple() const
{
    for ( std::size_t i = 1; i < _actions.size(); ++i )
        if ( _actions[ i ] != _actions[ 0 ] )
            return false;
    return true;
}

const FiniteSet& Interface::simple_actions() const
{
    if ( _actions.empty() )
        throw InvariantViolation( "interface with no observations has no action set" );
    if ( !is_simple() )
        throw InvariantViolation( "interface is not simple: action sets differ between observations" );
    return _actions[ 0 ];
}

Interface parallel_interface( const Interface& a, const Interface& b )
{
    auto obs = FiniteSet::product( a.obs(), b.obs() );
    std::vector< FiniteSet > fibers;
    fibers.reserve( obs.size() );
    for ( Index i = 0; i < a.obs().size(); ++i )
        for ( Index j = 0; j < b.obs().size(); ++j )
            fibers.push_back( FiniteSet::product( a.actions( i ), b.actions( j ) ) );
    return Interface( std::move( obs ), std::move( fibers ) );
}

std::optional< std::string > interface_difference( const Interface& expected, const Interface& actual )
{
    if ( expected.obs() != actual.obs() )
        return "observation sets differ: expected " + expected.obs().str() + ", got " + actual.obs().str();

    for ( Index o = 0; o < expected.obs().size(); ++o )
    {
        if ( expected.actions( o ) != actual.actions( o ) )
            return "action sets under observation " + expected.obs()[ o ].str() + " differ: expected "
                 + expected.actions( o ).str() + ", got " + actual.actions( o ).str();
    }
    return std::nullopt;
}

void require_same_interface( const Interface& expected, const Interface& actual, const std::string& context )
{
    if ( auto diff = interface_difference( expected, actual ) )
        throw InterfaceMismatch( context + ": " + *diff );
}

namespace
{

void check_tables( const Interface& src, const Interface& dst, const std::vector< Index >& fwd,
                   const std::vector< std::vector< Index > >& back, bool backward, const char* kind )
{
    const std::string name = kind;
    if ( fwd.size() != src.obs().size() )
        throw InvariantViolation( name + " forward map is not total on the source observations" );
    if ( back.size() != src.obs().size() )
        throw InvariantViolation( name + " action map is not total on the source observations" );

    for ( Index o = 0; o < fwd.size(); ++o )
    {
        if ( fwd[ o ] >= dst.obs().size() )
            throw InvariantViolation( name + " sends observation " + src.obs()[ o ].str()
                                      + " outside the target observations" );

        // Lens: domain is the target fiber, codomain the source fiber.
        // Chart: the other way round.
        const auto& domain = backward ? dst.actions( fwd[ o ] ) : src.actions( o );
        const auto& codomain = backward ? src.actions( o ) : dst.actions( fwd[ o ] );
        if ( back[ o ].size() != domain.size() )
            throw InvariantViolation( name + " action map at observation " + src.obs()[ o ].str()
                                      + " is not defined on exactly its fiber " + domain.str() );
        for ( Index a = 0; a < back[ o ].size(); ++a )
        {
            if ( back[ o ][ a ] >= codomain.size() )
                throw InvariantViolation( name + " action map at (" + src.obs()[ o ].str() + ", "
                                          + domain[ a ].str() + ") lands outside the fiber "
                                          + codomain.str() );
        }
    }
}

} // namespace

Lens::Lens( Interface src, Interface dst, std::vector< Index > fwd, std::vector< std::vector< Index > > bwd )
    : _src{ std::move( src ) }, _dst{ std::move( dst ) }, _fwd{ std::move( fwd ) }, _bwd{ std::move( bwd ) }
{
    check_tables( _src, _dst, _fwd, _bwd, true, "lens" );
}

Lens Lens::tabulate( Interface src, Interface dst, const ForwardFn& fwd, const BackwardFn& bwd )
{
    std::vector< Index > f( src.obs().size() );
    std::vector< std::vector< Index > > b( src.obs().size() );
    for ( Index o = 0; o < src.obs().size(); ++o )
    {
        const auto& o1 = src.obs()[ o ];
        f[ o ] = dst.obs().index_of( fwd( o1 ), "lens forward image" );
        const auto& fiber = dst.actions( f[ o ] );
        b[ o ].reserve( fiber.size() );
        for ( const auto& a2 : fiber )
            b[ o ].push_back( src.actions( o ).index_of( bwd( o1, a2 ), "lens backward image" ) );
    }
    return Lens( std::move( src ), std::move( dst ), std::move( f ), std::move( b ) );
}

Symbol Lens::fwd( const Symbol& o1 ) const
{
    return _dst.obs()[ _fwd[ _src.obs().index_of( o1, "observation" ) ] ];
}

Symbol Lens::bwd( const Symbol& o1, const Symbol& a2 ) const
{
    const auto o = _src.obs().index_of( o1, "observation" );
    const auto a = _dst.actions( _fwd[ o ] ).index_of( a2, "action" );
    return _src.actions( o )[ _bwd[ o ][ a ] ];
}

Chart::Chart( Interface src, Interface dst, std::vector< Index > fwd, std::vector< std::vector< Index > > push )
    : _src{ std::move( src ) }, _dst{ std::move( dst ) }, _fwd{ std::move( fwd ) }, _push{ std::move( push ) }
{
    check_tables( _src, _dst, _fwd, _push, false, "chart" );
}

Chart Chart::tabulate( Interface src, Interface dst, const ForwardFn& fwd, const PushFn& push )
{
    std::vector< Index > f( src.obs().size() );
    std::vector< std::vector< Index > > p( src.obs().size() );
    for ( Index o = 0; o < src.obs().size(); ++o )
    {
        const auto& o1 = src.obs()[ o ];
        f[ o ] = dst.obs().index_of( fwd( o1 ), "chart forward image" );
        const auto& target_fiber = dst.actions( f[ o ] );
        for ( const auto& a1 : src.actions( o ) )
            p[ o ].push_back( target_fiber.index_of( push( o1, a1 ), "chart action image" ) );
    }
    return Chart( std::move( src ), std::move( dst ), std::move( f ), std::move( p ) );
}

Symbol Chart::fwd( const Symbol& o1 ) const
{
    return _dst.obs()[ _fwd[ _src.obs().index_of( o1, "observation" ) ] ];
}

Symbol Chart::push( const Symbol& o1, const Symbol& a1 ) const
{
    const auto o = _src.obs().index_of( o1, "observation" );
    const auto a = _src.actions( o ).index_of( a1, "action" );
    return _dst.actions( _fwd[ o ] )[ _push[ o ][ a ] ];
}

Lens compose_lens( const Lens& t, const Lens& w )
{
    require_same_interface( t.src(), w.dst(), "compose_lens: inner lens target vs outer lens source" );

    const auto n = w.src().obs().size();
    std::vector< Index > fwd( n );
    std::vector< std::vector< Index > > bwd( n );
    for ( Index o1 = 0; o1 < n; ++o1 )
    {
        const auto o2 = w.fwd( o1 );
        fwd[ o1 ] = t.fwd( o2 );
        const auto n3 = t.dst().actions( fwd[ o1 ] ).size();
        bwd[ o1 ].resize( n3 );
        for ( Index a3 = 0; a3 < n3; ++a3 )
            bwd[ o1 ][ a3 ] = w.bwd( o1, t.bwd( o2, a3 ) );
    }
    return Lens( w.src(), t.dst(), std::move( fwd ), std::move( bwd ) );
}

Lens identity_lens( const Interface& iface )
{
    const auto n = iface.obs().size();
    std::vector< Index > fwd( n );
    std::vector< std::vector< Index > > bwd( n );
    for ( Index o = 0; o < n; ++o )
    {
        fwd[ o ] = o;
        bwd[ o ].resize( iface.actions( o ).size() );
        for ( Index a = 0; a < bwd[ o ].size(); ++a )
            bwd[ o ][ a ] = a;
    }
    return Lens( iface, iface, std::move( fwd ), std::move( bwd ) );
}

Lens parallel_lens( const Lens& l1, const Lens& l2 )
{
    auto src = parallel_interface( l1.src(), l2.src() );
    auto dst = parallel_interface( l1.dst(), l2.dst() );

    const auto n1 = l1.src().obs().size();
    const auto n2 = l2.src().obs().size();
    const auto m2 = l2.dst().obs().size();
    std::vector< Index > fwd( n1 * n2 );
    std::vector< std::vector< Index > > bwd( n1 * n2 );
    for ( Index i = 0; i < n1; ++i )
    {
        for ( Index j = 0; j < n2; ++j )
        {
            const auto o = i * n2 + j;
            const auto fi = l1.fwd( i );
            const auto fj = l2.fwd( j );
            fwd[ o ] = fi * m2 + fj;

            const auto k1 = l1.dst().actions( fi ).size();
            const auto k2 = l2.dst().actions( fj ).size();
            const auto s2 = l2.src().actions( j ).size();
            bwd[ o ].resize( k1 * k2 );
            for ( Index x = 0; x < k1; ++x )
                for ( Index y = 0; y < k2; ++y )
                    bwd[ o ][ x * k2 + y ] = l1.bwd( i, x ) * s2 + l2.bwd( j, y );
        }
    }
    return Lens( std::move( src ), std::move( dst ), std::move( fwd ), std::move( bwd ) );
}

Lens make_cascade( const FiniteSet& a, const FiniteSet& o1, const FiniteSet& m, const FiniteSet& o2 )
{
    auto first = Interface::simple( FiniteSet::product( o1, m ), a );
    auto second = Interface::simple( o2, FiniteSet::product( m, a ) );
    auto src = parallel_interface( first, second );
    auto dst = Interface::simple( FiniteSet::product( o1, o2 ), a );

    return Lens::tabulate(
        std::move( src ), std::move( dst ),
        []( const Symbol& o ) {
            // ((o1, m), o2) -> (o1, o2)
            return Symbol::pair( o[ 0 ][ 0 ], o[ 1 ] );
        },
        []( const Symbol& o, const Symbol& act ) {
            // (((o1, m), o2), a) -> (a, (m, a))
            return Symbol::pair( act, Symbol::pair( o[ 0 ][ 1 ], act ) );
        } );
}

Lens make_feedback( const FiniteSet& a, const FiniteSet& m, const FiniteSet& o )
{
    auto src = Interface::simple( FiniteSet::product( m, o ), FiniteSet::product( a, m ) );
    auto dst = Interface::simple( o, a );

    return Lens::tabulate(
        std::move( src ), std::move( dst ), []( const Symbol& mo ) { return mo[ 1 ]; },
        []( const Symbol& mo, const Symbol& act ) { return Symbol::pair( act, mo[ 0 ] ); } );
}

namespace
{

// Splits a product carrier {(x, y)} into its factors, if it is one.
std::optional< std::pair< FiniteSet, FiniteSet > > split_product( const FiniteSet& set )
{
    std::set< Symbol > left, right;
    for ( const auto& s : set )
    {
        if ( !s.is_tuple() || s.parts().size() != 2 )
            return std::nullopt;
        left.insert( s[ 0 ] );
        right.insert( s[ 1 ] );
    }
    FiniteSet l( std::vector< Symbol >( left.begin(), left.end() ) );
    FiniteSet r( std::vector< Symbol >( right.begin(), right.end() ) );
    if ( FiniteSet::product( l, r ) != set )
        return std::nullopt;
    return std::pair{ std::move( l ), std::move( r ) };
}

const FiniteSet& require_simple( const Interface& iface, const char* who )
{
    if ( iface.obs().empty() || !iface.is_simple() )
        throw InvariantViolation( std::string( who ) + ": argument interface must be simple and nonempty" );
    return iface.simple_actions();
}

} // namespace

Lens make_cascade( const Interface& first, const Interface& second )
{
    const auto& a = require_simple( first, "make_cascade" );
    const auto& ma = require_simple( second, "make_cascade" );

    auto o1m = split_product( first.obs() );
    auto ma_split = split_product( ma );
    if ( !o1m || !ma_split )
        throw InvariantViolation( "make_cascade: expected interfaces <A | O1 x M> and <M x A | O2>" );
    if ( o1m->second != ma_split->first || ma_split->second != a )
        throw InterfaceMismatch( "make_cascade: the M and A carriers of the two boxes disagree" );

    return make_cascade( a, o1m->first, o1m->second, second.obs() );
}

Lens make_feedback( const Interface& inner )
{
    const auto& am = require_simple( inner, "make_feedback" );
    auto mo = split_product( inner.obs() );
    auto am_split = split_product( am );
    if ( !mo || !am_split || mo->first != am_split->second )
        throw InvariantViolation( "make_feedback: expected an interface <A x M | M x O>" );
    return make_feedback( am_split->first, mo->first, mo->second );
}

Chart compose_chart( const Chart& g, const Chart& f )
{
    require_same_interface( g.src(), f.dst(), "compose_chart: first chart target vs second chart source" );

    const auto n = f.src().obs().size();
    std::vector< Index > fwd( n );
    std::vector< std::vector< Index > > push( n );
    for ( Index o = 0; o < n; ++o )
    {
        const auto mid = f.fwd( o );
        fwd[ o ] = g.fwd( mid );
        push[ o ].resize( f.src().actions( o ).size() );
        for ( Index a = 0; a < push[ o ].size(); ++a )
            push[ o ][ a ] = g.push( mid, f.push( o, a ) );
    }
    return Chart( f.src(), g.dst(), std::move( fwd ), std::move( push ) );
}

Chart identity_chart( const Interface& iface )
{
    const auto n = iface.obs().size();
    std::vector< Index > fwd( n );
    std::vector< std::vector< Index > > push( n );
    for ( Index o = 0; o < n; ++o )
    {
        fwd[ o ] = o;
        push[ o ].resize( iface.actions( o ).size() );
        for ( Index a = 0; a < push[ o ].size(); ++a )
            push[ o ][ a ] = a;
    }
    return Chart( iface, iface, std::move( fwd ), std::move( push ) );
}

} // namespace agl
