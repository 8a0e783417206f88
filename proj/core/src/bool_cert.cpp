#include "agl/bool_cert.hpp"

namespace agl
{

Predicate::Predicate( FiniteSet carrier, std::vector< bool > truth )
    : _carrier{ std::move( carrier ) }, _truth{ std::move( truth ) }
{
    if ( _truth.size() != _carrier.size() )
        throw InvariantViolation( "predicate is not total on its carrier " + _carrier.str() );
}

Predicate Predicate::constant( FiniteSet carrier, bool value )
{
    const auto n = carrier.size();
    return Predicate( std::move( carrier ), std::vector< bool >( n, value ) );
}

Predicate Predicate::of_set( FiniteSet carrier, std::span< const Symbol > truths )
{
    std::vector< bool > t( carrier.size(), false );
    for ( const auto& s : truths )
        t[ carrier.index_of( s, "predicate element" ) ] = true;
    return Predicate( std::move( carrier ), std::move( t ) );
}

Predicate Predicate::of_set( FiniteSet carrier, std::initializer_list< Symbol > truths )
{
    return of_set( std::move( carrier ), std::span< const Symbol >( truths.begin(), truths.size() ) );
}

Predicate Predicate::tabulate( FiniteSet carrier, const std::function< bool( const Symbol& ) >& fn )
{
    std::vector< bool > t( carrier.size() );
    for ( Index i = 0; i < carrier.size(); ++i )
        t[ i ] = fn( carrier[ i ] );
    return Predicate( std::move( carrier ), std::move( t ) );
}

std::vector< Symbol > Predicate::true_elements() const
{
    std::vector< Symbol > out;
    for ( Index i = 0; i < _carrier.size(); ++i )
        if ( _truth[ i ] )
            out.push_back( _carrier[ i ] );
    return out;
}

InterfaceCertificate::InterfaceCertificate( Interface iface, std::vector< bool > gamma,
                                            std::vector< std::vector< bool > > alpha )
    : _iface{ std::move( iface ) }, _gamma{ std::move( gamma ) }, _alpha{ std::move( alpha ) }
{
    const auto& obs = _iface.obs();
    if ( _gamma.size() != obs.size() || _alpha.size() != obs.size() )
        throw InvariantViolation( "certificate is not total on the observations " + obs.str() );

    for ( Index o = 0; o < obs.size(); ++o )
    {
        const auto& fiber = _iface.actions( o );
        if ( _alpha[ o ].size() != fiber.size() )
            throw InvariantViolation( "assumption at observation " + obs[ o ].str()
                                      + " is not total on its actions " + fiber.str() );
        if ( _gamma[ o ] )
            continue;
        for ( Index a = 0; a < fiber.size(); ++a )
        {
            if ( _alpha[ o ][ a ] )
                throw InvariantViolation( "ill-formed certificate: the assumption must imply the guarantee, but alpha("
                                          + obs[ o ].str() + ", " + fiber[ a ].str() + ") holds while gamma("
                                          + obs[ o ].str() + ") does not" );
        }
    }
}

InterfaceCertificate InterfaceCertificate::tabulate( Interface iface,
                                                     const std::function< bool( const Symbol& ) >& gamma,
                                                     const std::function< bool( const Symbol&, const Symbol& ) >& alpha )
{
    const auto& obs = iface.obs();
    std::vector< bool > g( obs.size() );
    std::vector< std::vector< bool > > al( obs.size() );
    for ( Index o = 0; o < obs.size(); ++o )
    {
        g[ o ] = gamma( obs[ o ] );
        for ( const auto& a : iface.actions( o ) )
            al[ o ].push_back( alpha( obs[ o ], a ) );
    }
    return InterfaceCertificate( std::move( iface ), std::move( g ), std::move( al ) );
}

bool LiftedPredicate::operator()( const Change& change ) const
{
    // Deterministic changes are singletons, so both cases reduce to "every
    // successor satisfies phi"; the empty set lifts to true.
    for ( auto s : change )
        if ( !_phi( s ) )
            return false;
    return true;
}

LiftedPredicate lift_predicate( const Predicate& phi, ChangeKind kind )
{
    return LiftedPredicate( phi, kind );
}

InterfaceCertificate simple_certificate( const Interface& iface, const Predicate& gamma_bar, const Predicate& alpha_bar )
{
    if ( !iface.is_simple() )
        throw InvariantViolation( "simple_certificate needs a simple interface" );
    if ( gamma_bar.carrier() != iface.obs() )
        throw InterfaceMismatch( "guarantee carrier " + gamma_bar.carrier().str() + " is not the observation set "
                                 + iface.obs().str() );
    if ( !iface.obs().empty() && alpha_bar.carrier() != iface.simple_actions() )
        throw InterfaceMismatch( "assumption carrier " + alpha_bar.carrier().str() + " is not the action set "
                                 + iface.simple_actions().str() );

    const auto n = iface.obs().size();
    std::vector< bool > g( n );
    std::vector< std::vector< bool > > al( n );
    for ( Index o = 0; o < n; ++o )
    {
        g[ o ] = gamma_bar( o );
        al[ o ].resize( alpha_bar.carrier().size() );
        for ( Index a = 0; a < al[ o ].size(); ++a )
            al[ o ][ a ] = g[ o ] && alpha_bar( a );
    }
    return InterfaceCertificate( iface, std::move( g ), std::move( al ) );
}

InterfaceCertificate parallel_certificate( const InterfaceCertificate& c1, const InterfaceCertificate& c2 )
{
    auto iface = parallel_interface( c1.iface(), c2.iface() );
    const auto n1 = c1.iface().obs().size();
    const auto n2 = c2.iface().obs().size();
    std::vector< bool > g( n1 * n2 );
    std::vector< std::vector< bool > > al( n1 * n2 );
    for ( Index i = 0; i < n1; ++i )
    {
        for ( Index j = 0; j < n2; ++j )
        {
            const auto o = i * n2 + j;
            g[ o ] = c1.gamma( i ) && c2.gamma( j );
            const auto k1 = c1.iface().actions( i ).size();
            const auto k2 = c2.iface().actions( j ).size();
            al[ o ].resize( k1 * k2 );
            for ( Index x = 0; x < k1; ++x )
                for ( Index y = 0; y < k2; ++y )
                    al[ o ][ x * k2 + y ] = c1.alpha( i, x ) && c2.alpha( j, y );
        }
    }
    return InterfaceCertificate( std::move( iface ), std::move( g ), std::move( al ) );
}

InterfaceCertificate parallel_certificate( std::span< const InterfaceCertificate > certs )
{
    if ( certs.empty() )
        throw InvariantViolation( "parallel conjunction of zero certificates" );
    InterfaceCertificate acc = certs[ 0 ];
    for ( std::size_t i = 1; i < certs.size(); ++i )
        acc = parallel_certificate( acc, certs[ i ] );
    return acc;
}

Verdict certify_lens( const Lens& lens, const InterfaceCertificate& inner, const InterfaceCertificate& outer )
{
    require_same_interface( lens.src(), inner.iface(), "certify_lens: inner certificate vs lens source" );
    require_same_interface( lens.dst(), outer.iface(), "certify_lens: outer certificate vs lens target" );

    const auto& obs = lens.src().obs();
    for ( Index o1 = 0; o1 < obs.size(); ++o1 )
    {
        if ( !inner.gamma( o1 ) )
            continue;
        const auto o2 = lens.fwd( o1 );
        if ( !outer.gamma( o2 ) )
            return Verdict::fail( "guarantee gamma1(o1) => gamma2(w(o1))", obs[ o1 ] );

        const auto& fiber = lens.dst().actions( o2 );
        for ( Index a2 = 0; a2 < fiber.size(); ++a2 )
        {
            if ( outer.alpha( o2, a2 ) && !inner.alpha( o1, lens.bwd( o1, a2 ) ) )
                return Verdict::fail( "assumption gamma1(o1) && alpha2(w(o1), a2) => alpha1(o1, w#(o1, a2))",
                                      obs[ o1 ], fiber[ a2 ] );
        }
    }
    return Verdict::pass();
}

Verdict certify_machine( const Machine& m, const MachineCertificate& cert )
{
    if ( cert.phi.carrier() != m.states() )
        throw InterfaceMismatch( "certify_machine: state predicate carrier " + cert.phi.carrier().str()
                                 + " is not the state set " + m.states().str() );
    require_same_interface( m.iface(), cert.icert.iface(), "certify_machine: certificate vs machine interface" );

    const auto lift = lift_predicate( cert.phi, m.kind() );
    for ( Index s = 0; s < m.states().size(); ++s )
    {
        if ( !cert.phi( s ) )
            continue;
        const auto o = m.view( s );
        if ( !cert.icert.gamma( o ) )
            return Verdict::fail( "guarantee phi(s) => gamma(v(s))", m.states()[ s ] );

        for ( Index a = 0; a < m.fiber( s ).size(); ++a )
        {
            if ( cert.icert.alpha( o, a ) && !lift( m.update( s, a ) ) )
                return Verdict::fail( "invariance phi(s) && alpha(v(s), a) => Lift phi(u(s, a))", m.states()[ s ],
                                      m.fiber( s )[ a ] );
        }
    }
    return Verdict::pass();
}

InterfaceCertificate pullback_certificate( const Chart& chart, const InterfaceCertificate& cert )
{
    require_same_interface( chart.dst(), cert.iface(), "pullback_certificate: certificate vs chart target" );

    const auto n = chart.src().obs().size();
    std::vector< bool > g( n );
    std::vector< std::vector< bool > > al( n );
    for ( Index o = 0; o < n; ++o )
    {
        const auto fo = chart.fwd( o );
        g[ o ] = cert.gamma( fo );
        al[ o ].resize( chart.src().actions( o ).size() );
        for ( Index a = 0; a < al[ o ].size(); ++a )
            al[ o ][ a ] = cert.alpha( fo, chart.push( o, a ) );
    }
    return InterfaceCertificate( chart.src(), std::move( g ), std::move( al ) );
}

Predicate conjoin_predicates( const Predicate& p, const Predicate& q, FiniteSet carrier,
                              std::span< const Index > p_map, std::span< const Index > q_map )
{
    if ( p_map.size() != carrier.size() || q_map.size() != carrier.size() )
        throw InvariantViolation( "conjoin_predicates: reindexing maps must be total on the carrier" );

    std::vector< bool > t( carrier.size() );
    for ( Index i = 0; i < carrier.size(); ++i )
    {
        if ( p_map[ i ] >= p.carrier().size() || q_map[ i ] >= q.carrier().size() )
            throw InvariantViolation( "conjoin_predicates: reindexing map leaves its carrier" );
        t[ i ] = p( p_map[ i ] ) && q( q_map[ i ] );
    }
    return Predicate( std::move( carrier ), std::move( t ) );
}

Predicate product_conjunction( const Predicate& p, const Predicate& q )
{
    auto carrier = FiniteSet::product( p.carrier(), q.carrier() );
    const auto n2 = q.carrier().size();
    std::vector< Index > pm( carrier.size() ), qm( carrier.size() );
    for ( Index i = 0; i < carrier.size(); ++i )
    {
        pm[ i ] = i / n2;
        qm[ i ] = i % n2;
    }
    return conjoin_predicates( p, q, std::move( carrier ), pm, qm );
}

Predicate product_conjunction( std::span< const Predicate > preds )
{
    if ( preds.empty() )
        throw InvariantViolation( "conjunction of zero predicates" );
    Predicate acc = preds[ 0 ];
    for ( std::size_t i = 1; i < preds.size(); ++i )
        acc = product_conjunction( acc, preds[ i ] );
    return acc;
}

PremiseNotMet::PremiseNotMet( std::string premise, Verdict verdict )
    : PremiseFailure( "premise not met: " + premise + " (" + verdict.str() + ")" ), _premise{ std::move( premise ) },
      _verdict{ std::move( verdict ) }
{
}

namespace detail
{

void reverify_conclusion( const Machine& m, const MachineCertificate& cert, std::string_view rule )
{
    const auto v = certify_machine( m, cert );
    if ( !v.holds )
        throw SoundnessError( std::string( rule ) + " produced a conclusion that does not verify: " + v.str() );
}

} // namespace detail

namespace
{

Verdict first_certificate_difference( const InterfaceCertificate& expected, const InterfaceCertificate& actual )
{
    const auto& obs = expected.iface().obs();
    for ( Index o = 0; o < obs.size(); ++o )
    {
        if ( expected.gamma( o ) != actual.gamma( o ) )
            return Verdict::fail( "guarantee differs from the conjunction of component guarantees", obs[ o ] );
        const auto& fiber = expected.iface().actions( o );
        for ( Index a = 0; a < fiber.size(); ++a )
            if ( expected.alpha( o, a ) != actual.alpha( o, a ) )
                return Verdict::fail( "assumption differs from the conjunction of component assumptions", obs[ o ],
                                      fiber[ a ] );
    }
    return Verdict::pass();
}

} // namespace

CertifiedMachine comp_rule( const Lens& wiring, const InterfaceCertificate& inner, const InterfaceCertificate& outer,
                            std::span< const CertifiedMachine > components )
{
    if ( components.empty() )
        throw InvariantViolation( "comp_rule needs at least one component" );

    std::vector< Machine > machines;
    std::vector< Predicate > specs;
    std::vector< InterfaceCertificate > icerts;
    for ( std::size_t i = 0; i < components.size(); ++i )
    {
        const auto& c = components[ i ];
        auto v = certify_machine( c.machine, c.cert );
        if ( !v.holds )
            throw PremiseNotMet( "component " + std::to_string( i ) + " is certified", std::move( v ) );
        machines.push_back( c.machine );
        specs.push_back( c.cert.phi );
        icerts.push_back( c.cert.icert );
    }

    const auto expected_inner = parallel_certificate( icerts );
    require_same_interface( expected_inner.iface(), inner.iface(),
                            "comp_rule: inner certificate vs product of component interfaces" );
    if ( auto v = first_certificate_difference( expected_inner, inner ); !v.holds )
        throw PremiseNotMet( "inner wiring certificate is the conjunction of component certificates", std::move( v ) );

    if ( auto v = certify_lens( wiring, inner, outer ); !v.holds )
        throw PremiseNotMet( "wiring is certified", std::move( v ) );

    CertifiedMachine out{ couple( machines, wiring ), MachineCertificate{ product_conjunction( specs ), outer } };
    detail::reverify_conclusion( out.machine, out.cert, "comp_rule" );
    return out;
}

MachineCertificate subst_rule( const Simulation& sim, const MachineCertificate& target )
{
    if ( auto v = check_simulation( sim ); !v.holds )
        throw PremiseNotMet( "simulation square commutes", std::move( v ) );
    if ( auto v = certify_machine( sim.dst(), target ); !v.holds )
        throw PremiseNotMet( "target machine is certified", std::move( v ) );

    const auto& states = sim.src().states();
    std::vector< bool > phi( states.size() );
    for ( Index s = 0; s < states.size(); ++s )
        phi[ s ] = target.phi( sim.map( s ) );

    MachineCertificate out{ Predicate( states, std::move( phi ) ), pullback_certificate( sim.chart(), target.icert ) };
    detail::reverify_conclusion( sim.src(), out, "subst_rule" );
    return out;
}

Verdict cascade_simple_conditions( const Predicate& gamma1, const Predicate& abar1, const Predicate& gamma2,
                                   const Predicate& abar2, const Predicate& gamma3, const Predicate& abar3 )
{
    const auto& o1m = gamma1.carrier();
    const auto& a_set = abar1.carrier();
    if ( abar3.carrier() != a_set )
        throw InterfaceMismatch( "cascade: outer and first-box action sets differ" );

    for ( Index a = 0; a < a_set.size(); ++a )
        if ( abar3( a ) && !abar1( a ) )
            return Verdict::fail( "abar3(a) => abar1(a)", a_set[ a ] );

    for ( Index i = 0; i < o1m.size(); ++i )
    {
        if ( !gamma1( i ) )
            continue;
        const auto& m = o1m[ i ][ 1 ];
        for ( Index a = 0; a < a_set.size(); ++a )
            if ( abar3( a ) && !abar2( Symbol::pair( m, a_set[ a ] ) ) )
                return Verdict::fail( "gamma1(o1, m) && abar3(a) => abar2(m, a)", o1m[ i ], a_set[ a ] );
    }

    for ( Index i = 0; i < o1m.size(); ++i )
    {
        if ( !gamma1( i ) )
            continue;
        const auto& o1 = o1m[ i ][ 0 ];
        for ( Index j = 0; j < gamma2.carrier().size(); ++j )
            if ( gamma2( j ) && !gamma3( Symbol::pair( o1, gamma2.carrier()[ j ] ) ) )
                return Verdict::fail( "gamma1(o1, m) && gamma2(o2) => gamma3(o1, o2)",
                                      Symbol::pair( o1m[ i ], gamma2.carrier()[ j ] ) );
    }
    return Verdict::pass();
}

} // namespace agl
