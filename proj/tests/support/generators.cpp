#include "generators.hpp"

#include <algorithm>
#include <cmath>

namespace agl::gen
{

std::size_t uniform( Rng& rng, std::size_t lo, std::size_t hi )
{
    return std::uniform_int_distribution< std::size_t >( lo, hi )( rng );
}

bool coin( Rng& rng, double p )
{
    return std::bernoulli_distribution( p )( rng );
}

namespace
{

double real( Rng& rng, double lo, double hi )
{
    return std::uniform_real_distribution< double >( lo, hi )( rng );
}

template < class T >
const T& pick( Rng& rng, const std::vector< T >& xs )
{
    return xs[ uniform( rng, 0, xs.size() - 1 ) ];
}

Index pick_index( Rng& rng, std::size_t n )
{
    return uniform( rng, 0, n - 1 );
}

} // namespace

FiniteSet carrier( const std::string& prefix, std::size_t n )
{
    std::vector< Symbol > xs;
    for ( std::size_t i = 0; i < n; ++i )
        xs.emplace_back( prefix + std::to_string( i ) );
    return FiniteSet( std::move( xs ) );
}

FiniteSet random_carrier( Rng& rng, const std::string& prefix, std::size_t lo, std::size_t hi )
{
    return carrier( prefix, uniform( rng, lo, hi ) );
}

Interface random_interface( Rng& rng, const std::string& prefix, std::size_t max_obs, std::size_t max_act )
{
    auto obs = random_carrier( rng, prefix + "o", 1, max_obs );
    if ( coin( rng, 0.3 ) )
        return Interface::simple( obs, random_carrier( rng, prefix + "a", 1, max_act ) );
    std::vector< FiniteSet > fibers;
    for ( std::size_t i = 0; i < obs.size(); ++i )
        fibers.push_back( random_carrier( rng, prefix + "a", 1, max_act ) );
    return Interface( obs, std::move( fibers ) );
}

Lens random_lens( Rng& rng, const Interface& src, const Interface& dst )
{
    std::vector< Index > fwd;
    std::vector< std::vector< Index > > bwd;
    for ( std::size_t o = 0; o < src.obs().size(); ++o )
    {
        fwd.push_back( pick_index( rng, dst.obs().size() ) );
        std::vector< Index > back;
        for ( std::size_t a = 0; a < dst.actions( fwd.back() ).size(); ++a )
            back.push_back( pick_index( rng, src.actions( o ).size() ) );
        bwd.push_back( std::move( back ) );
    }
    return Lens( src, dst, std::move( fwd ), std::move( bwd ) );
}

Chart random_chart( Rng& rng, const Interface& src, const Interface& dst )
{
    std::vector< Index > fwd;
    std::vector< std::vector< Index > > push;
    for ( std::size_t o = 0; o < src.obs().size(); ++o )
    {
        fwd.push_back( pick_index( rng, dst.obs().size() ) );
        std::vector< Index > p;
        for ( std::size_t a = 0; a < src.actions( o ).size(); ++a )
            p.push_back( pick_index( rng, dst.actions( fwd.back() ).size() ) );
        push.push_back( std::move( p ) );
    }
    return Chart( src, dst, std::move( fwd ), std::move( push ) );
}

Predicate random_predicate( Rng& rng, const FiniteSet& carrier, double p )
{
    std::vector< bool > t;
    for ( std::size_t i = 0; i < carrier.size(); ++i )
        t.push_back( coin( rng, p ) );
    return Predicate( carrier, std::move( t ) );
}

InterfaceCertificate random_certificate( Rng& rng, const Interface& iface )
{
    std::vector< bool > gamma;
    std::vector< std::vector< bool > > alpha;
    for ( std::size_t o = 0; o < iface.obs().size(); ++o )
    {
        gamma.push_back( coin( rng, 0.6 ) );
        std::vector< bool > row;
        for ( std::size_t a = 0; a < iface.actions( o ).size(); ++a )
            row.push_back( gamma.back() && coin( rng, 0.6 ) );
        alpha.push_back( std::move( row ) );
    }
    return InterfaceCertificate( iface, std::move( gamma ), std::move( alpha ) );
}

namespace
{

Change random_change( Rng& rng, std::size_t n_states, ChangeKind kind )
{
    if ( kind == ChangeKind::deterministic )
        return { pick_index( rng, n_states ) };
    Change c;
    for ( Index t = 0; t < n_states; ++t )
        if ( coin( rng, 0.4 ) )
            c.push_back( t );
    if ( c.empty() && coin( rng, 0.8 ) )
        c.push_back( pick_index( rng, n_states ) );
    return c;
}

} // namespace

Machine random_machine( Rng& rng, const Interface& iface, std::size_t max_states, ChangeKind kind,
                        const std::string& prefix )
{
    auto states = random_carrier( rng, prefix, 1, max_states );
    std::vector< Index > view;
    std::vector< std::vector< Change > > update;
    for ( std::size_t s = 0; s < states.size(); ++s )
    {
        view.push_back( pick_index( rng, iface.obs().size() ) );
        std::vector< Change > row;
        for ( std::size_t a = 0; a < iface.actions( view.back() ).size(); ++a )
            row.push_back( random_change( rng, states.size(), kind ) );
        update.push_back( std::move( row ) );
    }
    return Machine( states, iface, kind, std::move( view ), std::move( update ) );
}

MachineCertificate certified_for( Rng& rng, const Machine& m )
{
    const auto phi = random_predicate( rng, m.states(), 0.6 );
    const auto lift = lift_predicate( phi, m.kind() );
    const auto& iface = m.iface();

    std::vector< bool > gamma( iface.obs().size(), false );
    for ( std::size_t o = 0; o < gamma.size(); ++o )
        gamma[ o ] = coin( rng, 0.3 );
    for ( std::size_t s = 0; s < m.states().size(); ++s )
        if ( phi( s ) )
            gamma[ m.view( s ) ] = true;

    std::vector< std::vector< bool > > alpha;
    for ( std::size_t o = 0; o < gamma.size(); ++o )
    {
        std::vector< bool > row;
        for ( std::size_t a = 0; a < iface.actions( o ).size(); ++a )
        {
            bool allowed = gamma[ o ];
            for ( std::size_t s = 0; s < m.states().size() && allowed; ++s )
                if ( phi( s ) && m.view( s ) == o && !lift( m.update( s, a ) ) )
                    allowed = false;
            row.push_back( allowed && coin( rng, 0.8 ) );
        }
        alpha.push_back( std::move( row ) );
    }
    return { phi, InterfaceCertificate( iface, std::move( gamma ), std::move( alpha ) ) };
}

InterfaceCertificate certified_outer( Rng& rng, const Lens& lens, const InterfaceCertificate& inner )
{
    const auto& dst = lens.dst();
    std::vector< bool > gamma( dst.obs().size(), false );
    for ( std::size_t o = 0; o < gamma.size(); ++o )
        gamma[ o ] = coin( rng, 0.3 );
    for ( std::size_t o1 = 0; o1 < lens.src().obs().size(); ++o1 )
        if ( inner.gamma( o1 ) )
            gamma[ lens.fwd( o1 ) ] = true;

    std::vector< std::vector< bool > > alpha;
    for ( std::size_t o2 = 0; o2 < gamma.size(); ++o2 )
    {
        std::vector< bool > row;
        for ( std::size_t a2 = 0; a2 < dst.actions( o2 ).size(); ++a2 )
        {
            bool allowed = gamma[ o2 ];
            for ( std::size_t o1 = 0; o1 < lens.src().obs().size() && allowed; ++o1 )
                if ( lens.fwd( o1 ) == o2 && inner.gamma( o1 ) && !inner.alpha( o1, lens.bwd( o1, a2 ) ) )
                    allowed = false;
            row.push_back( allowed && coin( rng, 0.8 ) );
        }
        alpha.push_back( std::move( row ) );
    }
    return InterfaceCertificate( dst, std::move( gamma ), std::move( alpha ) );
}

Simulation random_simulation( Rng& rng, const Machine& target, std::size_t max_states )
{
    const auto& di = target.iface();

    // Observations: one or two preimages for each target observation.
    std::vector< Symbol > obs_syms;
    std::vector< Index > obs_image;
    for ( std::size_t o2 = 0; o2 < di.obs().size(); ++o2 )
    {
        const auto copies = uniform( rng, 1, 2 );
        for ( std::size_t c = 0; c < copies; ++c )
        {
            obs_syms.emplace_back( "p" + std::to_string( o2 ) + "_" + std::to_string( c ) );
            obs_image.push_back( o2 );
        }
    }
    // Sorted carrier order differs from creation order; look images up by name.
    FiniteSet obs( obs_syms );
    std::vector< Index > fwd( obs.size() );
    for ( std::size_t i = 0; i < obs_syms.size(); ++i )
        fwd[ obs.index_of( obs_syms[ i ] ) ] = obs_image[ i ];

    std::vector< FiniteSet > fibers;
    std::vector< std::vector< Index > > push;
    for ( std::size_t o = 0; o < obs.size(); ++o )
    {
        fibers.push_back( random_carrier( rng, "b", 1, 3 ) );
        std::vector< Index > p;
        for ( std::size_t a = 0; a < fibers.back().size(); ++a )
            p.push_back( pick_index( rng, di.actions( fwd[ o ] ).size() ) );
        push.push_back( std::move( p ) );
    }
    Interface iface( obs, fibers );
    Chart chart( iface, di, fwd, push );

    // States: a surjection onto the target states.
    std::vector< Symbol > state_syms;
    std::vector< Index > state_image;
    const std::size_t extra = uniform( rng, 0, max_states > target.states().size()
                                                    ? max_states - target.states().size()
                                                    : 0 );
    for ( std::size_t t = 0; t < target.states().size(); ++t )
    {
        state_syms.emplace_back( "q" + std::to_string( t ) + "_0" );
        state_image.push_back( t );
    }
    for ( std::size_t e = 0; e < extra; ++e )
    {
        const auto t = pick_index( rng, target.states().size() );
        state_syms.emplace_back( "q" + std::to_string( t ) + "_" + std::to_string( e + 1 ) );
        state_image.push_back( t );
    }
    FiniteSet states( state_syms );
    std::vector< Index > sigma( states.size() );
    for ( std::size_t i = 0; i < state_syms.size(); ++i )
        sigma[ states.index_of( state_syms[ i ] ) ] = state_image[ i ];
    std::vector< std::vector< Index > > preimage( target.states().size() );
    for ( std::size_t s = 0; s < states.size(); ++s )
        preimage[ sigma[ s ] ].push_back( s );

    std::vector< Index > view;
    std::vector< std::vector< Change > > update;
    for ( std::size_t s = 0; s < states.size(); ++s )
    {
        const Index t = sigma[ s ];
        std::vector< Index > candidates;
        for ( std::size_t o = 0; o < obs.size(); ++o )
            if ( fwd[ o ] == target.view( t ) )
                candidates.push_back( o );
        view.push_back( pick( rng, candidates ) );

        std::vector< Change > row;
        for ( std::size_t a = 0; a < fibers[ view.back() ].size(); ++a )
        {
            const auto& goal = target.update( t, push[ view.back() ][ a ] );
            Change c;
            for ( Index g : goal )
            {
                const auto& pre = preimage[ g ];
                if ( target.kind() == ChangeKind::deterministic )
                {
                    c.push_back( pick( rng, pre ) );
                    continue;
                }
                const auto first = pick_index( rng, pre.size() );
                for ( std::size_t k = 0; k < pre.size(); ++k )
                    if ( k == first || coin( rng, 0.4 ) )
                        c.push_back( pre[ k ] );
            }
            std::sort( c.begin(), c.end() );
            row.push_back( std::move( c ) );
        }
        update.push_back( std::move( row ) );
    }
    Machine src( states, iface, target.kind(), std::move( view ), std::move( update ) );
    return Simulation( std::move( src ), target, std::move( chart ), std::move( sigma ) );
}

// ---------------------------------------------------------------------------
// Real lenses

namespace
{

using Matrix = std::vector< std::vector< double > >;

Matrix random_matrix( Rng& rng, std::size_t rows, std::size_t cols )
{
    Matrix out( rows, std::vector< double >( cols ) );
    for ( auto& row : out )
        for ( auto& x : row )
            x = coin( rng, 0.25 ) ? 0.0 : static_cast< double >( static_cast< int >( uniform( rng, 0, 8 ) ) - 4 ) / 4.0;
    return out;
}

double frobenius2( const Matrix& m )
{
    double s = 0.0;
    for ( const auto& row : m )
        for ( double x : row )
            s += x * x;
    return s;
}

Expr linear_form( const std::vector< double >& coeffs, const std::vector< std::string >& vars )
{
    std::optional< Expr > out;
    for ( std::size_t j = 0; j < coeffs.size(); ++j )
    {
        if ( coeffs[ j ] == 0.0 )
            continue;
        auto term = Expr::constant( coeffs[ j ] ) * Expr::var( vars[ j ] );
        out = out ? *out + term : term;
    }
    return out ? *out : Expr::constant( 0.0 );
}

Expr weighted_squares( const std::vector< double >& w, const std::vector< std::string >& vars )
{
    std::optional< Expr > out;
    for ( std::size_t j = 0; j < w.size(); ++j )
    {
        auto term = Expr::constant( w[ j ] ) * pow( Expr::var( vars[ j ] ), 2 );
        out = out ? *out + term : term;
    }
    return out ? *out : Expr::constant( 0.0 );
}

// Quadratic certificate gamma = sum g_j o_j^2, alpha = sum s_i a_i^2.
struct Quadratic
{
    std::vector< double > g;
    std::vector< double > s;

    [[nodiscard]] QuantCertificate cert() const
    {
        return { g.size(), s.size(), weighted_squares( g, obs_vars( g.size() ) ),
                 weighted_squares( s, act_vars( s.size() ) ) };
    }
};

double max_of( const std::vector< double >& v ) { return *std::max_element( v.begin(), v.end() ); }
double min_of( const std::vector< double >& v ) { return *std::min_element( v.begin(), v.end() ); }

// A lens into `dst` and the quadratic certificate on its source that it
// satisfies, with its slack.
struct Link
{
    QuantLens lens;
    Quadratic src;
    PLFun kappa;
};

Link random_link( Rng& rng, const Quadratic& dst, std::size_t src_obs, std::size_t src_act )
{
    const std::size_t k2 = dst.g.size();
    const std::size_t m2 = dst.s.size();
    const auto W = random_matrix( rng, k2, src_obs );
    const auto P = random_matrix( rng, src_act, m2 );
    const auto Q = random_matrix( rng, src_act, src_obs );

    Link out;
    out.lens = QuantLens{ src_obs, src_act, k2, m2, {}, {} };
    const auto o = obs_vars( src_obs );
    for ( const auto& row : W )
        out.lens.fwd.push_back( linear_form( row, o ) );
    std::vector< std::string > oa = act_vars( m2 );
    oa.insert( oa.end(), o.begin(), o.end() );
    for ( std::size_t i = 0; i < src_act; ++i )
    {
        std::vector< double > coeffs = P[ i ];
        coeffs.insert( coeffs.end(), Q[ i ].begin(), Q[ i ].end() );
        out.lens.bwd.push_back( linear_form( coeffs, oa ) );
    }

    // gamma_src(o) >= max(g_dst) |W|^2 |o|^2 >= gamma_dst(W o)
    const double g_floor = max_of( dst.g ) * frobenius2( W );
    for ( std::size_t j = 0; j < src_obs; ++j )
        out.src.g.push_back( g_floor * ( 1.0 + real( rng, 0.0, 1.0 ) ) + 0.125 );
    // alpha_src(P a + Q o) <= 2 max(s_src) (|P|^2 |a|^2 + |Q|^2 |o|^2); the first
    // part is covered by alpha_dst, the second by the slack.
    const double s_cap = min_of( dst.s ) / ( 2.0 * frobenius2( P ) + 0.25 );
    for ( std::size_t i = 0; i < src_act; ++i )
        out.src.s.push_back( s_cap * real( rng, 0.3, 1.0 ) );
    const double c = 2.0 * max_of( out.src.s ) * frobenius2( Q ) / min_of( out.src.g );
    if ( c == 0.0 && coin( rng, 0.5 ) )
        out.kappa = PLFun::zero();
    else
    {
        const double c1 = ( c + 0.01 ) * ( 1.0 + real( rng, 0.0, 0.5 ) );
        const double c2 = c1 * ( 1.0 + real( rng, 0.0, 0.5 ) );
        out.kappa = PLFun( { { 0.0, 0.0 }, { 1.0, c1 } }, c2 );
    }
    return out;
}

SamplePlan lens_plan( std::size_t obs_dims, std::size_t act_dims )
{
    return SamplePlan::cube( obs_dims + act_dims, -1.0, 1.0, 0.25 );
}

} // namespace

QuantChain random_quant_chain( Rng& rng )
{
    Quadratic dst;
    const auto k3 = uniform( rng, 1, 2 );
    const auto m3 = uniform( rng, 1, 2 );
    for ( std::size_t j = 0; j < k3; ++j )
        dst.g.push_back( real( rng, 0.5, 2.0 ) );
    for ( std::size_t i = 0; i < m3; ++i )
        dst.s.push_back( real( rng, 0.5, 2.0 ) );

    const auto k2 = uniform( rng, 1, 2 );
    const auto m2 = uniform( rng, 1, 2 );
    const auto outer = random_link( rng, dst, k2, m2 );
    const auto k1 = uniform( rng, 1, 2 );
    const auto m1 = uniform( rng, 1, 2 );
    const auto inner = random_link( rng, outer.src, k1, m1 );

    QuantChain chain;
    chain.outer = { outer.lens, outer.src.cert(), dst.cert(), outer.kappa, lens_plan( k2, m3 ) };
    chain.inner = { inner.lens, inner.src.cert(), outer.src.cert(), inner.kappa, lens_plan( k1, m2 ) };
    return chain;
}

// ---------------------------------------------------------------------------
// Documents

namespace
{

const std::vector< double > nice_constants{ 0.0, 1.0, 2.0, 0.5, 3.25, 0.1, 1e-3, 2.5e10, 7.0, 0.3 };

Expr random_expr_impl( Rng& rng, const std::vector< std::string >& vars, int depth, bool smooth )
{
    if ( depth <= 0 || coin( rng, 0.25 ) )
    {
        if ( !vars.empty() && coin( rng, 0.6 ) )
            return Expr::var( pick( rng, vars ) );
        double c = pick( rng, nice_constants );
        if ( coin( rng, 0.2 ) )
            c = -c;
        return Expr::constant( c );
    }
    auto sub = [ & ] { return random_expr_impl( rng, vars, depth - 1, smooth ); };
    switch ( uniform( rng, 0, smooth ? 8 : 12 ) )
    {
    case 0:
    case 1:
        return sub() + sub();
    case 2:
        return sub() - sub();
    case 3:
    case 4:
        return sub() * sub();
    case 5:
        return -sub();
    case 6:
        return pow( sub(), static_cast< int >( uniform( rng, 0, 4 ) ) );
    case 7:
        return sin( sub() );
    case 8:
        return cos( sub() );
    case 9:
        return sub() / sub();
    case 10:
        return abs( sub() );
    case 11:
        return coin( rng ) ? min( sub(), sub() ) : max( sub(), sub() );
    default:
        return pow( sub(), -static_cast< int >( uniform( rng, 1, 3 ) ) );
    }
}

} // namespace

Expr random_expr( Rng& rng, const std::vector< std::string >& vars, int depth )
{
    return random_expr_impl( rng, vars, depth, false );
}

namespace
{

std::vector< std::string > concat( std::vector< std::string > a, const std::vector< std::string >& b )
{
    a.insert( a.end(), b.begin(), b.end() );
    return a;
}

PLFun random_slack( Rng& rng )
{
    switch ( uniform( rng, 0, 2 ) )
    {
    case 0:
        return PLFun::zero();
    case 1:
        return PLFun::linear( 0.5 );
    default:
        return PLFun( { { 0.0, 0.0 }, { 1.0, 0.75 } }, 0.25 );
    }
}

OpenODE random_ode( Rng& rng )
{
    OpenODE o;
    o.n = uniform( rng, 1, 2 );
    o.m = uniform( rng, 0, 2 );
    o.k = uniform( rng, 0, 2 );
    o.x0.assign( o.n, 0.0 );
    o.a0.assign( o.m, 0.0 );
    const auto xs = state_vars( o.n );
    const auto xa = concat( xs, act_vars( o.m ) );
    // A variable factor keeps the origin an equilibrium.
    for ( std::size_t i = 0; i < o.n; ++i )
        o.field.push_back( Expr::var( pick( rng, xa ) ) * random_expr_impl( rng, xa, 2, true ) );
    for ( std::size_t i = 0; i < o.k; ++i )
        o.view.push_back( random_expr_impl( rng, xs, 2, false ) );
    const std::vector< double > los{ -2.0, -1.0, -0.5, 0.0 };
    const std::vector< double > his{ 0.5, 1.0, 3.0 };
    for ( std::size_t i = 0; i < o.n; ++i )
        o.domain.push_back( { pick( rng, los ), pick( rng, his ) } );
    for ( std::size_t i = 0; i < o.m; ++i )
        o.inputs.push_back( { pick( rng, los ), pick( rng, his ) } );
    return o;
}

} // namespace

Document random_document( Rng& rng, const std::string& name, MachineLibrary& library )
{
    switch ( uniform( rng, 0, 6 ) )
    {
    case 0: {
        const auto iface = random_interface( rng, "", 3, 3 );
        const auto kind = coin( rng ) ? ChangeKind::deterministic : ChangeKind::nondeterministic;
        return make_document( name, random_machine( rng, iface, 4, kind ) );
    }
    case 1: {
        WiringDoc w;
        switch ( uniform( rng, 0, 4 ) )
        {
        case 0: {
            w.pattern = "cascade";
            const auto a = random_carrier( rng, "a", 1, 2 );
            const auto o1 = random_carrier( rng, "p", 1, 2 );
            const auto m = random_carrier( rng, "m", 1, 2 );
            const auto o2 = random_carrier( rng, "q", 1, 2 );
            w.carriers = { { "A", a }, { "O1", o1 }, { "M", m }, { "O2", o2 } };
            w.finite = make_cascade( a, o1, m, o2 );
            break;
        }
        case 1: {
            w.pattern = "feedback";
            const auto a = random_carrier( rng, "a", 1, 2 );
            const auto m = random_carrier( rng, "m", 1, 2 );
            const auto o = random_carrier( rng, "o", 1, 2 );
            w.carriers = { { "A", a }, { "M", m }, { "O", o } };
            w.finite = make_feedback( a, m, o );
            break;
        }
        case 2: {
            w.pattern = "explicit";
            const auto src = random_interface( rng, "s", 3, 3 );
            const auto dst = random_interface( rng, "t", 3, 3 );
            w.finite = random_lens( rng, src, dst );
            break;
        }
        case 3:
            w.pattern = "parallel";
            break;
        default: {
            w.pattern = "real";
            QuantLens q{ uniform( rng, 1, 2 ), uniform( rng, 0, 2 ), uniform( rng, 0, 2 ), uniform( rng, 0, 2 ), {},
                         {} };
            const auto o = obs_vars( q.src_obs );
            for ( std::size_t i = 0; i < q.dst_obs; ++i )
                q.fwd.push_back( random_expr( rng, o, 3 ) );
            const auto oa = concat( o, act_vars( q.dst_act ) );
            for ( std::size_t i = 0; i < q.src_act; ++i )
                q.bwd.push_back( random_expr( rng, oa, 3 ) );
            w.real = std::move( q );
        }
        }
        return make_document( name, std::move( w ) );
    }
    case 2: {
        const auto iface = random_interface( rng, "", 3, 3 );
        BoolCertDoc d{ random_certificate( rng, iface ), std::nullopt };
        if ( coin( rng ) )
            d.phi = random_predicate( rng, random_carrier( rng, "s", 1, 4 ) );
        return make_document( name, std::move( d ) );
    }
    case 3: {
        QuantCertificate c{ uniform( rng, 0, 2 ), uniform( rng, 0, 2 ), Expr::constant( 0.0 ),
                            Expr::constant( 0.0 ) };
        const auto o = obs_vars( c.obs_dim );
        c.gamma = random_expr( rng, o, 3 );
        c.alpha = random_expr( rng, concat( o, act_vars( c.act_dim ) ), 3 );
        return make_document( name, std::move( c ) );
    }
    case 4:
        return make_document( name, random_ode( rng ) );
    case 5: {
        LyapunovCandidate c;
        c.phi = random_expr( rng, state_vars( uniform( rng, 1, 2 ) ), 3 );
        c.alpha = random_expr( rng, act_vars( uniform( rng, 0, 2 ) ), 3 );
        c.gamma = random_expr( rng, obs_vars( uniform( rng, 0, 2 ) ), 3 );
        c.lambda = random_slack( rng );
        return make_document( name, std::move( c ) );
    }
    default: {
        const auto iface = random_interface( rng, "", 2, 2 );
        const auto kind = coin( rng ) ? ChangeKind::deterministic : ChangeKind::nondeterministic;
        const auto target = random_machine( rng, iface, 3, kind, "t" );
        const auto sim = random_simulation( rng, target, 5 );
        library.insert_or_assign( name + "_src", sim.src() );
        library.insert_or_assign( name + "_dst", sim.dst() );
        return make_document( name, SimulationDoc{ name + "_src", name + "_dst", sim } );
    }
    }
}

} // namespace agl::gen
