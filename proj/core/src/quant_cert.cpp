#include "agl/quant_cert.hpp"

#include "agl/number.hpp"

#include <algorithm>
#include <cmath>

namespace agl
{

bool lex_geq( const LexPair& p, const LexPair& q )
{
    if ( std::fabs( p.base - q.base ) <= lex_tie_tolerance )
        return p.tangent >= q.tangent;
    return p.base > q.base;
}

bool lex_leq( const LexPair& p, const LexPair& q )
{
    return lex_geq( q, p );
}

std::string obs_var( std::size_t i )
{
    return "o" + std::to_string( i + 1 );
}

std::string act_var( std::size_t i )
{
    return "a" + std::to_string( i + 1 );
}

std::vector< std::string > obs_vars( std::size_t k )
{
    std::vector< std::string > out;
    for ( std::size_t i = 0; i < k; ++i )
        out.push_back( obs_var( i ) );
    return out;
}

std::vector< std::string > act_vars( std::size_t m )
{
    std::vector< std::string > out;
    for ( std::size_t i = 0; i < m; ++i )
        out.push_back( act_var( i ) );
    return out;
}

namespace
{

std::vector< std::string > concat( std::vector< std::string > a, const std::vector< std::string >& b )
{
    a.insert( a.end(), b.begin(), b.end() );
    return a;
}

void require_vars( const Expr& e, const std::vector< std::string >& allowed, const std::string& what )
{
    for ( const auto& v : free_vars( e ) )
        if ( std::find( allowed.begin(), allowed.end(), v ) == allowed.end() )
            throw InvariantViolation( what + " mentions undeclared variable '" + v + "'" );
}

std::map< std::string, Expr > obs_substitution( const std::vector< Expr >& values )
{
    std::map< std::string, Expr > out;
    for ( std::size_t i = 0; i < values.size(); ++i )
        out.emplace( obs_var( i ), values[ i ] );
    return out;
}

std::map< std::string, Expr > act_substitution( const std::vector< Expr >& values )
{
    std::map< std::string, Expr > out;
    for ( std::size_t i = 0; i < values.size(); ++i )
        out.emplace( act_var( i ), values[ i ] );
    return out;
}

} // namespace

void QuantCertificate::validate() const
{
    require_vars( gamma, obs_vars( obs_dim ), "guarantee" );
    require_vars( alpha, concat( obs_vars( obs_dim ), act_vars( act_dim ) ), "assumption" );
}

void QuantLens::validate() const
{
    if ( fwd.size() != dst_obs )
        throw InvariantViolation( "lens forward part needs " + std::to_string( dst_obs ) + " components, got " +
                                  std::to_string( fwd.size() ) );
    if ( bwd.size() != src_act )
        throw InvariantViolation( "lens backward part needs " + std::to_string( src_act ) + " components, got " +
                                  std::to_string( bwd.size() ) );
    const auto o = obs_vars( src_obs );
    for ( const auto& e : fwd )
        require_vars( e, o, "lens forward part" );
    const auto oa = concat( o, act_vars( dst_act ) );
    for ( const auto& e : bwd )
        require_vars( e, oa, "lens backward part" );
}

QuantLens identity_quant_lens( std::size_t obs_dim, std::size_t act_dim )
{
    QuantLens l{ obs_dim, act_dim, obs_dim, act_dim, {}, {} };
    for ( const auto& v : obs_vars( obs_dim ) )
        l.fwd.push_back( Expr::var( v ) );
    for ( const auto& v : act_vars( act_dim ) )
        l.bwd.push_back( Expr::var( v ) );
    return l;
}

QuantLens compose_quant_lens( const QuantLens& t, const QuantLens& w )
{
    if ( w.dst_obs != t.src_obs || w.dst_act != t.src_act )
        throw InterfaceMismatch( "cannot compose real lenses: middle interfaces have different dimensions" );

    const auto through_w = obs_substitution( w.fwd );
    QuantLens out{ w.src_obs, w.src_act, t.dst_obs, t.dst_act, {}, {} };
    for ( const auto& e : t.fwd )
        out.fwd.push_back( substitute( e, through_w ) );

    std::vector< Expr > t_back;
    for ( const auto& e : t.bwd )
        t_back.push_back( substitute( e, through_w ) );
    const auto through_t = act_substitution( t_back );
    for ( const auto& e : w.bwd )
        out.bwd.push_back( substitute( e, through_t ) );
    return out;
}

std::string GridVerdict::str() const
{
    std::string out = holds ? "holds" : "violated";
    out += " (worst margin " + format_number( worst_margin );
    if ( !condition.empty() )
        out += " in " + condition;
    if ( !witness.empty() )
    {
        out += " at (";
        for ( std::size_t i = 0; i < witness.size(); ++i )
            out += ( i ? "," : "" ) + format_number( witness[ i ] );
        out += ")";
    }
    out += ", " + std::to_string( samples ) + " samples, tol " + format_number( tolerance ) + ")";
    return out;
}

GridVerdict certify_quant_lens( const QuantLens& lens, const QuantCertificate& src, const QuantCertificate& dst,
                                const PLFun& kappa, const SamplePlan& plan, const QuantCheckOptions& opts )
{
    lens.validate();
    src.validate();
    dst.validate();
    if ( src.obs_dim != lens.src_obs || src.act_dim != lens.src_act )
        throw InterfaceMismatch( "source certificate does not match the lens source dimensions" );
    if ( dst.obs_dim != lens.dst_obs || dst.act_dim != lens.dst_act )
        throw InterfaceMismatch( "target certificate does not match the lens target dimensions" );
    if ( plan.dims() != lens.src_obs + lens.dst_act )
        throw InterfaceMismatch( "sample plan has " + std::to_string( plan.dims() ) + " dimensions, expected " +
                                 std::to_string( lens.src_obs + lens.dst_act ) );
    if ( !in_class( kappa, ComparisonClass::Kinf0 ) )
        throw InvariantViolation( "slack must be a Kinf0 function, got " + kappa.str() );

    const auto through_fwd = obs_substitution( lens.fwd );
    const auto slots = concat( obs_vars( lens.src_obs ), act_vars( lens.dst_act ) );
    const CompiledExpr gamma_src( src.gamma, slots );
    const CompiledExpr gamma_dst( substitute( dst.gamma, through_fwd ), slots );
    const CompiledExpr alpha_dst( substitute( dst.alpha, through_fwd ), slots );
    const CompiledExpr alpha_src( substitute( src.alpha, act_substitution( lens.bwd ) ), slots );

    std::size_t n_act = 1;
    for ( std::size_t d = lens.src_obs; d < plan.dims(); ++d )
        n_act *= plan.axes()[ d ].count();

    const std::size_t n = plan.size();
    std::vector< WorstSample > partial( chunk_count( n, opts.jobs ) );
    for_chunks( n, opts.jobs, [ & ]( std::size_t chunk, std::size_t begin, std::size_t end ) {
        WorstSample worst;
        std::vector< double > x;
        double g1 = 0.0;
        for ( std::size_t i = begin; i < end; ++i )
        {
            plan.point( i, x );
            const bool block_start = i % n_act == 0;
            if ( block_start || i == begin )
                g1 = gamma_src( x );
            if ( block_start )
                worst.consider( g1 - gamma_dst( x ), i, "guarantee" );
            const double slack = kappa( std::max( 0.0, g1 ) );
            worst.consider( alpha_dst( x ) + slack - alpha_src( x ), i, "assumption" );
        }
        partial[ chunk ] = std::move( worst );
    } );

    WorstSample worst;
    for ( const auto& p : partial )
        worst.merge( p );

    GridVerdict v;
    v.samples = n;
    v.tolerance = opts.tol;
    v.plan = plan;
    if ( worst.empty() )
        return v;
    v.worst_margin = worst.margin;
    v.condition = worst.condition;
    v.witness_index = worst.index;
    v.witness = plan.point( worst.index );
    v.holds = worst.margin >= -opts.tol;
    return v;
}

GridVerdict check_quant_certificate( const QuantCertificate& cert, const SamplePlan& obs_plan, double tol,
                                     double tol_def )
{
    cert.validate();
    if ( obs_plan.dims() != cert.obs_dim )
        throw InterfaceMismatch( "sample plan dimension does not match the certificate's observations" );

    const auto slots = obs_vars( cert.obs_dim );
    const CompiledExpr gamma( cert.gamma, slots );

    GridVerdict v;
    v.samples = obs_plan.size();
    v.tolerance = tol;
    v.plan = obs_plan;

    const std::vector< double > origin( cert.obs_dim, 0.0 );
    const double at_base = gamma( origin );
    if ( std::fabs( at_base ) > tol )
    {
        v.holds = false;
        v.worst_margin = -std::fabs( at_base );
        v.condition = "vanishes at base point";
        v.witness = origin;
        return v;
    }

    double r_excl = 0.0;
    for ( const auto& a : obs_plan.axes() )
        r_excl = std::max( r_excl, a.spacing() );

    WorstSample worst;
    std::vector< double > x;
    for ( std::size_t i = 0; i < obs_plan.size(); ++i )
    {
        obs_plan.point( i, x );
        double r2 = 0.0;
        for ( double c : x )
            r2 += c * c;
        if ( std::sqrt( r2 ) < r_excl )
            continue;
        worst.consider( gamma( x ) - tol_def, i, "definite" );
    }
    if ( worst.empty() )
        return v;
    v.worst_margin = worst.margin;
    v.condition = worst.condition;
    v.witness_index = worst.index;
    v.witness = obs_plan.point( worst.index );
    v.holds = worst.margin > 0.0;
    return v;
}

CertifiedQuantLens certified_quant_lens( CertifiedQuantLens c, const QuantCheckOptions& opts )
{
    const auto v = certify_quant_lens( c.lens, c.src, c.dst, c.kappa, c.plan, opts );
    if ( !v )
        throw PremiseFailure( "real lens is not certified: " + v.str() );
    return c;
}

CertifiedQuantLens compose_quant_cert( const CertifiedQuantLens& inner, const CertifiedQuantLens& outer,
                                       const QuantCheckOptions& opts )
{
    if ( !( inner.dst == outer.src ) )
        throw PremiseFailure( "middle certificates differ: the inner lens's target certificate must equal the "
                              "outer lens's source certificate" );
    certified_quant_lens( inner, opts );
    certified_quant_lens( outer, opts );

    CertifiedQuantLens out;
    out.lens = compose_quant_lens( outer.lens, inner.lens );
    out.src = inner.src;
    out.dst = outer.dst;
    out.kappa = pl_add( inner.kappa, outer.kappa );
    out.plan = inner.plan.slice( 0, inner.lens.src_obs )
                   .join( outer.plan.slice( outer.lens.src_obs, outer.lens.dst_act ) );

    const auto v = certify_quant_lens( out.lens, out.src, out.dst, out.kappa, out.plan, opts );
    if ( !v )
        throw ReverificationFailure( "composite real lens failed re-verification: " + v.str(), v );
    return out;
}

QuantCertificate sum_bundle_predicates( const QuantCertificate& c1, const QuantCertificate& c2 )
{
    c1.validate();
    c2.validate();
    std::map< std::string, std::string > shift;
    for ( std::size_t i = 0; i < c2.obs_dim; ++i )
        shift.emplace( obs_var( i ), obs_var( i + c1.obs_dim ) );
    for ( std::size_t i = 0; i < c2.act_dim; ++i )
        shift.emplace( act_var( i ), act_var( i + c1.act_dim ) );

    QuantCertificate out;
    out.obs_dim = c1.obs_dim + c2.obs_dim;
    out.act_dim = c1.act_dim + c2.act_dim;
    out.gamma = c1.gamma + rename_vars( c2.gamma, shift );
    out.alpha = c1.alpha + rename_vars( c2.alpha, shift );
    return out;
}

} // namespace agl
