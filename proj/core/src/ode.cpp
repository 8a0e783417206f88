#include "agl/ode.hpp"

#include "agl/number.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace agl
{

std::string state_var( std::size_t i )
{
    return "x" + std::to_string( i + 1 );
}

std::vector< std::string > state_vars( std::size_t n )
{
    std::vector< std::string > out;
    for ( std::size_t i = 0; i < n; ++i )
        out.push_back( state_var( i ) );
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

void require_size( std::size_t got, std::size_t want, const std::string& what )
{
    if ( got != want )
        throw InvariantViolation( what + " has " + std::to_string( got ) + " components, expected " +
                                  std::to_string( want ) );
}

void require_box( const std::vector< Interval >& box, const std::vector< double >& point, const std::string& what )
{
    for ( std::size_t i = 0; i < box.size(); ++i )
    {
        if ( !std::isfinite( box[ i ].lo ) || !std::isfinite( box[ i ].hi ) || box[ i ].hi < box[ i ].lo )
            throw InvariantViolation( what + " needs finite bounds with lo <= hi" );
        if ( !box[ i ].contains( point[ i ] ) )
            throw InvariantViolation( what + " does not contain the equilibrium" );
    }
}

double distance( const std::vector< double >& x, const std::vector< double >& x0 )
{
    double s = 0.0;
    for ( std::size_t i = 0; i < x.size(); ++i )
        s += ( x[ i ] - x0[ i ] ) * ( x[ i ] - x0[ i ] );
    return std::sqrt( s );
}

std::map< std::string, Expr > view_substitution( const std::vector< Expr >& view )
{
    std::map< std::string, Expr > out;
    for ( std::size_t i = 0; i < view.size(); ++i )
        out.emplace( obs_var( i ), view[ i ] );
    return out;
}

std::vector< double > with_input( std::vector< double > x, const std::vector< double >& a )
{
    x.insert( x.end(), a.begin(), a.end() );
    return x;
}

// Evidence that g grows without bound: along coordinate rays through x0 at
// radii R * 2^j (j = 0..8), every value is positive and the far values all
// exceed the near ones. `all` asks this of every ray, otherwise of some ray.
bool grows_on_rays( const CompiledExpr& g, const std::vector< double >& x0, std::size_t n, double R, bool all )
{
    if ( n == 0 )
        return false;
    bool any = false;
    for ( std::size_t d = 0; d < n; ++d )
    {
        for ( double sign : { 1.0, -1.0 } )
        {
            bool grows = true;
            std::vector< double > vals;
            try
            {
                for ( int j = 0; j <= 8; ++j )
                {
                    auto x = x0;
                    x[ d ] += sign * R * std::ldexp( 1.0, j );
                    vals.push_back( g( x ) );
                }
            }
            catch ( const Error& )
            {
                grows = false;
            }
            if ( grows )
            {
                const bool positive = std::all_of( vals.begin(), vals.end(), []( double v ) { return v > 0.0; } );
                const double near = *std::max_element( vals.begin(), vals.begin() + 4 );
                const double far = *std::min_element( vals.begin() + 4, vals.end() );
                grows = positive && far > near;
            }
            if ( all && !grows )
                return false;
            any = any || grows;
        }
    }
    return any;
}

double outer_radius( const std::vector< Interval >& box, const std::vector< double >& x0 )
{
    double r = 1.0;
    for ( std::size_t i = 0; i < box.size(); ++i )
        r = std::max( { r, std::fabs( box[ i ].lo - x0[ i ] ), std::fabs( box[ i ].hi - x0[ i ] ) } );
    return r;
}

} // namespace

void OpenODE::validate( double tol ) const
{
    require_size( field.size(), n, "vector field" );
    require_size( view.size(), k, "view" );
    require_size( x0.size(), n, "equilibrium state" );
    require_size( a0.size(), m, "equilibrium input" );
    require_size( domain.size(), n, "state domain" );
    require_size( inputs.size(), m, "input domain" );

    const auto xs = state_vars( n );
    const auto xa = concat( xs, act_vars( m ) );
    for ( const auto& e : field )
        require_vars( e, xa, "vector field" );
    for ( const auto& e : view )
        require_vars( e, xs, "view" );
    require_box( domain, x0, "state domain" );
    require_box( inputs, a0, "input domain" );

    const auto p = with_input( x0, a0 );
    for ( std::size_t i = 0; i < n; ++i )
    {
        const double v = CompiledExpr( field[ i ], xa )( p );
        if ( std::fabs( v ) > tol )
            throw InvariantViolation( "(x0, a0) is not an equilibrium: field component " + std::to_string( i + 1 ) +
                                      " is " + format_number( v ) );
    }
}

OpenODE parallel_odes( const OpenODE& a, const OpenODE& b )
{
    std::map< std::string, std::string > shift;
    for ( std::size_t i = 0; i < b.n; ++i )
        shift.emplace( state_var( i ), state_var( i + a.n ) );
    for ( std::size_t i = 0; i < b.m; ++i )
        shift.emplace( act_var( i ), act_var( i + a.m ) );

    OpenODE out = a;
    out.n = a.n + b.n;
    out.m = a.m + b.m;
    out.k = a.k + b.k;
    for ( const auto& e : b.field )
        out.field.push_back( rename_vars( e, shift ) );
    for ( const auto& e : b.view )
        out.view.push_back( rename_vars( e, shift ) );
    out.x0.insert( out.x0.end(), b.x0.begin(), b.x0.end() );
    out.a0.insert( out.a0.end(), b.a0.begin(), b.a0.end() );
    out.domain.insert( out.domain.end(), b.domain.begin(), b.domain.end() );
    out.inputs.insert( out.inputs.end(), b.inputs.begin(), b.inputs.end() );
    return out;
}

void LyapunovCandidate::validate( const OpenODE& ode, double tol ) const
{
    const auto xs = state_vars( ode.n );
    for ( const auto& v : free_vars( alpha ) )
        if ( std::find( xs.begin(), xs.end(), v ) != xs.end() )
            throw InvariantViolation( "assumption depends on the state variable '" + v +
                                      "'; it may only depend on the input" );
    require_vars( phi, xs, "storage function" );
    require_vars( alpha, act_vars( ode.m ), "assumption" );
    require_vars( gamma, obs_vars( ode.k ), "guarantee" );
    if ( !id_minus_in_kinf( lambda ) )
        throw InvariantViolation( "slack lambda must satisfy id - lambda in Kinf (lambda(0) = 0, all slopes < 1), got " +
                                  lambda.str() );

    const double phi0 = CompiledExpr( phi, xs )( ode.x0 );
    if ( std::fabs( phi0 ) > tol )
        throw InvariantViolation( "storage function does not vanish at x0: " + format_number( phi0 ) );
    const double alpha0 = CompiledExpr( alpha, act_vars( ode.m ) )( ode.a0 );
    if ( std::fabs( alpha0 ) > tol )
        throw InvariantViolation( "assumption does not vanish at a0: " + format_number( alpha0 ) );
    const double gamma0 = CompiledExpr( substitute( gamma, view_substitution( ode.view ) ), xs )( ode.x0 );
    if ( std::fabs( gamma0 ) > tol )
        throw InvariantViolation( "guarantee does not vanish at v(x0): " + format_number( gamma0 ) );
}

SamplePlan box_plan( const std::vector< Interval >& box, double step )
{
    std::vector< Axis > axes;
    for ( const auto& i : box )
        axes.push_back( { i.lo, i.hi, step } );
    return SamplePlan( std::move( axes ) );
}

GridVerdict check_storage( const Expr& phi, const std::vector< Interval >& domain, const std::vector< double >& x0,
                           double step, double tol, double tol_def )
{
    const std::size_t n = domain.size();
    require_size( x0.size(), n, "base point" );
    const auto xs = state_vars( n );
    require_vars( phi, xs, "storage function" );
    const CompiledExpr f( phi, xs );
    const auto plan = box_plan( domain, step );

    GridVerdict v;
    v.samples = plan.size();
    v.tolerance = tol;
    v.plan = plan;

    const double at_base = f( x0 );
    if ( std::fabs( at_base ) > tol )
    {
        v.holds = false;
        v.worst_margin = -std::fabs( at_base );
        v.condition = "vanishes at base point";
        v.witness = x0;
        return v;
    }

    double r_excl = 0.0;
    for ( const auto& a : plan.axes() )
        r_excl = std::max( r_excl, a.spacing() );

    WorstSample worst;
    std::vector< double > x;
    for ( std::size_t i = 0; i < plan.size(); ++i )
    {
        plan.point( i, x );
        if ( distance( x, x0 ) < r_excl )
            continue;
        worst.consider( f( x ) - tol_def, i, "definite" );
    }
    if ( worst.empty() )
        return v;
    v.worst_margin = worst.margin;
    v.condition = worst.condition;
    v.witness_index = worst.index;
    v.witness = plan.point( worst.index );
    v.holds = worst.margin > 0.0;
    return v;
}

GradientCheck gradient_gate( const Expr& phi, std::size_t n, const SamplePlan& plan, double limit )
{
    const auto xs = state_vars( n );
    const CompiledExpr f( phi, xs );
    std::vector< CompiledExpr > grad;
    for ( const auto& v : xs )
        grad.emplace_back( diff_expr( phi, v ), xs );

    GradientCheck check;
    check.points = plan.size();
    std::vector< double > x;
    for ( std::size_t i = 0; i < plan.size(); ++i )
    {
        plan.point( i, x );
        x.resize( n );
        for ( std::size_t d = 0; d < n; ++d )
        {
            const double h = 1e-5 * std::max( 1.0, std::fabs( x[ d ] ) );
            auto xp = x;
            auto xm = x;
            xp[ d ] += h;
            xm[ d ] -= h;
            const double fd = ( f( xp ) - f( xm ) ) / ( xp[ d ] - xm[ d ] );
            const double sym = grad[ d ]( x );
            const double err = std::fabs( sym - fd ) / std::max( { 1.0, std::fabs( sym ), std::fabs( fd ) } );
            if ( err > check.max_error )
            {
                check.max_error = err;
                check.worst_point = x;
            }
        }
    }
    if ( check.max_error >= limit )
    {
        std::string at;
        for ( std::size_t d = 0; d < check.worst_point.size(); ++d )
            at += ( d ? "," : "" ) + format_number( check.worst_point[ d ] );
        throw GradientGateFailure( "symbolic and finite-difference gradients disagree (error " +
                                       format_number( check.max_error ) + " at (" + at + "))",
                                   check );
    }
    return check;
}

LissVerdict certify_liss( const OpenODE& ode, const LyapunovCandidate& cand, const LissOptions& opts )
{
    ode.validate( opts.tol );
    cand.validate( ode, opts.tol );

    const auto state_plan = box_plan( ode.domain, opts.step );
    const auto plan = state_plan.join( box_plan( ode.inputs, opts.step ) );

    LissVerdict v;
    v.gradient = gradient_gate( cand.phi, ode.n, state_plan, opts.gradient_limit );

    const auto xs = state_vars( ode.n );
    const auto slots = concat( xs, act_vars( ode.m ) );
    Expr lie = Expr::constant( 0.0 );
    for ( std::size_t i = 0; i < ode.n; ++i )
        lie = lie + diff_expr( cand.phi, xs[ i ] ) * ode.field[ i ];
    const CompiledExpr c_lie( simplify( lie ), slots );
    const CompiledExpr c_phi( cand.phi, slots );
    const CompiledExpr c_alpha( cand.alpha, slots );
    const auto gamma_v = substitute( cand.gamma, view_substitution( ode.view ) );
    const CompiledExpr c_gamma_v( gamma_v, slots );
    const auto id_minus_lambda = pl_sub( PLFun::identity(), cand.lambda );

    std::size_t n_act = 1;
    for ( std::size_t d = ode.n; d < plan.dims(); ++d )
        n_act *= plan.axes()[ d ].count();

    const std::size_t total = plan.size();
    std::vector< WorstSample > partial( chunk_count( total, opts.jobs ) );
    for_chunks( total, opts.jobs, [ & ]( std::size_t chunk, std::size_t begin, std::size_t end ) {
        WorstSample worst;
        std::vector< double > p;
        double phi = 0.0;
        for ( std::size_t i = begin; i < end; ++i )
        {
            plan.point( i, p );
            const bool block_start = i % n_act == 0;
            if ( block_start || i == begin )
                phi = c_phi( p );
            if ( block_start )
                worst.consider( phi - c_gamma_v( p ), i, "bound" );
            const double rhs = c_lie( p ) + id_minus_lambda( std::max( 0.0, phi ) );
            worst.consider( c_alpha( p ) - rhs, i, "decrease" );
        }
        partial[ chunk ] = std::move( worst );
    } );

    WorstSample worst;
    for ( const auto& w : partial )
        worst.merge( w );

    v.samples = total;
    v.tolerance = opts.tol;
    v.plan = plan;
    if ( !worst.empty() )
    {
        v.worst_margin = worst.margin;
        v.condition = worst.condition;
        v.witness_index = worst.index;
        v.witness = plan.point( worst.index );
        v.holds = worst.margin >= -opts.tol;
    }
    if ( v.holds )
        v.global_capable =
            grows_on_rays( CompiledExpr( gamma_v, xs ), ode.x0, ode.n, outer_radius( ode.domain, ode.x0 ), false );
    return v;
}

KApprox k_approx( const Expr& phi, const std::vector< Interval >& domain, const std::vector< double >& x0,
                  double step )
{
    const auto storage = check_storage( phi, domain, x0, step );
    if ( !storage )
        throw PremiseFailure( "k_approx needs a storage function: " + storage.str() );

    const std::size_t n = domain.size();
    const auto xs = state_vars( n );
    const CompiledExpr f( phi, xs );
    const auto plan = box_plan( domain, step );

    std::vector< std::pair< double, double > > samples; // (radius, phi)
    samples.reserve( plan.size() );
    std::vector< double > x;
    for ( std::size_t i = 0; i < plan.size(); ++i )
    {
        plan.point( i, x );
        samples.emplace_back( distance( x, x0 ), f( x ) );
    }
    std::sort( samples.begin(), samples.end() );

    // Group by radius: the max and min of phi on each sphere.
    std::vector< double > radii, sphere_max, sphere_min;
    for ( const auto& [ r, v ] : samples )
    {
        if ( radii.empty() || radii.back() != r )
        {
            radii.push_back( r );
            sphere_max.push_back( v );
            sphere_min.push_back( v );
        }
        else
        {
            sphere_max.back() = std::max( sphere_max.back(), v );
            sphere_min.back() = std::min( sphere_min.back(), v );
        }
    }

    const std::size_t g = radii.size();
    std::vector< double > up( g ), lo( g );
    for ( std::size_t i = 0; i < g; ++i )
        up[ i ] = i == 0 ? sphere_max[ 0 ] : std::max( up[ i - 1 ], sphere_max[ i ] );
    for ( std::size_t i = g; i-- > 0; )
        lo[ i ] = i + 1 == g ? sphere_min[ i ] : std::min( lo[ i + 1 ], sphere_min[ i ] );

    std::vector< Breakpoint > ub, lb;
    if ( radii.front() > 0.0 )
    {
        ub.push_back( { 0.0, 0.0 } );
        lb.push_back( { 0.0, 0.0 } );
    }
    for ( std::size_t i = 0; i < g; ++i )
    {
        ub.push_back( { radii[ i ], up[ i ] } );
        lb.push_back( { radii[ i ], lo[ i ] } );
    }

    KApprox out;
    out.upper = PLFun( std::move( ub ), 0.0 );
    out.lower = PLFun( std::move( lb ), 0.0 );
    out.samples = plan.size();
    out.unbounded = grows_on_rays( f, x0, n, outer_radius( domain, x0 ), true );
    return out;
}

InputSignal::InputSignal( std::vector< InputPiece > pieces ) : _pieces{ std::move( pieces ) }
{
    if ( _pieces.empty() || _pieces.front().start != 0.0 )
        throw InvariantViolation( "input signal must start with a piece at t = 0" );
    for ( std::size_t i = 1; i < _pieces.size(); ++i )
    {
        if ( !( _pieces[ i ].start > _pieces[ i - 1 ].start ) )
            throw InvariantViolation( "input signal piece starts must be strictly increasing" );
        if ( _pieces[ i ].value.size() != _pieces[ 0 ].value.size() )
            throw InvariantViolation( "input signal pieces must all have the same dimension" );
    }
}

InputSignal InputSignal::constant( std::vector< double > value )
{
    return InputSignal( { InputPiece{ 0.0, std::move( value ) } } );
}

const std::vector< double >& InputSignal::at( double t ) const
{
    if ( _pieces.empty() )
    {
        static const std::vector< double > none;
        return none;
    }
    const auto it = std::upper_bound( _pieces.begin(), _pieces.end(), t,
                                      []( double x, const InputPiece& p ) { return x < p.start; } );
    return it == _pieces.begin() ? _pieces.front().value : ( it - 1 )->value;
}

double InputSignal::sup_norm( double t_end, const std::vector< double >& a0 ) const
{
    double sup = 0.0;
    for ( const auto& p : _pieces )
        if ( p.start <= t_end )
            sup = std::max( sup, distance( p.value, a0 ) );
    return sup;
}

Trajectory simulate( const OpenODE& ode, const std::vector< double >& x_init, const InputSignal& input,
                     double t_end, double h )
{
    ode.validate();
    require_size( x_init.size(), ode.n, "initial state" );
    for ( std::size_t i = 0; i < ode.n; ++i )
        if ( !ode.domain[ i ].contains( x_init[ i ] ) )
            throw InvariantViolation( "initial state lies outside the state domain" );
    if ( !( h > 0.0 ) || !std::isfinite( h ) )
        throw InvariantViolation( "step size must be positive" );
    if ( !( t_end >= 0.0 ) || !std::isfinite( t_end ) )
        throw InvariantViolation( "end time must be nonnegative" );
    if ( ode.m > 0 && input.at( 0.0 ).size() != ode.m )
        throw InvariantViolation( "input signal has dimension " + std::to_string( input.at( 0.0 ).size() ) +
                                  ", expected " + std::to_string( ode.m ) );

    const auto slots = concat( state_vars( ode.n ), act_vars( ode.m ) );
    std::vector< CompiledExpr > f;
    for ( const auto& e : ode.field )
        f.emplace_back( e, slots );

    const auto steps = static_cast< std::size_t >( std::llround( t_end / h ) );
    const double dt = steps == 0 ? 0.0 : t_end / static_cast< double >( steps );
    const std::size_t n = ode.n;

    Trajectory tr;
    tr.x0 = ode.x0;
    tr.input_sup = input.sup_norm( t_end, ode.a0 );
    tr.t.push_back( 0.0 );
    tr.x.push_back( x_init );

    std::vector< double > p( n + ode.m ), k1( n ), k2( n ), k3( n ), k4( n );
    auto eval = [ & ]( const std::vector< double >& x, double c, const std::vector< double >& dx,
                       std::vector< double >& out ) {
        for ( std::size_t i = 0; i < n; ++i )
            p[ i ] = x[ i ] + c * dx[ i ];
        for ( std::size_t i = 0; i < n; ++i )
            out[ i ] = f[ i ]( p );
    };

    auto x = x_init;
    const std::vector< double > zero( n, 0.0 );
    for ( std::size_t s = 1; s <= steps; ++s )
    {
        const double t = static_cast< double >( s - 1 ) * dt;
        if ( ode.m > 0 )
        {
            const auto& a = input.at( t );
            std::copy( a.begin(), a.end(), p.begin() + static_cast< std::ptrdiff_t >( n ) );
        }
        try
        {
            eval( x, 0.0, zero, k1 );
            eval( x, dt / 2, k1, k2 );
            eval( x, dt / 2, k2, k3 );
            eval( x, dt, k3, k4 );
        }
        catch ( const EvaluationError& e )
        {
            throw EvaluationError( "simulation failed at step " + std::to_string( s ) + ": " + e.what() );
        }
        for ( std::size_t i = 0; i < n; ++i )
        {
            x[ i ] += dt / 6.0 * ( k1[ i ] + 2.0 * k2[ i ] + 2.0 * k3[ i ] + k4[ i ] );
            if ( !std::isfinite( x[ i ] ) )
                throw EvaluationError( "non-finite state at step " + std::to_string( s ) );
        }
        bool inside = true;
        for ( std::size_t i = 0; i < n; ++i )
            inside = inside && ode.domain[ i ].contains( x[ i ] );
        if ( !inside )
        {
            tr.left_domain = true;
            break;
        }
        tr.t.push_back( s == steps ? t_end : static_cast< double >( s ) * dt );
        tr.x.push_back( x );
    }
    return tr;
}

GridVerdict check_iss_bound( const std::vector< Trajectory >& trajectories, const PLFun& k1, const PLFun& k2,
                             const PLFun& k3, double tol )
{
    if ( !in_class( k1, ComparisonClass::Kinf ) || !in_class( k2, ComparisonClass::Kinf ) )
        throw InvariantViolation( "ISS bound needs k1 and k2 in Kinf" );
    if ( !in_class( k3, ComparisonClass::Kinf0 ) )
        throw InvariantViolation( "ISS bound needs k3 in Kinf0" );

    GridVerdict v;
    v.tolerance = tol;
    WorstSample worst;
    std::vector< double > where;
    std::size_t index = 0;
    for ( std::size_t j = 0; j < trajectories.size(); ++j )
    {
        const auto& tr = trajectories[ j ];
        if ( tr.x.empty() )
            continue;
        const double r0 = distance( tr.x.front(), tr.x0 );
        const double input_part = k3( tr.input_sup );
        for ( std::size_t s = 0; s < tr.x.size(); ++s, ++index )
        {
            const double r = distance( tr.x[ s ], tr.x0 );
            const double bound = k1( k2( r0 ) * std::exp( -tr.t[ s ] ) ) + input_part;
            worst.consider( bound - r, index, "iss bound" );
            if ( worst.index == index )
                where = { static_cast< double >( j ), tr.t[ s ], r };
        }
    }
    v.samples = index;
    if ( worst.empty() )
        return v;
    v.worst_margin = worst.margin;
    v.condition = worst.condition;
    v.witness_index = worst.index;
    v.witness = where;
    v.holds = worst.margin >= -tol;
    return v;
}

FalsifyResult falsify( const OpenODE& ode, const LyapunovCandidate& cand, const std::vector< double >& start,
                       std::size_t budget, double step, double tol )
{
    FalsifyResult out;
    if ( budget == 0 )
        return out;
    require_size( start.size(), ode.n + ode.m, "search start" );

    const auto xs = state_vars( ode.n );
    const auto slots = concat( xs, act_vars( ode.m ) );
    Expr lie = Expr::constant( 0.0 );
    for ( std::size_t i = 0; i < ode.n; ++i )
        lie = lie + diff_expr( cand.phi, xs[ i ] ) * ode.field[ i ];
    const CompiledExpr c_lie( simplify( lie ), slots );
    const CompiledExpr c_phi( cand.phi, slots );
    const CompiledExpr c_alpha( cand.alpha, slots );
    const CompiledExpr c_gamma_v( substitute( cand.gamma, view_substitution( ode.view ) ), slots );
    const auto id_minus_lambda = pl_sub( PLFun::identity(), cand.lambda );

    std::vector< Interval > box = ode.domain;
    box.insert( box.end(), ode.inputs.begin(), ode.inputs.end() );

    auto margin = [ & ]( const std::vector< double >& p ) {
        ++out.evaluations;
        try
        {
            const double phi = c_phi( p );
            const double dec = c_alpha( p ) - c_lie( p ) - id_minus_lambda( std::max( 0.0, phi ) );
            return std::min( dec, phi - c_gamma_v( p ) );
        }
        catch ( const Error& )
        {
            return std::numeric_limits< double >::infinity();
        }
    };

    auto p = start;
    for ( std::size_t d = 0; d < p.size(); ++d )
        p[ d ] = std::clamp( p[ d ], box[ d ].lo, box[ d ].hi );
    double best = margin( p );
    out.margin = best;
    if ( best < -tol )
    {
        out.point = p;
        return out;
    }

    double delta = step;
    while ( out.evaluations < budget && delta > 1e-12 )
    {
        bool improved = false;
        for ( std::size_t d = 0; d < p.size() && out.evaluations < budget; ++d )
        {
            for ( double sign : { 1.0, -1.0 } )
            {
                if ( out.evaluations >= budget )
                    break;
                auto q = p;
                q[ d ] = std::clamp( q[ d ] + sign * delta, box[ d ].lo, box[ d ].hi );
                if ( q[ d ] == p[ d ] )
                    continue;
                const double m = margin( q );
                if ( m < best )
                {
                    best = m;
                    p = std::move( q );
                    improved = true;
                    if ( best < -tol )
                    {
                        out.margin = best;
                        out.point = p;
                        return out;
                    }
                    break;
                }
            }
        }
        if ( !improved )
            delta /= 2.0;
    }
    out.margin = best;
    return out;
}

} // namespace agl
