#include "agl/expr.hpp"

#include "agl/errors.hpp"
#include "agl/number.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace agl
{

struct Expr::Node
{
    ExprOp op = ExprOp::constant;
    double value = 0.0;
    std::string name;
    int exponent = 0;
    std::vector< Expr > args;
};

namespace
{

std::size_t arity( ExprOp op )
{
    switch ( op )
    {
    case ExprOp::constant:
    case ExprOp::var:
        return 0;
    case ExprOp::neg:
    case ExprOp::abs:
    case ExprOp::sin:
    case ExprOp::cos:
    case ExprOp::exp:
    case ExprOp::pow:
        return 1;
    case ExprOp::add:
    case ExprOp::sub:
    case ExprOp::mul:
    case ExprOp::div:
    case ExprOp::min:
    case ExprOp::max:
        return 2;
    }
    return 0;
}

} // namespace

Expr Expr::constant( double value )
{
    if ( !std::isfinite( value ) )
        throw InvariantViolation( "expression constants must be finite" );
    auto n = std::make_shared< Node >();
    n->op = ExprOp::constant;
    n->value = value;
    return Expr( std::move( n ) );
}

Expr Expr::var( std::string name )
{
    if ( name.empty() )
        throw InvariantViolation( "expression variable needs a name" );
    auto n = std::make_shared< Node >();
    n->op = ExprOp::var;
    n->name = std::move( name );
    return Expr( std::move( n ) );
}

Expr Expr::unary( ExprOp op, Expr arg )
{
    if ( arity( op ) != 1 || op == ExprOp::pow )
        throw InvariantViolation( std::string( "not a unary operator: " ) + to_string( op ) );
    auto n = std::make_shared< Node >();
    n->op = op;
    n->args = { std::move( arg ) };
    return Expr( std::move( n ) );
}

Expr Expr::binary( ExprOp op, Expr lhs, Expr rhs )
{
    if ( arity( op ) != 2 )
        throw InvariantViolation( std::string( "not a binary operator: " ) + to_string( op ) );
    auto n = std::make_shared< Node >();
    n->op = op;
    n->args = { std::move( lhs ), std::move( rhs ) };
    return Expr( std::move( n ) );
}

Expr Expr::power( Expr base, int exponent )
{
    auto n = std::make_shared< Node >();
    n->op = ExprOp::pow;
    n->exponent = exponent;
    n->args = { std::move( base ) };
    return Expr( std::move( n ) );
}

ExprOp Expr::op() const { return _node->op; }
double Expr::value() const { return _node->value; }
const std::string& Expr::name() const { return _node->name; }
int Expr::exponent() const { return _node->exponent; }
const std::vector< Expr >& Expr::args() const { return _node->args; }

bool operator==( const Expr& a, const Expr& b )
{
    if ( a._node == b._node )
        return true;
    const auto& x = *a._node;
    const auto& y = *b._node;
    return x.op == y.op && x.value == y.value && x.name == y.name && x.exponent == y.exponent && x.args == y.args;
}

Expr operator+( const Expr& a, const Expr& b ) { return Expr::binary( ExprOp::add, a, b ); }
Expr operator-( const Expr& a, const Expr& b ) { return Expr::binary( ExprOp::sub, a, b ); }
Expr operator*( const Expr& a, const Expr& b ) { return Expr::binary( ExprOp::mul, a, b ); }
Expr operator/( const Expr& a, const Expr& b ) { return Expr::binary( ExprOp::div, a, b ); }
Expr operator-( const Expr& a ) { return Expr::unary( ExprOp::neg, a ); }
Expr pow( const Expr& base, int exponent ) { return Expr::power( base, exponent ); }
Expr abs( const Expr& e ) { return Expr::unary( ExprOp::abs, e ); }
Expr sin( const Expr& e ) { return Expr::unary( ExprOp::sin, e ); }
Expr cos( const Expr& e ) { return Expr::unary( ExprOp::cos, e ); }
Expr exp( const Expr& e ) { return Expr::unary( ExprOp::exp, e ); }
Expr min( const Expr& a, const Expr& b ) { return Expr::binary( ExprOp::min, a, b ); }
Expr max( const Expr& a, const Expr& b ) { return Expr::binary( ExprOp::max, a, b ); }

const char* to_string( ExprOp op )
{
    switch ( op )
    {
    case ExprOp::constant:
        return "const";
    case ExprOp::var:
        return "var";
    case ExprOp::add:
        return "+";
    case ExprOp::sub:
        return "-";
    case ExprOp::mul:
        return "*";
    case ExprOp::div:
        return "/";
    case ExprOp::pow:
        return "^";
    case ExprOp::neg:
        return "neg";
    case ExprOp::abs:
        return "abs";
    case ExprOp::sin:
        return "sin";
    case ExprOp::cos:
        return "cos";
    case ExprOp::exp:
        return "exp";
    case ExprOp::min:
        return "min";
    case ExprOp::max:
        return "max";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Printing

namespace
{

// Binding strength of the printed form of e.
int level( const Expr& e )
{
    switch ( e.op() )
    {
    case ExprOp::add:
    case ExprOp::sub:
        return 1;
    case ExprOp::mul:
    case ExprOp::div:
        return 2;
    case ExprOp::neg:
        return 3;
    case ExprOp::pow:
        return 4;
    case ExprOp::constant:
        return std::signbit( e.value() ) ? 3 : 5;
    default:
        return 5;
    }
}

void print( const Expr& e, std::string& out );

void print_at( const Expr& e, int min_level, std::string& out )
{
    if ( level( e ) < min_level )
    {
        out += '(';
        print( e, out );
        out += ')';
    }
    else
        print( e, out );
}

void print( const Expr& e, std::string& out )
{
    const auto& a = e.args();
    switch ( e.op() )
    {
    case ExprOp::constant:
        out += format_number( e.value() );
        return;
    case ExprOp::var:
        out += e.name();
        return;
    case ExprOp::add:
    case ExprOp::sub:
        print_at( a[ 0 ], 1, out );
        out += e.op() == ExprOp::add ? " + " : " - ";
        print_at( a[ 1 ], 2, out );
        return;
    case ExprOp::mul:
    case ExprOp::div:
        print_at( a[ 0 ], 2, out );
        out += e.op() == ExprOp::mul ? "*" : "/";
        print_at( a[ 1 ], 3, out );
        return;
    case ExprOp::neg:
        out += '-';
        // A bare literal after '-' would be read back as a negative constant.
        if ( a[ 0 ].is_constant() && !std::signbit( a[ 0 ].value() ) )
        {
            out += '(';
            print( a[ 0 ], out );
            out += ')';
        }
        else
            print_at( a[ 0 ], 3, out );
        return;
    case ExprOp::pow:
        print_at( a[ 0 ], 5, out );
        out += '^';
        out += std::to_string( e.exponent() );
        return;
    case ExprOp::abs:
    case ExprOp::sin:
    case ExprOp::cos:
    case ExprOp::exp:
        out += to_string( e.op() );
        out += '(';
        print( a[ 0 ], out );
        out += ')';
        return;
    case ExprOp::min:
    case ExprOp::max:
        out += to_string( e.op() );
        out += '(';
        print( a[ 0 ], out );
        out += ", ";
        print( a[ 1 ], out );
        out += ')';
        return;
    }
}

} // namespace

std::string Expr::str() const
{
    std::string out;
    print( *this, out );
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace
{

double checked( double v, ExprOp op )
{
    if ( !std::isfinite( v ) )
        throw EvaluationError( std::string( "non-finite result in '" ) + to_string( op ) + "'" );
    return v;
}

double apply_pow( double base, int n )
{
    if ( base == 0.0 && n < 0 )
        throw EvaluationError( "zero raised to a negative power" );
    return checked( std::pow( base, n ), ExprOp::pow );
}

double apply_binary( ExprOp op, double x, double y )
{
    switch ( op )
    {
    case ExprOp::add:
        return checked( x + y, op );
    case ExprOp::sub:
        return checked( x - y, op );
    case ExprOp::mul:
        return checked( x * y, op );
    case ExprOp::div:
        if ( y == 0.0 )
            throw EvaluationError( "division by zero" );
        return checked( x / y, op );
    case ExprOp::min:
        return std::min( x, y );
    case ExprOp::max:
        return std::max( x, y );
    default:
        throw InvariantViolation( "apply_binary on non-binary operator" );
    }
}

double apply_unary( ExprOp op, double x )
{
    switch ( op )
    {
    case ExprOp::neg:
        return -x;
    case ExprOp::abs:
        return std::fabs( x );
    case ExprOp::sin:
        return std::sin( x );
    case ExprOp::cos:
        return std::cos( x );
    case ExprOp::exp:
        return checked( std::exp( x ), op );
    default:
        throw InvariantViolation( "apply_unary on non-unary operator" );
    }
}

} // namespace

double eval_expr( const Expr& e, const Env& env )
{
    switch ( e.op() )
    {
    case ExprOp::constant:
        return e.value();
    case ExprOp::var: {
        const auto it = env.find( e.name() );
        if ( it == env.end() )
            throw EvaluationError( "unbound variable '" + e.name() + "'" );
        return it->second;
    }
    case ExprOp::pow:
        return apply_pow( eval_expr( e.args()[ 0 ], env ), e.exponent() );
    default:
        break;
    }
    if ( e.args().size() == 1 )
        return apply_unary( e.op(), eval_expr( e.args()[ 0 ], env ) );
    return apply_binary( e.op(), eval_expr( e.args()[ 0 ], env ), eval_expr( e.args()[ 1 ], env ) );
}

namespace
{

void collect_vars( const Expr& e, std::set< std::string >& out )
{
    if ( e.op() == ExprOp::var )
        out.insert( e.name() );
    for ( const auto& a : e.args() )
        collect_vars( a, out );
}

} // namespace

std::set< std::string > free_vars( const Expr& e )
{
    std::set< std::string > out;
    collect_vars( e, out );
    return out;
}

bool depends_on( const Expr& e, const std::string& var )
{
    if ( e.op() == ExprOp::var )
        return e.name() == var;
    for ( const auto& a : e.args() )
        if ( depends_on( a, var ) )
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Simplification and differentiation

namespace
{

Expr simplify_node( const Expr& e )
{
    const auto& a = e.args();
    bool all_const = !a.empty();
    for ( const auto& x : a )
        all_const = all_const && x.is_constant();
    if ( all_const )
    {
        try
        {
            return Expr::constant( eval_expr( e, {} ) );
        }
        catch ( const Error& )
        {
            return e;
        }
    }

    switch ( e.op() )
    {
    case ExprOp::add:
        if ( a[ 0 ].is_constant( 0.0 ) )
            return a[ 1 ];
        if ( a[ 1 ].is_constant( 0.0 ) )
            return a[ 0 ];
        if ( a[ 1 ].op() == ExprOp::neg )
            return simplify_node( a[ 0 ] - a[ 1 ].args()[ 0 ] );
        break;
    case ExprOp::sub:
        if ( a[ 1 ].is_constant( 0.0 ) )
            return a[ 0 ];
        if ( a[ 0 ].is_constant( 0.0 ) )
            return simplify_node( -a[ 1 ] );
        break;
    case ExprOp::mul:
        if ( a[ 0 ].is_constant( 0.0 ) || a[ 1 ].is_constant( 0.0 ) )
            return Expr::constant( 0.0 );
        if ( a[ 0 ].is_constant( 1.0 ) )
            return a[ 1 ];
        if ( a[ 1 ].is_constant( 1.0 ) )
            return a[ 0 ];
        if ( a[ 0 ].is_constant( -1.0 ) )
            return simplify_node( -a[ 1 ] );
        if ( a[ 1 ].is_constant( -1.0 ) )
            return simplify_node( -a[ 0 ] );
        break;
    case ExprOp::div:
        if ( a[ 1 ].is_constant( 1.0 ) )
            return a[ 0 ];
        if ( a[ 0 ].is_constant( 0.0 ) )
            return Expr::constant( 0.0 );
        break;
    case ExprOp::pow:
        if ( e.exponent() == 1 )
            return a[ 0 ];
        if ( e.exponent() == 0 )
            return Expr::constant( 1.0 );
        break;
    case ExprOp::neg:
        if ( a[ 0 ].op() == ExprOp::neg )
            return a[ 0 ].args()[ 0 ];
        break;
    default:
        break;
    }
    return e;
}

Expr rebuild( const Expr& e, std::vector< Expr > args )
{
    switch ( e.op() )
    {
    case ExprOp::constant:
    case ExprOp::var:
        return e;
    case ExprOp::pow:
        return Expr::power( std::move( args[ 0 ] ), e.exponent() );
    default:
        break;
    }
    if ( args.size() == 1 )
        return Expr::unary( e.op(), std::move( args[ 0 ] ) );
    return Expr::binary( e.op(), std::move( args[ 0 ] ), std::move( args[ 1 ] ) );
}

Expr mul_s( const Expr& a, const Expr& b ) { return simplify_node( a * b ); }
Expr add_s( const Expr& a, const Expr& b ) { return simplify_node( a + b ); }
Expr sub_s( const Expr& a, const Expr& b ) { return simplify_node( a - b ); }
Expr neg_s( const Expr& a ) { return simplify_node( -a ); }

} // namespace

Expr simplify( const Expr& e )
{
    if ( e.args().empty() )
        return e;
    std::vector< Expr > args;
    for ( const auto& a : e.args() )
        args.push_back( simplify( a ) );
    return simplify_node( rebuild( e, std::move( args ) ) );
}

Expr diff_expr( const Expr& e, const std::string& var )
{
    if ( !depends_on( e, var ) )
        return Expr::constant( 0.0 );

    const auto& a = e.args();
    switch ( e.op() )
    {
    case ExprOp::constant:
        return Expr::constant( 0.0 );
    case ExprOp::var:
        return Expr::constant( 1.0 );
    case ExprOp::add:
        return add_s( diff_expr( a[ 0 ], var ), diff_expr( a[ 1 ], var ) );
    case ExprOp::sub:
        return sub_s( diff_expr( a[ 0 ], var ), diff_expr( a[ 1 ], var ) );
    case ExprOp::mul:
        return add_s( mul_s( diff_expr( a[ 0 ], var ), a[ 1 ] ), mul_s( a[ 0 ], diff_expr( a[ 1 ], var ) ) );
    case ExprOp::div: {
        const auto num = sub_s( mul_s( diff_expr( a[ 0 ], var ), a[ 1 ] ), mul_s( a[ 0 ], diff_expr( a[ 1 ], var ) ) );
        return simplify_node( num / simplify_node( pow( a[ 1 ], 2 ) ) );
    }
    case ExprOp::pow: {
        const int n = e.exponent();
        const auto outer =
            mul_s( Expr::constant( static_cast< double >( n ) ), simplify_node( pow( a[ 0 ], n - 1 ) ) );
        return mul_s( outer, diff_expr( a[ 0 ], var ) );
    }
    case ExprOp::neg:
        return neg_s( diff_expr( a[ 0 ], var ) );
    case ExprOp::sin:
        return mul_s( cos( a[ 0 ] ), diff_expr( a[ 0 ], var ) );
    case ExprOp::cos:
        return mul_s( neg_s( sin( a[ 0 ] ) ), diff_expr( a[ 0 ], var ) );
    case ExprOp::exp:
        return mul_s( e, diff_expr( a[ 0 ], var ) );
    case ExprOp::abs:
    case ExprOp::min:
    case ExprOp::max:
        throw EvaluationError( std::string( "cannot differentiate through '" ) + to_string( e.op() ) +
                               "' with respect to " + var + "; give the function in smooth form" );
    }
    return Expr::constant( 0.0 );
}

Expr substitute( const Expr& e, const std::map< std::string, Expr >& replacement )
{
    if ( e.op() == ExprOp::var )
    {
        const auto it = replacement.find( e.name() );
        return it == replacement.end() ? e : it->second;
    }
    if ( e.args().empty() )
        return e;
    std::vector< Expr > args;
    for ( const auto& a : e.args() )
        args.push_back( substitute( a, replacement ) );
    return rebuild( e, std::move( args ) );
}

Expr rename_vars( const Expr& e, const std::map< std::string, std::string >& renaming )
{
    std::map< std::string, Expr > replacement;
    for ( const auto& [ from, to ] : renaming )
        replacement.emplace( from, Expr::var( to ) );
    return substitute( e, replacement );
}

// ---------------------------------------------------------------------------
// Compiled evaluation

namespace
{

struct Emitter
{
    const std::vector< std::string >& slots;
    std::size_t depth = 0;
    std::size_t max_depth = 0;

    void push()
    {
        ++depth;
        max_depth = std::max( max_depth, depth );
    }
};

} // namespace

CompiledExpr::CompiledExpr( const Expr& e, const std::vector< std::string >& slots ) : _n_slots{ slots.size() }
{
    Emitter em{ slots };
    auto emit = [ & ]( auto&& self, const Expr& x ) -> void {
        switch ( x.op() )
        {
        case ExprOp::constant:
            _code.push_back( { ExprOp::constant, x.value(), 0 } );
            em.push();
            return;
        case ExprOp::var: {
            const auto it = std::find( slots.begin(), slots.end(), x.name() );
            if ( it == slots.end() )
                throw EvaluationError( "unbound variable '" + x.name() + "'" );
            _code.push_back( { ExprOp::var, 0.0, static_cast< int >( it - slots.begin() ) } );
            em.push();
            return;
        }
        default:
            break;
        }
        for ( const auto& a : x.args() )
            self( self, a );
        _code.push_back( { x.op(), 0.0, x.exponent() } );
        em.depth -= x.args().size() - 1;
    };
    emit( emit, e );
    _max_stack = em.max_depth;
}

double CompiledExpr::operator()( std::span< const double > values ) const
{
    if ( values.size() < _n_slots )
        throw EvaluationError( "compiled expression: too few variable values" );
    if ( _code.empty() )
        return 0.0;

    std::array< double, 64 > small{};
    std::vector< double > big;
    double* stack = small.data();
    if ( _max_stack > small.size() )
    {
        big.resize( _max_stack );
        stack = big.data();
    }

    std::size_t sp = 0;
    for ( const auto& in : _code )
    {
        switch ( in.op )
        {
        case ExprOp::constant:
            stack[ sp++ ] = in.value;
            break;
        case ExprOp::var:
            stack[ sp++ ] = values[ static_cast< std::size_t >( in.slot ) ];
            break;
        case ExprOp::pow:
            stack[ sp - 1 ] = apply_pow( stack[ sp - 1 ], in.slot );
            break;
        case ExprOp::neg:
        case ExprOp::abs:
        case ExprOp::sin:
        case ExprOp::cos:
        case ExprOp::exp:
            stack[ sp - 1 ] = apply_unary( in.op, stack[ sp - 1 ] );
            break;
        default:
            stack[ sp - 2 ] = apply_binary( in.op, stack[ sp - 2 ], stack[ sp - 1 ] );
            --sp;
            break;
        }
    }
    return stack[ 0 ];
}

} // namespace agl
