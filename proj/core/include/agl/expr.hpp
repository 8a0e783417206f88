#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace agl
{

enum class ExprOp
{
    constant,
    var,
    add,
    sub,
    mul,
    div,
    pow,
    neg,
    abs,
    sin,
    cos,
    exp,
    min,
    max,
};

// Immutable arithmetic expression over named real variables. Copies share
// structure. Equality is structural.
class Expr
{
public:
    struct Node;

    Expr() : Expr( constant( 0.0 ) ) {}

    static Expr constant( double value );
    static Expr var( std::string name );
    static Expr unary( ExprOp op, Expr arg );
    static Expr binary( ExprOp op, Expr lhs, Expr rhs );
    static Expr power( Expr base, int exponent );

    [[nodiscard]] ExprOp op() const;
    [[nodiscard]] double value() const;           // constant
    [[nodiscard]] const std::string& name() const; // var
    [[nodiscard]] int exponent() const;            // pow
    [[nodiscard]] const std::vector< Expr >& args() const;

    [[nodiscard]] bool is_constant() const { return op() == ExprOp::constant; }
    [[nodiscard]] bool is_constant( double v ) const { return is_constant() && value() == v; }

    // Canonical text. Parenthesizes exactly where needed for the expression
    // parser to rebuild the same tree.
    [[nodiscard]] std::string str() const;

    friend bool operator==( const Expr& a, const Expr& b );

private:
    explicit Expr( std::shared_ptr< const Node > node ) : _node{ std::move( node ) } {}
    std::shared_ptr< const Node > _node;
};

Expr operator+( const Expr& a, const Expr& b );
Expr operator-( const Expr& a, const Expr& b );
Expr operator*( const Expr& a, const Expr& b );
Expr operator/( const Expr& a, const Expr& b );
Expr operator-( const Expr& a );
Expr pow( const Expr& base, int exponent );
Expr abs( const Expr& e );
Expr sin( const Expr& e );
Expr cos( const Expr& e );
Expr exp( const Expr& e );
Expr min( const Expr& a, const Expr& b );
Expr max( const Expr& a, const Expr& b );

const char* to_string( ExprOp op );

using Env = std::map< std::string, double, std::less<> >;

// Throws EvaluationError on unbound variables, division by zero, zero to a
// negative power, or a non-finite result.
double eval_expr( const Expr& e, const Env& env );

std::set< std::string > free_vars( const Expr& e );
bool depends_on( const Expr& e, const std::string& var );

// Symbolic derivative, lightly simplified. Throws EvaluationError if the
// derivative has to pass through abs, min or max of a subterm that depends
// on `var`: smooth forms are required.
Expr diff_expr( const Expr& e, const std::string& var );

// Constant folding and the usual unit/zero identities.
Expr simplify( const Expr& e );

// Replace variables by expressions (simultaneously).
Expr substitute( const Expr& e, const std::map< std::string, Expr >& replacement );

// Rename variables (a substitute that only maps to variables).
Expr rename_vars( const Expr& e, const std::map< std::string, std::string >& renaming );

// An expression flattened to a postfix program over indexed variable slots,
// for evaluating the same expression at many points.
class CompiledExpr
{
public:
    CompiledExpr() = default;
    // Throws EvaluationError if e mentions a variable not in `slots`.
    CompiledExpr( const Expr& e, const std::vector< std::string >& slots );

    // Same error contract as eval_expr.
    [[nodiscard]] double operator()( std::span< const double > values ) const;

private:
    struct Instr
    {
        ExprOp op;
        double value = 0.0;
        int slot = 0;
    };
    std::vector< Instr > _code;
    std::size_t _max_stack = 0;
    std::size_t _n_slots = 0;
};

} // namespace agl
