#pragma once

#include "agl/symbol.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace agl
{

// An interface <A_o | o : O>: a finite set of observations and, for each
// observation, the finite set of actions available under it.
class Interface
{
public:
    Interface() = default;
    Interface( FiniteSet obs, std::vector< FiniteSet > actions );

    // <A | O> with the same action set under every observation.
    static Interface simple( FiniteSet obs, FiniteSet actions );

    [[nodiscard]] const FiniteSet& obs() const { return _obs; }
    [[nodiscard]] const FiniteSet& actions( Index o ) const { return _actions[ o ]; }
    [[nodiscard]] const FiniteSet& actions( const Symbol& o ) const;
    [[nodiscard]] const std::vector< FiniteSet >& action_sets() const { return _actions; }

    [[nodiscard]] bool is_simple() const;
    // The shared action set of a simple interface. Throws if not simple or
    // if there are no observations.
    [[nodiscard]] const FiniteSet& simple_actions() const;

    friend bool operator==( const Interface& lhs, const Interface& rhs ) = default;

private:
    FiniteSet _obs;
    std::vector< FiniteSet > _actions;
};

// <A1 x A2 | O1 x O2> with pair symbols.
Interface parallel_interface( const Interface& a, const Interface& b );

// Human readable description of the first difference between two
// interfaces, or nullopt if they are equal.
std::optional< std::string > interface_difference( const Interface& expected, const Interface& actual );

// Throws InterfaceMismatch with `context` and the first difference.
void require_same_interface( const Interface& expected, const Interface& actual, const std::string& context );

// A lens <w# | w> : <A1 | O1> <-> <A2 | O2>, stored as explicit tables over
// carrier indices: fwd[o1] is an index into O2 and bwd[o1][a2] is an index
// into A1[o1], where a2 indexes A2[fwd[o1]].
class Lens
{
public:
    using ForwardFn = std::function< Symbol( const Symbol& ) >;
    using BackwardFn = std::function< Symbol( const Symbol&, const Symbol& ) >;

    Lens( Interface src, Interface dst, std::vector< Index > fwd, std::vector< std::vector< Index > > bwd );

    // Tabulates symbol-level functions. Every value is checked to lie in its
    // carrier; violations throw InvariantViolation.
    static Lens tabulate( Interface src, Interface dst, const ForwardFn& fwd, const BackwardFn& bwd );

    [[nodiscard]] const Interface& src() const { return _src; }
    [[nodiscard]] const Interface& dst() const { return _dst; }

    [[nodiscard]] Index fwd( Index o1 ) const { return _fwd[ o1 ]; }
    [[nodiscard]] Index bwd( Index o1, Index a2 ) const { return _bwd[ o1 ][ a2 ]; }
    [[nodiscard]] const std::vector< Index >& fwd_table() const { return _fwd; }
    [[nodiscard]] const std::vector< std::vector< Index > >& bwd_table() const { return _bwd; }

    [[nodiscard]] Symbol fwd( const Symbol& o1 ) const;
    [[nodiscard]] Symbol bwd( const Symbol& o1, const Symbol& a2 ) const;

    friend bool operator==( const Lens& lhs, const Lens& rhs ) = default;

private:
    Interface _src;
    Interface _dst;
    std::vector< Index > _fwd;
    std::vector< std::vector< Index > > _bwd;
};

// A chart <f# | f> : <A1 | O1> => <A2 | O2>; unlike a lens the action
// component points forward: push[o1][a1] indexes A2[fwd[o1]].
class Chart
{
public:
    using ForwardFn = std::function< Symbol( const Symbol& ) >;
    using PushFn = std::function< Symbol( const Symbol&, const Symbol& ) >;

    Chart( Interface src, Interface dst, std::vector< Index > fwd, std::vector< std::vector< Index > > push );

    static Chart tabulate( Interface src, Interface dst, const ForwardFn& fwd, const PushFn& push );

    [[nodiscard]] const Interface& src() const { return _src; }
    [[nodiscard]] const Interface& dst() const { return _dst; }

    [[nodiscard]] Index fwd( Index o1 ) const { return _fwd[ o1 ]; }
    [[nodiscard]] Index push( Index o1, Index a1 ) const { return _push[ o1 ][ a1 ]; }
    [[nodiscard]] const std::vector< Index >& fwd_table() const { return _fwd; }
    [[nodiscard]] const std::vector< std::vector< Index > >& push_table() const { return _push; }

    [[nodiscard]] Symbol fwd( const Symbol& o1 ) const;
    [[nodiscard]] Symbol push( const Symbol& o1, const Symbol& a1 ) const;

    friend bool operator==( const Chart& lhs, const Chart& rhs ) = default;

private:
    Interface _src;
    Interface _dst;
    std::vector< Index > _fwd;
    std::vector< std::vector< Index > > _push;
};

// t o w: fwd = t.fwd . w.fwd, bwd(o1, a3) = w.bwd(o1, t.bwd(w.fwd(o1), a3)).
Lens compose_lens( const Lens& t, const Lens& w );
Lens identity_lens( const Interface& iface );
Lens parallel_lens( const Lens& l1, const Lens& l2 );

// cascade: <A | O1 x M> || <M x A | O2>  <->  <A | O1 x O2>
//   ((o1, m), o2)          |->  (o1, o2)
//   (((o1, m), o2), a)     |->  (a, (m, a))
Lens make_cascade( const FiniteSet& a, const FiniteSet& o1, const FiniteSet& m, const FiniteSet& o2 );

// feedback: <A x M | M x O>  <->  <A | O>
//   (m, o)        |->  o
//   ((m, o), a)   |->  (a, m)
Lens make_feedback( const FiniteSet& a, const FiniteSet& m, const FiniteSet& o );

// Overloads that read the carriers off the component interfaces
// <A | O1 x M>, <M x A | O2> (cascade) or <A x M | M x O> (feedback). Throw
// InvariantViolation when an interface is not simple or not of that shape.
Lens make_cascade( const Interface& first, const Interface& second );
Lens make_feedback( const Interface& inner );

Chart compose_chart( const Chart& g, const Chart& f );
Chart identity_chart( const Interface& iface );

} // namespace agl
