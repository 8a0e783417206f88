#pragma once

#include "agl/errors.hpp"
#include "agl/lens.hpp"
#include "agl/verdict.hpp"

#include <span>
#include <vector>

namespace agl
{

// The kind of change a machine's update produces: a next state
// (deterministic, T_s S = S) or a set of possible next states
// (nondeterministic, T_s S = P S). Stochastic updates are not supported.
enum class ChangeKind
{
    deterministic,
    nondeterministic,
};

const char* to_string( ChangeKind kind );

// A change is a sorted, duplicate-free list of state indices. Deterministic
// changes have exactly one element.
using Change = std::vector< Index >;

// mu_T: pairs two changes into a change of the product state, where the
// second factor has `n2` states. Deterministic: the pair; powerset: U1 x U2.
Change pair_changes( ChangeKind kind, const Change& c1, const Change& c2, std::size_t n2 );

// T sigma: pushes a change forward along a state map (elementwise image for
// the powerset).
Change push_change( ChangeKind kind, const Change& c, std::span< const Index > sigma );

// A generalized Moore machine <u | v> : <T_s S | S> <-> <A_o | O>.
class Machine
{
public:
    using ViewFn = std::function< Symbol( const Symbol& ) >;
    // Returns the successor states; must return exactly one for
    // deterministic machines.
    using UpdateFn = std::function< std::vector< Symbol >( const Symbol&, const Symbol& ) >;

    Machine( FiniteSet states, Interface iface, ChangeKind kind, std::vector< Index > view,
             std::vector< std::vector< Change > > update );

    static Machine tabulate( FiniteSet states, Interface iface, ChangeKind kind, const ViewFn& view,
                             const UpdateFn& update );

    [[nodiscard]] const FiniteSet& states() const { return _states; }
    [[nodiscard]] const Interface& iface() const { return _iface; }
    [[nodiscard]] ChangeKind kind() const { return _kind; }

    [[nodiscard]] Index view( Index s ) const { return _view[ s ]; }
    [[nodiscard]] const Change& update( Index s, Index a ) const { return _update[ s ][ a ]; }
    // The action set available in state s, i.e. A[view(s)].
    [[nodiscard]] const FiniteSet& fiber( Index s ) const { return _iface.actions( _view[ s ] ); }

    [[nodiscard]] const std::vector< Index >& view_table() const { return _view; }
    [[nodiscard]] const std::vector< std::vector< Change > >& update_table() const { return _update; }

    friend bool operator==( const Machine&, const Machine& ) = default;

private:
    FiniteSet _states;
    Interface _iface;
    ChangeKind _kind = ChangeKind::deterministic;
    std::vector< Index > _view;
    std::vector< std::vector< Change > > _update;
};

// Both machines run side by side: states and interfaces are products and
// updates are paired with mu_T.
Machine parallel_machines( const Machine& m1, const Machine& m2 );

// Left-nested parallel product ((m1 || m2) || m3) ...; requires at least one
// machine and a shared change kind.
Machine parallel_machines( std::span< const Machine > machines );

// Composes the wiring lens after the parallel product of the machines:
// view = w . v, update(s, a) = u(s, w#(v(s), a)). The wiring source must be
// the left-nested product of the machine interfaces.
Machine couple( std::span< const Machine > machines, const Lens& wiring );
Machine couple( const Machine& machine, const Lens& wiring );

// A candidate morphism of machines over a chart of their interfaces.
// Construction checks only that the pieces fit together; whether the square
// commutes is decided by check_simulation.
class Simulation
{
public:
    Simulation( Machine src, Machine dst, Chart chart, std::vector< Index > state_map );

    [[nodiscard]] const Machine& src() const { return _src; }
    [[nodiscard]] const Machine& dst() const { return _dst; }
    [[nodiscard]] const Chart& chart() const { return _chart; }
    [[nodiscard]] Index map( Index s ) const { return _map[ s ]; }
    [[nodiscard]] const std::vector< Index >& state_map() const { return _map; }

private:
    Machine _src;
    Machine _dst;
    Chart _chart;
    std::vector< Index > _map;
};

Simulation identity_simulation( const Machine& m );

// Checks, for every state s and action a in its fiber,
//   v2(sigma(s)) = f(v1(s))                                  ("view square")
//   u2(sigma(s), f#(v1(s), a)) = T sigma(u1(s, a))           ("update square")
Verdict check_simulation( const Simulation& sim );

class TraceError : public Error
{
public:
    TraceError( std::size_t step, const std::string& what ) : Error( what ), _step{ step } {}
    [[nodiscard]] std::size_t step() const { return _step; }

private:
    std::size_t _step;
};

// Runs a deterministic machine from s0. Returns |actions| + 1 states.
// Throws TraceError naming the step whose action is not in the fiber.
std::vector< Symbol > run_trace( const Machine& m, const Symbol& s0, std::span< const Symbol > actions );

} // namespace agl
