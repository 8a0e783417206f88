#pragma once

#include "agl/errors.hpp"
#include "agl/lens.hpp"
#include "agl/machine.hpp"
#include "agl/verdict.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace agl
{

// A boolean predicate, total on a finite carrier.
class Predicate
{
public:
    Predicate() = default;
    Predicate( FiniteSet carrier, std::vector< bool > truth );

    static Predicate constant( FiniteSet carrier, bool value );
    // True exactly on `truths`, each of which must be in the carrier.
    static Predicate of_set( FiniteSet carrier, std::span< const Symbol > truths );
    static Predicate of_set( FiniteSet carrier, std::initializer_list< Symbol > truths );
    static Predicate tabulate( FiniteSet carrier, const std::function< bool( const Symbol& ) >& fn );

    [[nodiscard]] const FiniteSet& carrier() const { return _carrier; }
    [[nodiscard]] const std::vector< bool >& table() const { return _truth; }
    [[nodiscard]] bool operator()( Index i ) const { return _truth[ i ]; }
    [[nodiscard]] bool operator()( const Symbol& s ) const { return _truth[ _carrier.index_of( s ) ]; }
    [[nodiscard]] std::vector< Symbol > true_elements() const;

    friend bool operator==( const Predicate&, const Predicate& ) = default;

private:
    FiniteSet _carrier;
    std::vector< bool > _truth;
};

// Assumption/guarantee pair on an interface: gamma on observations, alpha on
// (observation, action) pairs. Construction enforces alpha(o, a) => gamma(o).
class InterfaceCertificate
{
public:
    InterfaceCertificate( Interface iface, std::vector< bool > gamma, std::vector< std::vector< bool > > alpha );

    static InterfaceCertificate tabulate( Interface iface, const std::function< bool( const Symbol& ) >& gamma,
                                          const std::function< bool( const Symbol&, const Symbol& ) >& alpha );

    [[nodiscard]] const Interface& iface() const { return _iface; }
    [[nodiscard]] bool gamma( Index o ) const { return _gamma[ o ]; }
    [[nodiscard]] bool alpha( Index o, Index a ) const { return _alpha[ o ][ a ]; }
    [[nodiscard]] const std::vector< bool >& gamma_table() const { return _gamma; }
    [[nodiscard]] const std::vector< std::vector< bool > >& alpha_table() const { return _alpha; }
    [[nodiscard]] Predicate gamma_predicate() const { return Predicate( _iface.obs(), _gamma ); }

    friend bool operator==( const InterfaceCertificate&, const InterfaceCertificate& ) = default;

private:
    Interface _iface;
    std::vector< bool > _gamma;
    std::vector< std::vector< bool > > _alpha;
};

// A predicate phi on the states of a machine together with the certificate on its
// interface.
struct MachineCertificate
{
    Predicate phi;
    InterfaceCertificate icert;

    friend bool operator==( const MachineCertificate&, const MachineCertificate& ) = default;
};

struct CertifiedMachine
{
    Machine machine;
    MachineCertificate cert;
};

// Lifts a state predicate to changes: the predicate itself for deterministic
// machines, "every possible successor satisfies it" for nondeterministic ones.
class LiftedPredicate
{
public:
    LiftedPredicate( Predicate phi, ChangeKind kind ) : _phi{ std::move( phi ) }, _kind{ kind } {}
    [[nodiscard]] bool operator()( const Change& change ) const;

private:
    Predicate _phi;
    ChangeKind _kind;
};

LiftedPredicate lift_predicate( const Predicate& phi, ChangeKind kind );

// alpha(o, a) := gamma_bar(o) && alpha_bar(a) on a simple interface.
InterfaceCertificate simple_certificate( const Interface& iface, const Predicate& gamma_bar,
                                         const Predicate& alpha_bar );

// Conjunction of two certificates on the parallel product of their
// interfaces: (gamma1 && gamma2, alpha1 && alpha2) on pair symbols.
InterfaceCertificate parallel_certificate( const InterfaceCertificate& c1, const InterfaceCertificate& c2 );
InterfaceCertificate parallel_certificate( std::span< const InterfaceCertificate > certs );

// Checks, for every o1 and every a2 in A2[w(o1)],
//   gamma1(o1)                      => gamma2(w(o1))
//   gamma1(o1) && alpha2(w(o1), a2) => alpha1(o1, w#(o1, a2))
Verdict certify_lens( const Lens& lens, const InterfaceCertificate& inner, const InterfaceCertificate& outer );

// Checks, for every state s and every a in A[v(s)],
//   phi(s)                  => gamma(v(s))
//   phi(s) && alpha(v(s), a) => Lift phi(u(s, a))
Verdict certify_machine( const Machine& m, const MachineCertificate& cert );

// Reindexes a certificate along a chart: gamma' = gamma . f and
// alpha'(o, a) = alpha(f(o), f#(o, a)).
InterfaceCertificate pullback_certificate( const Chart& chart, const InterfaceCertificate& cert );

// Pointwise conjunction of p and q reindexed onto `carrier` along the given
// index maps (carrier index -> p index, carrier index -> q index).
Predicate conjoin_predicates( const Predicate& p, const Predicate& q, FiniteSet carrier,
                              std::span< const Index > p_map, std::span< const Index > q_map );

// Conjunction over the product carrier with the two projections.
Predicate product_conjunction( const Predicate& p, const Predicate& q );
Predicate product_conjunction( std::span< const Predicate > preds );

// A rule premise did not verify. Carries the name of the premise and, when
// one exists, the failing point.
class PremiseNotMet : public PremiseFailure
{
public:
    PremiseNotMet( std::string premise, Verdict verdict );
    [[nodiscard]] const std::string& premise() const { return _premise; }
    [[nodiscard]] const Verdict& verdict() const { return _verdict; }

private:
    std::string _premise;
    Verdict _verdict;
};

// Composition rule. Premises: every component certificate verifies on its
// machine; `inner` is the parallel conjunction of the component interface
// certificates; the wiring is certified from `inner` to `outer`. Returns the
// coupled machine with (phi_1 && ... && phi_n, outer), re-verified before it
// is returned.
CertifiedMachine comp_rule( const Lens& wiring, const InterfaceCertificate& inner,
                            const InterfaceCertificate& outer, std::span< const CertifiedMachine > components );

// Substitution rule. Premises: the simulation square commutes and the target
// certificate verifies. Returns (phi . sigma, chart pullback of the target
// interface certificate), re-verified before it is returned.
MachineCertificate subst_rule( const Simulation& sim, const MachineCertificate& target );

// The sufficient conditions for certifying the cascade wiring when all three
// certificates have the simple form alpha_i(o, a) = gamma_i(o) && abar_i(a):
//   abar3(a)                  => abar1(a)
//   gamma1(o1, m) && abar3(a) => abar2(m, a)
//   gamma1(o1, m) && gamma2(o2) => gamma3(o1, o2)
// gamma1 lives on O1 x M, gamma2 on O2, gamma3 on O1 x O2; abar1 and abar3
// on A, abar2 on M x A.
Verdict cascade_simple_conditions( const Predicate& gamma1, const Predicate& abar1, const Predicate& gamma2,
                                   const Predicate& abar2, const Predicate& gamma3, const Predicate& abar3 );

namespace detail
{
// Throws SoundnessError if `cert` does not verify on `m`. Used by the rules
// to re-check their own conclusions.
void reverify_conclusion( const Machine& m, const MachineCertificate& cert, std::string_view rule );
} // namespace detail

} // namespace agl
