#pragma once

#include "agl/errors.hpp"
#include "agl/expr.hpp"
#include "agl/grid.hpp"
#include "agl/plfun.hpp"

#include <optional>
#include <string>
#include <vector>

namespace agl
{

// ---------------------------------------------------------------------------
// Lexicographic order on (value, tangent) pairs

struct LexPair
{
    double base = 0.0;
    double tangent = 0.0;
};

inline constexpr double lex_tie_tolerance = 1e-9;

// p >= q: p.base > q.base, or the bases tie (within lex_tie_tolerance) and
// p.tangent >= q.tangent.
bool lex_geq( const LexPair& p, const LexPair& q );
// p <= q, i.e. lex_geq(q, p).
bool lex_leq( const LexPair& p, const LexPair& q );

// ---------------------------------------------------------------------------
// Quantitative interfaces, certificates and lenses
//
// A real interface has observations in R^k and actions in R^m. Expressions
// over an interface use the variables o1..ok and a1..am; the base point is
// the origin.

std::string obs_var( std::size_t i ); // "o<i+1>"
std::string act_var( std::size_t i ); // "a<i+1>"
std::vector< std::string > obs_vars( std::size_t k );
std::vector< std::string > act_vars( std::size_t m );

// Bundle predicate on a real interface: gamma over o, alpha over (o, a).
struct QuantCertificate
{
    std::size_t obs_dim = 0;
    std::size_t act_dim = 0;
    Expr gamma;
    Expr alpha;

    // Throws InvariantViolation if an expression mentions variables outside
    // its declared set.
    void validate() const;

    friend bool operator==( const QuantCertificate&, const QuantCertificate& ) = default;
};

// A lens between real interfaces: fwd maps o (source) to the target's
// observations, bwd maps (o, a) with a from the target to source actions.
struct QuantLens
{
    std::size_t src_obs = 0;
    std::size_t src_act = 0;
    std::size_t dst_obs = 0;
    std::size_t dst_act = 0;
    std::vector< Expr > fwd; // dst_obs expressions over o1..o<src_obs>
    std::vector< Expr > bwd; // src_act expressions over o1..o<src_obs>, a1..a<dst_act>

    void validate() const;

    friend bool operator==( const QuantLens&, const QuantLens& ) = default;
};

QuantLens identity_quant_lens( std::size_t obs_dim, std::size_t act_dim );

// t after w, by substitution.
QuantLens compose_quant_lens( const QuantLens& t, const QuantLens& w );

// Result of a sampled check: the smallest margin (lhs - rhs) over all
// conditions and samples, with the sample where it occurs.
struct GridVerdict
{
    bool holds = true;
    double worst_margin = 0.0;
    std::string condition;         // which inequality produced the worst margin
    std::vector< double > witness; // coordinates of the worst sample
    std::size_t witness_index = 0;
    std::size_t samples = 0;
    double tolerance = 0.0;
    SamplePlan plan;

    explicit operator bool() const { return holds; }
    [[nodiscard]] std::string str() const;
};

struct QuantCheckOptions
{
    double tol = 1e-8;
    unsigned jobs = 1;
};

// Checks, at every sample (o, a) of `plan` (dimensions: source observations
// then target actions),
//   guarantee:  gamma_src(o) >= gamma_dst(fwd(o))
//   assumption: alpha_dst(fwd(o), a) + kappa(gamma_src(o)) >= alpha_src(o, bwd(o, a))
// within opts.tol. Throws InterfaceMismatch on dimension mismatch and
// InvariantViolation if kappa is not in Kinf0.
GridVerdict certify_quant_lens( const QuantLens& lens, const QuantCertificate& src, const QuantCertificate& dst,
                                const PLFun& kappa, const SamplePlan& plan, const QuantCheckOptions& opts = {} );

// gamma vanishes at the origin and stays above tol_def at every sample of
// `obs_plan` at distance >= one grid step from it.
GridVerdict check_quant_certificate( const QuantCertificate& cert, const SamplePlan& obs_plan,
                                     double tol = 1e-8, double tol_def = 1e-10 );

// A lens together with its certificates, slack and the plan it was checked on.
struct CertifiedQuantLens
{
    QuantLens lens;
    QuantCertificate src;
    QuantCertificate dst;
    PLFun kappa;
    SamplePlan plan;
};

// Checks `c` and returns it; throws PremiseFailure with the verdict if it
// does not hold.
CertifiedQuantLens certified_quant_lens( CertifiedQuantLens c, const QuantCheckOptions& opts = {} );

class ReverificationFailure : public Error
{
public:
    ReverificationFailure( const std::string& what, GridVerdict verdict )
        : Error( what ), _verdict{ std::move( verdict ) } {}
    [[nodiscard]] const GridVerdict& verdict() const { return _verdict; }

private:
    GridVerdict _verdict;
};

// Compose inner (1 -> 2) with outer (2 -> 3). Both premises are re-checked on
// their own plans, the middle certificates must agree, and the composite
// (slack kappa_inner + kappa_outer) is checked on the plan built from the
// inner observation axes and the outer action axes. Throws PremiseFailure or
// ReverificationFailure.
CertifiedQuantLens compose_quant_cert( const CertifiedQuantLens& inner, const CertifiedQuantLens& outer,
                                       const QuantCheckOptions& opts = {} );

// Bundle predicate on the product interface: (alpha1 + alpha2, gamma1 + gamma2)
// with the second certificate's variables shifted past the first's.
QuantCertificate sum_bundle_predicates( const QuantCertificate& c1, const QuantCertificate& c2 );

} // namespace agl
