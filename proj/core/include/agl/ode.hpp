#pragma once

#include "agl/errors.hpp"
#include "agl/expr.hpp"
#include "agl/grid.hpp"
#include "agl/plfun.hpp"
#include "agl/quant_cert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace agl
{

// Open ODE  x' = f(x, a),  o = v(x)  with states in R^n, inputs in R^m and
// observations in R^k. Field components are expressions over x1..xn and
// a1..am; view components over x1..xn. (x0, a0) is the equilibrium.
struct Interval
{
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains( double v ) const { return lo <= v && v <= hi; }
    friend bool operator==( const Interval&, const Interval& ) = default;
};

std::string state_var( std::size_t i ); // "x<i+1>"
std::vector< std::string > state_vars( std::size_t n );

struct OpenODE
{
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k = 0;
    std::vector< Expr > field;
    std::vector< Expr > view;
    std::vector< double > x0;
    std::vector< double > a0;
    std::vector< Interval > domain; // state box
    std::vector< Interval > inputs; // input box

    // Shapes, variable sets, x0 inside the domain, a0 inside the input box
    // and f(x0, a0) = 0 within tol. Throws InvariantViolation.
    void validate( double tol = 1e-8 ) const;

    friend bool operator==( const OpenODE&, const OpenODE& ) = default;
};

// Block-diagonal product: the second system's variables are shifted past the
// first's.
OpenODE parallel_odes( const OpenODE& a, const OpenODE& b );

struct LyapunovCandidate
{
    Expr phi;   // over x
    Expr alpha; // over a only
    Expr gamma; // over o
    PLFun lambda;

    // Checks alpha does not mention x, id - lambda is Kinf, and phi, alpha,
    // gamma vanish at x0, a0 and v(x0). Throws InvariantViolation.
    void validate( const OpenODE& ode, double tol = 1e-8 ) const;

    friend bool operator==( const LyapunovCandidate&, const LyapunovCandidate& ) = default;
};

// Grid over a box with the same nominal step on every axis.
SamplePlan box_plan( const std::vector< Interval >& box, double step );

// phi(x0) = 0 within tol and phi > tol_def at every sample at distance at
// least one grid step from x0.
GridVerdict check_storage( const Expr& phi, const std::vector< Interval >& domain, const std::vector< double >& x0,
                           double step, double tol = 1e-8, double tol_def = 1e-10 );

struct GradientCheck
{
    double max_error = 0.0; // |symbolic - central difference| / max(1, |symbolic|, |difference|)
    std::vector< double > worst_point;
    std::size_t points = 0;
};

class GradientGateFailure : public EvaluationError
{
public:
    GradientGateFailure( const std::string& what, GradientCheck check )
        : EvaluationError( what ), _check{ std::move( check ) } {}
    [[nodiscard]] const GradientCheck& check() const { return _check; }

private:
    GradientCheck _check;
};

// Symbolic gradient of phi against central finite differences at every sample
// of `plan` (state dimensions only). Throws GradientGateFailure when the error
// reaches `limit`.
GradientCheck gradient_gate( const Expr& phi, std::size_t n, const SamplePlan& plan, double limit = 1e-4 );

struct LissOptions
{
    double step = 0.01;
    double tol = 1e-8;
    double gradient_limit = 1e-4;
    unsigned jobs = 1;
};

struct LissVerdict : GridVerdict
{
    GradientCheck gradient;
    // gamma(v(x)) keeps growing along coordinate rays far outside the domain.
    // Sampled evidence only.
    bool global_capable = false;
};

// At every sample (x, a) of the state and input boxes:
//   decrease: alpha(a) >= grad phi(x) . f(x, a) + (id - lambda)(phi(x)) - tol
//   bound:    phi(x) >= gamma(v(x)) - tol
// The gradient gate runs first.
LissVerdict certify_liss( const OpenODE& ode, const LyapunovCandidate& cand, const LissOptions& opts = {} );

struct KApprox
{
    PLFun upper; // r -> sup of phi over |x - x0| <= r
    PLFun lower; // r -> inf of phi over |x - x0| >= r (inside the domain)
    bool unbounded = false;
    std::size_t samples = 0;
};

// Breakpoints at the distinct sample radii, so the sandwich
// lower(|x - x0|) <= phi(x) <= upper(|x - x0|) is exact at every sample.
// Both functions are flat past the largest radius; `unbounded` reports
// whether phi keeps growing along all coordinate rays outside the domain.
// Throws PremiseFailure if phi fails check_storage.
KApprox k_approx( const Expr& phi, const std::vector< Interval >& domain, const std::vector< double >& x0,
                  double step );

// Piecewise-constant input: value of the last piece with start <= t.
struct InputPiece
{
    double start = 0.0;
    std::vector< double > value;
};

class InputSignal
{
public:
    InputSignal() = default;
    explicit InputSignal( std::vector< InputPiece > pieces );
    static InputSignal constant( std::vector< double > value );

    [[nodiscard]] const std::vector< double >& at( double t ) const;
    // sup over [0, t_end] of the Euclidean norm of (a(t) - a0).
    [[nodiscard]] double sup_norm( double t_end, const std::vector< double >& a0 ) const;
    [[nodiscard]] const std::vector< InputPiece >& pieces() const { return _pieces; }

private:
    std::vector< InputPiece > _pieces;
};

struct Trajectory
{
    std::vector< double > t;
    std::vector< std::vector< double > > x;
    std::vector< double > x0;   // equilibrium the norms are measured from
    double input_sup = 0.0;     // sup norm of a - a0 over the simulated horizon
    bool left_domain = false;   // stopped early at the first step outside the box
};

// Classical RK4 with the input held at its value at the start of each step.
// The number of steps is round(t_end / h); the actual step is t_end / steps.
// Throws EvaluationError (with the step number) on a non-finite state.
Trajectory simulate( const OpenODE& ode, const std::vector< double >& x_init, const InputSignal& input,
                     double t_end, double h );

// |x(t) - x0| <= k1(k2(|x(0) - x0|) e^-t) + k3(||a - a0||inf) at every sample,
// within tol. Witness: (trajectory index, t, |x(t) - x0|).
GridVerdict check_iss_bound( const std::vector< Trajectory >& trajectories, const PLFun& k1, const PLFun& k2,
                             const PLFun& k3, double tol = 1e-8 );

struct FalsifyResult
{
    std::optional< std::vector< double > > point; // (x, a) with margin < -tol
    double margin = 0.0;
    std::size_t evaluations = 0;
};

// Coordinate descent on the decrease and bound margins from `start` (x then
// a), staying inside the boxes. Stops at the first point whose margin is
// below -tol or when the evaluation budget is spent.
FalsifyResult falsify( const OpenODE& ode, const LyapunovCandidate& cand, const std::vector< double >& start,
                       std::size_t budget, double step = 0.01, double tol = 1e-8 );

} // namespace agl
