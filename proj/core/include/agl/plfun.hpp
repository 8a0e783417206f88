#pragma once

#include <string>
#include <vector>

namespace agl
{

struct Breakpoint
{
    double r = 0.0;
    double value = 0.0;

    friend bool operator==( const Breakpoint&, const Breakpoint& ) = default;
};

// A continuous piecewise-linear function on [0, inf): linear interpolation
// between breakpoints and linear extension with `final_slope` past the last
// one. This is the representation for comparison functions and slacks.
//
// Invariants: at least one breakpoint, the first at r = 0, radii strictly
// increasing, all values finite. The representation is canonical: interior
// breakpoints collinear with their neighbours are dropped on construction.
class PLFun
{
public:
    PLFun() : PLFun( { { 0.0, 0.0 } }, 0.0 ) {}
    PLFun( std::vector< Breakpoint > breakpoints, double final_slope );

    static PLFun zero() { return {}; }
    static PLFun identity() { return linear( 1.0 ); }
    static PLFun linear( double slope ) { return PLFun( { { 0.0, 0.0 } }, slope ); }

    [[nodiscard]] double operator()( double r ) const;

    [[nodiscard]] const std::vector< Breakpoint >& breakpoints() const { return _bps; }
    [[nodiscard]] double final_slope() const { return _final_slope; }
    // Slopes of the finite segments followed by the final slope.
    [[nodiscard]] std::vector< double > slopes() const;

    // Textual form `pl [(0,0),(1,2)] slope 0.5`.
    [[nodiscard]] std::string str() const;

    friend bool operator==( const PLFun&, const PLFun& ) = default;

private:
    std::vector< Breakpoint > _bps;
    double _final_slope = 0.0;
};

// Throws InvariantViolation for r < 0.
double pl_eval( const PLFun& f, double r );

PLFun pl_add( const PLFun& f, const PLFun& g );
PLFun pl_sub( const PLFun& f, const PLFun& g );
PLFun pl_scale( const PLFun& f, double k );

// f . g over the merged breakpoints (those of g and the g-preimages of the
// breakpoints of f). g must be nonnegative everywhere.
PLFun pl_compose( const PLFun& f, const PLFun& g );

enum class ComparisonClass
{
    none,
    K,     // f(0) = 0, strictly increasing on the breakpoint range, saturating (final slope 0)
    Kinf,  // f(0) = 0, strictly increasing, unbounded (final slope > 0)
    Kinf0, // the zero function (Kinf functions are also Kinf0, see in_class)
};

const char* to_string( ComparisonClass c );

// The most specific tag of f.
ComparisonClass classify( const PLFun& f );

// Membership with the inclusions Kinf < K and Kinf < Kinf0.
bool in_class( const PLFun& f, ComparisonClass c );

// id - lambda in Kinf: lambda(0) = 0 and every slope of lambda is < 1.
bool id_minus_in_kinf( const PLFun& lambda );

} // namespace agl
