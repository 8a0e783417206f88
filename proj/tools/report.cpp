#include "report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>

#ifndef AGL_VERSION
#define AGL_VERSION "0.0.0"
#endif

namespace agl::cli
{

std::string sha256_hex( const std::string& bytes )
{
    unsigned char md[ EVP_MAX_MD_SIZE ];
    unsigned int len = 0;
    EVP_Digest( bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr );
    std::string out;
    char buf[ 3 ];
    for ( unsigned int i = 0; i < len; ++i )
    {
        std::snprintf( buf, sizeof buf, "%02x", md[ i ] );
        out += buf;
    }
    return out;
}

namespace
{

// JSON has no infinities; an empty check reports null.
json number( double x )
{
    if ( !std::isfinite( x ) )
        return nullptr;
    return x;
}

} // namespace

json to_json( const Verdict& v )
{
    json j{ { "holds", v.holds } };
    if ( v.counterexample )
    {
        json c{ { "condition", v.counterexample->condition }, { "point", v.counterexample->point.str() } };
        if ( v.counterexample->action )
            c[ "action" ] = v.counterexample->action->str();
        j[ "counterexample" ] = std::move( c );
    }
    return j;
}

json to_json( const SamplePlan& plan )
{
    json axes = json::array();
    for ( const auto& a : plan.axes() )
        axes.push_back( { { "lo", a.lo }, { "hi", a.hi }, { "step", a.step }, { "count", a.count() } } );
    return { { "axes", std::move( axes ) }, { "samples", plan.size() } };
}

json to_json( const GridVerdict& v )
{
    json j{ { "holds", v.holds },
            { "worst_margin", number( v.worst_margin ) },
            { "samples", v.samples },
            { "grid", to_json( v.plan ) },
            { "tolerances", { { "tol", v.tolerance } } } };
    if ( !v.condition.empty() )
        j[ "condition" ] = v.condition;
    if ( !v.witness.empty() )
    {
        j[ "witness_point" ] = v.witness;
        j[ "witness_index" ] = v.witness_index;
    }
    return j;
}

json to_json( const GradientCheck& g, double limit )
{
    json j{ { "max_error", g.max_error }, { "points", g.points }, { "limit", limit } };
    if ( !g.worst_point.empty() )
        j[ "worst_point" ] = g.worst_point;
    return j;
}

json to_json( const PLFun& f )
{
    return f.str();
}

Report::Report( std::string command ) : _command{ std::move( command ) }, _start{ std::chrono::steady_clock::now() }
{
}

void Report::add_input( const std::string& path, const std::string& contents )
{
    _inputs.push_back( { { "path", path }, { "sha256", sha256_hex( contents ) } } );
}

std::string Report::dump() const
{
    const auto elapsed = std::chrono::duration< double, std::milli >( std::chrono::steady_clock::now() - _start );
    json j{ { "schema", report_schema },
            { "tool", { { "name", "agl" }, { "version", AGL_VERSION } } },
            { "command", _command },
            { "inputs", _inputs },
            { "parameters", _parameters },
            { "verdicts", _verdicts },
            { "holds", _holds },
            { "timings", { { "total_ms", elapsed.count() } } } };
    if ( !_error.empty() )
        j[ "error" ] = _error;
    return j.dump( 2 ) + "\n";
}

} // namespace agl::cli
