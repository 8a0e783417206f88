#pragma once

#include "agl/grid.hpp"
#include "agl/ode.hpp"
#include "agl/quant_cert.hpp"
#include "agl/verdict.hpp"

#include "json.hpp"

#include <chrono>
#include <string>

namespace agl::cli
{

using nlohmann::json;

inline constexpr const char* report_schema = "agl-report/1";

std::string sha256_hex( const std::string& bytes );

json to_json( const Verdict& v );
json to_json( const SamplePlan& plan );
json to_json( const GridVerdict& v );
json to_json( const GradientCheck& g, double limit );
json to_json( const PLFun& f );

// Everything but the verdicts is filled in by the command driver.
class Report
{
public:
    explicit Report( std::string command );

    void add_input( const std::string& path, const std::string& contents );
    void set_parameter( const std::string& key, json value ) { _parameters[ key ] = std::move( value ); }
    void add_verdict( json v ) { _verdicts.push_back( std::move( v ) ); }
    void set_outcome( bool holds ) { _holds = holds; }
    void set_error( const std::string& message ) { _error = message; }

    // Canonical JSON: sorted keys, two-space indent, trailing newline.
    // Timings sit under their own key so they can be stripped for comparison.
    [[nodiscard]] std::string dump() const;

private:
    std::string _command;
    json _inputs = json::array();
    json _parameters = json::object();
    json _verdicts = json::array();
    bool _holds = true;
    std::string _error;
    std::chrono::steady_clock::time_point _start;
};

} // namespace agl::cli
