#pragma once

#include "agl/dsl.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace agl::fixture
{

inline std::string path( const std::string& name )
{
    return std::string( AGL_FIXTURE_DIR ) + "/" + name;
}

inline std::string read( const std::string& name )
{
    std::ifstream in( path( name ), std::ios::binary );
    if ( !in )
        throw std::runtime_error( "missing fixture " + name );
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template < class T >
T load( const std::string& name, std::size_t index = 0 )
{
    const auto docs = parse_documents( read( name ), name );
    return std::get< T >( docs.at( index ).body );
}

} // namespace agl::fixture
