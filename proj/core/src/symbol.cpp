#include "agl/symbol.hpp"

#include "agl/errors.hpp"

#include <algorithm>
#include <cctype>

namespace agl
{

Symbol Symbol::tuple( std::vector< Symbol > parts )
{
    Symbol s;
    s._parts = std::move( parts );
    s._is_tuple = true;
    return s;
}

Symbol Symbol::pair( Symbol first, Symbol second )
{
    std::vector< Symbol > parts;
    parts.reserve( 2 );
    parts.push_back( std::move( first ) );
    parts.push_back( std::move( second ) );
    return tuple( std::move( parts ) );
}

std::string Symbol::str() const
{
    if ( !_is_tuple )
        return _atom;

    std::string out = "(";
    for ( std::size_t i = 0; i < _parts.size(); ++i )
    {
        if ( i > 0 )
            out += ',';
        out += _parts[ i ].str();
    }
    out += ')';
    return out;
}

Symbol Symbol::flattened() const
{
    if ( !_is_tuple )
        return *this;

    std::vector< Symbol > flat;
    for ( const auto& part : _parts )
    {
        auto f = part.flattened();
        if ( f.is_tuple() )
            flat.insert( flat.end(), f._parts.begin(), f._parts.end() );
        else
            flat.push_back( std::move( f ) );
    }
    return tuple( std::move( flat ) );
}

std::strong_ordering operator<=>( const Symbol& lhs, const Symbol& rhs )
{
    if ( lhs._is_tuple != rhs._is_tuple )
        return lhs._is_tuple ? std::strong_ordering::greater : std::strong_ordering::less;

    if ( !lhs._is_tuple )
    {
        const int c = lhs._atom.compare( rhs._atom );
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    const auto n = std::min( lhs._parts.size(), rhs._parts.size() );
    for ( std::size_t i = 0; i < n; ++i )
    {
        if ( auto c = lhs._parts[ i ] <=> rhs._parts[ i ]; c != 0 )
            return c;
    }
    return lhs._parts.size() <=> rhs._parts.size();
}

bool operator==( const Symbol& lhs, const Symbol& rhs )
{
    return ( lhs <=> rhs ) == 0;
}

bool is_atom_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '.' || c == '\'';
}

namespace
{

struct symbol_reader
{
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws()
    {
        while ( pos < text.size() && std::isspace( static_cast< unsigned char >( text[ pos ] ) ) )
            ++pos;
    }

    [[noreturn]] void fail( const std::string& msg ) const
    {
        throw Error( "malformed symbol '" + std::string( text ) + "' at offset " + std::to_string( pos ) + ": "
                     + msg );
    }

    Symbol read()
    {
        skip_ws();
        if ( pos >= text.size() )
            fail( "unexpected end" );

        if ( text[ pos ] == '(' )
        {
            ++pos;
            std::vector< Symbol > parts;
            parts.push_back( read() );
            skip_ws();
            while ( pos < text.size() && text[ pos ] == ',' )
            {
                ++pos;
                parts.push_back( read() );
                skip_ws();
            }
            if ( pos >= text.size() || text[ pos ] != ')' )
                fail( "expected ')'" );
            ++pos;
            return Symbol::tuple( std::move( parts ) );
        }

        const auto start = pos;
        while ( pos < text.size() && is_atom_char( text[ pos ] ) )
            ++pos;
        if ( pos == start )
            fail( "expected an atom or '('" );
        return Symbol( std::string( text.substr( start, pos - start ) ) );
    }
};

} // namespace

Symbol parse_symbol( std::string_view text )
{
    symbol_reader reader{ text };
    auto s = reader.read();
    reader.skip_ws();
    if ( reader.pos != text.size() )
        reader.fail( "trailing characters" );
    return s;
}

FiniteSet::FiniteSet( std::vector< Symbol > elements ) : _elements{ std::move( elements ) }
{
    std::sort( _elements.begin(), _elements.end() );
    const auto dup = std::adjacent_find( _elements.begin(), _elements.end() );
    if ( dup != _elements.end() )
        throw InvariantViolation( "duplicate symbol '" + dup->str() + "' in finite set" );
}

FiniteSet::FiniteSet( std::initializer_list< Symbol > elements )
    : FiniteSet( std::vector< Symbol >( elements ) )
{
}

FiniteSet FiniteSet::product( const FiniteSet& a, const FiniteSet& b )
{
    std::vector< Symbol > out;
    out.reserve( a.size() * b.size() );
    for ( const auto& x : a )
        for ( const auto& y : b )
            out.push_back( Symbol::pair( x, y ) );
    // Lexicographic order on pairs of sorted sets is already i-major.
    return FiniteSet( presorted_t{}, std::move( out ) );
}

std::optional< Index > FiniteSet::find( const Symbol& s ) const
{
    const auto it = std::lower_bound( _elements.begin(), _elements.end(), s );
    if ( it == _elements.end() || *it != s )
        return std::nullopt;
    return static_cast< Index >( it - _elements.begin() );
}

Index FiniteSet::index_of( const Symbol& s, std::string_view what ) const
{
    if ( auto i = find( s ) )
        return *i;
    throw InvariantViolation( std::string( what ) + " '" + s.str() + "' is not in " + str() );
}

std::string FiniteSet::str() const
{
    std::string out = "{";
    for ( std::size_t i = 0; i < _elements.size(); ++i )
    {
        if ( i > 0 )
            out += ", ";
        out += _elements[ i ].str();
    }
    out += '}';
    return out;
}

} // namespace agl
