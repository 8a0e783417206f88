#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agl
{

using Index = std::size_t;

// A carrier element: either an atom ("ok", "s0", "1") or a tuple of symbols.
// Products build pairs, so a product of three sets carries left-nested
// symbols ((x,y),z). Structural comparison is used everywhere; `flattened`
// gives the re-bracketing-insensitive form.
class Symbol
{
public:
    Symbol() = default;
    Symbol( std::string atom ) : _atom{ std::move( atom ) } {}
    Symbol( const char* atom ) : _atom{ atom } {}

    static Symbol tuple( std::vector< Symbol > parts );
    static Symbol pair( Symbol first, Symbol second );

    [[nodiscard]] bool is_tuple() const { return _is_tuple; }
    [[nodiscard]] const std::string& atom() const { return _atom; }
    [[nodiscard]] const std::vector< Symbol >& parts() const { return _parts; }
    [[nodiscard]] const Symbol& operator[]( std::size_t i ) const { return _parts.at( i ); }

    // Canonical text, e.g. "((u,lo),v)".
    [[nodiscard]] std::string str() const;

    // Tuples nested in tuples are spliced: ((a,b),c) and (a,(b,c)) both give
    // (a,b,c). Atoms are unchanged.
    [[nodiscard]] Symbol flattened() const;

    friend std::strong_ordering operator<=>( const Symbol& lhs, const Symbol& rhs );
    friend bool operator==( const Symbol& lhs, const Symbol& rhs );

private:
    std::string _atom;
    std::vector< Symbol > _parts;
    bool _is_tuple = false;
};

// Parses the canonical text form produced by Symbol::str. Whitespace is
// allowed around commas and parentheses. Throws agl::Error on malformed text.
Symbol parse_symbol( std::string_view text );

bool is_atom_char( char c );

// A finite carrier. Elements are kept sorted by structural order and unique,
// so two sets with the same elements are equal regardless of the order in
// which they were listed.
class FiniteSet
{
public:
    FiniteSet() = default;
    explicit FiniteSet( std::vector< Symbol > elements );
    FiniteSet( std::initializer_list< Symbol > elements );

    // Product set of pairs. Guarantees product(a, b)[i * b.size() + j] is
    // the pair (a[i], b[j]).
    static FiniteSet product( const FiniteSet& a, const FiniteSet& b );

    [[nodiscard]] std::size_t size() const { return _elements.size(); }
    [[nodiscard]] bool empty() const { return _elements.empty(); }
    [[nodiscard]] const Symbol& operator[]( Index i ) const { return _elements[ i ]; }
    [[nodiscard]] const std::vector< Symbol >& elements() const { return _elements; }
    [[nodiscard]] auto begin() const { return _elements.begin(); }
    [[nodiscard]] auto end() const { return _elements.end(); }

    [[nodiscard]] std::optional< Index > find( const Symbol& s ) const;
    [[nodiscard]] bool contains( const Symbol& s ) const { return find( s ).has_value(); }
    // Like find, but throws InvariantViolation naming `what` if absent.
    [[nodiscard]] Index index_of( const Symbol& s, std::string_view what = "element" ) const;

    [[nodiscard]] std::string str() const;

    friend bool operator==( const FiniteSet& lhs, const FiniteSet& rhs ) = default;

private:
    struct presorted_t {};
    FiniteSet( presorted_t, std::vector< Symbol > elements ) : _elements{ std::move( elements ) } {}

    std::vector< Symbol > _elements;
};

} // namespace agl
