#include "agl/dsl.hpp"

#include "agl/number.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <set>

namespace agl
{

std::string SourceSpan::str() const
{
    return file + ":" + std::to_string( line ) + ":" + std::to_string( column );
}

namespace
{

std::string format_error( const SourceSpan& span, const std::string& message,
                          const std::vector< std::string >& expected )
{
    std::string out = span.str() + ": " + message;
    if ( !expected.empty() )
    {
        out += " (expected ";
        for ( std::size_t i = 0; i < expected.size(); ++i )
        {
            if ( i > 0 )
                out += i + 1 == expected.size() ? " or " : ", ";
            out += "'" + expected[ i ] + "'";
        }
        out += ")";
    }
    return out;
}

} // namespace

ParseError::ParseError( SourceSpan span, const std::string& message, std::vector< std::string > expected )
    : Error( format_error( span, message, expected ) ), _span{ std::move( span ) }, _message{ message },
      _expected{ std::move( expected ) }
{
}

const char* to_string( DocKind kind )
{
    switch ( kind )
    {
    case DocKind::machine:
        return "machine";
    case DocKind::wiring:
        return "wiring";
    case DocKind::bool_cert:
        return "bool-cert";
    case DocKind::quant_cert:
        return "quant-cert";
    case DocKind::ode:
        return "ode";
    case DocKind::lyapunov:
        return "lyapunov";
    case DocKind::simulation:
        return "simulation";
    }
    return "?";
}

bool operator==( const SimulationDoc& a, const SimulationDoc& b )
{
    return a.source == b.source && a.target == b.target && a.sim.src() == b.sim.src() &&
           a.sim.dst() == b.sim.dst() && a.sim.chart() == b.sim.chart() && a.sim.state_map() == b.sim.state_map();
}

bool operator==( const Document& a, const Document& b )
{
    return a.kind == b.kind && a.name == b.name && a.body == b.body;
}

// ---------------------------------------------------------------------------
// Expressions

namespace
{

enum class Tok
{
    number,
    ident,
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    lbracket,
    rbracket,
    comma,
    end,
};

struct Token
{
    Tok kind;
    std::string_view text;
    std::size_t offset; // 0-based within the parsed text
};

bool ident_start( char c )
{
    return std::isalpha( static_cast< unsigned char >( c ) ) || c == '_';
}

bool ident_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_';
}

bool digit( char c )
{
    return std::isdigit( static_cast< unsigned char >( c ) ) != 0;
}

class Lexer
{
public:
    Lexer( std::string_view text, const SourceOrigin& origin ) : _text{ text }, _origin{ origin } {}

    std::vector< Token > run()
    {
        std::vector< Token > out;
        std::size_t i = 0;
        while ( i < _text.size() )
        {
            const char c = _text[ i ];
            if ( c == ' ' || c == '\t' )
            {
                ++i;
                continue;
            }
            const std::size_t start = i;
            if ( digit( c ) || ( c == '.' && i + 1 < _text.size() && digit( _text[ i + 1 ] ) ) )
            {
                while ( i < _text.size() && digit( _text[ i ] ) )
                    ++i;
                if ( i < _text.size() && _text[ i ] == '.' )
                {
                    ++i;
                    while ( i < _text.size() && digit( _text[ i ] ) )
                        ++i;
                }
                if ( i < _text.size() && ( _text[ i ] == 'e' || _text[ i ] == 'E' ) )
                {
                    std::size_t j = i + 1;
                    if ( j < _text.size() && ( _text[ j ] == '+' || _text[ j ] == '-' ) )
                        ++j;
                    if ( j < _text.size() && digit( _text[ j ] ) )
                    {
                        i = j;
                        while ( i < _text.size() && digit( _text[ i ] ) )
                            ++i;
                    }
                }
                out.push_back( { Tok::number, _text.substr( start, i - start ), start } );
                continue;
            }
            if ( ident_start( c ) )
            {
                while ( i < _text.size() && ident_char( _text[ i ] ) )
                    ++i;
                out.push_back( { Tok::ident, _text.substr( start, i - start ), start } );
                continue;
            }
            Tok kind;
            switch ( c )
            {
            case '+':
                kind = Tok::plus;
                break;
            case '-':
                kind = Tok::minus;
                break;
            case '*':
                kind = Tok::star;
                break;
            case '/':
                kind = Tok::slash;
                break;
            case '^':
                kind = Tok::caret;
                break;
            case '(':
                kind = Tok::lparen;
                break;
            case ')':
                kind = Tok::rparen;
                break;
            case '[':
                kind = Tok::lbracket;
                break;
            case ']':
                kind = Tok::rbracket;
                break;
            case ',':
                kind = Tok::comma;
                break;
            default:
                throw ParseError( span( i, 1 ), std::string( "unexpected character '" ) + c + "'" );
            }
            out.push_back( { kind, _text.substr( i, 1 ), i } );
            ++i;
        }
        out.push_back( { Tok::end, {}, _text.size() } );
        return out;
    }

    [[nodiscard]] SourceSpan span( std::size_t offset, std::size_t length ) const
    {
        return { _origin.file, _origin.line, _origin.column + offset, length };
    }

private:
    std::string_view _text;
    SourceOrigin _origin;
};

class TokenCursor
{
public:
    TokenCursor( std::string_view text, const SourceOrigin& origin ) : _lexer{ text, origin }
    {
        _tokens = _lexer.run();
    }

    [[nodiscard]] const Token& peek( std::size_t ahead = 0 ) const
    {
        return _tokens[ std::min( _pos + ahead, _tokens.size() - 1 ) ];
    }
    const Token& next() { return _tokens[ std::min( _pos++, _tokens.size() - 1 ) ]; }
    bool accept( Tok kind )
    {
        if ( peek().kind != kind )
            return false;
        ++_pos;
        return true;
    }

    [[noreturn]] void fail( const std::string& message, std::vector< std::string > expected ) const
    {
        const auto& t = peek();
        const std::string found = t.kind == Tok::end ? "end of input" : "'" + std::string( t.text ) + "'";
        throw ParseError( _lexer.span( t.offset, t.text.size() ), message.empty() ? "unexpected " + found : message,
                          std::move( expected ) );
    }

    void expect( Tok kind, const char* text )
    {
        if ( !accept( kind ) )
            fail( "", { text } );
    }

    [[nodiscard]] SourceSpan span_of( const Token& t ) const { return _lexer.span( t.offset, t.text.size() ); }

private:
    Lexer _lexer;
    std::vector< Token > _tokens;
    std::size_t _pos = 0;
};

double literal_value( TokenCursor& cur, const Token& t )
{
    std::string text( t.text );
    if ( text.front() == '.' )
        text.insert( text.begin(), '0' );
    const auto v = parse_number( text );
    if ( !v )
        throw ParseError( cur.span_of( t ), "number out of range: " + std::string( t.text ) );
    return *v;
}

class ExprParser
{
public:
    ExprParser( std::string_view text, const SourceOrigin& origin ) : _cur{ text, origin } {}

    Expr parse_all()
    {
        auto e = expr();
        if ( _cur.peek().kind != Tok::end )
            _cur.fail( "", { "+", "-", "*", "/", "^", "end of expression" } );
        return e;
    }

private:
    Expr expr()
    {
        auto lhs = term();
        while ( true )
        {
            if ( _cur.accept( Tok::plus ) )
                lhs = lhs + term();
            else if ( _cur.accept( Tok::minus ) )
                lhs = lhs - term();
            else
                return lhs;
        }
    }

    Expr term()
    {
        auto lhs = unary();
        while ( true )
        {
            if ( _cur.accept( Tok::star ) )
                lhs = lhs * unary();
            else if ( _cur.accept( Tok::slash ) )
                lhs = lhs / unary();
            else
                return lhs;
        }
    }

    Expr unary()
    {
        if ( _cur.peek().kind == Tok::minus )
        {
            if ( _cur.peek( 1 ).kind == Tok::number && _cur.peek( 2 ).kind != Tok::caret )
            {
                _cur.next();
                const auto& lit = _cur.next();
                return Expr::constant( -literal_value( _cur, lit ) );
            }
            _cur.next();
            return -unary();
        }
        return power();
    }

    Expr power()
    {
        auto base = primary();
        while ( _cur.accept( Tok::caret ) )
        {
            const bool negative = _cur.accept( Tok::minus );
            const auto& t = _cur.peek();
            if ( t.kind != Tok::number )
                _cur.fail( "", { "integer exponent" } );
            _cur.next();
            const bool integral = std::all_of( t.text.begin(), t.text.end(), digit );
            const double v = literal_value( _cur, t );
            if ( !integral || v > INT_MAX )
                throw ParseError( _cur.span_of( t ), "exponent must be an integer literal", { "integer exponent" } );
            base = pow( base, negative ? -static_cast< int >( v ) : static_cast< int >( v ) );
        }
        return base;
    }

    Expr primary()
    {
        const auto& t = _cur.peek();
        switch ( t.kind )
        {
        case Tok::number:
            _cur.next();
            return Expr::constant( literal_value( _cur, t ) );
        case Tok::lparen: {
            _cur.next();
            auto e = expr();
            _cur.expect( Tok::rparen, ")" );
            return e;
        }
        case Tok::ident: {
            _cur.next();
            static const std::map< std::string_view, ExprOp > unary_fns{
                { "abs", ExprOp::abs }, { "sin", ExprOp::sin }, { "cos", ExprOp::cos }, { "exp", ExprOp::exp } };
            static const std::map< std::string_view, ExprOp > binary_fns{ { "min", ExprOp::min },
                                                                          { "max", ExprOp::max } };
            if ( _cur.peek().kind == Tok::lparen )
            {
                if ( const auto it = unary_fns.find( t.text ); it != unary_fns.end() )
                {
                    _cur.next();
                    auto arg = expr();
                    _cur.expect( Tok::rparen, ")" );
                    return Expr::unary( it->second, arg );
                }
                if ( const auto it = binary_fns.find( t.text ); it != binary_fns.end() )
                {
                    _cur.next();
                    auto a = expr();
                    _cur.expect( Tok::comma, "," );
                    auto b = expr();
                    _cur.expect( Tok::rparen, ")" );
                    return Expr::binary( it->second, a, b );
                }
                throw ParseError( _cur.span_of( t ), "unknown function '" + std::string( t.text ) + "'",
                                  { "abs", "sin", "cos", "exp", "min", "max" } );
            }
            return Expr::var( std::string( t.text ) );
        }
        default:
            _cur.fail( "", { "number", "variable", "function", "(", "-" } );
        }
    }

    TokenCursor _cur;
};

} // namespace

Expr parse_expr( std::string_view text, const SourceOrigin& origin )
{
    return ExprParser( text, origin ).parse_all();
}

PLFun parse_plfun( std::string_view text, const SourceOrigin& origin )
{
    TokenCursor cur( text, origin );
    auto number = [ & ]() {
        const bool negative = cur.accept( Tok::minus );
        const auto& t = cur.peek();
        if ( t.kind != Tok::number )
            cur.fail( "", { "number" } );
        cur.next();
        const double v = literal_value( cur, t );
        return negative ? -v : v;
    };
    auto keyword = [ & ]( std::string_view word ) {
        const auto& t = cur.peek();
        if ( t.kind != Tok::ident || t.text != word )
            cur.fail( "", { std::string( word ) } );
        cur.next();
    };

    const auto& first = cur.peek();
    keyword( "pl" );
    cur.expect( Tok::lbracket, "[" );
    std::vector< Breakpoint > bps;
    if ( cur.peek().kind != Tok::rbracket )
    {
        do
        {
            cur.expect( Tok::lparen, "(" );
            const double r = number();
            cur.expect( Tok::comma, "," );
            const double v = number();
            cur.expect( Tok::rparen, ")" );
            bps.push_back( { r, v } );
        } while ( cur.accept( Tok::comma ) );
    }
    cur.expect( Tok::rbracket, "]" );
    keyword( "slope" );
    const double slope = number();
    if ( cur.peek().kind != Tok::end )
        cur.fail( "", { "end of input" } );
    try
    {
        return PLFun( std::move( bps ), slope );
    }
    catch ( const InvariantViolation& e )
    {
        throw ParseError( cur.span_of( first ), e.what() );
    }
}

// ---------------------------------------------------------------------------
// Line structure

namespace
{

struct Word
{
    std::string_view text;
    std::size_t column; // 1-based
};

struct Line
{
    std::size_t number = 0;
    std::size_t column = 1; // of the first non-blank character
    bool indented = false;
    std::string_view text; // comment and surrounding blanks stripped
    std::vector< Word > words;
};

// A directive or section header (unindented line) and the indented lines
// that follow it.
struct Block
{
    Line head;
    std::string_view keyword;
    std::vector< Word > args;
    std::string_view rest; // text after the keyword
    std::size_t rest_column = 0;
    std::vector< Line > entries;
};

std::vector< Word > split_words( std::string_view text, std::size_t column )
{
    std::vector< Word > out;
    std::size_t i = 0;
    while ( i < text.size() )
    {
        const char c = text[ i ];
        if ( c == ' ' || c == '\t' )
        {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if ( c == ':' || c == '{' || c == '}' )
        {
            out.push_back( { text.substr( i, 1 ), column + i } );
            ++i;
            continue;
        }
        int depth = 0;
        while ( i < text.size() )
        {
            const char d = text[ i ];
            if ( depth == 0 && ( d == ' ' || d == '\t' || d == ':' || d == '{' || d == '}' ) )
                break;
            if ( d == '(' )
                ++depth;
            else if ( d == ')' )
                --depth;
            ++i;
        }
        // An unclosed group swallows the rest of the line; whoever reads the
        // word reports the missing ')' where it is expected.
        out.push_back( { text.substr( start, i - start ), column + start } );
    }
    return out;
}

class DocParser
{
public:
    DocParser( std::string_view text, std::string file, const MachineLibrary& machines )
        : _file{ std::move( file ) }, _machines{ machines }
    {
        std::size_t number = 0;
        std::size_t pos = 0;
        while ( pos <= text.size() )
        {
            const std::size_t nl = text.find( '\n', pos );
            std::string_view raw = text.substr( pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos );
            ++number;
            if ( const auto hash = raw.find( '#' ); hash != std::string_view::npos )
                raw = raw.substr( 0, hash );
            while ( !raw.empty() && ( raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r' ) )
                raw.remove_suffix( 1 );
            std::size_t lead = 0;
            while ( lead < raw.size() && ( raw[ lead ] == ' ' || raw[ lead ] == '\t' ) )
                ++lead;
            if ( lead < raw.size() )
            {
                Line line;
                line.number = number;
                line.column = lead + 1;
                line.indented = lead > 0;
                line.text = raw.substr( lead );
                line.words = split_words( line.text, line.column );
                _lines.push_back( std::move( line ) );
            }
            if ( nl == std::string_view::npos )
                break;
            pos = nl + 1;
        }
    }

    std::vector< Document > run()
    {
        std::vector< Document > docs;
        std::size_t i = 0;
        while ( i < _lines.size() )
            docs.push_back( document( i ) );
        return docs;
    }

private:
    // ----- errors and small parsers

    [[nodiscard]] SourceSpan span( const Line& l ) const { return { _file, l.number, l.column, l.text.size() }; }
    [[nodiscard]] SourceSpan span( const Line& l, const Word& w ) const
    {
        return { _file, l.number, w.column, w.text.size() };
    }

    [[noreturn]] void fail( const Line& l, const std::string& msg, std::vector< std::string > expected = {} ) const
    {
        throw ParseError( span( l ), msg, std::move( expected ) );
    }
    [[noreturn]] void fail( const Line& l, const Word& w, const std::string& msg,
                            std::vector< std::string > expected = {} ) const
    {
        throw ParseError( span( l, w ), msg, std::move( expected ) );
    }

    Symbol symbol( const Line& l, const Word& w ) const
    {
        try
        {
            return parse_symbol( w.text );
        }
        catch ( const Error& e )
        {
            fail( l, w, e.what() );
        }
    }

    std::vector< Symbol > symbols( const Line& l, std::span< const Word > words ) const
    {
        std::vector< Symbol > out;
        for ( const auto& w : words )
            out.push_back( symbol( l, w ) );
        return out;
    }

    FiniteSet set_of( const Line& l, std::span< const Word > words ) const
    {
        std::set< Symbol > seen;
        for ( const auto& w : words )
            if ( !seen.insert( symbol( l, w ) ).second )
                fail( l, w, "duplicate symbol '" + std::string( w.text ) + "'" );
        return FiniteSet( std::vector< Symbol >( seen.begin(), seen.end() ) );
    }

    Index index_in( const FiniteSet& set, const Line& l, const Word& w, const std::string& what ) const
    {
        const auto s = symbol( l, w );
        const auto i = set.find( s );
        if ( !i )
            fail( l, w, what + " '" + s.str() + "' is not declared" );
        return *i;
    }

    double number( const Line& l, const Word& w ) const
    {
        const auto v = parse_number( w.text );
        if ( !v )
            fail( l, w, "expected a number, got '" + std::string( w.text ) + "'", { "number" } );
        return *v;
    }

    std::size_t count( const Line& l, const Word& w ) const
    {
        const bool ok = !w.text.empty() && std::all_of( w.text.begin(), w.text.end(), digit );
        if ( !ok || w.text.size() > 6 )
            fail( l, w, "expected a dimension, got '" + std::string( w.text ) + "'", { "nonnegative integer" } );
        return static_cast< std::size_t >( std::stoul( std::string( w.text ) ) );
    }

    Expr expression( const Line& l, std::string_view text, std::size_t column ) const
    {
        if ( text.empty() )
            throw ParseError( { _file, l.number, column, 0 }, "missing expression", { "expression" } );
        return parse_expr( text, { _file, l.number, column } );
    }

    Expr expression( const Line& l ) const { return expression( l, l.text, l.column ); }

    // Words of an entry of the form `lhs... -> rhs...`.
    std::pair< std::span< const Word >, std::span< const Word > > arrow( const Line& l ) const
    {
        std::span< const Word > words( l.words );
        const auto it = std::find_if( words.begin(), words.end(), []( const Word& w ) { return w.text == "->"; } );
        if ( it == words.end() )
            fail( l, "missing '->'", { "->" } );
        const auto k = static_cast< std::size_t >( it - words.begin() );
        return { words.subspan( 0, k ), words.subspan( k + 1 ) };
    }

    void arity( const Line& l, std::span< const Word > words, std::size_t n, const char* what ) const
    {
        if ( words.size() != n )
            fail( l, std::string( what ) + ": expected " + std::to_string( n ) + " symbol" + ( n == 1 ? "" : "s" ) +
                         ", got " + std::to_string( words.size() ) );
    }

    // ----- block structure

    Document document( std::size_t& i )
    {
        const Line& head = _lines[ i ];
        if ( head.indented )
            fail( head, "indented line outside a document", { "document header" } );
        static const std::vector< std::string > kinds{ "machine", "wiring",   "bool-cert", "quant-cert",
                                                       "ode",     "lyapunov", "simulation" };
        const auto kind_it = std::find( kinds.begin(), kinds.end(), head.words[ 0 ].text );
        if ( kind_it == kinds.end() )
            fail( head, head.words[ 0 ], "unknown document kind '" + std::string( head.words[ 0 ].text ) + "'",
                  kinds );
        if ( head.words.size() != 2 )
            fail( head, "document header needs exactly a kind and a name" );
        const auto& name_word = head.words[ 1 ];
        if ( !std::all_of( name_word.text.begin(), name_word.text.end(), is_atom_char ) )
            fail( head, name_word, "document names use letters, digits, '_', '.' and '''" );

        Document doc{ static_cast< DocKind >( kind_it - kinds.begin() ), std::string( name_word.text ), span( head ),
                      WiringDoc{} };
        ++i;

        std::vector< Block > blocks;
        bool closed = false;
        while ( i < _lines.size() )
        {
            const Line& l = _lines[ i++ ];
            if ( l.indented )
            {
                if ( blocks.empty() )
                    fail( l, "indented line before any section" );
                blocks.back().entries.push_back( l );
                continue;
            }
            if ( l.words.size() == 1 && l.words[ 0 ].text == "end" )
            {
                closed = true;
                break;
            }
            Block b;
            b.head = l;
            b.keyword = l.words[ 0 ].text;
            b.args.assign( l.words.begin() + 1, l.words.end() );
            const std::size_t after = b.keyword.size();
            std::size_t skip = after;
            while ( skip < l.text.size() && ( l.text[ skip ] == ' ' || l.text[ skip ] == '\t' ) )
                ++skip;
            b.rest = l.text.substr( skip );
            b.rest_column = l.column + skip;
            blocks.push_back( std::move( b ) );
        }
        if ( !closed )
            throw ParseError( { _file, _lines.back().number + 1, 1, 0 }, "document '" + doc.name + "' is not closed",
                              { "end" } );

        Blocks bs{ *this, head, std::move( blocks ), {} };
        try
        {
            switch ( doc.kind )
            {
            case DocKind::machine:
                doc.body = machine( bs );
                break;
            case DocKind::wiring:
                doc.body = wiring( bs );
                break;
            case DocKind::bool_cert:
                doc.body = bool_cert( bs );
                break;
            case DocKind::quant_cert:
                doc.body = quant_cert( bs );
                break;
            case DocKind::ode:
                doc.body = ode( bs );
                break;
            case DocKind::lyapunov:
                doc.body = lyapunov( bs );
                break;
            case DocKind::simulation:
                doc.body = simulation( bs );
                break;
            }
        }
        catch ( const ParseError& )
        {
            throw;
        }
        catch ( const Error& e )
        {
            // Invariants checked by the domain constructors.
            fail( head, e.what() );
        }
        if ( doc.kind == DocKind::machine )
            _local.insert_or_assign( doc.name, std::get< Machine >( doc.body ) );
        return doc;
    }

    // Blocks of one document, with keyword lookup and leftover detection.
    struct Blocks
    {
        const DocParser& p;
        const Line& head;
        std::vector< Block > items;
        std::set< std::string, std::less<> > allowed;

        const Block* find( std::string_view keyword )
        {
            allowed.emplace( keyword );
            const Block* found = nullptr;
            for ( const auto& b : items )
            {
                if ( b.keyword != keyword )
                    continue;
                if ( found )
                    p.fail( b.head, b.head.words[ 0 ], "duplicate '" + std::string( keyword ) + "'" );
                found = &b;
            }
            return found;
        }
        const Block& get( std::string_view keyword )
        {
            const auto* b = find( keyword );
            if ( !b )
                p.fail( head, "missing '" + std::string( keyword ) + "'", { std::string( keyword ) } );
            return *b;
        }
        // Reject keywords nobody asked for.
        void finish()
        {
            for ( const auto& b : items )
                if ( !allowed.count( b.keyword ) )
                    p.fail( b.head, b.head.words[ 0 ], "unexpected '" + std::string( b.keyword ) + "'",
                            std::vector< std::string >( allowed.begin(), allowed.end() ) );
        }
        void no_entries( const Block& b ) const
        {
            if ( !b.entries.empty() )
                p.fail( b.entries.front(), "'" + std::string( b.keyword ) + "' takes no indented entries" );
        }
        void no_args( const Block& b ) const
        {
            if ( !b.args.empty() )
                p.fail( b.head, b.args.front(), "'" + std::string( b.keyword ) + "' takes no arguments" );
        }
    };

    // ----- interfaces

    Interface interface( const Block& b ) const
    {
        std::optional< FiniteSet > obs;
        const Line* obs_line = nullptr;
        std::vector< std::pair< const Line*, std::vector< Word > > > acts;
        for ( const auto& l : b.entries )
        {
            const auto key = l.words[ 0 ].text;
            std::span< const Word > rest( l.words.begin() + 1, l.words.end() );
            if ( key == "obs" )
            {
                if ( obs )
                    fail( l, l.words[ 0 ], "duplicate 'obs'" );
                obs = set_of( l, rest );
                obs_line = &l;
            }
            else if ( key == "act" )
                acts.emplace_back( &l, std::vector< Word >( rest.begin(), rest.end() ) );
            else
                fail( l, l.words[ 0 ], "unexpected '" + std::string( key ) + "'", { "obs", "act" } );
        }
        if ( !obs )
            fail( b.head, "interface needs an 'obs' line", { "obs" } );
        (void)obs_line;

        std::vector< std::optional< FiniteSet > > fibers( obs->size() );
        bool star = false;
        for ( const auto& [ l, words ] : acts )
        {
            if ( words.size() < 2 || words[ 1 ].text != ":" )
                fail( *l, "expected 'act <observation> : <actions>'", { ":" } );
            std::span< const Word > as( words.begin() + 2, words.end() );
            if ( words[ 0 ].text == "*" )
            {
                if ( star || std::any_of( fibers.begin(), fibers.end(), []( const auto& f ) { return f.has_value(); } ) )
                    fail( *l, "'act *' cannot be combined with other 'act' lines" );
                star = true;
                const auto set = set_of( *l, as );
                for ( auto& f : fibers )
                    f = set;
                continue;
            }
            if ( star )
                fail( *l, "'act *' cannot be combined with other 'act' lines" );
            const Index o = index_in( *obs, *l, words[ 0 ], "observation" );
            if ( fibers[ o ] )
                fail( *l, words[ 0 ], "duplicate action set for '" + std::string( words[ 0 ].text ) + "'" );
            fibers[ o ] = set_of( *l, as );
        }
        std::vector< FiniteSet > out;
        for ( std::size_t i = 0; i < fibers.size(); ++i )
        {
            if ( !fibers[ i ] )
                fail( b.head, "no action set for observation '" + ( *obs )[ i ].str() + "'", { "act" } );
            out.push_back( *fibers[ i ] );
        }
        return Interface( *obs, std::move( out ) );
    }

    // ----- kinds

    Machine machine( Blocks& bs ) const
    {
        const auto& kind_b = bs.get( "kind" );
        bs.no_entries( kind_b );
        if ( kind_b.args.size() != 1 ||
             ( kind_b.args[ 0 ].text != "deterministic" && kind_b.args[ 0 ].text != "nondeterministic" ) )
            fail( kind_b.head, "machine kind", { "deterministic", "nondeterministic" } );
        const auto kind =
            kind_b.args[ 0 ].text == "deterministic" ? ChangeKind::deterministic : ChangeKind::nondeterministic;

        const auto& states_b = bs.get( "states" );
        bs.no_entries( states_b );
        const auto states = set_of( states_b.head, states_b.args );

        const auto& iface_b = bs.get( "interface" );
        bs.no_args( iface_b );
        const auto iface = interface( iface_b );

        const auto& view_b = bs.get( "view" );
        bs.no_args( view_b );
        std::vector< std::optional< Index > > view( states.size() );
        for ( const auto& l : view_b.entries )
        {
            const auto [ lhs, rhs ] = arrow( l );
            arity( l, lhs, 1, "view entry" );
            arity( l, rhs, 1, "view entry" );
            const Index s = index_in( states, l, lhs[ 0 ], "state" );
            if ( view[ s ] )
                fail( l, lhs[ 0 ], "duplicate view entry" );
            view[ s ] = index_in( iface.obs(), l, rhs[ 0 ], "observation" );
        }
        std::vector< Index > view_table;
        for ( std::size_t s = 0; s < states.size(); ++s )
        {
            if ( !view[ s ] )
                fail( view_b.head, "no view entry for state '" + states[ s ].str() + "'" );
            view_table.push_back( *view[ s ] );
        }

        const auto& update_b = bs.get( "update" );
        bs.no_args( update_b );
        std::vector< std::vector< std::optional< Change > > > update( states.size() );
        for ( std::size_t s = 0; s < states.size(); ++s )
            update[ s ].resize( iface.actions( view_table[ s ] ).size() );
        for ( const auto& l : update_b.entries )
        {
            const auto [ lhs, rhs ] = arrow( l );
            arity( l, lhs, 2, "update entry" );
            const Index s = index_in( states, l, lhs[ 0 ], "state" );
            const auto& fiber = iface.actions( view_table[ s ] );
            const auto a_sym = symbol( l, lhs[ 1 ] );
            const auto a = fiber.find( a_sym );
            if ( !a )
                fail( l, lhs[ 1 ], "action '" + a_sym.str() + "' is not available in state '" + states[ s ].str() +
                                       "' (observation '" + iface.obs()[ view_table[ s ] ].str() + "')" );
            if ( update[ s ][ *a ] )
                fail( l, lhs[ 1 ], "duplicate update entry" );

            Change c;
            if ( kind == ChangeKind::deterministic )
            {
                if ( !rhs.empty() && rhs[ 0 ].text == "{" )
                    fail( l, rhs[ 0 ], "deterministic machines take a single successor state" );
                arity( l, rhs, 1, "update entry" );
                c.push_back( index_in( states, l, rhs[ 0 ], "state" ) );
            }
            else
            {
                if ( rhs.size() < 2 || rhs.front().text != "{" || rhs.back().text != "}" )
                    fail( l, "nondeterministic successors are written '{ s1 s2 ... }'", { "{" } );
                for ( const auto& w : rhs.subspan( 1, rhs.size() - 2 ) )
                {
                    const Index t = index_in( states, l, w, "state" );
                    if ( std::find( c.begin(), c.end(), t ) != c.end() )
                        fail( l, w, "duplicate successor state" );
                    c.push_back( t );
                }
                std::sort( c.begin(), c.end() );
            }
            update[ s ][ *a ] = std::move( c );
        }
        std::vector< std::vector< Change > > update_table( states.size() );
        for ( std::size_t s = 0; s < states.size(); ++s )
        {
            const auto& fiber = iface.actions( view_table[ s ] );
            for ( std::size_t a = 0; a < fiber.size(); ++a )
            {
                if ( !update[ s ][ a ] )
                    fail( update_b.head, "no update entry for state '" + states[ s ].str() + "' and action '" +
                                             fiber[ a ].str() + "'" );
                update_table[ s ].push_back( *update[ s ][ a ] );
            }
        }
        bs.finish();
        return Machine( states, iface, kind, std::move( view_table ), std::move( update_table ) );
    }

    WiringDoc wiring( Blocks& bs ) const
    {
        const auto& pat_b = bs.get( "pattern" );
        bs.no_entries( pat_b );
        static const std::vector< std::string > patterns{ "cascade", "feedback", "explicit", "parallel", "real" };
        if ( pat_b.args.size() != 1 ||
             std::find( patterns.begin(), patterns.end(), pat_b.args[ 0 ].text ) == patterns.end() )
            fail( pat_b.head, "wiring pattern", patterns );

        WiringDoc w;
        w.pattern = std::string( pat_b.args[ 0 ].text );
        if ( w.pattern == "cascade" || w.pattern == "feedback" )
        {
            const std::vector< std::string > names = w.pattern == "cascade"
                                                         ? std::vector< std::string >{ "A", "O1", "M", "O2" }
                                                         : std::vector< std::string >{ "A", "M", "O" };
            const auto& car_b = bs.get( "carriers" );
            bs.no_args( car_b );
            std::map< std::string, FiniteSet > found;
            for ( const auto& l : car_b.entries )
            {
                if ( l.words.size() < 2 || l.words[ 1 ].text != ":" )
                    fail( l, "expected '<carrier> : <elements>'", { ":" } );
                const std::string name( l.words[ 0 ].text );
                if ( std::find( names.begin(), names.end(), name ) == names.end() )
                    fail( l, l.words[ 0 ], "unknown carrier '" + name + "'", names );
                if ( found.count( name ) )
                    fail( l, l.words[ 0 ], "duplicate carrier '" + name + "'" );
                found.emplace( name, set_of( l, std::span< const Word >( l.words ).subspan( 2 ) ) );
            }
            for ( const auto& n : names )
            {
                if ( !found.count( n ) )
                    fail( car_b.head, "missing carrier '" + n + "'", { n } );
                w.carriers.emplace_back( n, found.at( n ) );
            }
            if ( w.pattern == "cascade" )
                w.finite = make_cascade( found.at( "A" ), found.at( "O1" ), found.at( "M" ), found.at( "O2" ) );
            else
                w.finite = make_feedback( found.at( "A" ), found.at( "M" ), found.at( "O" ) );
        }
        else if ( w.pattern == "explicit" )
        {
            const auto& src_b = bs.get( "source" );
            const auto& dst_b = bs.get( "target" );
            bs.no_args( src_b );
            bs.no_args( dst_b );
            const auto src = interface( src_b );
            const auto dst = interface( dst_b );

            const auto& fwd_b = bs.get( "forward" );
            bs.no_args( fwd_b );
            std::vector< std::optional< Index > > fwd( src.obs().size() );
            for ( const auto& l : fwd_b.entries )
            {
                const auto [ lhs, rhs ] = arrow( l );
                arity( l, lhs, 1, "forward entry" );
                arity( l, rhs, 1, "forward entry" );
                const Index o = index_in( src.obs(), l, lhs[ 0 ], "observation" );
                if ( fwd[ o ] )
                    fail( l, lhs[ 0 ], "duplicate forward entry" );
                fwd[ o ] = index_in( dst.obs(), l, rhs[ 0 ], "observation" );
            }
            std::vector< Index > fwd_table;
            for ( std::size_t o = 0; o < fwd.size(); ++o )
            {
                if ( !fwd[ o ] )
                    fail( fwd_b.head, "no forward entry for '" + src.obs()[ o ].str() + "'" );
                fwd_table.push_back( *fwd[ o ] );
            }

            const auto& bwd_b = bs.get( "backward" );
            bs.no_args( bwd_b );
            std::vector< std::vector< std::optional< Index > > > bwd( src.obs().size() );
            for ( std::size_t o = 0; o < bwd.size(); ++o )
                bwd[ o ].resize( dst.actions( fwd_table[ o ] ).size() );
            for ( const auto& l : bwd_b.entries )
            {
                const auto [ lhs, rhs ] = arrow( l );
                arity( l, lhs, 2, "backward entry" );
                arity( l, rhs, 1, "backward entry" );
                const Index o = index_in( src.obs(), l, lhs[ 0 ], "observation" );
                const Index a2 = index_in( dst.actions( fwd_table[ o ] ), l, lhs[ 1 ], "action" );
                if ( bwd[ o ][ a2 ] )
                    fail( l, lhs[ 1 ], "duplicate backward entry" );
                bwd[ o ][ a2 ] = index_in( src.actions( o ), l, rhs[ 0 ], "action" );
            }
            std::vector< std::vector< Index > > bwd_table( bwd.size() );
            for ( std::size_t o = 0; o < bwd.size(); ++o )
                for ( std::size_t a = 0; a < bwd[ o ].size(); ++a )
                {
                    if ( !bwd[ o ][ a ] )
                        fail( bwd_b.head, "no backward entry for '" + src.obs()[ o ].str() + "' and '" +
                                              dst.actions( fwd_table[ o ] )[ a ].str() + "'" );
                    bwd_table[ o ].push_back( *bwd[ o ][ a ] );
                }
            w.finite = Lens( src, dst, std::move( fwd_table ), std::move( bwd_table ) );
        }
        else if ( w.pattern == "real" )
        {
            const auto& dims_b = bs.get( "dims" );
            bs.no_entries( dims_b );
            if ( dims_b.args.size() != 4 )
                fail( dims_b.head, "'dims' takes four numbers: source observations, source actions, target "
                                   "observations, target actions" );
            QuantLens q;
            q.src_obs = count( dims_b.head, dims_b.args[ 0 ] );
            q.src_act = count( dims_b.head, dims_b.args[ 1 ] );
            q.dst_obs = count( dims_b.head, dims_b.args[ 2 ] );
            q.dst_act = count( dims_b.head, dims_b.args[ 3 ] );
            const auto& fwd_b = bs.get( "forward" );
            const auto& bwd_b = bs.get( "backward" );
            bs.no_args( fwd_b );
            bs.no_args( bwd_b );
            for ( const auto& l : fwd_b.entries )
                q.fwd.push_back( expression( l ) );
            for ( const auto& l : bwd_b.entries )
                q.bwd.push_back( expression( l ) );
            q.validate();
            w.real = std::move( q );
        }
        bs.finish();
        return w;
    }

    BoolCertDoc bool_cert( Blocks& bs ) const
    {
        const auto& iface_b = bs.get( "interface" );
        bs.no_args( iface_b );
        const auto iface = interface( iface_b );

        const auto& gamma_b = bs.get( "gamma" );
        bs.no_entries( gamma_b );
        std::vector< bool > gamma( iface.obs().size(), false );
        for ( const auto& w : gamma_b.args )
        {
            const Index o = index_in( iface.obs(), gamma_b.head, w, "observation" );
            if ( gamma[ o ] )
                fail( gamma_b.head, w, "duplicate symbol '" + std::string( w.text ) + "'" );
            gamma[ o ] = true;
        }

        std::vector< std::vector< bool > > alpha;
        for ( std::size_t o = 0; o < iface.obs().size(); ++o )
            alpha.emplace_back( iface.actions( o ).size(), false );
        const auto& alpha_b = bs.get( "alpha" );
        bs.no_args( alpha_b );
        std::vector< bool > seen( iface.obs().size(), false );
        for ( const auto& l : alpha_b.entries )
        {
            if ( l.words.size() < 2 || l.words[ 1 ].text != ":" )
                fail( l, "expected '<observation> : <actions>'", { ":" } );
            const Index o = index_in( iface.obs(), l, l.words[ 0 ], "observation" );
            if ( seen[ o ] )
                fail( l, l.words[ 0 ], "duplicate assumption entry" );
            seen[ o ] = true;
            for ( const auto& w : std::span< const Word >( l.words ).subspan( 2 ) )
            {
                const Index a = index_in( iface.actions( o ), l, w, "action" );
                if ( alpha[ o ][ a ] )
                    fail( l, w, "duplicate symbol '" + std::string( w.text ) + "'" );
                alpha[ o ][ a ] = true;
            }
        }

        // Well-formedness gets the assumption section's span.
        for ( std::size_t o = 0; o < alpha.size(); ++o )
            for ( std::size_t a = 0; a < alpha[ o ].size(); ++a )
                if ( alpha[ o ][ a ] && !gamma[ o ] )
                {
                    const Line* where = &alpha_b.head;
                    for ( const auto& l : alpha_b.entries )
                        if ( symbol( l, l.words[ 0 ] ) == iface.obs()[ o ] )
                            where = &l;
                    fail( *where, "ill-formed certificate: the assumption must imply the guarantee, but alpha(" +
                                      iface.obs()[ o ].str() + ", " + iface.actions( o )[ a ].str() +
                                      ") holds while gamma(" + iface.obs()[ o ].str() + ") does not" );
                }

        BoolCertDoc doc{ InterfaceCertificate( iface, std::move( gamma ), std::move( alpha ) ), std::nullopt };

        const auto* states_b = bs.find( "states" );
        const auto* phi_b = bs.find( "phi" );
        if ( static_cast< bool >( states_b ) != static_cast< bool >( phi_b ) )
            fail( states_b ? states_b->head : phi_b->head, "'states' and 'phi' go together",
                  { states_b ? "phi" : "states" } );
        if ( states_b )
        {
            bs.no_entries( *states_b );
            bs.no_entries( *phi_b );
            const auto states = set_of( states_b->head, states_b->args );
            std::vector< bool > truth( states.size(), false );
            for ( const auto& w : phi_b->args )
            {
                const Index s = index_in( states, phi_b->head, w, "state" );
                if ( truth[ s ] )
                    fail( phi_b->head, w, "duplicate symbol '" + std::string( w.text ) + "'" );
                truth[ s ] = true;
            }
            doc.phi = Predicate( states, std::move( truth ) );
        }
        bs.finish();
        return doc;
    }

    QuantCertificate quant_cert( Blocks& bs ) const
    {
        const auto& dims_b = bs.get( "dims" );
        bs.no_entries( dims_b );
        if ( dims_b.args.size() != 2 )
            fail( dims_b.head, "'dims' takes two numbers: observations and actions" );
        QuantCertificate c;
        c.obs_dim = count( dims_b.head, dims_b.args[ 0 ] );
        c.act_dim = count( dims_b.head, dims_b.args[ 1 ] );
        const auto& g = bs.get( "gamma" );
        const auto& a = bs.get( "alpha" );
        bs.no_entries( g );
        bs.no_entries( a );
        c.gamma = expression( g.head, g.rest, g.rest_column );
        c.alpha = expression( a.head, a.rest, a.rest_column );
        bs.finish();
        c.validate();
        return c;
    }

    std::vector< double > numbers( const Block& b, std::size_t n ) const
    {
        if ( b.args.size() != n )
            fail( b.head, "'" + std::string( b.keyword ) + "' needs " + std::to_string( n ) + " numbers" );
        std::vector< double > out;
        for ( const auto& w : b.args )
            out.push_back( number( b.head, w ) );
        return out;
    }

    OpenODE ode( Blocks& bs ) const
    {
        const auto& dims_b = bs.get( "dims" );
        bs.no_entries( dims_b );
        if ( dims_b.args.size() != 3 )
            fail( dims_b.head, "'dims' takes three numbers: states, inputs, observations" );
        OpenODE o;
        o.n = count( dims_b.head, dims_b.args[ 0 ] );
        o.m = count( dims_b.head, dims_b.args[ 1 ] );
        o.k = count( dims_b.head, dims_b.args[ 2 ] );

        const auto* x0_b = bs.find( "x0" );
        const auto* a0_b = bs.find( "a0" );
        o.x0 = x0_b ? numbers( *x0_b, o.n ) : std::vector< double >( o.n, 0.0 );
        o.a0 = a0_b ? numbers( *a0_b, o.m ) : std::vector< double >( o.m, 0.0 );

        const auto& field_b = bs.get( "field" );
        bs.no_args( field_b );
        for ( const auto& l : field_b.entries )
            o.field.push_back( expression( l ) );
        if ( o.field.size() != o.n )
            fail( field_b.head, "field needs " + std::to_string( o.n ) + " components, got " +
                                    std::to_string( o.field.size() ) );

        if ( const auto* view_b = bs.find( "view" ) )
        {
            bs.no_args( *view_b );
            for ( const auto& l : view_b->entries )
                o.view.push_back( expression( l ) );
        }
        if ( o.view.size() != o.k )
            fail( dims_b.head, "view needs " + std::to_string( o.k ) + " components, got " +
                                   std::to_string( o.view.size() ) );

        const auto& dom_b = bs.get( "domain" );
        bs.no_args( dom_b );
        std::vector< std::optional< Interval > > xs( o.n ), as( o.m );
        for ( const auto& l : dom_b.entries )
        {
            if ( l.words.size() != 3 )
                fail( l, "expected '<variable> <lo> <hi>'" );
            const std::string var( l.words[ 0 ].text );
            std::optional< Interval >* slot = nullptr;
            for ( std::size_t i = 0; i < o.n; ++i )
                if ( var == state_var( i ) )
                    slot = &xs[ i ];
            for ( std::size_t i = 0; i < o.m; ++i )
                if ( var == act_var( i ) )
                    slot = &as[ i ];
            if ( !slot )
                fail( l, l.words[ 0 ], "'" + var + "' is not a state or input variable" );
            if ( *slot )
                fail( l, l.words[ 0 ], "duplicate bounds for '" + var + "'" );
            const Interval iv{ number( l, l.words[ 1 ] ), number( l, l.words[ 2 ] ) };
            if ( iv.hi < iv.lo )
                fail( l, "empty interval: lo > hi" );
            *slot = iv;
        }
        for ( std::size_t i = 0; i < o.n; ++i )
        {
            if ( !xs[ i ] )
                fail( dom_b.head, "missing bounds for '" + state_var( i ) + "'", { state_var( i ) } );
            o.domain.push_back( *xs[ i ] );
        }
        for ( std::size_t i = 0; i < o.m; ++i )
        {
            if ( !as[ i ] )
                fail( dom_b.head, "missing bounds for '" + act_var( i ) + "'", { act_var( i ) } );
            o.inputs.push_back( *as[ i ] );
        }
        bs.finish();
        o.validate();
        return o;
    }

    LyapunovCandidate lyapunov( Blocks& bs ) const
    {
        LyapunovCandidate c;
        for ( const char* key : { "phi", "alpha", "gamma" } )
        {
            const auto& b = bs.get( key );
            bs.no_entries( b );
            auto e = expression( b.head, b.rest, b.rest_column );
            if ( std::string_view( key ) == "phi" )
                c.phi = e;
            else if ( std::string_view( key ) == "alpha" )
                c.alpha = e;
            else
                c.gamma = e;
        }
        if ( const auto* l = bs.find( "lambda" ) )
        {
            bs.no_entries( *l );
            c.lambda = parse_plfun( l->rest, { _file, l->head.number, l->rest_column } );
            if ( !id_minus_in_kinf( c.lambda ) )
                fail( l->head, "lambda must satisfy id - lambda in Kinf (lambda(0) = 0 and all slopes < 1)" );
        }
        bs.finish();
        return c;
    }

    const Machine& machine_named( const Block& b ) const
    {
        if ( b.args.size() != 1 )
            fail( b.head, "'" + std::string( b.keyword ) + "' takes one machine name" );
        const auto name = b.args[ 0 ].text;
        if ( const auto it = _local.find( name ); it != _local.end() )
            return it->second;
        if ( const auto it = _machines.find( name ); it != _machines.end() )
            return it->second;
        fail( b.head, b.args[ 0 ], "unknown machine '" + std::string( name ) + "'" );
    }

    SimulationDoc simulation( Blocks& bs ) const
    {
        const auto& src_b = bs.get( "source" );
        const auto& dst_b = bs.get( "target" );
        bs.no_entries( src_b );
        bs.no_entries( dst_b );
        const auto& src = machine_named( src_b );
        const auto& dst = machine_named( dst_b );
        const auto& si = src.iface();
        const auto& di = dst.iface();

        const auto& obs_b = bs.get( "obs-map" );
        bs.no_args( obs_b );
        std::vector< std::optional< Index > > fwd( si.obs().size() );
        for ( const auto& l : obs_b.entries )
        {
            const auto [ lhs, rhs ] = arrow( l );
            arity( l, lhs, 1, "observation map entry" );
            arity( l, rhs, 1, "observation map entry" );
            const Index o = index_in( si.obs(), l, lhs[ 0 ], "observation" );
            if ( fwd[ o ] )
                fail( l, lhs[ 0 ], "duplicate observation map entry" );
            fwd[ o ] = index_in( di.obs(), l, rhs[ 0 ], "observation" );
        }
        std::vector< Index > fwd_table;
        for ( std::size_t o = 0; o < fwd.size(); ++o )
        {
            if ( !fwd[ o ] )
                fail( obs_b.head, "no observation map entry for '" + si.obs()[ o ].str() + "'" );
            fwd_table.push_back( *fwd[ o ] );
        }

        const auto& act_b = bs.get( "act-map" );
        bs.no_args( act_b );
        std::vector< std::vector< std::optional< Index > > > push( si.obs().size() );
        for ( std::size_t o = 0; o < push.size(); ++o )
            push[ o ].resize( si.actions( o ).size() );
        for ( const auto& l : act_b.entries )
        {
            const auto [ lhs, rhs ] = arrow( l );
            arity( l, lhs, 2, "action map entry" );
            arity( l, rhs, 1, "action map entry" );
            const Index o = index_in( si.obs(), l, lhs[ 0 ], "observation" );
            const Index a = index_in( si.actions( o ), l, lhs[ 1 ], "action" );
            if ( push[ o ][ a ] )
                fail( l, lhs[ 1 ], "duplicate action map entry" );
            push[ o ][ a ] = index_in( di.actions( fwd_table[ o ] ), l, rhs[ 0 ], "action" );
        }
        std::vector< std::vector< Index > > push_table( push.size() );
        for ( std::size_t o = 0; o < push.size(); ++o )
            for ( std::size_t a = 0; a < push[ o ].size(); ++a )
            {
                if ( !push[ o ][ a ] )
                    fail( act_b.head, "no action map entry for '" + si.obs()[ o ].str() + "' and '" +
                                          si.actions( o )[ a ].str() + "'" );
                push_table[ o ].push_back( *push[ o ][ a ] );
            }

        const auto& st_b = bs.get( "state-map" );
        bs.no_args( st_b );
        std::vector< std::optional< Index > > map( src.states().size() );
        for ( const auto& l : st_b.entries )
        {
            const auto [ lhs, rhs ] = arrow( l );
            arity( l, lhs, 1, "state map entry" );
            arity( l, rhs, 1, "state map entry" );
            const Index s = index_in( src.states(), l, lhs[ 0 ], "state" );
            if ( map[ s ] )
                fail( l, lhs[ 0 ], "duplicate state map entry" );
            map[ s ] = index_in( dst.states(), l, rhs[ 0 ], "state" );
        }
        std::vector< Index > map_table;
        for ( std::size_t s = 0; s < map.size(); ++s )
        {
            if ( !map[ s ] )
                fail( st_b.head, "no state map entry for '" + src.states()[ s ].str() + "'" );
            map_table.push_back( *map[ s ] );
        }
        bs.finish();
        return SimulationDoc{ std::string( src_b.args[ 0 ].text ), std::string( dst_b.args[ 0 ].text ),
                              Simulation( src, dst, Chart( si, di, std::move( fwd_table ), std::move( push_table ) ),
                                          std::move( map_table ) ) };
    }

    std::string _file;
    const MachineLibrary& _machines;
    MachineLibrary _local;
    std::vector< Line > _lines;
};

} // namespace

std::vector< Document > parse_documents( std::string_view text, const std::string& file,
                                         const MachineLibrary& machines )
{
    return DocParser( text, file, machines ).run();
}

Document parse_document( std::string_view text, const std::string& file, const MachineLibrary& machines )
{
    auto docs = parse_documents( text, file, machines );
    if ( docs.size() != 1 )
        throw ParseError( { file, 1, 1, 0 }, "expected exactly one document, found " + std::to_string( docs.size() ) );
    return std::move( docs.front() );
}

// ---------------------------------------------------------------------------
// Printing

namespace
{

std::string join( const FiniteSet& set )
{
    std::string out;
    for ( const auto& s : set )
        out += " " + s.str();
    return out;
}

void print_interface( const Interface& iface, std::string& out )
{
    out += "  obs" + join( iface.obs() ) + "\n";
    if ( iface.obs().empty() )
        return;
    if ( iface.is_simple() )
    {
        out += "  act * :" + join( iface.simple_actions() ) + "\n";
        return;
    }
    for ( std::size_t o = 0; o < iface.obs().size(); ++o )
        out += "  act " + iface.obs()[ o ].str() + " :" + join( iface.actions( o ) ) + "\n";
}

void print_body( const Machine& m, std::string& out )
{
    out += std::string( "kind " ) + to_string( m.kind() ) + "\n";
    out += "states" + join( m.states() ) + "\n";
    out += "interface\n";
    print_interface( m.iface(), out );
    out += "view\n";
    for ( std::size_t s = 0; s < m.states().size(); ++s )
        out += "  " + m.states()[ s ].str() + " -> " + m.iface().obs()[ m.view( s ) ].str() + "\n";
    out += "update\n";
    for ( std::size_t s = 0; s < m.states().size(); ++s )
    {
        const auto& fiber = m.fiber( s );
        for ( std::size_t a = 0; a < fiber.size(); ++a )
        {
            out += "  " + m.states()[ s ].str() + " " + fiber[ a ].str() + " ->";
            const auto& c = m.update( s, a );
            if ( m.kind() == ChangeKind::deterministic )
                out += " " + m.states()[ c.front() ].str();
            else
            {
                out += " {";
                for ( Index t : c )
                    out += " " + m.states()[ t ].str();
                out += " }";
            }
            out += "\n";
        }
    }
}

void print_body( const WiringDoc& w, std::string& out )
{
    out += "pattern " + w.pattern + "\n";
    if ( !w.carriers.empty() )
    {
        out += "carriers\n";
        for ( const auto& [ name, set ] : w.carriers )
            out += "  " + name + " :" + join( set ) + "\n";
    }
    if ( w.pattern == "explicit" && w.finite )
    {
        const auto& l = *w.finite;
        out += "source\n";
        print_interface( l.src(), out );
        out += "target\n";
        print_interface( l.dst(), out );
        out += "forward\n";
        for ( std::size_t o = 0; o < l.src().obs().size(); ++o )
            out += "  " + l.src().obs()[ o ].str() + " -> " + l.dst().obs()[ l.fwd( o ) ].str() + "\n";
        out += "backward\n";
        for ( std::size_t o = 0; o < l.src().obs().size(); ++o )
        {
            const auto& fiber = l.dst().actions( l.fwd( o ) );
            for ( std::size_t a = 0; a < fiber.size(); ++a )
                out += "  " + l.src().obs()[ o ].str() + " " + fiber[ a ].str() + " -> " +
                       l.src().actions( o )[ l.bwd( o, a ) ].str() + "\n";
        }
    }
    if ( w.real )
    {
        const auto& q = *w.real;
        out += "dims " + std::to_string( q.src_obs ) + " " + std::to_string( q.src_act ) + " " +
               std::to_string( q.dst_obs ) + " " + std::to_string( q.dst_act ) + "\n";
        out += "forward\n";
        for ( const auto& e : q.fwd )
            out += "  " + e.str() + "\n";
        out += "backward\n";
        for ( const auto& e : q.bwd )
            out += "  " + e.str() + "\n";
    }
}

void print_body( const BoolCertDoc& c, std::string& out )
{
    const auto& ic = c.icert;
    const auto& iface = ic.iface();
    out += "interface\n";
    print_interface( iface, out );
    out += "gamma";
    for ( std::size_t o = 0; o < iface.obs().size(); ++o )
        if ( ic.gamma( o ) )
            out += " " + iface.obs()[ o ].str();
    out += "\nalpha\n";
    for ( std::size_t o = 0; o < iface.obs().size(); ++o )
    {
        out += "  " + iface.obs()[ o ].str() + " :";
        for ( std::size_t a = 0; a < iface.actions( o ).size(); ++a )
            if ( ic.alpha( o, a ) )
                out += " " + iface.actions( o )[ a ].str();
        out += "\n";
    }
    if ( c.phi )
    {
        out += "states" + join( c.phi->carrier() ) + "\n";
        out += "phi";
        for ( const auto& s : c.phi->true_elements() )
            out += " " + s.str();
        out += "\n";
    }
}

void print_body( const QuantCertificate& c, std::string& out )
{
    out += "dims " + std::to_string( c.obs_dim ) + " " + std::to_string( c.act_dim ) + "\n";
    out += "gamma " + c.gamma.str() + "\n";
    out += "alpha " + c.alpha.str() + "\n";
}

std::string numbers_line( const char* key, const std::vector< double >& xs )
{
    std::string out = key;
    for ( double x : xs )
        out += " " + format_number( x );
    return out + "\n";
}

void print_body( const OpenODE& o, std::string& out )
{
    out += "dims " + std::to_string( o.n ) + " " + std::to_string( o.m ) + " " + std::to_string( o.k ) + "\n";
    out += numbers_line( "x0", o.x0 );
    if ( o.m > 0 )
        out += numbers_line( "a0", o.a0 );
    out += "field\n";
    for ( const auto& e : o.field )
        out += "  " + e.str() + "\n";
    if ( o.k > 0 )
    {
        out += "view\n";
        for ( const auto& e : o.view )
            out += "  " + e.str() + "\n";
    }
    out += "domain\n";
    for ( std::size_t i = 0; i < o.n; ++i )
        out += "  " + state_var( i ) + " " + format_number( o.domain[ i ].lo ) + " " +
               format_number( o.domain[ i ].hi ) + "\n";
    for ( std::size_t i = 0; i < o.m; ++i )
        out += "  " + act_var( i ) + " " + format_number( o.inputs[ i ].lo ) + " " +
               format_number( o.inputs[ i ].hi ) + "\n";
}

void print_body( const LyapunovCandidate& c, std::string& out )
{
    out += "phi " + c.phi.str() + "\n";
    out += "alpha " + c.alpha.str() + "\n";
    out += "gamma " + c.gamma.str() + "\n";
    out += "lambda " + c.lambda.str() + "\n";
}

void print_body( const SimulationDoc& d, std::string& out )
{
    const auto& sim = d.sim;
    const auto& si = sim.src().iface();
    const auto& di = sim.dst().iface();
    out += "source " + d.source + "\n";
    out += "target " + d.target + "\n";
    out += "obs-map\n";
    for ( std::size_t o = 0; o < si.obs().size(); ++o )
        out += "  " + si.obs()[ o ].str() + " -> " + di.obs()[ sim.chart().fwd( o ) ].str() + "\n";
    out += "act-map\n";
    for ( std::size_t o = 0; o < si.obs().size(); ++o )
        for ( std::size_t a = 0; a < si.actions( o ).size(); ++a )
            out += "  " + si.obs()[ o ].str() + " " + si.actions( o )[ a ].str() + " -> " +
                   di.actions( sim.chart().fwd( o ) )[ sim.chart().push( o, a ) ].str() + "\n";
    out += "state-map\n";
    for ( std::size_t s = 0; s < sim.src().states().size(); ++s )
        out += "  " + sim.src().states()[ s ].str() + " -> " + sim.dst().states()[ sim.map( s ) ].str() + "\n";
}

DocKind kind_of( const DocBody& body )
{
    return static_cast< DocKind >( body.index() );
}

} // namespace

std::string print_document( const Document& doc )
{
    std::string out = std::string( to_string( doc.kind ) ) + " " + doc.name + "\n";
    std::visit( [ & ]( const auto& body ) { print_body( body, out ); }, doc.body );
    out += "end\n";
    return out;
}

std::string print_documents( const std::vector< Document >& docs )
{
    std::string out;
    for ( std::size_t i = 0; i < docs.size(); ++i )
    {
        if ( i > 0 )
            out += "\n";
        out += print_document( docs[ i ] );
    }
    return out;
}

Document make_document( std::string name, DocBody body )
{
    const auto kind = kind_of( body );
    return Document{ kind, std::move( name ), SourceSpan{}, std::move( body ) };
}

} // namespace agl
