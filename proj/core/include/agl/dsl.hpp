#pragma once

#include "agl/bool_cert.hpp"
#include "agl/errors.hpp"
#include "agl/expr.hpp"
#include "agl/lens.hpp"
#include "agl/machine.hpp"
#include "agl/ode.hpp"
#include "agl/plfun.hpp"
#include "agl/quant_cert.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace agl
{

// 1-based line and column; length in bytes.
struct SourceSpan
{
    std::string file;
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 0;

    [[nodiscard]] std::string str() const; // "file:line:column"
    friend bool operator==( const SourceSpan&, const SourceSpan& ) = default;
};

class ParseError : public Error
{
public:
    ParseError( SourceSpan span, const std::string& message, std::vector< std::string > expected = {} );

    [[nodiscard]] const SourceSpan& span() const { return _span; }
    [[nodiscard]] const std::string& message() const { return _message; }
    [[nodiscard]] const std::vector< std::string >& expected() const { return _expected; }

private:
    SourceSpan _span;
    std::string _message;
    std::vector< std::string > _expected;
};

// Where a piece of text sits in its file, for error spans.
struct SourceOrigin
{
    std::string file = "<input>";
    std::size_t line = 1;
    std::size_t column = 1;
};

// Precedence, loosest first: + -, * /, unary -, ^ (integer exponent).
// Binary operators are left associative. A numeric literal right after a
// unary minus is read as a negative constant unless a ^ follows it.
Expr parse_expr( std::string_view text, const SourceOrigin& origin = {} );

// `pl [(0,0),(1,2)] slope 0.5`
PLFun parse_plfun( std::string_view text, const SourceOrigin& origin = {} );

// ---------------------------------------------------------------------------
// Documents

enum class DocKind
{
    machine,
    wiring,
    bool_cert,
    quant_cert,
    ode,
    lyapunov,
    simulation,
};

const char* to_string( DocKind kind );

// A wiring pattern with the carriers it was built from. `finite` holds the
// lens for cascade, feedback and explicit patterns; `real` for the real
// pattern; `parallel` has neither and stands for the identity on the product
// of whatever it is applied to.
struct WiringDoc
{
    std::string pattern; // cascade | feedback | explicit | parallel | real
    std::vector< std::pair< std::string, FiniteSet > > carriers;
    std::optional< Lens > finite;
    std::optional< QuantLens > real;

    friend bool operator==( const WiringDoc&, const WiringDoc& ) = default;
};

struct BoolCertDoc
{
    InterfaceCertificate icert;
    std::optional< Predicate > phi; // with its state carrier

    friend bool operator==( const BoolCertDoc&, const BoolCertDoc& ) = default;
};

struct SimulationDoc
{
    std::string source; // machine document names
    std::string target;
    Simulation sim;

    friend bool operator==( const SimulationDoc& a, const SimulationDoc& b );
};

using DocBody =
    std::variant< Machine, WiringDoc, BoolCertDoc, QuantCertificate, OpenODE, LyapunovCandidate, SimulationDoc >;

struct Document
{
    DocKind kind = DocKind::machine;
    std::string name;
    SourceSpan span; // the header line
    DocBody body;

    // Equality ignores spans.
    friend bool operator==( const Document& a, const Document& b );
};

// Machines that simulation documents may refer to by name.
using MachineLibrary = std::map< std::string, Machine, std::less<> >;

// Every document in `text`. Machines defined earlier in the same text are
// added to the lookup for later simulation documents. All module invariants
// are checked; violations are reported as ParseError with the span of the
// offending line (or the header).
std::vector< Document > parse_documents( std::string_view text, const std::string& file = "<input>",
                                         const MachineLibrary& machines = {} );

// Exactly one document (of any kind).
Document parse_document( std::string_view text, const std::string& file = "<input>",
                         const MachineLibrary& machines = {} );

std::string print_document( const Document& doc );
std::string print_documents( const std::vector< Document >& docs );

// Convenience constructors for printing values built in code.
Document make_document( std::string name, DocBody body );

} // namespace agl
