#include "commands.hpp"

#include "report.hpp"

#include "agl/bool_cert.hpp"
#include "agl/dsl.hpp"
#include "agl/errors.hpp"
#include "agl/number.hpp"
#include "agl/ode.hpp"
#include "agl/quant_cert.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace agl::cli
{

namespace
{

// A problem with the invocation or its inputs (exit code 2).
class InputError : public Error
{
public:
    using Error::Error;
};

struct Loaded
{
    std::string path;
    std::string text;
    std::vector< Document > docs;
};

std::string read_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw InputError( "cannot read '" + path + "'" );
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Loaded load( const std::string& path, Report& report, const MachineLibrary& machines = {} )
{
    Loaded l{ path, read_file( path ), {} };
    report.add_input( path, l.text );
    l.docs = parse_documents( l.text, path, machines );
    return l;
}

template < class T >
std::vector< std::pair< std::string, T > > all_of_kind( const Loaded& l )
{
    std::vector< std::pair< std::string, T > > out;
    for ( const auto& d : l.docs )
        if ( const auto* v = std::get_if< T >( &d.body ) )
            out.emplace_back( d.name, *v );
    return out;
}

template < class T >
std::pair< std::string, T > first_of_kind( const Loaded& l, const char* what )
{
    auto all = all_of_kind< T >( l );
    if ( all.empty() )
        throw InputError( "'" + l.path + "' contains no " + what + " document" );
    return all.front();
}

unsigned default_jobs()
{
    if ( const char* env = std::getenv( "AGL_JOBS" ) )
    {
        const auto v = parse_number( env );
        if ( v && *v >= 1 && *v == static_cast< unsigned >( *v ) )
            return static_cast< unsigned >( *v );
    }
    return 1;
}

// Writes to the named file, or to `fallback` when the path is empty.
void emit( const std::string& path, const std::string& text, std::ostream& fallback )
{
    if ( path.empty() )
    {
        fallback << text;
        return;
    }
    std::ofstream f( path, std::ios::binary );
    if ( !f )
        throw InputError( "cannot write '" + path + "'" );
    f << text;
}

std::vector< double > parse_vector( const std::string& text, const char* what )
{
    std::vector< double > out;
    std::stringstream ss( text );
    std::string item;
    while ( std::getline( ss, item, ',' ) )
    {
        const auto v = parse_number( item );
        if ( !v )
            throw InputError( std::string( "bad number '" ) + item + "' in " + what );
        out.push_back( *v );
    }
    return out;
}

// "t0:v,v;t1:v,v"
InputSignal parse_input( const std::string& text )
{
    std::vector< InputPiece > pieces;
    std::stringstream ss( text );
    std::string piece;
    while ( std::getline( ss, piece, ';' ) )
    {
        const auto colon = piece.find( ':' );
        if ( colon == std::string::npos )
            throw InputError( "input pieces are written 'start:v1,v2,...', got '" + piece + "'" );
        const auto start = parse_number( piece.substr( 0, colon ) );
        if ( !start )
            throw InputError( "bad start time in input piece '" + piece + "'" );
        pieces.push_back( { *start, parse_vector( piece.substr( colon + 1 ), "--input" ) } );
    }
    return InputSignal( std::move( pieces ) );
}

std::string format_list( const std::vector< double >& xs )
{
    std::string out;
    for ( std::size_t i = 0; i < xs.size(); ++i )
        out += ( i ? "," : "" ) + format_number( xs[ i ] );
    return out;
}

// ---------------------------------------------------------------------------

struct CheckLensArgs
{
    std::string lens_file, cert_file;
    std::string kappa = "pl [(0,0)] slope 0";
    double lo = -1.0, hi = 1.0, grid = 0.01, tol = 1e-8;
    unsigned jobs = 1;
};

int check_lens( const CheckLensArgs& a, std::ostream& out )
{
    Report report( "check-lens" );
    const auto lens_doc = load( a.lens_file, report );
    const auto certs = load( a.cert_file, report );
    const auto [ name, wiring ] = first_of_kind< WiringDoc >( lens_doc, "wiring" );

    if ( wiring.finite )
    {
        const auto bc = all_of_kind< BoolCertDoc >( certs );
        if ( bc.size() < 2 )
            throw InputError( "'" + a.cert_file + "' needs two bool-cert documents: source, then target" );
        require_same_interface( wiring.finite->src(), bc[ 0 ].second.icert.iface(), "source certificate" );
        require_same_interface( wiring.finite->dst(), bc[ 1 ].second.icert.iface(), "target certificate" );
        const auto v = certify_lens( *wiring.finite, bc[ 0 ].second.icert, bc[ 1 ].second.icert );
        report.add_verdict( to_json( v ) );
        report.set_outcome( v.holds );
        out << report.dump();
        return v.holds ? exit_holds : exit_violated;
    }
    if ( !wiring.real )
        throw InputError( "wiring '" + name + "' has pattern '" + wiring.pattern + "', which is not a lens by itself" );

    const auto qc = all_of_kind< QuantCertificate >( certs );
    if ( qc.size() < 2 )
        throw InputError( "'" + a.cert_file + "' needs two quant-cert documents: source, then target" );
    const auto kappa = parse_plfun( a.kappa, { "--kappa" } );
    const auto plan = SamplePlan::cube( wiring.real->src_obs + wiring.real->dst_act, a.lo, a.hi, a.grid );
    report.set_parameter( "kappa", kappa.str() );
    report.set_parameter( "box", { a.lo, a.hi } );
    report.set_parameter( "grid", a.grid );
    report.set_parameter( "tol", a.tol );
    const auto v = certify_quant_lens( *wiring.real, qc[ 0 ].second, qc[ 1 ].second, kappa, plan, { a.tol, a.jobs } );
    report.add_verdict( to_json( v ) );
    report.set_outcome( v.holds );
    out << report.dump();
    return v.holds ? exit_holds : exit_violated;
}

// ---------------------------------------------------------------------------

struct CheckMachineArgs
{
    std::string machine_file, cert_file;
};

MachineCertificate machine_certificate( const BoolCertDoc& c, const Machine& m, const std::string& where )
{
    if ( !c.phi )
        throw InputError( where + ": certificate has no 'states'/'phi' section" );
    if ( c.phi->carrier() != m.states() )
        throw InterfaceMismatch( where + ": certificate states " + c.phi->carrier().str() + " differ from machine states " +
                                 m.states().str() );
    require_same_interface( m.iface(), c.icert.iface(), where );
    return { *c.phi, c.icert };
}

int check_machine( const CheckMachineArgs& a, std::ostream& out )
{
    Report report( "check-machine" );
    const auto md = load( a.machine_file, report );
    const auto cd = load( a.cert_file, report );
    const auto m = first_of_kind< Machine >( md, "machine" ).second;
    const auto cert = machine_certificate( first_of_kind< BoolCertDoc >( cd, "bool-cert" ).second, m, a.cert_file );
    const auto v = certify_machine( m, cert );
    report.add_verdict( to_json( v ) );
    report.set_outcome( v.holds );
    out << report.dump();
    return v.holds ? exit_holds : exit_violated;
}

// ---------------------------------------------------------------------------

struct ComposeArgs
{
    std::string wiring_file;
    std::vector< std::string > machine_files;
    std::vector< std::string > cert_files;
    std::string name = "composite";
    std::string output, report;
};

int compose( const ComposeArgs& a, std::ostream& out )
{
    Report report( "compose" );
    const auto wd = load( a.wiring_file, report );
    const auto wiring = first_of_kind< WiringDoc >( wd, "wiring" ).second;

    std::vector< Machine > machines;
    std::vector< std::string > machine_names;
    for ( const auto& f : a.machine_files )
    {
        const auto l = load( f, report );
        for ( const auto& [ n, m ] : all_of_kind< Machine >( l ) )
        {
            machines.push_back( m );
            machine_names.push_back( n );
        }
    }
    if ( machines.empty() )
        throw InputError( "compose needs at least one machine" );

    Lens lens = [ & ] {
        if ( wiring.finite )
            return *wiring.finite;
        if ( wiring.pattern == "parallel" )
            return identity_lens( parallel_machines( machines ).iface() );
        throw InputError( "wiring pattern '" + wiring.pattern + "' cannot couple finite machines" );
    }();

    std::vector< Document > result;
    int code = exit_holds;
    if ( a.cert_files.empty() )
    {
        result.push_back( make_document( a.name, couple( machines, lens ) ) );
    }
    else
    {
        std::vector< BoolCertDoc > certs;
        for ( const auto& f : a.cert_files )
        {
            const auto l = load( f, report );
            for ( const auto& [ n, c ] : all_of_kind< BoolCertDoc >( l ) )
                certs.push_back( c );
        }
        if ( certs.size() != machines.size() + 1 )
            throw InputError( "--certs needs one certificate per machine followed by the wiring's target certificate (" +
                              std::to_string( machines.size() + 1 ) + " in total), got " +
                              std::to_string( certs.size() ) );
        std::vector< CertifiedMachine > parts;
        std::vector< InterfaceCertificate > icerts;
        for ( std::size_t i = 0; i < machines.size(); ++i )
        {
            parts.push_back( { machines[ i ], machine_certificate( certs[ i ], machines[ i ],
                                                                   "certificate for '" + machine_names[ i ] + "'" ) } );
            icerts.push_back( certs[ i ].icert );
        }
        const auto inner = parallel_certificate( icerts );
        try
        {
            const auto cm = comp_rule( lens, inner, certs.back().icert, parts );
            result.push_back( make_document( a.name, cm.machine ) );
            result.push_back( make_document( a.name + "_cert", BoolCertDoc{ cm.cert.icert, cm.cert.phi } ) );
            report.add_verdict( { { "rule", "comp" }, { "holds", true } } );
        }
        catch ( const PremiseNotMet& e )
        {
            auto v = to_json( e.verdict() );
            v[ "rule" ] = "comp";
            v[ "premise" ] = e.premise();
            report.add_verdict( std::move( v ) );
            report.set_outcome( false );
            code = exit_violated;
        }
    }
    if ( code == exit_holds )
        emit( a.output, print_documents( result ), out );
    if ( !a.report.empty() )
        emit( a.report, report.dump(), out );
    return code;
}

// ---------------------------------------------------------------------------

struct SubstArgs
{
    std::string simulation_file, cert_file;
    std::vector< std::string > machine_files;
    std::string output, report;
};

int subst( const SubstArgs& a, std::ostream& out )
{
    Report report( "subst" );
    MachineLibrary lib;
    for ( const auto& f : a.machine_files )
        for ( const auto& [ n, m ] : all_of_kind< Machine >( load( f, report ) ) )
            lib.insert_or_assign( n, m );
    const auto sd = load( a.simulation_file, report, lib );
    const auto sim = first_of_kind< SimulationDoc >( sd, "simulation" ).second;
    const auto cd = load( a.cert_file, report );
    const auto target = machine_certificate( first_of_kind< BoolCertDoc >( cd, "bool-cert" ).second, sim.sim.dst(),
                                             a.cert_file );
    int code = exit_holds;
    try
    {
        const auto pulled = subst_rule( sim.sim, target );
        emit( a.output, print_document( make_document( sim.source + "_cert", BoolCertDoc{ pulled.icert, pulled.phi } ) ),
              out );
        report.add_verdict( { { "rule", "subst" }, { "holds", true } } );
    }
    catch ( const PremiseNotMet& e )
    {
        auto v = to_json( e.verdict() );
        v[ "rule" ] = "subst";
        v[ "premise" ] = e.premise();
        report.add_verdict( std::move( v ) );
        report.set_outcome( false );
        code = exit_violated;
    }
    if ( !a.report.empty() )
        emit( a.report, report.dump(), out );
    return code;
}

// ---------------------------------------------------------------------------

struct CheckLissArgs
{
    std::string ode_file, cand_file;
    double grid = 0.01, tol = 1e-8;
    std::size_t falsify_budget = 0;
    unsigned jobs = 1;
};

int check_liss( const CheckLissArgs& a, std::ostream& out )
{
    Report report( "check-liss" );
    const auto od = load( a.ode_file, report );
    const auto cdoc = load( a.cand_file, report );
    const auto ode = first_of_kind< OpenODE >( od, "ode" ).second;
    const auto cand = first_of_kind< LyapunovCandidate >( cdoc, "lyapunov" ).second;
    ode.validate( a.tol );
    cand.validate( ode, a.tol );

    LissOptions opts;
    opts.step = a.grid;
    opts.tol = a.tol;
    opts.jobs = a.jobs;
    report.set_parameter( "grid", a.grid );
    report.set_parameter( "tol", a.tol );
    report.set_parameter( "tol_def", 1e-10 );
    report.set_parameter( "gradient_limit", opts.gradient_limit );
    report.set_parameter( "falsify_budget", a.falsify_budget );

    const auto v = certify_liss( ode, cand, opts );
    auto j = to_json( static_cast< const GridVerdict& >( v ) );
    j[ "gradient_check" ] = to_json( v.gradient, opts.gradient_limit );
    j[ "global_capable" ] = v.global_capable;
    bool holds = v.holds;
    if ( a.falsify_budget > 0 && !v.witness.empty() )
    {
        const auto f = falsify( ode, cand, v.witness, a.falsify_budget, a.grid, a.tol );
        json fj{ { "evaluations", f.evaluations }, { "margin", f.margin } };
        if ( f.point )
        {
            fj[ "point" ] = *f.point;
            holds = false;
        }
        j[ "falsify" ] = std::move( fj );
    }
    j[ "holds" ] = holds;
    report.add_verdict( std::move( j ) );
    report.set_outcome( holds );
    out << report.dump();
    return holds ? exit_holds : exit_violated;
}

// ---------------------------------------------------------------------------

struct KApproxArgs
{
    std::string ode_file;
    std::string phi, cand_file;
    std::size_t radial_steps = 0;
    double grid = 0.01;
    std::string output, report;
};

int kapprox( const KApproxArgs& a, std::ostream& out )
{
    Report report( "kapprox" );
    const auto od = load( a.ode_file, report );
    const auto ode = first_of_kind< OpenODE >( od, "ode" ).second;
    Expr phi;
    if ( !a.phi.empty() )
        phi = parse_expr( a.phi, { "--phi" } );
    else if ( !a.cand_file.empty() )
        phi = first_of_kind< LyapunovCandidate >( load( a.cand_file, report ), "lyapunov" ).second.phi;
    else
        throw InputError( "kapprox needs --phi or --cand" );

    double step = a.grid;
    if ( a.radial_steps > 0 )
    {
        double reach = 0.0;
        for ( std::size_t i = 0; i < ode.n; ++i )
            reach = std::max( { reach, ode.x0[ i ] - ode.domain[ i ].lo, ode.domain[ i ].hi - ode.x0[ i ] } );
        step = reach / static_cast< double >( a.radial_steps );
    }
    report.set_parameter( "step", step );
    try
    {
        const auto k = k_approx( phi, ode.domain, ode.x0, step );
        emit( a.output, "upper " + k.upper.str() + "\nlower " + k.lower.str() + "\n", out );
        report.add_verdict( { { "holds", true },
                              { "upper", to_json( k.upper ) },
                              { "lower", to_json( k.lower ) },
                              { "unbounded", k.unbounded },
                              { "samples", k.samples } } );
    }
    catch ( const PremiseFailure& e )
    {
        report.add_verdict( { { "holds", false }, { "reason", e.what() } } );
        report.set_outcome( false );
        if ( !a.report.empty() )
            emit( a.report, report.dump(), out );
        return exit_violated;
    }
    if ( !a.report.empty() )
        emit( a.report, report.dump(), out );
    return exit_holds;
}

// ---------------------------------------------------------------------------

struct SimulateArgs
{
    std::string ode_file;
    std::string x0, input;
    double t_end = 10.0, h = 0.01, tol = 1e-8;
    std::vector< std::string > bound;
    std::string output, report;
};

int simulate_cmd( const SimulateArgs& a, std::ostream& out )
{
    Report report( "simulate" );
    const auto od = load( a.ode_file, report );
    const auto ode = first_of_kind< OpenODE >( od, "ode" ).second;
    const auto x_init = a.x0.empty() ? ode.x0 : parse_vector( a.x0, "--x0" );
    const auto input = a.input.empty() ? InputSignal::constant( ode.a0 ) : parse_input( a.input );
    report.set_parameter( "x0", x_init );
    report.set_parameter( "tend", a.t_end );
    report.set_parameter( "h", a.h );

    const auto traj = simulate( ode, x_init, input, a.t_end, a.h );
    std::string csv = "t";
    for ( std::size_t i = 0; i < ode.n; ++i )
        csv += "," + state_var( i );
    csv += "\n";
    for ( std::size_t i = 0; i < traj.t.size(); ++i )
        csv += format_number( traj.t[ i ] ) + "," + format_list( traj.x[ i ] ) + "\n";
    emit( a.output, csv, out );

    json tj{ { "steps", traj.t.size() - 1 }, { "left_domain", traj.left_domain }, { "input_sup", traj.input_sup } };
    int code = exit_holds;
    if ( !a.bound.empty() )
    {
        if ( a.bound.size() != 3 )
            throw InputError( "--check-bound takes three PL functions" );
        const auto k1 = parse_plfun( a.bound[ 0 ], { "--check-bound" } );
        const auto k2 = parse_plfun( a.bound[ 1 ], { "--check-bound" } );
        const auto k3 = parse_plfun( a.bound[ 2 ], { "--check-bound" } );
        report.set_parameter( "tol", a.tol );
        const auto v = check_iss_bound( { traj }, k1, k2, k3, a.tol );
        tj[ "bound" ] = to_json( v );
        report.set_outcome( v.holds );
        code = v.holds ? exit_holds : exit_violated;
    }
    report.add_verdict( std::move( tj ) );
    if ( !a.report.empty() )
        emit( a.report, report.dump(), out );
    return code;
}

} // namespace

int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app( "Assume-guarantee certificates for lenses, machines and open ODEs", "agl" );
    app.require_subcommand( 1 );
    app.set_version_flag( "--version", AGL_VERSION );

    const unsigned jobs_default = default_jobs();

    CheckLensArgs cl;
    cl.jobs = jobs_default;
    auto* c_lens = app.add_subcommand( "check-lens", "Check a lens against source and target certificates" );
    c_lens->add_option( "lens", cl.lens_file, "Wiring file" )->required();
    c_lens->add_option( "certs", cl.cert_file, "Certificate file (source, then target)" )->required();
    c_lens->add_option( "--kappa", cl.kappa, "Slack for real lenses" )->capture_default_str();
    c_lens->add_option( "--lo", cl.lo, "Lower corner of the sample box" )->capture_default_str();
    c_lens->add_option( "--hi", cl.hi, "Upper corner of the sample box" )->capture_default_str();
    c_lens->add_option( "--grid", cl.grid, "Grid step" )->capture_default_str();
    c_lens->add_option( "--tol", cl.tol, "Tolerance" )->capture_default_str();
    c_lens->add_option( "--jobs", cl.jobs, "Worker threads (default $AGL_JOBS or 1)" );

    CheckMachineArgs cm;
    auto* c_machine = app.add_subcommand( "check-machine", "Check a machine against a certificate" );
    c_machine->add_option( "machine", cm.machine_file, "Machine file" )->required();
    c_machine->add_option( "cert", cm.cert_file, "Certificate file with states and phi" )->required();

    ComposeArgs co;
    auto* c_compose = app.add_subcommand( "compose", "Couple machines along a wiring" );
    c_compose->add_option( "wiring", co.wiring_file, "Wiring file" )->required();
    c_compose->add_option( "machines", co.machine_files, "Machine files" )->required();
    c_compose->add_option( "--certs", co.cert_files,
                           "Component certificates followed by the wiring's target certificate" );
    c_compose->add_option( "--name", co.name, "Name of the composite" )->capture_default_str();
    c_compose->add_option( "-o,--output", co.output, "Output file (default stdout)" );
    c_compose->add_option( "--report", co.report, "Write the JSON report here" );

    SubstArgs su;
    auto* c_subst = app.add_subcommand( "subst", "Pull a certificate back along a simulation" );
    c_subst->add_option( "simulation", su.simulation_file, "Simulation file" )->required();
    c_subst->add_option( "cert", su.cert_file, "Target certificate file" )->required();
    c_subst->add_option( "--machines", su.machine_files, "Files defining the machines the simulation names" );
    c_subst->add_option( "-o,--output", su.output, "Output file (default stdout)" );
    c_subst->add_option( "--report", su.report, "Write the JSON report here" );

    CheckLissArgs li;
    li.jobs = jobs_default;
    auto* c_liss = app.add_subcommand( "check-liss", "Check a LISS Lyapunov candidate on a grid" );
    c_liss->add_option( "ode", li.ode_file, "ODE file" )->required();
    c_liss->add_option( "candidate", li.cand_file, "Lyapunov candidate file" )->required();
    c_liss->add_option( "--grid", li.grid, "Grid step" )->capture_default_str();
    c_liss->add_option( "--tol", li.tol, "Tolerance" )->capture_default_str();
    c_liss->add_option( "--falsify", li.falsify_budget, "Evaluation budget for local search" )->capture_default_str();
    c_liss->add_option( "--jobs", li.jobs, "Worker threads (default $AGL_JOBS or 1)" );

    KApproxArgs ka;
    auto* c_kapprox = app.add_subcommand( "kapprox", "Sandwich a storage function between K functions" );
    c_kapprox->add_option( "ode", ka.ode_file, "ODE file (domain and equilibrium)" )->required();
    c_kapprox->add_option( "--phi", ka.phi, "Storage function expression" );
    c_kapprox->add_option( "--cand", ka.cand_file, "Take phi from this Lyapunov candidate file" );
    c_kapprox->add_option( "--radial-steps", ka.radial_steps, "Samples per axis half-width (overrides --grid)" );
    c_kapprox->add_option( "--grid", ka.grid, "Grid step" )->capture_default_str();
    c_kapprox->add_option( "-o,--output", ka.output, "Output file (default stdout)" );
    c_kapprox->add_option( "--report", ka.report, "Write the JSON report here" );

    SimulateArgs si;
    auto* c_sim = app.add_subcommand( "simulate", "Integrate an ODE with RK4 and write CSV" );
    c_sim->set_help_flag( "--help", "Print this help message and exit" ); // -h is the step
    c_sim->add_option( "ode", si.ode_file, "ODE file" )->required();
    c_sim->add_option( "--x0", si.x0, "Initial state, comma separated (default: equilibrium)" );
    c_sim->add_option( "--input", si.input, "Piecewise-constant input 't:v,...;t:v,...' (default: a0)" );
    c_sim->add_option( "--tend", si.t_end, "End time" )->capture_default_str();
    c_sim->add_option( "--h", si.h, "Step" )->capture_default_str();
    c_sim->add_option( "--tol", si.tol, "Tolerance for --check-bound" )->capture_default_str();
    c_sim->add_option( "--check-bound", si.bound, "k1 k2 k3 as PL functions" )->expected( 3 );
    c_sim->add_option( "-o,--output", si.output, "CSV file (default stdout)" );
    c_sim->add_option( "--report", si.report, "Write the JSON report here" );

    try
    {
        std::vector< std::string > reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e, out, err );
        return code == 0 ? exit_holds : exit_input_error;
    }

    try
    {
        if ( c_lens->parsed() )
            return check_lens( cl, out );
        if ( c_machine->parsed() )
            return check_machine( cm, out );
        if ( c_compose->parsed() )
            return compose( co, out );
        if ( c_subst->parsed() )
            return subst( su, out );
        if ( c_liss->parsed() )
            return check_liss( li, out );
        if ( c_kapprox->parsed() )
            return kapprox( ka, out );
        if ( c_sim->parsed() )
            return simulate_cmd( si, out );
    }
    catch ( const Error& e )
    {
        err << "agl: error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}

} // namespace agl::cli
