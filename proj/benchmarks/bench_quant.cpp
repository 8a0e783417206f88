#include "agl/dsl.hpp"
#include "agl/ode.hpp"
#include "agl/quant_cert.hpp"

#include <benchmark/benchmark.h>

using namespace agl;

namespace
{

const char* linear_ode = R"(ode linear
dims 1 1 1
x0 0
a0 0
field
  -x1 + a1
view
  x1/2
domain
  x1 -2 2
  a1 -1 1
end
)";

const char* linear_lyap = R"(lyapunov quadratic
phi x1^2
alpha a1^2
gamma o1^2
lambda pl [(0,0)] slope 0
end
)";

void liss_grid( benchmark::State& state )
{
    const auto ode = std::get< OpenODE >( parse_document( linear_ode ).body );
    const auto cand = std::get< LyapunovCandidate >( parse_document( linear_lyap ).body );
    LissOptions opts;
    opts.jobs = static_cast< unsigned >( state.range( 0 ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( certify_liss( ode, cand, opts ) );
    state.SetItemsProcessed( state.iterations() * 401 * 201 );
}
BENCHMARK( liss_grid )->Arg( 1 )->Arg( 2 )->Arg( 4 )->UseRealTime()->Unit( benchmark::kMillisecond );

void sequential_lens( benchmark::State& state )
{
    const QuantLens lens{ 2, 2, 1, 1, { parse_expr( "o2" ) }, { parse_expr( "a1" ), parse_expr( "o1" ) } };
    const QuantCertificate src{ 2, 2, parse_expr( "2*o1^2 + o2^2" ), parse_expr( "a1^2 + a2^2" ) };
    const QuantCertificate dst{ 1, 1, parse_expr( "o1^2" ), parse_expr( "a1^2" ) };
    const auto plan = SamplePlan::cube( 3, -1.0, 1.0, 2.0 / static_cast< double >( state.range( 0 ) ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( certify_quant_lens( lens, src, dst, PLFun::identity(), plan ) );
    state.SetItemsProcessed( state.iterations() * static_cast< long >( plan.size() ) );
}
BENCHMARK( sequential_lens )->RangeMultiplier( 2 )->Range( 8, 64 )->Unit( benchmark::kMicrosecond );

void simulate_rk4( benchmark::State& state )
{
    const auto ode = std::get< OpenODE >( parse_document( linear_ode ).body );
    const double h = 1.0 / static_cast< double >( state.range( 0 ) );
    for ( auto _ : state )
        benchmark::DoNotOptimize( simulate( ode, { 1.0 }, InputSignal::constant( { 0.5 } ), 10.0, h ) );
    state.SetItemsProcessed( state.iterations() * 10 * state.range( 0 ) );
}
BENCHMARK( simulate_rk4 )->RangeMultiplier( 10 )->Range( 10, 1000 )->Unit( benchmark::kMicrosecond );

void parse_print( benchmark::State& state )
{
    const std::string text = std::string( linear_ode ) + "\n" + linear_lyap;
    for ( auto _ : state )
        benchmark::DoNotOptimize( print_documents( parse_documents( text ) ) );
}
BENCHMARK( parse_print );

} // namespace
