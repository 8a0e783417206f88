#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace agl::cli
{

enum ExitCode
{
    exit_holds = 0,
    exit_violated = 1,
    exit_input_error = 2,
};

// Runs `agl <args...>` (args excludes the program name). Artifacts and
// reports go to `out`, diagnostics to `err`.
int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace agl::cli
