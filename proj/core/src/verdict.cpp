#include "agl/verdict.hpp"

namespace agl
{

std::string Counterexample::str() const
{
    std::string out = condition + " fails at " + point.str();
    if ( action )
        out += " with action " + action->str();
    return out;
}

std::string Verdict::str() const
{
    if ( holds )
        return "holds";
    return counterexample ? "fails: " + counterexample->str() : "fails";
}

} // namespace agl
