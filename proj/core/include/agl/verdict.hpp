#pragma once

#include "agl/symbol.hpp"

#include <optional>
#include <string>

namespace agl
{

// Where an exhaustive check failed. `condition` names the implication or
// equation that broke; `point` is the state or observation; `action` is set
// when the failure involves a particular action.
struct Counterexample
{
    std::string condition;
    Symbol point;
    std::optional< Symbol > action;

    [[nodiscard]] std::string str() const;
    friend bool operator==( const Counterexample&, const Counterexample& ) = default;
};

// Outcome of a finite (exhaustive) check. Checks enumerate in carrier order,
// so the counterexample is always the lexicographically smallest one.
struct Verdict
{
    bool holds = true;
    std::optional< Counterexample > counterexample;

    static Verdict pass() { return {}; }
    static Verdict fail( std::string condition, Symbol point, std::optional< Symbol > action = std::nullopt )
    {
        return { false, Counterexample{ std::move( condition ), std::move( point ), std::move( action ) } };
    }

    explicit operator bool() const { return holds; }
    [[nodiscard]] std::string str() const;
    friend bool operator==( const Verdict&, const Verdict& ) = default;
};

} // namespace agl
