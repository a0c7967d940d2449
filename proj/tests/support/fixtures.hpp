#pragma once

#include "causa/automaton.hpp"
#include "causa/model.hpp"

#include <string>
#include <vector>

namespace causa::testing {

/// Two-state monitor over `vars` that goes bad the first time `var` is 1.
inline SafetyAutomaton always_zero(const std::string& var, std::vector<std::string> vars)
{
    AutomatonDraft d;
    d.vars = std::move(vars);
    StateId ok = d.add_state("ok", false);
    StateId err = d.add_state("err", true);
    d.add_edge(ok, Guard::negate(Guard::var(var)), ok);
    d.add_edge(ok, Guard::var(var), err);
    d.add_edge(err, Guard::constant(true), err);
    return SafetyAutomaton(std::move(d));
}

/// Monitor for "every listed variable is always 0".
inline SafetyAutomaton all_zero(const std::vector<std::string>& zeros, std::vector<std::string> vars)
{
    AutomatonDraft d;
    d.vars = std::move(vars);
    StateId ok = d.add_state("ok", false);
    StateId err = d.add_state("err", true);
    std::vector<Guard> lits;
    for (const auto& z : zeros)
        lits.push_back(Guard::negate(Guard::var(z)));
    Guard good = Guard::conj(lits);
    d.add_edge(ok, good, ok);
    d.add_edge(ok, Guard::negate(good).canonical(), err);
    d.add_edge(err, Guard::constant(true), err);
    return SafetyAutomaton(std::move(d));
}

/// A outputs x ("x always 0"); B reads x and outputs y ("y always 0");
/// the global requirement is "y always 0".
inline SystemModel fixture_ab()
{
    std::vector<VariableDecl> vars{{"x", "A"}, {"y", "B"}};
    std::vector<Component> comps;
    comps.push_back(Component{"A", {}, {"x"}, always_zero("x", {"x"})});
    comps.push_back(Component{"B", {"x"}, {"y"}, always_zero("y", {"x", "y"})});
    return SystemModel(std::move(vars), std::move(comps), always_zero("y", {"x", "y"}));
}

inline Trace global_trace(std::vector<std::string> vars, std::vector<Valuation> steps)
{
    return Trace(std::move(vars), std::move(steps));
}

inline Trace fixture_ab_error_trace() { return global_trace({"x", "y"}, {Valuation{{"x", true}, {"y", true}}}); }

inline constexpr const char* kFixtureAbJson = R"({
  "variables": [
    {"name": "x", "owner": "A"},
    {"name": "y", "owner": "B"}
  ],
  "components": [
    {"name": "A", "inputs": [], "outputs": ["x"],
     "spec": {"states": ["ok"], "initial": "ok", "bad": [],
              "edges": [{"from": "ok", "guard": "!x", "to": "ok"}]}},
    {"name": "B", "inputs": ["x"], "outputs": ["y"],
     "spec": {"states": ["ok"], "initial": "ok", "bad": [],
              "edges": [{"from": "ok", "guard": "!y", "to": "ok"}]}}
  ],
  "global_spec": {"states": ["ok"], "initial": "ok", "bad": [],
                  "edges": [{"from": "ok", "guard": "!y", "to": "ok"}]}
}
)";

} // namespace causa::testing
