#include "causa/counterfactual.hpp"

#include "causa/error.hpp"

#include <algorithm>

namespace causa {

std::string_view to_string(FaultModelKind kind)
{
    switch (kind) {
    case FaultModelKind::Spec: return "spec";
    case FaultModelKind::Arbitrary: return "arbitrary";
    case FaultModelKind::ObservedFull: return "observed";
    case FaultModelKind::ObservedOut: return "observed-out";
    case FaultModelKind::PrefixCorrect: return "prefix-correct";
    }
    return "?";
}

FaultModelKind parse_fault_model_kind(std::string_view name)
{
    for (auto kind : kAllFaultModelKinds)
        if (to_string(kind) == name)
            return kind;
    throw Error(ErrorKind::Parse, "unknown fault model kind '" + std::string(name) +
                                      "' (expected spec, arbitrary, observed, observed-out or prefix-correct)");
}

ModelAssignment ModelAssignment::defaults(const SystemModel& m) { return uniform(m, ComponentModels{}); }

ModelAssignment ModelAssignment::uniform(const SystemModel& m, ComponentModels models)
{
    ModelAssignment a;
    for (const auto& c : m.components())
        a.entries_.emplace(c.name, models);
    return a;
}

const ComponentModels& ModelAssignment::at(std::string_view component) const
{
    auto it = entries_.find(component);
    if (it == entries_.end())
        throw Error(ErrorKind::UnknownComponent, "no fault-model entry for component '" + std::string(component) + "'");
    return it->second;
}

ComponentModels& ModelAssignment::mutable_at(std::string_view component)
{
    auto it = entries_.find(component);
    if (it == entries_.end())
        throw Error(ErrorKind::UnknownComponent, "no component named '" + std::string(component) + "'");
    return it->second;
}

void ModelAssignment::set_cf_kind(std::string_view component, FaultModelKind kind)
{
    mutable_at(component).cf_kind = kind;
}

void ModelAssignment::set_fault_kind(std::string_view component, FaultModelKind kind)
{
    mutable_at(component).fault_kind = kind;
}

std::size_t longest_correct_prefix(const Component& c, const Trace& tr_local)
{
    auto r = run(c.spec, tr_local);
    return r.accepted ? tr_local.size() : *r.first_violation_index;
}

namespace {

// Chain obs0..obs{n-1} pinning `pinned` to the observed values, then a
// universal good state; leaving the cube at step k goes to bad.
SafetyAutomaton observation_chain(std::vector<std::string> vars, const std::vector<std::string>& pinned,
                                  const Trace& tr_local, std::size_t length)
{
    const VariableScope pin_scope(pinned);
    AutomatonDraft d;
    d.vars = std::move(vars);
    for (std::size_t k = 0; k < length; ++k)
        d.add_state("obs" + std::to_string(k), false);
    const StateId free = d.add_state("free", false);
    const StateId bad = d.add_state("bad", true);
    d.initial = 0;
    for (std::size_t k = 0; k < length; ++k) {
        const StateId next = k + 1 < length ? k + 1 : free;
        Guard cube = Guard::cube(pin_scope, pin_scope.encode(tr_local[k]));
        if (cube.is_true()) {
            d.add_edge(k, cube, next);
        } else {
            d.add_edge(k, cube, next);
            d.add_edge(k, Guard::negate(cube).canonical(), bad);
        }
    }
    d.add_edge(free, Guard::constant(true), free);
    d.add_edge(bad, Guard::constant(true), bad);
    return SafetyAutomaton(std::move(d));
}

} // namespace

SafetyAutomaton build_fault_model(FaultModelKind kind, const Component& c, const Trace& tr_local, std::size_t horizon)
{
    if (kind != FaultModelKind::Spec && kind != FaultModelKind::Arbitrary && horizon != tr_local.size())
        throw Error(ErrorKind::HorizonMismatch, "horizon " + std::to_string(horizon) + " differs from the " +
                                                    std::to_string(tr_local.size()) + "-step observation of '" +
                                                    c.name + "'");
    const std::vector<std::string> vars = c.variables();
    switch (kind) {
    case FaultModelKind::Spec: return c.spec;
    case FaultModelKind::Arbitrary: return SafetyAutomaton::universal(vars);
    case FaultModelKind::ObservedFull: return observation_chain(vars, vars, tr_local, horizon);
    case FaultModelKind::ObservedOut: return observation_chain(vars, c.outputs, tr_local, horizon);
    case FaultModelKind::PrefixCorrect: {
        const std::size_t p = longest_correct_prefix(c, tr_local);
        std::vector<SafetyAutomaton> parts{c.spec, observation_chain(vars, vars, tr_local, p)};
        return product(parts);
    }
    }
    throw Error(ErrorKind::Parse, "unhandled fault model kind");
}

} // namespace causa
