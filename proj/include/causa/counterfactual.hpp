#pragma once

#include "causa/automaton.hpp"
#include "causa/model.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace causa {

/// Catalog of per-component languages substituted during causal analysis.
enum class FaultModelKind {
    Spec,          // the component's own specification
    Arbitrary,     // every trace over the component's variables
    ObservedFull,  // the observed projection, then anything
    ObservedOut,   // the observed outputs (inputs free), then anything
    PrefixCorrect, // spec behaviours agreeing with the longest spec-conforming observed prefix
};

inline constexpr std::array kAllFaultModelKinds{FaultModelKind::Spec, FaultModelKind::Arbitrary,
                                                FaultModelKind::ObservedFull, FaultModelKind::ObservedOut,
                                                FaultModelKind::PrefixCorrect};

/// `spec`, `arbitrary`, `observed`, `observed-out`, `prefix-correct`.
std::string_view to_string(FaultModelKind kind);
/// Throws Error(Parse) on an unknown name.
FaultModelKind parse_fault_model_kind(std::string_view name);

struct ComponentModels {
    FaultModelKind cf_kind = FaultModelKind::Spec;           // used when the component is in the candidate set
    FaultModelKind fault_kind = FaultModelKind::ObservedOut; // used when it is not

    friend bool operator==(const ComponentModels&, const ComponentModels&) = default;
};

/// Heterogeneous fault-model assignment: one ComponentModels per component.
class ModelAssignment {
public:
    ModelAssignment() = default;
    /// Every component with the default pair (spec, observed-out).
    static ModelAssignment defaults(const SystemModel& m);
    /// Every component with the given pair.
    static ModelAssignment uniform(const SystemModel& m, ComponentModels models);

    /// Throws UnknownComponent for names outside the assignment.
    const ComponentModels& at(std::string_view component) const;
    void set_cf_kind(std::string_view component, FaultModelKind kind);
    void set_fault_kind(std::string_view component, FaultModelKind kind);

    const std::map<std::string, ComponentModels, std::less<>>& entries() const noexcept { return entries_; }

    friend bool operator==(const ModelAssignment&, const ModelAssignment&) = default;

private:
    ComponentModels& mutable_at(std::string_view component);
    std::map<std::string, ComponentModels, std::less<>> entries_;
};

/// Largest k such that the first k steps of the local trace conform to the
/// component's spec.
std::size_t longest_correct_prefix(const Component& c, const Trace& tr_local);

/// Builds the fault-model automaton over the component's variables.
/// `tr_local` is the error trace projected onto the component; the observed
/// and prefix-correct kinds require `horizon == tr_local.size()` and throw
/// HorizonMismatch otherwise.
SafetyAutomaton build_fault_model(FaultModelKind kind, const Component& c, const Trace& tr_local,
                                  std::size_t horizon);

} // namespace causa
