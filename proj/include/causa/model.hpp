#pragma once

#include "causa/automaton.hpp"
#include "causa/diagnostic.hpp"
#include "causa/trace.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace causa {

/// Owner name used for environment (free input) variables.
inline constexpr std::string_view kEnvironmentOwner = "env";

struct VariableDecl {
    std::string name;
    std::string owner; // component name or "env"

    friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

struct Component {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    SafetyAutomaton spec; // over inputs ∪ outputs

    /// inputs ∪ outputs in name order.
    std::vector<std::string> variables() const;
};

class SystemModel {
public:
    /// Validates the structural invariants; throws ValidationError listing
    /// every violation found.
    SystemModel(std::vector<VariableDecl> variables, std::vector<Component> components, SafetyAutomaton global_spec);

    const std::vector<VariableDecl>& variables() const noexcept { return variables_; }
    const std::vector<Component>& components() const noexcept { return components_; }
    const SafetyAutomaton& global_spec() const noexcept { return global_spec_; }

    /// Every declared variable, in name order.
    const std::vector<std::string>& global_vars() const noexcept { return global_vars_; }
    std::vector<std::string> environment_vars() const;

    /// Throws UnknownComponent.
    const Component& component(std::string_view name) const;
    bool has_component(std::string_view name) const;

private:
    std::vector<VariableDecl> variables_;
    std::vector<Component> components_;
    SafetyAutomaton global_spec_;
    std::vector<std::string> global_vars_;
};

/// Reads the JSON system document. Throws Error(Parse) on syntax errors,
/// Error(Schema) on missing or mistyped fields and unknown state references,
/// ValidationError when an automaton or the system breaks an invariant.
SystemModel parse_system(std::string_view document);

/// Byte-deterministic JSON rendering, readable by parse_system.
std::string serialize_system(const SystemModel& m);

/// Refinement obligation: the product of every component spec must be
/// contained in the global spec. Empty iff it holds; otherwise a single
/// RefinementViolation diagnostic carrying the containment witness.
std::vector<Diagnostic> validate_system(const SystemModel& m);

/// One step per line of whitespace-separated `var=0|1` tokens; lines whose
/// first non-blank character is `#`, and blank lines, are skipped.
Trace parse_trace(std::string_view document, std::span<const std::string> vars);
std::string serialize_trace(const Trace& t);

/// Stepwise restriction to the component's variables; length preserved.
Trace project_trace(const Trace& t, const Component& c);

RunResult violates_global(const SystemModel& m, const Trace& t);

struct ViolationReport {
    std::optional<std::size_t> global_violation_index;
    std::vector<std::pair<std::string, std::size_t>> faulty; // component, first local violation

    std::vector<std::string> faulty_names() const;
};

ViolationReport faulty_components(const SystemModel& m, const Trace& t);

} // namespace causa
