#pragma once

#include "causa/automaton.hpp"
#include "causa/counterfactual.hpp"
#include "causa/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace causa {

/// A set of component names, kept sorted.
class CandidateSet {
public:
    CandidateSet() = default;
    CandidateSet(std::initializer_list<std::string> members);
    explicit CandidateSet(std::vector<std::string> members);

    const std::vector<std::string>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(std::string_view name) const;
    bool is_subset_of(const CandidateSet& other) const;
    /// "{A, B}"
    std::string to_string() const;

    friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
    /// Size first, then lexicographic member order.
    friend bool operator<(const CandidateSet& a, const CandidateSet& b);

private:
    std::vector<std::string> members_;
};

enum class Mode { Mitigation, Manifestation };
enum class Quantifier { Existential, Universal };

std::string_view to_string(Mode mode);
std::string_view to_string(Quantifier q);
/// Throw Error(Parse) on unknown names.
Mode parse_mode(std::string_view name);
Quantifier parse_quantifier(std::string_view name);

struct OperandStats {
    std::size_t states = 0;      // reachable product states
    std::size_t edges = 0;
    std::size_t state_bound = 0; // product of the fault-model state counts
    std::size_t search_depth = 0;

    friend bool operator==(const OperandStats&, const OperandStats&) = default;
};

struct Verdict {
    bool holds = false;
    /// Mitigation: a trace of the operand rejected by the global spec, when
    /// !holds. Manifestation: a violating operand trace, when holds.
    std::optional<Trace> witness;
    /// Mitigation: the operand has no trace of the error trace's length.
    /// Universal manifestation: same, in which case holds is false.
    /// Existential manifestation: always false.
    bool vacuous = false;
    OperandStats operand;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Language of global behaviours where members of `d` follow their cf_kind
/// model and every other component its fault_kind model. Throws UnknownComponent.
SafetyAutomaton mitigation_operand(const SystemModel& m, const Trace& tr, const CandidateSet& d,
                                   const ModelAssignment& asg);

/// Mirror image: members of `d` follow fault_kind, the others cf_kind.
SafetyAutomaton manifestation_operand(const SystemModel& m, const Trace& tr, const CandidateSet& d,
                                      const ModelAssignment& asg);

/// Holds iff every behaviour of the mitigation operand satisfies the global
/// spec, at every length. Throws NotAnErrorTrace.
Verdict mitigates(const SystemModel& m, const Trace& tr, const CandidateSet& d, const ModelAssignment& asg);

/// Existential: some operand behaviour violates the global spec.
/// Universal: the operand has a behaviour of length |tr|, and every such
/// behaviour violates the global spec. Throws NotAnErrorTrace.
Verdict manifests(const SystemModel& m, const Trace& tr, const CandidateSet& d, const ModelAssignment& asg,
                  Quantifier quantifier);

struct SetVerdict {
    CandidateSet set;
    Verdict verdict;

    friend bool operator==(const SetVerdict&, const SetVerdict&) = default;
};

struct CauseReport {
    Mode mode = Mode::Mitigation;
    std::optional<Quantifier> quantifier; // manifestation only
    ModelAssignment assignment;
    bool minimal_only = false;
    std::vector<std::string> candidates;
    std::vector<CandidateSet> all_satisfying; // empty when minimal_only
    std::vector<CandidateSet> minimal;
    std::vector<SetVerdict> verdicts; // one per minimal set
    std::vector<std::string> notes;

    friend bool operator==(const CauseReport&, const CauseReport&) = default;
};

struct EnumerationOptions {
    bool minimal_only = false;
    bool allow_nonfaulty = false;
    /// Skip work on supersets of satisfying sets when the predicate is
    /// monotone for the assignment. Never changes the report.
    bool prune = true;
    /// Predicate evaluations run concurrently within one cardinality layer.
    unsigned jobs = 1;
};

struct EnumerationStats {
    std::size_t universe = 0;
    std::size_t evaluated = 0;
    std::size_t pruned = 0;
    bool monotone = false;
    std::vector<SetVerdict> evaluations; // in evaluation order
};

struct Enumeration {
    CauseReport report;
    EnumerationStats stats;
};

/// Evaluates the mode predicate over subsets of the candidate universe (the
/// locally faulty components, or all components with allow_nonfaulty) by
/// cardinality, then lexicographically. Throws NotAnErrorTrace.
Enumeration enumerate_causal_sets(const SystemModel& m, const Trace& tr, Mode mode, const ModelAssignment& asg,
                                  Quantifier quantifier, const EnumerationOptions& options = {});

/// Drops every set that has a proper subset in the input, and duplicates;
/// the result is sorted by size then member order.
std::vector<CandidateSet> minimal_antichain(std::vector<CandidateSet> sets);

/// True iff for every component L(cf_kind model) ⊆ L(fault_kind model) on
/// this trace, which makes both the mitigation and the existential
/// manifestation predicates upward-closed in the candidate set.
bool assignment_is_monotone(const SystemModel& m, const Trace& tr, const ModelAssignment& asg);

} // namespace causa
