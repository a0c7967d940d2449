#pragma once

#include "causa/diagnostic.hpp"
#include "causa/guard.hpp"
#include "causa/trace.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace causa {

using StateId = std::size_t;

struct Edge {
    Guard guard;
    StateId target = 0;
};

/// Unchecked automaton structure, as read from a document or assembled by a
/// construction. Turned into a SafetyAutomaton once it passes check_wellformed.
struct AutomatonDraft {
    std::vector<std::string> vars;
    std::vector<std::string> states;
    StateId initial = 0;
    std::vector<bool> bad;                // per state
    std::vector<std::vector<Edge>> edges; // per state, outgoing

    StateId add_state(std::string name, bool is_bad);
    void add_edge(StateId from, Guard guard, StateId to);
};

/// Returns an empty list iff the draft is deterministic, complete, has
/// absorbing bad states and a good initial state. Determinism and completeness
/// are decided by enumerating every valuation of the variable scope.
std::vector<Diagnostic> check_wellformed(const AutomatonDraft& draft);

/// Deterministic complete automaton with absorbing bad states. Its language,
/// the words whose run never enters a bad state, is prefix-closed and
/// contains the empty word.
class SafetyAutomaton {
public:
    /// Throws ValidationError carrying the check_wellformed diagnostics.
    explicit SafetyAutomaton(AutomatonDraft draft);

    /// One good state with a `true` self-loop.
    static SafetyAutomaton universal(std::vector<std::string> vars);

    const VariableScope& scope() const noexcept { return scope_; }
    const std::vector<std::string>& vars() const noexcept { return scope_.vars(); }
    const AutomatonDraft& structure() const noexcept { return draft_; }

    std::size_t state_count() const noexcept { return draft_.states.size(); }
    std::size_t edge_count() const noexcept;
    StateId initial() const noexcept { return draft_.initial; }
    bool is_bad(StateId s) const { return draft_.bad[s]; }
    const std::string& state_name(StateId s) const { return draft_.states[s]; }
    std::span<const Edge> edges(StateId s) const { return draft_.edges[s]; }

    StateId step(StateId s, Letter letter) const { return next_[s * scope_.letter_count() + letter]; }
    /// Index into edges(s) of the unique edge enabled by `letter`.
    std::size_t edge_taken(StateId s, Letter letter) const { return taken_[s * scope_.letter_count() + letter]; }

private:
    AutomatonDraft draft_;
    VariableScope scope_;
    std::vector<StateId> next_;
    std::vector<std::size_t> taken_;
};

struct RunResult {
    bool accepted = true;
    std::optional<std::size_t> first_violation_index;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Simulates the unique run. Variables of the trace outside the automaton's
/// scope are ignored; missing ones raise DomainMismatch.
RunResult run(const SafetyAutomaton& a, const Trace& t);

/// Synchronous product over the union of the input scopes. States are the
/// reachable tuples (named "(s1,s2,...)"), a tuple is bad iff some coordinate
/// is, and every edge is the conjunction of one edge per input. Throws
/// std::invalid_argument on an empty input list.
SafetyAutomaton product(std::span<const SafetyAutomaton> automata);

struct ContainmentResult {
    bool holds = true;
    /// Shortest word in L(a) \ L(b), over the union scope; set iff !holds.
    std::optional<Trace> witness;
    std::size_t explored_pairs = 0;
    /// BFS depth reached (the witness length when one is found).
    std::size_t depth = 0;
};

/// Decides L(a) ⊆ L(b) over the union of both scopes by breadth-first search
/// of the synchronized product for a pair (good in a, bad in b).
ContainmentResult contains(const SafetyAutomaton& a, const SafetyAutomaton& b);

/// True iff some word of length exactly `length` is accepted.
bool has_trace_of_length(const SafetyAutomaton& a, std::size_t length);

/// Searches for a word of length exactly `length` accepted by `a` whose run in
/// `b` ends in a state with badness `b_bad`. The union scope is used and the
/// returned word is the first one found by layered BFS.
std::optional<Trace> find_trace_at_length(const SafetyAutomaton& a, const SafetyAutomaton& b,
                                          std::size_t length, bool b_bad);

} // namespace causa
