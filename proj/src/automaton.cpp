#include "causa/automaton.hpp"

#include "causa/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace causa {

StateId AutomatonDraft::add_state(std::string name, bool is_bad)
{
    states.push_back(std::move(name));
    bad.push_back(is_bad);
    edges.emplace_back();
    return states.size() - 1;
}

void AutomatonDraft::add_edge(StateId from, Guard guard, StateId to)
{
    edges.at(from).push_back(Edge{std::move(guard), to});
}

namespace {

std::string state_label(const AutomatonDraft& d, StateId s)
{
    return s < d.states.size() ? d.states[s] : "#" + std::to_string(s);
}

// Structural checks that must pass before guards can be enumerated.
std::vector<Diagnostic> check_structure(const AutomatonDraft& d)
{
    std::vector<Diagnostic> out;
    auto add = [&](std::string rule, std::string subject, std::string message) {
        out.push_back(Diagnostic{std::move(rule), std::move(subject), std::move(message), std::nullopt});
    };

    std::set<std::string> seen_vars;
    for (const auto& v : d.vars) {
        if (!is_identifier(v))
            add("InvalidVariableName", v, "not an identifier");
        if (!seen_vars.insert(v).second)
            add("DuplicateVariable", v, "declared twice in the automaton scope");
    }
    if (seen_vars.size() > kMaxScopeSize)
        add("ScopeTooLarge", "", std::to_string(seen_vars.size()) + " variables exceed the limit of " +
                                     std::to_string(kMaxScopeSize));
    if (d.states.empty()) {
        add("NoStates", "", "an automaton needs at least one state");
        return out;
    }
    if (d.bad.size() != d.states.size() || d.edges.size() != d.states.size()) {
        add("MalformedAutomaton", "", "per-state tables do not match the state count");
        return out;
    }
    std::set<std::string> seen_states;
    for (const auto& s : d.states)
        if (!seen_states.insert(s).second)
            add("DuplicateState", s, "state declared twice");
    if (d.initial >= d.states.size())
        add("UnknownInitialState", "", "initial state index out of range");
    for (StateId s = 0; s < d.states.size(); ++s) {
        for (const auto& e : d.edges[s]) {
            if (e.target >= d.states.size())
                add("UnknownTargetState", d.states[s], "edge targets a state that does not exist");
            for (const auto& v : e.guard.variables())
                if (!seen_vars.contains(v))
                    add("UndeclaredVariable", d.states[s],
                        "guard '" + e.guard.to_string() + "' mentions undeclared variable '" + v + "'");
        }
    }
    return out;
}

} // namespace

std::vector<Diagnostic> check_wellformed(const AutomatonDraft& d)
{
    std::vector<Diagnostic> out = check_structure(d);
    if (!out.empty())
        return out;

    auto add = [&](std::string rule, StateId s, std::string message) {
        out.push_back(Diagnostic{std::move(rule), state_label(d, s), std::move(message), std::nullopt});
    };

    const VariableScope scope(d.vars);
    if (d.bad[d.initial])
        add("InitialBad", d.initial, "the initial state is bad, so the language would be empty");

    for (StateId s = 0; s < d.states.size(); ++s) {
        std::optional<Letter> overlap;
        std::optional<Letter> uncovered;
        for (Letter l = 0; l < scope.letter_count(); ++l) {
            std::size_t enabled = 0;
            for (const auto& e : d.edges[s])
                if (e.guard.evaluate(scope, l))
                    ++enabled;
            if (enabled > 1 && !overlap)
                overlap = l;
            if (enabled == 0 && !uncovered)
                uncovered = l;
        }
        if (overlap)
            add("NondeterministicState", s,
                "several outgoing guards hold for {" + scope.decode(*overlap).to_string() + "}");
        if (uncovered)
            add("IncompleteState", s, "no outgoing guard holds for {" + scope.decode(*uncovered).to_string() + "}");
        if (d.bad[s]) {
            for (const auto& e : d.edges[s]) {
                if (!d.bad[e.target]) {
                    add("BadNotAbsorbing", s, "bad state has an edge to good state '" + d.states[e.target] + "'");
                    break;
                }
            }
        }
    }
    return out;
}

SafetyAutomaton::SafetyAutomaton(AutomatonDraft draft) : draft_(std::move(draft))
{
    if (auto diagnostics = check_wellformed(draft_); !diagnostics.empty())
        throw ValidationError(std::move(diagnostics));
    scope_ = VariableScope(draft_.vars);
    draft_.vars = scope_.vars();

    const std::size_t letters = scope_.letter_count();
    next_.assign(state_count() * letters, 0);
    taken_.assign(state_count() * letters, 0);
    for (StateId s = 0; s < state_count(); ++s) {
        const auto& out = draft_.edges[s];
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (Letter l = 0; l < letters; ++l) {
                if (out[i].guard.evaluate(scope_, l)) {
                    next_[s * letters + l] = out[i].target;
                    taken_[s * letters + l] = i;
                }
            }
        }
    }
}

SafetyAutomaton SafetyAutomaton::universal(std::vector<std::string> vars)
{
    AutomatonDraft d;
    d.vars = std::move(vars);
    StateId s = d.add_state("top", false);
    d.add_edge(s, Guard::constant(true), s);
    return SafetyAutomaton(std::move(d));
}

std::size_t SafetyAutomaton::edge_count() const noexcept
{
    return std::accumulate(draft_.edges.begin(), draft_.edges.end(), std::size_t{0},
                           [](std::size_t n, const auto& es) { return n + es.size(); });
}

RunResult run(const SafetyAutomaton& a, const Trace& t)
{
    StateId s = a.initial();
    for (std::size_t i = 0; i < t.size(); ++i) {
        s = a.step(s, a.scope().encode(t[i]));
        if (a.is_bad(s))
            return RunResult{false, i};
    }
    return RunResult{true, std::nullopt};
}

SafetyAutomaton product(std::span<const SafetyAutomaton> automata)
{
    if (automata.empty())
        throw std::invalid_argument("product of an empty list of automata");

    VariableScope scope;
    for (const auto& a : automata)
        scope = VariableScope::unite(scope, a.scope());
    const std::size_t n = automata.size();
    std::vector<std::vector<Letter>> proj;
    for (const auto& a : automata)
        proj.push_back(scope.projection_onto(a.scope()));

    AutomatonDraft draft;
    draft.vars = scope.vars();
    std::map<std::vector<StateId>, StateId> index;
    std::vector<std::vector<StateId>> tuples;

    auto intern = [&](const std::vector<StateId>& tuple) {
        auto [it, inserted] = index.emplace(tuple, tuples.size());
        if (inserted) {
            std::string name = "(";
            bool bad = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (i)
                    name += ',';
                name += automata[i].state_name(tuple[i]);
                bad = bad || automata[i].is_bad(tuple[i]);
            }
            name += ')';
            tuples.push_back(tuple);
            draft.add_state(std::move(name), bad);
        }
        return it->second;
    };

    std::vector<StateId> init;
    for (const auto& a : automata)
        init.push_back(a.initial());
    draft.initial = intern(init);

    for (StateId cur = 0; cur < tuples.size(); ++cur) {
        const std::vector<StateId> tuple = tuples[cur];
        // One product edge per satisfiable combination of coordinate edges,
        // ordered lexicographically by edge index with the first input most significant.
        std::set<std::vector<std::size_t>> combos;
        for (Letter l = 0; l < scope.letter_count(); ++l) {
            std::vector<std::size_t> choice(n);
            for (std::size_t i = 0; i < n; ++i)
                choice[i] = automata[i].edge_taken(tuple[i], proj[i][l]);
            combos.insert(std::move(choice));
        }
        for (const auto& choice : combos) {
            std::vector<StateId> target(n);
            std::vector<Guard> conjuncts;
            for (std::size_t i = 0; i < n; ++i) {
                const Edge& e = automata[i].edges(tuple[i])[choice[i]];
                target[i] = e.target;
                if (!e.guard.is_true())
                    conjuncts.push_back(e.guard);
            }
            StateId t = intern(target);
            draft.add_edge(cur, Guard::conj(std::move(conjuncts)), t);
        }
    }
    return SafetyAutomaton(std::move(draft));
}

namespace {

struct PairSearch {
    const SafetyAutomaton& a;
    const SafetyAutomaton& b;
    VariableScope scope;
    std::vector<Letter> pa;
    std::vector<Letter> pb;

    PairSearch(const SafetyAutomaton& a_, const SafetyAutomaton& b_)
        : a(a_), b(b_), scope(VariableScope::unite(a_.scope(), b_.scope())), pa(scope.projection_onto(a_.scope())),
          pb(scope.projection_onto(b_.scope()))
    {
    }

    std::size_t key(StateId x, StateId y) const { return x * b.state_count() + y; }
};

} // namespace

ContainmentResult contains(const SafetyAutomaton& a, const SafetyAutomaton& b)
{
    PairSearch ps(a, b);
    const std::size_t none = static_cast<std::size_t>(-1);
    struct Visit {
        std::size_t parent;
        Letter letter;
        std::size_t depth;
    };
    std::vector<std::optional<Visit>> seen(a.state_count() * b.state_count());
    std::deque<std::pair<StateId, StateId>> queue;

    ContainmentResult result;
    seen[ps.key(a.initial(), b.initial())] = Visit{none, 0, 0};
    queue.emplace_back(a.initial(), b.initial());

    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        ++result.explored_pairs;
        const std::size_t here = ps.key(x, y);
        const std::size_t depth = seen[here]->depth;
        result.depth = std::max(result.depth, depth);
        for (Letter l = 0; l < ps.scope.letter_count(); ++l) {
            StateId nx = a.step(x, ps.pa[l]);
            if (a.is_bad(nx))
                continue;
            StateId ny = b.step(y, ps.pb[l]);
            const std::size_t k = ps.key(nx, ny);
            if (seen[k])
                continue;
            seen[k] = Visit{here, l, depth + 1};
            if (b.is_bad(ny)) {
                std::vector<Letter> letters;
                for (std::size_t cur = k; seen[cur]->parent != none; cur = seen[cur]->parent)
                    letters.push_back(seen[cur]->letter);
                std::reverse(letters.begin(), letters.end());
                Trace w(ps.scope.vars());
                for (Letter wl : letters)
                    w.push_back(ps.scope.decode(wl));
                result.holds = false;
                result.depth = depth + 1;
                result.witness = std::move(w);
                return result;
            }
            queue.emplace_back(nx, ny);
        }
    }
    return result;
}

std::optional<Trace> find_trace_at_length(const SafetyAutomaton& a, const SafetyAutomaton& b, std::size_t length,
                                          bool b_bad)
{
    PairSearch ps(a, b);
    struct Node {
        StateId x;
        StateId y;
        std::size_t parent;
        Letter letter;
    };
    std::vector<std::vector<Node>> layers(1);
    layers[0].push_back(Node{a.initial(), b.initial(), 0, 0});

    for (std::size_t depth = 0; depth < length; ++depth) {
        std::vector<Node> next;
        std::vector<bool> seen(a.state_count() * b.state_count(), false);
        const auto& layer = layers.back();
        for (std::size_t i = 0; i < layer.size(); ++i) {
            for (Letter l = 0; l < ps.scope.letter_count(); ++l) {
                StateId nx = a.step(layer[i].x, ps.pa[l]);
                if (a.is_bad(nx))
                    continue;
                StateId ny = b.step(layer[i].y, ps.pb[l]);
                if (seen[ps.key(nx, ny)])
                    continue;
                seen[ps.key(nx, ny)] = true;
                next.push_back(Node{nx, ny, i, l});
            }
        }
        if (next.empty())
            return std::nullopt;
        layers.push_back(std::move(next));
    }

    const auto& last = layers.back();
    for (std::size_t i = 0; i < last.size(); ++i) {
        if (b.is_bad(last[i].y) != b_bad)
            continue;
        std::vector<Letter> letters;
        std::size_t cur = i;
        for (std::size_t depth = length; depth > 0; --depth) {
            letters.push_back(layers[depth][cur].letter);
            cur = layers[depth][cur].parent;
        }
        std::reverse(letters.begin(), letters.end());
        Trace w(ps.scope.vars());
        for (Letter wl : letters)
            w.push_back(ps.scope.decode(wl));
        return w;
    }
    return std::nullopt;
}

bool has_trace_of_length(const SafetyAutomaton& a, std::size_t length)
{
    std::vector<bool> current(a.state_count(), false);
    current[a.initial()] = true;
    for (std::size_t depth = 0; depth < length; ++depth) {
        std::vector<bool> next(a.state_count(), false);
        bool any = false;
        for (StateId s = 0; s < a.state_count(); ++s) {
            if (!current[s])
                continue;
            for (Letter l = 0; l < a.scope().letter_count(); ++l) {
                StateId t = a.step(s, l);
                if (!a.is_bad(t)) {
                    next[t] = true;
                    any = true;
                }
            }
        }
        if (!any)
            return false;
        if (next == current)
            return true;
        current = std::move(next);
    }
    return true;
}

} // namespace causa
