#include "causa/engine.hpp"

#include "causa/error.hpp"

#include <algorithm>
#include <future>
#include <limits>

namespace causa {

CandidateSet::CandidateSet(std::initializer_list<std::string> members) : CandidateSet(std::vector<std::string>(members))
{
}

CandidateSet::CandidateSet(std::vector<std::string> members) : members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool CandidateSet::contains(std::string_view name) const
{
    return std::binary_search(members_.begin(), members_.end(), name);
}

bool CandidateSet::is_subset_of(const CandidateSet& other) const
{
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::string CandidateSet::to_string() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i)
            out += ", ";
        out += members_[i];
    }
    return out + "}";
}

bool operator<(const CandidateSet& a, const CandidateSet& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a.members_ < b.members_;
}

std::string_view to_string(Mode mode) { return mode == Mode::Mitigation ? "mitigation" : "manifestation"; }

std::string_view to_string(Quantifier q) { return q == Quantifier::Existential ? "existential" : "universal"; }

Mode parse_mode(std::string_view name)
{
    if (name == "mitigation")
        return Mode::Mitigation;
    if (name == "manifestation")
        return Mode::Manifestation;
    throw Error(ErrorKind::Parse, "unknown mode '" + std::string(name) + "'");
}

Quantifier parse_quantifier(std::string_view name)
{
    if (name == "existential")
        return Quantifier::Existential;
    if (name == "universal")
        return Quantifier::Universal;
    throw Error(ErrorKind::Parse, "unknown quantifier '" + std::string(name) + "'");
}

namespace {

struct Operand {
    SafetyAutomaton automaton;
    std::size_t state_bound;
};

// `corrected` selects which components use cf_kind.
template <class Corrected>
Operand build_operand(const SystemModel& m, const Trace& tr, const CandidateSet& d, const ModelAssignment& asg,
                      Corrected&& corrected)
{
    for (const auto& name : d.members())
        if (!m.has_component(name))
            throw Error(ErrorKind::UnknownComponent, "candidate set names unknown component '" + name + "'");
    std::vector<SafetyAutomaton> parts;
    std::size_t bound = 1;
    for (const auto& c : m.components()) {
        const auto& models = asg.at(c.name);
        const FaultModelKind kind = corrected(d.contains(c.name)) ? models.cf_kind : models.fault_kind;
        parts.push_back(build_fault_model(kind, c, project_trace(tr, c), tr.size()));
        const std::size_t q = parts.back().state_count();
        bound = bound > std::numeric_limits<std::size_t>::max() / q ? std::numeric_limits<std::size_t>::max()
                                                                    : bound * q;
    }
    return Operand{product(parts), bound};
}

void require_error_trace(const SystemModel& m, const Trace& tr)
{
    if (violates_global(m, tr).accepted)
        throw Error(ErrorKind::NotAnErrorTrace, "the trace satisfies the global specification");
}

OperandStats stats_of(const Operand& op, std::size_t depth)
{
    return OperandStats{op.automaton.state_count(), op.automaton.edge_count(), op.state_bound, depth};
}

} // namespace

SafetyAutomaton mitigation_operand(const SystemModel& m, const Trace& tr, const CandidateSet& d,
                                   const ModelAssignment& asg)
{
    return build_operand(m, tr, d, asg, [](bool in_set) { return in_set; }).automaton;
}

SafetyAutomaton manifestation_operand(const SystemModel& m, const Trace& tr, const CandidateSet& d,
                                      const ModelAssignment& asg)
{
    return build_operand(m, tr, d, asg, [](bool in_set) { return !in_set; }).automaton;
}

Verdict mitigates(const SystemModel& m, const Trace& tr, const CandidateSet& d, const ModelAssignment& asg)
{
    require_error_trace(m, tr);
    Operand op = build_operand(m, tr, d, asg, [](bool in_set) { return in_set; });
    auto containment = contains(op.automaton, m.global_spec());
    Verdict v;
    v.holds = containment.holds;
    v.witness = std::move(containment.witness);
    v.vacuous = !has_trace_of_length(op.automaton, tr.size());
    v.operand = stats_of(op, containment.depth);
    return v;
}

Verdict manifests(const SystemModel& m, const Trace& tr, const CandidateSet& d, const ModelAssignment& asg,
                  Quantifier quantifier)
{
    require_error_trace(m, tr);
    Operand op = build_operand(m, tr, d, asg, [](bool in_set) { return !in_set; });
    Verdict v;
    if (quantifier == Quantifier::Existential) {
        auto containment = contains(op.automaton, m.global_spec());
        v.holds = !containment.holds;
        v.witness = std::move(containment.witness);
        v.operand = stats_of(op, containment.depth);
        return v;
    }
    v.operand = stats_of(op, tr.size());
    if (!has_trace_of_length(op.automaton, tr.size())) {
        v.vacuous = true;
        return v;
    }
    const bool some_conforming = find_trace_at_length(op.automaton, m.global_spec(), tr.size(), false).has_value();
    v.holds = !some_conforming;
    if (v.holds)
        v.witness = find_trace_at_length(op.automaton, m.global_spec(), tr.size(), true);
    return v;
}

std::vector<CandidateSet> minimal_antichain(std::vector<CandidateSet> sets)
{
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<CandidateSet> out;
    for (const auto& s : sets) {
        // Sorted by size, so any proper subset is already in `out` or dominated by it.
        bool dominated = std::any_of(out.begin(), out.end(), [&](const CandidateSet& m) { return m.is_subset_of(s); });
        if (!dominated)
            out.push_back(s);
    }
    return out;
}

bool assignment_is_monotone(const SystemModel& m, const Trace& tr, const ModelAssignment& asg)
{
    for (const auto& c : m.components()) {
        const auto& models = asg.at(c.name);
        if (models.cf_kind == models.fault_kind)
            continue;
        const Trace local = project_trace(tr, c);
        auto cf = build_fault_model(models.cf_kind, c, local, tr.size());
        auto fault = build_fault_model(models.fault_kind, c, local, tr.size());
        if (!contains(cf, fault).holds)
            return false;
    }
    return true;
}

namespace {

// Index combinations of `size` out of `n`, in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t size)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(size);
    for (std::size_t i = 0; i < size; ++i)
        cur[i] = i;
    if (size > n)
        return out;
    while (true) {
        out.push_back(cur);
        std::size_t i = size;
        while (i > 0 && cur[i - 1] == n - size + (i - 1))
            --i;
        if (i == 0)
            return out;
        ++cur[i - 1];
        for (std::size_t j = i; j < size; ++j)
            cur[j] = cur[j - 1] + 1;
    }
}

} // namespace

Enumeration enumerate_causal_sets(const SystemModel& m, const Trace& tr, Mode mode, const ModelAssignment& asg,
                                  Quantifier quantifier, const EnumerationOptions& options)
{
    require_error_trace(m, tr);
    const ViolationReport violations = faulty_components(m, tr);

    Enumeration result;
    CauseReport& report = result.report;
    EnumerationStats& stats = result.stats;
    report.mode = mode;
    if (mode == Mode::Manifestation)
        report.quantifier = quantifier;
    report.assignment = asg;
    report.minimal_only = options.minimal_only;

    if (options.allow_nonfaulty) {
        for (const auto& c : m.components())
            report.candidates.push_back(c.name);
    } else {
        report.candidates = violations.faulty_names();
    }
    std::sort(report.candidates.begin(), report.candidates.end());
    const std::size_t k = report.candidates.size();
    stats.universe = k;

    const bool monotone_shape = mode == Mode::Mitigation || quantifier == Quantifier::Existential;
    stats.monotone = monotone_shape && assignment_is_monotone(m, tr, asg);
    const bool pruning = options.prune && stats.monotone;

    auto evaluate = [&](const CandidateSet& d) {
        return mode == Mode::Mitigation ? mitigates(m, tr, d, asg) : manifests(m, tr, d, asg, quantifier);
    };

    std::vector<CandidateSet> satisfying;
    for (std::size_t size = 0; size <= k; ++size) {
        std::vector<CandidateSet> pending;
        for (const auto& idx : combinations(k, size)) {
            std::vector<std::string> names;
            for (auto i : idx)
                names.push_back(report.candidates[i]);
            CandidateSet d(std::move(names));
            const bool implied = pruning && std::any_of(satisfying.begin(), satisfying.end(),
                                                        [&](const CandidateSet& s) { return s.is_subset_of(d); });
            if (implied) {
                ++stats.pruned;
                if (!options.minimal_only)
                    satisfying.push_back(std::move(d));
                continue;
            }
            pending.push_back(std::move(d));
        }

        std::vector<Verdict> verdicts;
        if (options.jobs <= 1) {
            for (const auto& d : pending)
                verdicts.push_back(evaluate(d));
        } else {
            for (std::size_t start = 0; start < pending.size(); start += options.jobs) {
                const std::size_t end = std::min(pending.size(), start + options.jobs);
                std::vector<std::future<Verdict>> futures;
                for (std::size_t i = start; i < end; ++i)
                    futures.push_back(std::async(std::launch::async, evaluate, std::cref(pending[i])));
                for (auto& f : futures)
                    verdicts.push_back(f.get());
            }
        }
        // Merge in enumeration order; pruning for the next layer reads only merged results.
        for (std::size_t i = 0; i < pending.size(); ++i) {
            ++stats.evaluated;
            if (verdicts[i].holds)
                satisfying.push_back(pending[i]);
            stats.evaluations.push_back(SetVerdict{pending[i], std::move(verdicts[i])});
        }
    }

    report.minimal = minimal_antichain(satisfying);
    if (!options.minimal_only) {
        std::sort(satisfying.begin(), satisfying.end());
        report.all_satisfying = std::move(satisfying);
    }
    for (const auto& s : report.minimal) {
        auto it = std::find_if(stats.evaluations.begin(), stats.evaluations.end(),
                               [&](const SetVerdict& sv) { return sv.set == s; });
        report.verdicts.push_back(*it);
    }

    if (violations.faulty.empty())
        report.notes.push_back("EnvironmentOnly: no component violates its local specification");
    report.notes.push_back("complexity: at most 2^" + std::to_string(k) + " = " + std::to_string(std::size_t{1} << k) +
                           " predicate evaluations, each over a product of " +
                           std::to_string(m.components().size()) + " fault-model automata");
    if (stats.monotone)
        report.notes.push_back("monotone: the predicate is upward-closed under this assignment");
    return result;
}

} // namespace causa
