// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "causa/cli.hpp"
#include "causa/engine.hpp"
#include "causa/model.hpp"
#include "causa/report.hpp"

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_systems.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace causa;
namespace oracle = causa::testing::oracle;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    int failures = 0;

    void expect(bool ok, const std::string& what)
    {
        if (ok)
            return;
        if (failures++ == 0)
            detail = what;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

std::vector<std::string> names_of(const SystemModel& m)
{
    std::vector<std::string> out;
    for (const auto& c : m.components())
        out.push_back(c.name);
    return out;
}

CandidateSet random_subset(testing::Rng& rng, const std::vector<std::string>& names)
{
    std::vector<std::string> pick;
    for (const auto& n : names)
        if (testing::coin(rng))
            pick.push_back(n);
    return CandidateSet(pick);
}

struct TempDir {
    fs::path dir;

    TempDir()
    {
        std::random_device rd;
        dir = fs::temp_directory_path() / ("causa_acceptance_" + std::to_string(rd()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(dir / name, std::ios::binary) << text;
        return (dir / name).string();
    }
};

std::pair<int, std::string> run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int status = cli::run(args, out, err);
    return {status, out.str() + "\x1f" + err.str()};
}

Outcome fixture_regression()
{
    Outcome o;
    const auto t0 = Clock::now();
    const SystemModel m = testing::fixture_ab();
    const Trace tr = testing::fixture_ab_error_trace();
    const auto asg = ModelAssignment::defaults(m);
    const auto& theta = m.global_spec().structure();
    const VariableScope scope(m.global_vars());

    o.expect(faulty_components(m, tr).faulty_names() == std::vector<std::string>{"A", "B"}, "faulty != {A, B}");

    const std::vector<CandidateSet> sets{CandidateSet{}, CandidateSet{"A"}, CandidateSet{"B"}, CandidateSet{"A", "B"}};
    for (const auto& d : sets) {
        // Literal enumeration of global traces up to length 3.
        bool oracle_mit = true, oracle_exists = false, oracle_all = true, realizable = false;
        const auto mit_in = oracle::mitigation_instance(m, tr, d, asg);
        const auto man_in = oracle::manifestation_instance(m, tr, d, asg);
        for (std::size_t len = 0; len <= 3; ++len) {
            oracle::for_each_word(scope, len, [&](const oracle::Word& w) {
                if (oracle::in_operand(mit_in, w) && !oracle::accepts(theta, w))
                    oracle_mit = false;
                if (oracle::in_operand(man_in, w) && !oracle::accepts(theta, w))
                    oracle_exists = true;
                if (len == tr.size() && oracle::in_operand(man_in, w)) {
                    realizable = true;
                    oracle_all = oracle_all && !oracle::accepts(theta, w);
                }
            });
        }
        const bool oracle_univ = realizable && oracle_all;
        const std::string tag = d.to_string();
        o.expect(mitigates(m, tr, d, asg).holds == oracle_mit, "mitigates " + tag);
        o.expect(manifests(m, tr, d, asg, Quantifier::Existential).holds == oracle_exists, "manifests/exists " + tag);
        o.expect(manifests(m, tr, d, asg, Quantifier::Universal).holds == oracle_univ, "manifests/forall " + tag);
        const bool expected = d.contains("B");
        o.expect(oracle_mit == expected && oracle_exists == expected && oracle_univ == expected,
                 "oracle value for " + tag);
    }
    const std::vector<CandidateSet> only_b{CandidateSet{"B"}};
    o.expect(enumerate_causal_sets(m, tr, Mode::Mitigation, asg, Quantifier::Existential).report.minimal == only_b,
             "minimal mitigating");
    for (auto q : {Quantifier::Existential, Quantifier::Universal})
        o.expect(enumerate_causal_sets(m, tr, Mode::Manifestation, asg, q).report.minimal == only_b,
                 "minimal manifesting");
    const double s = seconds_since(t0);
    o.expect(s < 1.0, "runtime " + fmt_seconds(s));
    if (o.pass)
        o.detail = "16 verdicts and 3 minimal sets match, " + fmt_seconds(s);
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    const auto t0 = Clock::now();
    testing::Rng rng(2024);
    std::set<FaultModelKind> seen;
    int systems = 0, verdicts = 0;
    while (systems < 1000) {
        const SystemModel m = testing::random_system(rng);
        const auto tr = testing::random_error_trace(rng, m, 3);
        if (!tr)
            continue;
        ++systems;
        const auto asg = testing::random_assignment(rng, m);
        for (const auto& [name, models] : asg.entries()) {
            seen.insert(models.cf_kind);
            seen.insert(models.fault_kind);
        }
        for (int k = 0; k < 2; ++k) {
            const CandidateSet d = random_subset(rng, names_of(m));
            const std::string tag = "system " + std::to_string(systems) + " set " + d.to_string();
            o.expect(mitigates(m, *tr, d, asg).holds == oracle::mitigates(m, *tr, d, asg), "mitigates, " + tag);
            for (auto q : {Quantifier::Existential, Quantifier::Universal})
                o.expect(manifests(m, *tr, d, asg, q).holds == oracle::manifests(m, *tr, d, asg, q),
                         "manifests " + std::string(to_string(q)) + ", " + tag);
            verdicts += 3;
        }
    }
    o.expect(seen.size() == kAllFaultModelKinds.size(), "not every fault-model kind was sampled");
    const double s = seconds_since(t0);
    o.expect(s < 60.0, "runtime " + fmt_seconds(s));
    if (o.pass)
        o.detail = std::to_string(systems) + " systems, " + std::to_string(verdicts) + " verdicts, " +
                   std::to_string(seen.size()) + " kinds, " + fmt_seconds(s);
    return o;
}

Outcome refinement_theorem()
{
    Outcome o;
    testing::Rng rng(7);
    testing::SystemShape shape;
    shape.refining = true;
    int systems = 0, traces = 0;
    while (systems < 500) {
        const SystemModel m = testing::random_system(rng, shape);
        if (!validate_system(m).empty())
            continue;
        std::vector<Trace> errors;
        for (int k = 0; k < 4; ++k)
            if (auto tr = testing::random_error_trace(rng, m, 3, 256))
                errors.push_back(*tr);
        if (errors.empty())
            continue;
        ++systems;
        ModelAssignment asg = testing::random_assignment(rng, m);
        for (const auto& c : m.components())
            asg.set_cf_kind(c.name, FaultModelKind::Spec);
        const CandidateSet all(names_of(m));
        for (const auto& tr : errors) {
            ++traces;
            o.expect(!manifests(m, tr, CandidateSet{}, asg, Quantifier::Existential).holds,
                     "empty set manifests, system " + std::to_string(systems));
            o.expect(mitigates(m, tr, all, asg).holds, "full set does not mitigate, system " + std::to_string(systems));
        }
    }
    if (o.pass)
        o.detail = std::to_string(systems) + " systems, " + std::to_string(traces) + " error traces";
    return o;
}

Outcome monotonicity()
{
    Outcome o;
    testing::Rng rng(99);
    int instances = 0, reports = 0;
    while (instances < 500) {
        const SystemModel m = testing::random_system(rng);
        const auto tr = testing::random_error_trace(rng, m, 3);
        if (!tr)
            continue;
        ModelAssignment asg = testing::random_assignment(rng, m);
        for (const auto& c : m.components())
            asg.set_fault_kind(c.name, FaultModelKind::Arbitrary);
        const auto names = names_of(m);
        for (int k = 0; k < 3; ++k) {
            const CandidateSet small = random_subset(rng, names);
            std::vector<std::string> wider = small.members();
            for (const auto& n : names)
                if (!small.contains(n) && testing::coin(rng))
                    wider.push_back(n);
            const CandidateSet large(wider);
            ++instances;
            if (mitigates(m, *tr, small, asg).holds)
                o.expect(mitigates(m, *tr, large, asg).holds, small.to_string() + " mitigates, " + large.to_string() +
                                                                 " does not");
        }
        o.expect(assignment_is_monotone(m, *tr, asg),
                 "ARBITRARY assignment not detected as monotone");
        for (bool minimal_only : {false, true}) {
            EnumerationOptions pruned{minimal_only, true, true, 1};
            EnumerationOptions full{minimal_only, true, false, 1};
            const auto a = enumerate_causal_sets(m, *tr, Mode::Mitigation, asg, Quantifier::Existential, pruned);
            const auto b = enumerate_causal_sets(m, *tr, Mode::Mitigation, asg, Quantifier::Existential, full);
            o.expect(a.report == b.report, "pruned and unpruned reports differ");
            o.expect(to_json(a.report).dump() == to_json(b.report).dump(), "pruned and unpruned documents differ");
            ++reports;
        }
    }
    if (o.pass)
        o.detail = std::to_string(instances) + " (D, D') instances, " + std::to_string(reports) + " report pairs";
    return o;
}

std::vector<std::string> random_vars(testing::Rng& rng)
{
    static const std::vector<std::string> pool{"a", "b", "c"};
    std::vector<std::string> vars;
    for (const auto& v : pool)
        if (testing::coin(rng))
            vars.push_back(v);
    return vars;
}

Outcome automata_core()
{
    Outcome o;
    testing::Rng rng(5);
    const std::vector<std::string> pool{"a", "b", "c"};
    constexpr int kCases = 1000;

    for (int i = 0; i < kCases; ++i) {
        std::vector<SafetyAutomaton> parts;
        const std::size_t n = testing::uniform(rng, 1, 3);
        for (std::size_t k = 0; k < n; ++k)
            parts.push_back(testing::random_automaton(rng, random_vars(rng), 4));
        const auto p = product(parts);
        const Trace t = testing::random_trace(rng, pool, testing::uniform(rng, 0, 6));
        bool all = true;
        for (const auto& a : parts)
            all = all && oracle::accepts(a.structure(), t.steps());
        o.expect(run(p, t).accepted == all, "product membership law");
    }

    for (int i = 0; i < kCases; ++i) {
        const auto a = testing::random_automaton(rng, pool, 4);
        Trace t = testing::random_trace(rng, pool, testing::uniform(rng, 1, 5));
        const auto r = run(a, t);
        Trace extended = t;
        const Trace tail = testing::random_trace(rng, pool, testing::uniform(rng, 1, 4));
        for (const auto& v : tail.steps())
            extended.push_back(v);
        if (!r.accepted)
            o.expect(run(a, extended) == r, "prefix-monotone rejection");
    }

    int witnesses = 0;
    for (int i = 0; i < kCases; ++i) {
        const auto a = testing::random_automaton(rng, random_vars(rng), 4);
        const auto b = testing::random_automaton(rng, random_vars(rng), 4);
        const std::size_t cutoff = a.state_count() * b.state_count();
        const auto r = contains(a, b);
        const auto expected = oracle::shortest_counterexample(a.structure(), b.structure(), cutoff);
        o.expect(r.holds == !expected.has_value(), "containment vs bounded enumeration");
        if (cutoff <= 4)
            o.expect(oracle::shortest_counterexample_literal(a.structure(), b.structure(), cutoff) == expected,
                     "literal enumeration disagrees");
        if (!r.holds) {
            ++witnesses;
            o.expect(r.witness && r.witness->size() == expected.value_or(0) &&
                         oracle::accepts(a.structure(), r.witness->steps()) &&
                         !oracle::accepts(b.structure(), r.witness->steps()),
                     "invalid witness");
        }
    }
    if (o.pass)
        o.detail = "3 x " + std::to_string(kCases) + " cases, " + std::to_string(witnesses) + " witnesses checked";
    return o;
}

Outcome determinism()
{
    Outcome o;
    testing::Rng rng(31);
    TempDir tmp;
    int analyzed = 0;
    for (int i = 0; i < 100; ++i) {
        const SystemModel m = testing::random_system(rng);
        const std::string once = serialize_system(m);
        const SystemModel back = parse_system(once);
        o.expect(serialize_system(back) == once, "serialize is not a fixpoint");
        o.expect(back.variables() == m.variables() && names_of(back) == names_of(m), "structure changed");
        for (std::size_t c = 0; c < m.components().size(); ++c) {
            const auto& a = m.components()[c].spec;
            const auto& b = back.components()[c].spec;
            o.expect(a.state_count() == b.state_count() && contains(a, b).holds && contains(b, a).holds,
                     "component spec changed");
        }
        o.expect(contains(m.global_spec(), back.global_spec()).holds &&
                     contains(back.global_spec(), m.global_spec()).holds,
                 "global spec changed");

        const auto tr = testing::random_error_trace(rng, m, 3);
        if (!tr || !validate_system(m).empty())
            continue;
        const auto sys = tmp.write("sys" + std::to_string(i) + ".json", once);
        const auto trf = tmp.write("tr" + std::to_string(i) + ".txt", serialize_trace(*tr));
        for (bool json : {false, true}) {
            std::vector<std::string> args{"analyze", sys, trf};
            if (json)
                args.push_back("--json");
            o.expect(run_cli(args) == run_cli(args), "analyze output differs between runs");
        }
        ++analyzed;
    }
    const auto sys = tmp.write("ab.json", testing::kFixtureAbJson);
    const auto trf = tmp.write("ab.trace", "x=1 y=1\n");
    const auto first = run_cli({"analyze", sys, trf});
    o.expect(first.first == cli::kOk && first == run_cli({"analyze", sys, trf}), "fixture analyze differs");
    if (o.pass)
        o.detail = "100 round trips, " + std::to_string(analyzed + 1) + " analyze pairs byte-identical";
    return o;
}

// Four components in a chain; Ci outputs xi and reads x(i-1). Each spec is
// "xi always 0" intersected with a random monitor, so the all-ones step makes
// every component faulty.
SystemModel benchmark_system(testing::Rng& rng)
{
    std::vector<VariableDecl> vars;
    std::vector<Component> comps;
    std::vector<std::string> outs;
    for (int i = 0; i < 4; ++i) {
        const std::string name = "C" + std::to_string(i);
        const std::string x = "x" + std::to_string(i);
        vars.push_back({x, name});
        outs.push_back(x);
        std::vector<std::string> inputs;
        std::vector<std::string> scope{x};
        if (i > 0) {
            inputs.push_back("x" + std::to_string(i - 1));
            scope.push_back(inputs.back());
        }
        std::vector<SafetyAutomaton> parts{testing::always_zero(x, scope), testing::random_automaton(rng, scope, 3)};
        comps.push_back(Component{name, inputs, {x}, product(parts)});
    }
    return SystemModel(std::move(vars), std::move(comps), testing::all_zero(outs, outs));
}

Outcome complexity()
{
    Outcome o;
    testing::Rng rng(4);
    TempDir tmp;
    SystemModel m = benchmark_system(rng);
    while (!validate_system(m).empty())
        m = benchmark_system(rng);
    const Trace tr = testing::global_trace({"x0", "x1", "x2", "x3"},
                                          {Valuation{{"x0", true}, {"x1", true}, {"x2", true}, {"x3", true}},
                                           Valuation{{"x0", false}, {"x1", true}, {"x2", false}, {"x3", false}}});
    const auto sys = tmp.write("bench.json", serialize_system(m));
    const auto trf = tmp.write("bench.trace", serialize_trace(tr));
    std::ostringstream out, err;
    const std::vector<std::string> args{"stats", "--json", sys, trf};
    o.expect(cli::run(args, out, err) == cli::kOk, "stats failed: " + err.str());
    if (!o.pass)
        return o;
    const auto doc = nlohmann::json::parse(out.str());
    const auto asg = ModelAssignment::defaults(m);
    int rows = 0;
    for (const auto& a : doc["analyses"]) {
        const Mode mode = parse_mode(a["mode"].get<std::string>());
        o.expect(a["candidates"] == 4, "k != 4");
        const std::size_t evaluated = a["evaluated"].get<std::size_t>();
        o.expect(evaluated <= 16, "more than 2^k evaluations");
        o.expect(evaluated + a["pruned"].get<std::size_t>() == 16, "evaluated + pruned != 2^k");
        o.expect(a["evaluations"].size() == evaluated, "evaluation rows != evaluated");
        for (const auto& e : a["evaluations"]) {
            const CandidateSet d(e["set"].get<std::vector<std::string>>());
            // Product of the factor sizes, built per component.
            std::size_t bound = 1;
            for (const auto& c : m.components()) {
                const auto& models = asg.at(c.name);
                const bool corrected = (mode == Mode::Mitigation) == d.contains(c.name);
                const auto kind = corrected ? models.cf_kind : models.fault_kind;
                bound *= build_fault_model(kind, c, project_trace(tr, c), tr.size()).state_count();
            }
            const auto op = mode == Mode::Mitigation ? mitigation_operand(m, tr, d, asg)
                                                     : manifestation_operand(m, tr, d, asg);
            const std::size_t states = e["states"].get<std::size_t>();
            o.expect(e["state_bound"].get<std::size_t>() == bound, "state bound mismatch for " + d.to_string());
            o.expect(states == op.state_count(), "reported states mismatch for " + d.to_string());
            o.expect(states <= bound, "states exceed product bound for " + d.to_string());
            ++rows;
        }
    }
    o.expect(doc["analyses"].size() == 2, "expected mitigation and manifestation analyses");
    if (o.pass)
        o.detail = "k=4, " + std::to_string(rows) + " evaluated operands within bounds";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"fixture AB regression", fixture_regression},
        {"oracle equivalence on random systems", oracle_equivalence},
        {"refinement soundness", refinement_theorem},
        {"mitigation monotonicity and pruning", monotonicity},
        {"automata core properties", automata_core},
        {"round trip and deterministic output", determinism},
        {"complexity statistics", complexity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ("
                  << o.detail;
        if (o.failures > 1)
            std::cout << "; " << o.failures << " failures";
        std::cout << ")\n";
    }
    return failed == 0 ? 0 : 1;
}
