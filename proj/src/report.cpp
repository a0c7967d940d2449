#include "causa/report.hpp"

#include <algorithm>
#include <iomanip>

namespace causa {

ReportJson to_json(const Trace& t)
{
    ReportJson steps = ReportJson::array();
    for (const auto& step : t.steps()) {
        ReportJson s = ReportJson::object();
        for (const auto& [name, value] : step.values())
            s[name] = value ? 1 : 0;
        steps.push_back(std::move(s));
    }
    return steps;
}

ReportJson to_json(const Diagnostic& d)
{
    ReportJson j = ReportJson::object();
    j["rule"] = d.rule;
    j["subject"] = d.subject;
    j["message"] = d.message;
    j["witness"] = d.witness ? to_json(*d.witness) : ReportJson(nullptr);
    return j;
}

ReportJson to_json(const ViolationReport& r)
{
    ReportJson j = ReportJson::object();
    j["global_violation_index"] = r.global_violation_index ? ReportJson(*r.global_violation_index) : ReportJson(nullptr);
    ReportJson faulty = ReportJson::array();
    for (const auto& [name, index] : r.faulty) {
        ReportJson f = ReportJson::object();
        f["component"] = name;
        f["first_violation_index"] = index;
        faulty.push_back(std::move(f));
    }
    j["faulty"] = std::move(faulty);
    return j;
}

namespace {

ReportJson set_json(const CandidateSet& s) { return ReportJson(s.members()); }

ReportJson sets_json(const std::vector<CandidateSet>& sets)
{
    ReportJson out = ReportJson::array();
    for (const auto& s : sets)
        out.push_back(set_json(s));
    return out;
}

ReportJson set_verdict_json(const SetVerdict& sv)
{
    ReportJson j = ReportJson::object();
    j["set"] = set_json(sv.set);
    const ReportJson verdict = to_json(sv.verdict);
    for (const auto& [key, value] : verdict.items())
        j[key] = value;
    return j;
}

std::string_view role_of(Mode mode)
{
    return mode == Mode::Mitigation ? "mitigating (necessary-style)" : "manifesting (sufficient-style)";
}

} // namespace

ReportJson to_json(const Verdict& v)
{
    ReportJson j = ReportJson::object();
    j["holds"] = v.holds;
    j["vacuous"] = v.vacuous;
    j["witness"] = v.witness ? to_json(*v.witness) : ReportJson(nullptr);
    ReportJson op = ReportJson::object();
    op["states"] = v.operand.states;
    op["edges"] = v.operand.edges;
    op["state_bound"] = v.operand.state_bound;
    op["search_depth"] = v.operand.search_depth;
    j["operand"] = std::move(op);
    return j;
}

ReportJson to_json(const ModelAssignment& a)
{
    ReportJson j = ReportJson::object();
    for (const auto& [name, models] : a.entries()) {
        ReportJson e = ReportJson::object();
        e["cf"] = std::string(to_string(models.cf_kind));
        e["fault"] = std::string(to_string(models.fault_kind));
        j[name] = std::move(e);
    }
    return j;
}

ReportJson to_json(const CauseReport& r)
{
    ReportJson j = ReportJson::object();
    j["mode"] = std::string(to_string(r.mode));
    j["role"] = std::string(role_of(r.mode));
    j["quantifier"] = r.quantifier ? ReportJson(std::string(to_string(*r.quantifier))) : ReportJson(nullptr);
    j["assignment"] = to_json(r.assignment);
    j["minimal_only"] = r.minimal_only;
    j["candidates"] = r.candidates;
    j["all_satisfying"] = r.minimal_only ? ReportJson(nullptr) : sets_json(r.all_satisfying);
    j["minimal"] = sets_json(r.minimal);
    ReportJson verdicts = ReportJson::array();
    for (const auto& sv : r.verdicts)
        verdicts.push_back(set_verdict_json(sv));
    j["verdicts"] = std::move(verdicts);
    j["notes"] = r.notes;
    return j;
}

ReportJson to_json(const EnumerationStats& s)
{
    ReportJson j = ReportJson::object();
    j["candidates"] = s.universe;
    j["subsets_total"] = std::size_t{1} << s.universe;
    j["evaluated"] = s.evaluated;
    j["pruned"] = s.pruned;
    j["monotone"] = s.monotone;
    ReportJson rows = ReportJson::array();
    for (const auto& sv : s.evaluations) {
        ReportJson row = ReportJson::object();
        row["set"] = set_json(sv.set);
        row["holds"] = sv.verdict.holds;
        row["vacuous"] = sv.verdict.vacuous;
        row["states"] = sv.verdict.operand.states;
        row["edges"] = sv.verdict.operand.edges;
        row["state_bound"] = sv.verdict.operand.state_bound;
        row["search_depth"] = sv.verdict.operand.search_depth;
        rows.push_back(std::move(row));
    }
    j["evaluations"] = std::move(rows);
    return j;
}

void print_diagnostics(std::ostream& os, const std::vector<Diagnostic>& diagnostics)
{
    for (const auto& d : diagnostics) {
        os << d.to_string() << '\n';
        if (d.witness) {
            os << "  witness:\n";
            for (std::size_t i = 0; i < d.witness->size(); ++i)
                os << "    " << i << ": " << (*d.witness)[i].to_string() << '\n';
        }
    }
}

void print_violation_report(std::ostream& os, const ViolationReport& r)
{
    os << "global violation: ";
    if (r.global_violation_index)
        os << "step " << *r.global_violation_index << '\n';
    else
        os << "none\n";
    os << "faulty components:";
    if (r.faulty.empty())
        os << " none";
    os << '\n';
    for (const auto& [name, index] : r.faulty)
        os << "  " << name << "  first local violation at step " << index << '\n';
}

void print_cause_report(std::ostream& os, const CauseReport& r)
{
    os << "analysis: " << to_string(r.mode);
    if (r.quantifier)
        os << " (" << to_string(*r.quantifier) << ")";
    os << ", " << role_of(r.mode) << '\n';

    std::size_t width = 9;
    for (const auto& [name, models] : r.assignment.entries())
        width = std::max(width, name.size());
    os << "  " << std::left << std::setw(static_cast<int>(width)) << "component" << "  "
       << std::setw(14) << "in set" << "not in set\n";
    for (const auto& [name, models] : r.assignment.entries())
        os << "  " << std::setw(static_cast<int>(width)) << name << "  " << std::setw(14)
           << to_string(models.cf_kind) << to_string(models.fault_kind) << '\n';
    os << std::right;

    os << "candidates: " << CandidateSet(r.candidates).to_string() << '\n';
    os << "minimal causal sets:";
    if (r.minimal.empty())
        os << " none";
    os << '\n';
    for (const auto& sv : r.verdicts) {
        os << "  " << sv.set.to_string() << "  operand " << sv.verdict.operand.states << " states / "
           << sv.verdict.operand.edges << " edges";
        if (sv.verdict.witness) {
            os << "  witness:";
            for (const auto& step : sv.verdict.witness->steps())
                os << " [" << step.to_string() << "]";
        }
        os << '\n';
    }
    if (!r.minimal_only) {
        os << "all satisfying sets:";
        if (r.all_satisfying.empty())
            os << " none";
        os << '\n';
        for (const auto& s : r.all_satisfying)
            os << "  " << s.to_string() << '\n';
    }
    for (const auto& n : r.notes)
        os << "note: " << n << '\n';
}

void print_stats(std::ostream& os, Mode mode, const EnumerationStats& s)
{
    os << "analysis: " << to_string(mode) << '\n';
    os << "  candidates " << s.universe << ", subsets " << (std::size_t{1} << s.universe) << ", evaluated "
       << s.evaluated << ", pruned " << s.pruned << (s.monotone ? " (monotone)" : "") << '\n';
    std::size_t width = 6;
    for (const auto& sv : s.evaluations)
        width = std::max(width, sv.set.to_string().size());
    os << "  " << std::left << std::setw(static_cast<int>(width)) << "set" << std::right << std::setw(7) << "holds"
       << std::setw(9) << "states" << std::setw(8) << "edges" << std::setw(8) << "bound" << std::setw(7) << "depth"
       << '\n';
    for (const auto& sv : s.evaluations) {
        const auto& op = sv.verdict.operand;
        os << "  " << std::left << std::setw(static_cast<int>(width)) << sv.set.to_string() << std::right
           << std::setw(7) << (sv.verdict.holds ? "yes" : "no") << std::setw(9) << op.states << std::setw(8)
           << op.edges << std::setw(8) << op.state_bound << std::setw(7) << op.search_depth << '\n';
    }
}

} // namespace causa
