#include "causa/cli.hpp"

#include "causa/engine.hpp"
#include "causa/error.hpp"
#include "causa/model.hpp"
#include "causa/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <variant>
#include <sstream>

namespace causa::cli {
namespace {

struct AnalysisConfig {
    std::string system_path;
    std::string trace_path;
    std::string mode = "both";
    std::string quantifier = "existential";
    std::vector<std::string> fault_overrides; // NAME=KIND, sets fault_kind
    std::vector<std::string> cf_overrides;    // NAME=KIND, sets cf_kind
    std::optional<std::size_t> horizon;
    bool minimal_only = false;
    bool allow_nonfaulty = false;
    bool json = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ReportJson error_json(const Error& e)
{
    ReportJson j = ReportJson::object();
    j["rule"] = std::string(to_string(e.kind()));
    j["subject"] = "";
    j["message"] = e.detail();
    if (e.where()) {
        j["line"] = e.where()->line;
        j["column"] = e.where()->column;
    }
    return j;
}

void emit(std::ostream& out, const ReportJson& j) { out << j.dump(2) << '\n'; }

void apply_overrides(ModelAssignment& asg, const SystemModel& m, const std::vector<std::string>& overrides, bool cf)
{
    for (const auto& o : overrides) {
        auto eq = o.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::Parse, "expected NAME=KIND, got '" + o + "'");
        const std::string name = o.substr(0, eq);
        const FaultModelKind kind = parse_fault_model_kind(o.substr(eq + 1));
        if (!m.has_component(name))
            throw Error(ErrorKind::UnknownComponent, "no component named '" + name + "'");
        if (cf)
            asg.set_cf_kind(name, kind);
        else
            asg.set_fault_kind(name, kind);
    }
}

int cmd_validate(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err)
{
    ReportJson doc = ReportJson::object();
    doc["schema_version"] = kReportSchemaVersion;
    std::vector<Diagnostic> diags;
    int status = kOk;
    try {
        SystemModel m = parse_system(read_file(cfg.system_path));
        diags = validate_system(m);
        status = diags.empty() ? kOk : kInvalid;
        print_diagnostics(err, diags);
    } catch (const ValidationError& e) {
        diags = e.diagnostics();
        status = kInvalid;
        print_diagnostics(err, diags);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (cfg.json) {
            doc["valid"] = false;
            doc["diagnostics"] = ReportJson::array({error_json(e)});
            emit(out, doc);
        }
        return kUsage;
    }
    if (cfg.json) {
        doc["valid"] = status == kOk;
        ReportJson list = ReportJson::array();
        for (const auto& d : diags)
            list.push_back(to_json(d));
        doc["diagnostics"] = std::move(list);
        emit(out, doc);
    } else if (status == kOk) {
        out << "ok: " << cfg.system_path << " refines its global specification\n";
    }
    return status;
}

struct Loaded {
    SystemModel model;
    Trace trace;
    ModelAssignment assignment;
    std::vector<Mode> modes;
    Quantifier quantifier;
};

// Parses and validates the inputs shared by analyze and stats. Returns an exit
// status on failure.
std::variant<Loaded, int> load(const AnalysisConfig& cfg, std::ostream& err)
{
    try {
        SystemModel m = parse_system(read_file(cfg.system_path));
        if (auto diags = validate_system(m); !diags.empty()) {
            print_diagnostics(err, diags);
            return kInvalid;
        }
        Trace tr = parse_trace(read_file(cfg.trace_path), m.global_vars());
        if (cfg.horizon) {
            if (*cfg.horizon > tr.size())
                throw Error(ErrorKind::HorizonMismatch, "horizon " + std::to_string(*cfg.horizon) +
                                                            " exceeds the trace length " + std::to_string(tr.size()));
            tr = tr.prefix(*cfg.horizon);
        }
        ModelAssignment asg = ModelAssignment::defaults(m);
        apply_overrides(asg, m, cfg.fault_overrides, false);
        apply_overrides(asg, m, cfg.cf_overrides, true);
        std::vector<Mode> modes;
        if (cfg.mode == "both")
            modes = {Mode::Mitigation, Mode::Manifestation};
        else
            modes = {parse_mode(cfg.mode)};
        Quantifier q = parse_quantifier(cfg.quantifier);
        return Loaded{std::move(m), std::move(tr), std::move(asg), std::move(modes), q};
    } catch (const ValidationError& e) {
        print_diagnostics(err, e.diagnostics());
        return kInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

ReportJson not_an_error_json(const ViolationReport& v)
{
    ReportJson doc = ReportJson::object();
    doc["schema_version"] = kReportSchemaVersion;
    doc["violation"] = to_json(v);
    ReportJson e = ReportJson::object();
    e["kind"] = "NotAnErrorTrace";
    e["message"] = "the trace satisfies the global specification";
    doc["error"] = std::move(e);
    return doc;
}

int cmd_analyze(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto loaded = load(cfg, err);
    if (auto* status = std::get_if<int>(&loaded))
        return *status;
    auto& in = std::get<Loaded>(loaded);

    const ViolationReport violations = faulty_components(in.model, in.trace);
    if (!violations.global_violation_index) {
        err << "error: NotAnErrorTrace: the trace satisfies the global specification\n";
        if (cfg.json)
            emit(out, not_an_error_json(violations));
        else
            print_violation_report(out, violations);
        return kNotAnError;
    }

    EnumerationOptions options;
    options.minimal_only = cfg.minimal_only;
    options.allow_nonfaulty = cfg.allow_nonfaulty;

    std::vector<CauseReport> reports;
    for (Mode mode : in.modes)
        reports.push_back(
            enumerate_causal_sets(in.model, in.trace, mode, in.assignment, in.quantifier, options).report);

    bool found = false;
    for (const auto& r : reports)
        found = found || !r.minimal.empty();

    if (cfg.json) {
        ReportJson doc = ReportJson::object();
        doc["schema_version"] = kReportSchemaVersion;
        doc["violation"] = to_json(violations);
        ReportJson analyses = ReportJson::array();
        for (const auto& r : reports)
            analyses.push_back(to_json(r));
        doc["analyses"] = std::move(analyses);
        emit(out, doc);
    } else {
        print_violation_report(out, violations);
        for (const auto& r : reports) {
            out << '\n';
            print_cause_report(out, r);
        }
    }
    return found ? kOk : kNoCause;
}

int cmd_stats(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto loaded = load(cfg, err);
    if (auto* status = std::get_if<int>(&loaded))
        return *status;
    auto& in = std::get<Loaded>(loaded);

    const ViolationReport violations = faulty_components(in.model, in.trace);
    if (!violations.global_violation_index) {
        err << "error: NotAnErrorTrace: the trace satisfies the global specification\n";
        if (cfg.json)
            emit(out, not_an_error_json(violations));
        return kNotAnError;
    }

    EnumerationOptions options;
    options.minimal_only = cfg.minimal_only;
    options.allow_nonfaulty = cfg.allow_nonfaulty;

    std::size_t global_states = in.model.global_spec().state_count();
    ReportJson doc = ReportJson::object();
    doc["schema_version"] = kReportSchemaVersion;
    doc["components"] = in.model.components().size();
    doc["global_spec_states"] = global_states;
    doc["horizon"] = in.trace.size();
    ReportJson analyses = ReportJson::array();
    if (!cfg.json)
        out << "components " << in.model.components().size() << ", global spec states " << global_states
            << ", horizon " << in.trace.size() << '\n';
    for (Mode mode : in.modes) {
        auto e = enumerate_causal_sets(in.model, in.trace, mode, in.assignment, in.quantifier, options);
        if (cfg.json) {
            ReportJson a = to_json(e.stats);
            a["mode"] = std::string(to_string(mode));
            a["quantifier"] =
                mode == Mode::Manifestation ? ReportJson(std::string(to_string(in.quantifier))) : ReportJson(nullptr);
            analyses.push_back(std::move(a));
        } else {
            out << '\n';
            print_stats(out, mode, e.stats);
        }
    }
    if (cfg.json) {
        doc["analyses"] = std::move(analyses);
        emit(out, doc);
    }
    return kOk;
}

void add_analysis_options(CLI::App& cmd, AnalysisConfig& cfg)
{
    cmd.add_option("system", cfg.system_path, "System description (JSON)")->required();
    cmd.add_option("trace", cfg.trace_path, "Error trace, one step per line")->required();
    cmd.add_option("--mode", cfg.mode, "mitigation, manifestation or both")
        ->check(CLI::IsMember({"mitigation", "manifestation", "both"}))
        ->capture_default_str();
    cmd.add_option("--quantifier", cfg.quantifier, "Manifestation quantifier: existential or universal")
        ->check(CLI::IsMember({"existential", "universal"}))
        ->capture_default_str();
    cmd.add_option("--model", cfg.fault_overrides, "NAME=KIND: fault model for NAME outside the candidate set")
        ->allow_extra_args(false);
    cmd.add_option("--cf", cfg.cf_overrides, "NAME=KIND: counterfactual model for NAME inside the candidate set")
        ->allow_extra_args(false);
    cmd.add_option("--horizon", cfg.horizon, "Analyse only the first N steps of the trace");
    cmd.add_flag("--minimal-only", cfg.minimal_only, "Report only the minimal causal sets");
    cmd.add_flag("--allow-nonfaulty", cfg.allow_nonfaulty, "Also consider components that conform to their spec");
    cmd.add_flag("--json", cfg.json, "Emit a JSON document");
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"causa: counterfactual blame analysis for component-based reactive systems", "causa"};
    app.require_subcommand(1);

    AnalysisConfig cfg;
    auto* validate = app.add_subcommand("validate", "Check a system file and its refinement obligation");
    validate->add_option("system", cfg.system_path, "System description (JSON)")->required();
    validate->add_flag("--json", cfg.json, "Emit a JSON diagnostic list");

    auto* analyze = app.add_subcommand("analyze", "Compute causal sets for an error trace");
    add_analysis_options(*analyze, cfg);
    auto* stats = app.add_subcommand("stats", "Report operand sizes and subset counts");
    add_analysis_options(*stats, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream eo;
        int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (validate->parsed())
            return cmd_validate(cfg, out, err);
        if (analyze->parsed())
            return cmd_analyze(cfg, out, err);
        return cmd_stats(cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace causa::cli
