#include "causa/model.hpp"

#include "causa/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace causa {

using Json = nlohmann::ordered_json;

std::vector<std::string> Component::variables() const
{
    std::vector<std::string> all = inputs;
    all.insert(all.end(), outputs.begin(), outputs.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

namespace {

void add(std::vector<Diagnostic>& out, std::string rule, std::string subject, std::string message)
{
    out.push_back(Diagnostic{std::move(rule), std::move(subject), std::move(message), std::nullopt});
}

bool has_duplicates(std::vector<std::string> names)
{
    std::sort(names.begin(), names.end());
    return std::adjacent_find(names.begin(), names.end()) != names.end();
}

} // namespace

SystemModel::SystemModel(std::vector<VariableDecl> variables, std::vector<Component> components,
                         SafetyAutomaton global_spec)
    : variables_(std::move(variables)), components_(std::move(components)), global_spec_(std::move(global_spec))
{
    std::vector<Diagnostic> diags;

    if (components_.empty())
        add(diags, "NoComponents", "", "a system needs at least one component");

    std::set<std::string> component_names;
    for (const auto& c : components_) {
        if (!is_identifier(c.name))
            add(diags, "InvalidName", c.name, "component name is not an identifier");
        if (c.name == kEnvironmentOwner)
            add(diags, "ReservedName", c.name, "'env' is reserved for environment variables");
        if (!component_names.insert(c.name).second)
            add(diags, "DuplicateComponent", c.name, "component declared twice");
    }

    std::map<std::string, std::string> owner_of;
    for (const auto& v : variables_) {
        if (!is_identifier(v.name))
            add(diags, "InvalidVariableName", v.name, "not an identifier");
        if (!owner_of.emplace(v.name, v.owner).second)
            add(diags, "DuplicateVariable", v.name, "variable declared twice");
        if (v.owner != kEnvironmentOwner && !component_names.contains(v.owner))
            add(diags, "UnknownOwner", v.name, "owner '" + v.owner + "' is neither a component nor 'env'");
        global_vars_.push_back(v.name);
    }
    std::sort(global_vars_.begin(), global_vars_.end());
    global_vars_.erase(std::unique(global_vars_.begin(), global_vars_.end()), global_vars_.end());

    std::map<std::string, std::string> driver;
    for (const auto& c : components_) {
        if (has_duplicates(c.inputs))
            add(diags, "DuplicateInput", c.name, "an input is listed twice");
        if (has_duplicates(c.outputs))
            add(diags, "DuplicateOutput", c.name, "an output is listed twice");
        for (const auto& in : c.inputs) {
            if (!owner_of.contains(in))
                add(diags, "UndeclaredVariable", c.name, "input '" + in + "' is not a declared variable");
            if (std::find(c.outputs.begin(), c.outputs.end(), in) != c.outputs.end())
                add(diags, "InputOutputOverlap", c.name, "'" + in + "' is both an input and an output");
        }
        for (const auto& out : c.outputs) {
            auto it = owner_of.find(out);
            if (it == owner_of.end()) {
                add(diags, "UndeclaredVariable", c.name, "output '" + out + "' is not a declared variable");
                continue;
            }
            auto [d, fresh] = driver.emplace(out, c.name);
            if (!fresh)
                add(diags, "OutputOverlap", c.name,
                    "output '" + out + "' is already driven by component '" + d->second + "'");
            if (it->second != c.name)
                add(diags, "OwnerMismatch", c.name,
                    "output '" + out + "' is declared with owner '" + it->second + "'");
        }
        if (c.spec.vars() != c.variables())
            add(diags, "SpecScopeMismatch", c.name, "spec variables differ from inputs ∪ outputs");
    }
    for (const auto& v : variables_) {
        if (v.owner == kEnvironmentOwner || !component_names.contains(v.owner))
            continue;
        const auto& c = *std::find_if(components_.begin(), components_.end(),
                                      [&](const Component& x) { return x.name == v.owner; });
        if (std::find(c.outputs.begin(), c.outputs.end(), v.name) == c.outputs.end())
            add(diags, "UndrivenOutput", v.name, "owned by '" + v.owner + "' but not among its outputs");
    }
    if (global_spec_.vars() != global_vars_)
        add(diags, "GlobalScopeMismatch", "global_spec", "global spec variables differ from the declared variables");

    if (!diags.empty())
        throw ValidationError(std::move(diags));
}

std::vector<std::string> SystemModel::environment_vars() const
{
    std::vector<std::string> out;
    for (const auto& v : variables_)
        if (v.owner == kEnvironmentOwner)
            out.push_back(v.name);
    std::sort(out.begin(), out.end());
    return out;
}

const Component& SystemModel::component(std::string_view name) const
{
    for (const auto& c : components_)
        if (c.name == name)
            return c;
    throw Error(ErrorKind::UnknownComponent, "no component named '" + std::string(name) + "'");
}

bool SystemModel::has_component(std::string_view name) const
{
    return std::any_of(components_.begin(), components_.end(), [&](const Component& c) { return c.name == name; });
}

namespace {

SourceLocation location_of(std::string_view text, std::size_t offset)
{
    SourceLocation loc;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

// Offsets of the string values of every "guard" key, in document order.
std::vector<std::size_t> guard_value_offsets(std::string_view text)
{
    std::vector<std::size_t> out;
    auto skip_ws = [&](std::size_t i) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r'))
            ++i;
        return i;
    };
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '"') {
            ++i;
            continue;
        }
        std::size_t start = i + 1;
        std::size_t j = start;
        while (j < text.size() && text[j] != '"')
            j += text[j] == '\\' ? 2 : 1;
        std::string_view literal = text.substr(start, std::min(j, text.size()) - start);
        i = j + 1;
        if (literal != "guard")
            continue;
        std::size_t k = skip_ws(i);
        if (k < text.size() && text[k] == ':') {
            k = skip_ws(k + 1);
            if (k < text.size() && text[k] == '"')
                out.push_back(k + 1);
        }
    }
    return out;
}

class SystemReader {
public:
    explicit SystemReader(std::string_view text) : text_(text)
    {
        try {
            doc_ = Json::parse(text);
        } catch (const Json::parse_error& e) {
            std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
            std::string msg = e.what();
            if (auto pos = msg.find("syntax error"); pos != std::string::npos)
                msg = msg.substr(pos);
            throw Error(ErrorKind::Parse, msg, location_of(text, byte));
        }
        number_guards(doc_);
        guard_offsets_ = guard_value_offsets(text);
    }

    SystemModel read()
    {
        expect_object(doc_, "document", {"variables", "components", "global_spec"});

        std::vector<VariableDecl> variables;
        for (const auto& v : array_field(doc_, "variables", "document")) {
            expect_object(v, "variable", {"name", "owner"});
            variables.push_back(VariableDecl{string_field(v, "name", "variable"), string_field(v, "owner", "variable")});
        }

        std::vector<Diagnostic> diags;
        std::vector<Component> components;
        std::size_t ci = 0;
        for (const auto& c : array_field(doc_, "components", "document")) {
            const std::string where = "components[" + std::to_string(ci++) + "]";
            expect_object(c, where, {"name", "inputs", "outputs", "spec"});
            std::string name = string_field(c, "name", where);
            auto inputs = string_list(c, "inputs", where);
            auto outputs = string_list(c, "outputs", where);
            std::vector<std::string> scope = inputs;
            scope.insert(scope.end(), outputs.begin(), outputs.end());
            std::sort(scope.begin(), scope.end());
            scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
            auto spec = read_automaton(field(c, "spec", where), scope, name, diags);
            if (spec)
                components.push_back(Component{std::move(name), std::move(inputs), std::move(outputs), std::move(*spec)});
        }

        std::vector<std::string> all;
        for (const auto& v : variables)
            all.push_back(v.name);
        auto global = read_automaton(field(doc_, "global_spec", "document"), all, "global_spec", diags);
        if (!diags.empty())
            throw ValidationError(std::move(diags));
        return SystemModel(std::move(variables), std::move(components), std::move(*global));
    }

private:
    [[noreturn]] static void schema(const std::string& message) { throw Error(ErrorKind::Schema, message); }

    void number_guards(const Json& j)
    {
        if (j.is_object()) {
            for (const auto& [key, value] : j.items()) {
                if (key == "guard")
                    guard_ordinal_[&value] = next_ordinal_++;
                number_guards(value);
            }
        } else if (j.is_array()) {
            for (const auto& value : j)
                number_guards(value);
        }
    }

    static void expect_object(const Json& j, const std::string& where, std::initializer_list<std::string_view> allowed)
    {
        if (!j.is_object())
            schema(where + ": expected an object");
        for (const auto& [key, value] : j.items())
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                schema(where + ": unknown field '" + key + "'");
    }

    static const Json& field(const Json& j, const std::string& key, const std::string& where)
    {
        auto it = j.find(key);
        if (it == j.end())
            schema(where + ": missing field '" + key + "'");
        return *it;
    }

    static std::string string_field(const Json& j, const std::string& key, const std::string& where)
    {
        const Json& f = field(j, key, where);
        if (!f.is_string())
            schema(where + ": field '" + key + "' must be a string");
        return f.get<std::string>();
    }

    static const Json& array_field(const Json& j, const std::string& key, const std::string& where)
    {
        const Json& f = field(j, key, where);
        if (!f.is_array())
            schema(where + ": field '" + key + "' must be a list");
        return f;
    }

    static std::vector<std::string> string_list(const Json& j, const std::string& key, const std::string& where)
    {
        std::vector<std::string> out;
        for (const auto& item : array_field(j, key, where)) {
            if (!item.is_string())
                schema(where + ": field '" + key + "' must list strings");
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    Guard read_guard(const Json& g, const std::string& where)
    {
        if (!g.is_string())
            schema(where + ": field 'guard' must be a string");
        const std::string text = g.get<std::string>();
        try {
            return Guard::parse(text);
        } catch (const Error& e) {
            std::optional<SourceLocation> loc;
            auto ord = guard_ordinal_.find(&g);
            if (ord != guard_ordinal_.end() && guard_offsets_.size() == next_ordinal_ && e.where())
                loc = location_of(text_, guard_offsets_[ord->second] + e.where()->column - 1);
            throw Error(ErrorKind::Parse, where + ": " + e.detail(), loc);
        }
    }

    std::optional<SafetyAutomaton> read_automaton(const Json& j, std::vector<std::string> scope,
                                                  const std::string& owner, std::vector<Diagnostic>& diags)
    {
        const std::string where = owner + ".spec";
        expect_object(j, where, {"states", "initial", "bad", "complete_with", "edges"});
        AutomatonDraft d;
        d.vars = std::move(scope);
        std::map<std::string, StateId> ids;
        for (const auto& s : string_list(j, "states", where)) {
            if (ids.contains(s))
                schema(where + ": state '" + s + "' declared twice");
            ids.emplace(s, d.add_state(s, false));
        }
        if (d.states.empty())
            schema(where + ": 'states' must not be empty");
        auto state = [&](const std::string& name, const std::string& context) {
            auto it = ids.find(name);
            if (it == ids.end())
                schema(where + ": " + context + " refers to unknown state '" + name + "'");
            return it->second;
        };
        d.initial = state(string_field(j, "initial", where), "'initial'");
        for (const auto& b : string_list(j, "bad", where))
            d.bad[state(b, "'bad'")] = true;

        bool sink_bad = true;
        if (j.contains("complete_with")) {
            std::string mode = string_field(j, "complete_with", where);
            if (mode != "bad" && mode != "good")
                schema(where + ": 'complete_with' must be \"bad\" or \"good\"");
            sink_bad = mode == "bad";
        }

        std::size_t ei = 0;
        for (const auto& e : array_field(j, "edges", where)) {
            const std::string ew = where + ".edges[" + std::to_string(ei++) + "]";
            expect_object(e, ew, {"from", "guard", "to"});
            StateId from = state(string_field(e, "from", ew), "'from'");
            StateId to = state(string_field(e, "to", ew), "'to'");
            d.add_edge(from, read_guard(field(e, "guard", ew), ew), to);
        }

        complete(d, sink_bad);
        try {
            return SafetyAutomaton(std::move(d));
        } catch (const ValidationError& e) {
            for (auto diag : e.diagnostics()) {
                diag.subject = diag.subject.empty() ? owner : owner + ":" + diag.subject;
                diags.push_back(std::move(diag));
            }
            return std::nullopt;
        }
    }

    // Adds the transitions a state lacks: bad states loop on themselves,
    // good states go to a fresh sink of the requested polarity.
    static void complete(AutomatonDraft& d, bool sink_bad)
    {
        std::set<std::string> mentioned;
        for (const auto& es : d.edges)
            for (const auto& e : es)
                for (const auto& v : e.guard.variables())
                    mentioned.insert(v);
        for (const auto& v : mentioned)
            if (std::find(d.vars.begin(), d.vars.end(), v) == d.vars.end())
                return;
        VariableScope scope;
        try {
            scope = VariableScope(d.vars);
        } catch (const Error&) {
            return;
        }

        std::optional<StateId> sink;
        const std::size_t original = d.states.size();
        for (StateId s = 0; s < original; ++s) {
            bool gap = false;
            for (Letter l = 0; l < scope.letter_count() && !gap; ++l)
                gap = std::none_of(d.edges[s].begin(), d.edges[s].end(),
                                   [&](const Edge& e) { return e.guard.evaluate(scope, l); });
            if (!gap)
                continue;
            std::vector<Guard> present;
            for (const auto& e : d.edges[s])
                present.push_back(e.guard);
            Guard rest = present.empty() ? Guard::constant(true)
                                         : Guard::negate(Guard::disj(std::move(present))).canonical();
            if (d.bad[s]) {
                d.add_edge(s, rest, s);
                continue;
            }
            if (!sink) {
                std::string name = sink_bad ? "_sink_bad" : "_sink_good";
                for (int n = 1; std::find(d.states.begin(), d.states.end(), name) != d.states.end(); ++n)
                    name = (sink_bad ? "_sink_bad" : "_sink_good") + std::to_string(n);
                sink = d.add_state(name, sink_bad);
                d.add_edge(*sink, Guard::constant(true), *sink);
            }
            d.add_edge(s, rest, *sink);
        }
    }

    std::string_view text_;
    Json doc_;
    std::map<const Json*, std::size_t> guard_ordinal_;
    std::size_t next_ordinal_ = 0;
    std::vector<std::size_t> guard_offsets_;
};

Json automaton_to_json(const SafetyAutomaton& a)
{
    const auto& d = a.structure();
    Json j = Json::object();
    j["states"] = d.states;
    j["initial"] = d.states[d.initial];
    Json bad = Json::array();
    for (StateId s = 0; s < d.states.size(); ++s)
        if (d.bad[s])
            bad.push_back(d.states[s]);
    j["bad"] = bad;
    Json edges = Json::array();
    for (StateId s = 0; s < d.states.size(); ++s) {
        for (const auto& e : d.edges[s]) {
            Json je = Json::object();
            je["from"] = d.states[s];
            je["guard"] = e.guard.canonical().to_string();
            je["to"] = d.states[e.target];
            edges.push_back(std::move(je));
        }
    }
    j["edges"] = std::move(edges);
    return j;
}

} // namespace

SystemModel parse_system(std::string_view document) { return SystemReader(document).read(); }

std::string serialize_system(const SystemModel& m)
{
    Json doc = Json::object();
    Json vars = Json::array();
    for (const auto& v : m.variables()) {
        Json jv = Json::object();
        jv["name"] = v.name;
        jv["owner"] = v.owner;
        vars.push_back(std::move(jv));
    }
    doc["variables"] = std::move(vars);
    Json comps = Json::array();
    for (const auto& c : m.components()) {
        Json jc = Json::object();
        jc["name"] = c.name;
        jc["inputs"] = c.inputs;
        jc["outputs"] = c.outputs;
        jc["spec"] = automaton_to_json(c.spec);
        comps.push_back(std::move(jc));
    }
    doc["components"] = std::move(comps);
    doc["global_spec"] = automaton_to_json(m.global_spec());
    return doc.dump(2) + "\n";
}

std::vector<Diagnostic> validate_system(const SystemModel& m)
{
    std::vector<SafetyAutomaton> specs;
    for (const auto& c : m.components())
        specs.push_back(c.spec);
    auto composed = product(specs);
    auto result = contains(composed, m.global_spec());
    if (result.holds)
        return {};
    Diagnostic d{"RefinementViolation", "global_spec",
                 "the composition of the component specs admits a trace rejected by the global spec", result.witness};
    return {std::move(d)};
}

Trace parse_trace(std::string_view document, std::span<const std::string> vars)
{
    Trace t(std::vector<std::string>(vars.begin(), vars.end()));
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= document.size()) {
        std::size_t end = document.find('\n', pos);
        if (end == std::string_view::npos)
            end = document.size();
        std::string_view line = document.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);

        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#')
            continue;

        std::map<std::string, bool, std::less<>> values;
        std::size_t i = first;
        while (i < line.size()) {
            if (line[i] == ' ' || line[i] == '\t') {
                ++i;
                continue;
            }
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t')
                ++i;
            std::string_view token = line.substr(start, i - start);
            const SourceLocation loc{line_no, start + 1};
            auto eq = token.find('=');
            std::string_view value = eq == std::string_view::npos ? std::string_view{} : token.substr(eq + 1);
            if (eq == std::string_view::npos || (value != "0" && value != "1"))
                throw Error(ErrorKind::Parse, "expected 'var=0' or 'var=1', got '" + std::string(token) + "'", loc);
            std::string name(token.substr(0, eq));
            if (std::find(vars.begin(), vars.end(), name) == vars.end())
                throw Error(ErrorKind::UnknownVariable, "unknown variable '" + name + "'", loc);
            if (!values.emplace(name, value == "1").second)
                throw Error(ErrorKind::DuplicateAssignment, "variable '" + name + "' assigned twice", loc);
        }
        for (const auto& v : t.vars())
            if (!values.contains(v))
                throw Error(ErrorKind::MissingVariable,
                            "variable '" + v + "' is not assigned on line " + std::to_string(line_no),
                            SourceLocation{line_no, 1});
        t.push_back(Valuation(std::move(values)));
    }
    return t;
}

std::string serialize_trace(const Trace& t)
{
    std::string out;
    for (const auto& step : t.steps()) {
        out += step.to_string();
        out += '\n';
    }
    return out;
}

Trace project_trace(const Trace& t, const Component& c) { return t.restrict(c.variables()); }

RunResult violates_global(const SystemModel& m, const Trace& t) { return run(m.global_spec(), t); }

std::vector<std::string> ViolationReport::faulty_names() const
{
    std::vector<std::string> out;
    for (const auto& [name, index] : faulty)
        out.push_back(name);
    return out;
}

ViolationReport faulty_components(const SystemModel& m, const Trace& t)
{
    ViolationReport report;
    report.global_violation_index = violates_global(m, t).first_violation_index;
    for (const auto& c : m.components()) {
        auto r = run(c.spec, project_trace(t, c));
        if (!r.accepted)
            report.faulty.emplace_back(c.name, *r.first_violation_index);
    }
    return report;
}

} // namespace causa
