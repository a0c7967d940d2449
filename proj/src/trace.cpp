#include "causa/trace.hpp"

#include "causa/error.hpp"

#include <algorithm>

namespace causa {

bool is_identifier(std::string_view name)
{
    if (name.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front()))
        return false;
    return std::all_of(name.begin() + 1, name.end(), [&](char c) { return alpha(c) || digit(c); });
}

Valuation::Valuation(std::initializer_list<std::pair<const std::string, bool>> values)
    : values_(values.begin(), values.end())
{
}

Valuation::Valuation(std::map<std::string, bool, std::less<>> values) : values_(std::move(values)) {}

bool Valuation::at(std::string_view name) const
{
    auto it = values_.find(name);
    if (it == values_.end())
        throw Error(ErrorKind::UndeclaredVariable, "variable '" + std::string(name) + "' is not assigned");
    return it->second;
}

std::optional<bool> Valuation::find(std::string_view name) const
{
    auto it = values_.find(name);
    if (it == values_.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::string> Valuation::domain() const
{
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (const auto& [name, value] : values_)
        out.push_back(name);
    return out;
}

Valuation Valuation::restrict(std::span<const std::string> vars) const
{
    Valuation out;
    for (const auto& v : vars) {
        auto it = values_.find(v);
        if (it == values_.end())
            throw Error(ErrorKind::DomainMismatch, "valuation lacks variable '" + v + "'");
        out.values_.emplace(v, it->second);
    }
    return out;
}

std::string Valuation::to_string() const
{
    std::string out;
    for (const auto& [name, value] : values_) {
        if (!out.empty())
            out += ' ';
        out += name;
        out += value ? "=1" : "=0";
    }
    return out;
}

VariableScope::VariableScope(std::vector<std::string> vars) : vars_(std::move(vars))
{
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    if (vars_.size() > kMaxScopeSize)
        throw Error(ErrorKind::ScopeTooLarge, "scope of " + std::to_string(vars_.size()) +
                                                  " variables exceeds the limit of " +
                                                  std::to_string(kMaxScopeSize));
}

std::optional<std::size_t> VariableScope::index_of(std::string_view name) const
{
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
    if (it == vars_.end() || *it != name)
        return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

Letter VariableScope::encode(const Valuation& v) const
{
    Letter letter = 0;
    for (const auto& name : vars_) {
        auto value = v.find(name);
        if (!value)
            throw Error(ErrorKind::DomainMismatch, "valuation lacks variable '" + name + "'");
        letter = (letter << 1) | (*value ? 1U : 0U);
    }
    return letter;
}

Valuation VariableScope::decode(Letter letter) const
{
    std::map<std::string, bool, std::less<>> values;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        values.emplace(vars_[i], bit(letter, i));
    return Valuation(std::move(values));
}

std::vector<Letter> VariableScope::projection_onto(const VariableScope& sub) const
{
    std::vector<std::size_t> positions;
    positions.reserve(sub.size());
    for (const auto& name : sub.vars()) {
        auto idx = index_of(name);
        if (!idx)
            throw Error(ErrorKind::DomainMismatch, "variable '" + name + "' is outside the enclosing scope");
        positions.push_back(*idx);
    }
    std::vector<Letter> out(letter_count());
    for (Letter l = 0; l < out.size(); ++l) {
        Letter p = 0;
        for (auto pos : positions)
            p = (p << 1) | (bit(l, pos) ? 1U : 0U);
        out[l] = p;
    }
    return out;
}

VariableScope VariableScope::unite(const VariableScope& a, const VariableScope& b)
{
    std::vector<std::string> all = a.vars_;
    all.insert(all.end(), b.vars_.begin(), b.vars_.end());
    return VariableScope(std::move(all));
}

Trace::Trace(std::vector<std::string> vars) : vars_(std::move(vars))
{
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

Trace::Trace(std::vector<std::string> vars, std::vector<Valuation> steps) : Trace(std::move(vars))
{
    for (auto& s : steps)
        push_back(std::move(s));
}

void Trace::push_back(Valuation step)
{
    if (step.domain() != vars_)
        throw Error(ErrorKind::DomainMismatch,
                    "step {" + step.to_string() + "} does not match the trace variables");
    steps_.push_back(std::move(step));
}

Trace Trace::prefix(std::size_t length) const
{
    Trace out(vars_);
    out.steps_.assign(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(std::min(length, steps_.size())));
    return out;
}

Trace Trace::restrict(std::span<const std::string> vars) const
{
    Trace out(std::vector<std::string>(vars.begin(), vars.end()));
    for (const auto& s : steps_)
        out.steps_.push_back(s.restrict(out.vars_));
    return out;
}

} // namespace causa
