#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace causa {

/// Index of one valuation of a VariableScope. The first variable (in name
/// order) is the most significant bit.
using Letter = std::uint32_t;

/// Largest variable scope an automaton may range over. Guards are evaluated by
/// enumerating every valuation of the scope.
inline constexpr std::size_t kMaxScopeSize = 16;

bool is_identifier(std::string_view name);

/// An assignment of Boolean values to a set of variables: one letter of the
/// trace alphabet.
class Valuation {
public:
    Valuation() = default;
    Valuation(std::initializer_list<std::pair<const std::string, bool>> values);
    explicit Valuation(std::map<std::string, bool, std::less<>> values);

    /// Throws UndeclaredVariable when `name` is outside the domain.
    bool at(std::string_view name) const;
    std::optional<bool> find(std::string_view name) const;
    void set(const std::string& name, bool value) { values_[name] = value; }

    std::vector<std::string> domain() const;
    const std::map<std::string, bool, std::less<>>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Restriction to `vars`. Throws DomainMismatch if a variable is missing.
    Valuation restrict(std::span<const std::string> vars) const;

    /// "x=1 y=0", variables in name order.
    std::string to_string() const;

    friend bool operator==(const Valuation&, const Valuation&) = default;
    friend auto operator<=>(const Valuation&, const Valuation&) = default;

private:
    std::map<std::string, bool, std::less<>> values_;
};

/// A sorted, duplicate-free list of variable names with the letter encoding
/// used throughout the library.
class VariableScope {
public:
    VariableScope() = default;
    /// Sorts and deduplicates. Throws ScopeTooLarge past kMaxScopeSize.
    explicit VariableScope(std::vector<std::string> vars);

    const std::vector<std::string>& vars() const noexcept { return vars_; }
    std::size_t size() const noexcept { return vars_.size(); }
    std::size_t letter_count() const noexcept { return std::size_t{1} << vars_.size(); }

    std::optional<std::size_t> index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name).has_value(); }

    bool bit(Letter letter, std::size_t var_index) const
    {
        return ((letter >> (vars_.size() - 1 - var_index)) & 1U) != 0;
    }

    /// Throws DomainMismatch if the valuation lacks a scope variable; extra
    /// variables are ignored.
    Letter encode(const Valuation& v) const;
    Valuation decode(Letter letter) const;

    /// For every letter of this scope, the corresponding letter of `sub`.
    /// `sub` must be a subset of this scope.
    std::vector<Letter> projection_onto(const VariableScope& sub) const;

    static VariableScope unite(const VariableScope& a, const VariableScope& b);

    friend bool operator==(const VariableScope&, const VariableScope&) = default;

private:
    std::vector<std::string> vars_;
};

/// A finite sequence of valuations sharing one domain.
class Trace {
public:
    Trace() = default;
    explicit Trace(std::vector<std::string> vars);
    Trace(std::vector<std::string> vars, std::vector<Valuation> steps);

    const std::vector<std::string>& vars() const noexcept { return vars_; }
    const std::vector<Valuation>& steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_.size(); }
    bool empty() const noexcept { return steps_.empty(); }
    const Valuation& operator[](std::size_t i) const { return steps_[i]; }

    /// Throws DomainMismatch unless the valuation's domain equals vars().
    void push_back(Valuation step);

    Trace prefix(std::size_t length) const;
    /// Stepwise restriction; throws DomainMismatch.
    Trace restrict(std::span<const std::string> vars) const;

    friend bool operator==(const Trace&, const Trace&) = default;

private:
    std::vector<std::string> vars_;
    std::vector<Valuation> steps_;
};

} // namespace causa
