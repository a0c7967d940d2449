#pragma once

#include "causa/trace.hpp"

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace causa {

/// Propositional formula labelling an automaton edge.
///
/// Grammar accepted by parse():
///   guard := conj ('|' conj)*
///   conj  := unary ('&' unary)*
///   unary := '!' unary | '(' guard ')' | 'true' | 'false' | identifier
class Guard {
public:
    enum class Op { Const, Var, Not, And, Or };

    /// The constant `true`.
    Guard();

    static Guard constant(bool value);
    static Guard var(std::string name);
    static Guard negate(Guard operand);
    static Guard conj(std::vector<Guard> operands);
    static Guard disj(std::vector<Guard> operands);
    /// Conjunction of literals fixing every variable of `scope` to its value in `letter`.
    static Guard cube(const VariableScope& scope, Letter letter);

    /// Throws Error(Parse) with a 1-based column on malformed input.
    static Guard parse(std::string_view text);

    Op op() const noexcept;
    bool value() const noexcept;
    const std::string& name() const noexcept;
    std::span<const Guard> operands() const noexcept;

    bool is_true() const noexcept { return op() == Op::Const && value(); }
    bool is_false() const noexcept { return op() == Op::Const && !value(); }

    std::set<std::string> variables() const;

    /// Evaluates with `lookup(name) -> bool`.
    template <class Lookup>
    bool evaluate(Lookup&& lookup) const
    {
        switch (op()) {
        case Op::Const:
            return value();
        case Op::Var:
            return lookup(name());
        case Op::Not:
            return !operands().front().evaluate(lookup);
        case Op::And:
            for (const auto& g : operands())
                if (!g.evaluate(lookup))
                    return false;
            return true;
        case Op::Or:
            for (const auto& g : operands())
                if (g.evaluate(lookup))
                    return true;
            return false;
        }
        return false;
    }

    /// Evaluation on one letter of `scope`. Throws UndeclaredVariable.
    bool evaluate(const VariableScope& scope, Letter letter) const;

    /// Negation normal form, nested connectives flattened, constants folded,
    /// operands sorted by their smallest variable name then by text.
    Guard canonical() const;

    /// Prints with the minimal parentheses the grammar needs.
    std::string to_string() const;

    friend bool operator==(const Guard& a, const Guard& b);

private:
    struct Node;
    explicit Guard(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// Standard propositional semantics. Throws UndeclaredVariable when the guard
/// mentions a variable outside the valuation's domain.
bool guard_eval(const Guard& g, const Valuation& v);

} // namespace causa
