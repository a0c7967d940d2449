#include "causa/guard.hpp"

#include "causa/error.hpp"

#include <algorithm>
#include <tuple>

namespace causa {

struct Guard::Node {
    Op op = Op::Const;
    bool value = true;
    std::string name;
    std::vector<Guard> operands;
};

namespace {

const std::string kEmptyName;

} // namespace

Guard::Guard(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Guard::Guard() : Guard(constant(true)) {}

Guard Guard::constant(bool value)
{
    static const Guard t{std::make_shared<const Node>(Node{Op::Const, true, {}, {}})};
    static const Guard f{std::make_shared<const Node>(Node{Op::Const, false, {}, {}})};
    return value ? t : f;
}

Guard Guard::var(std::string name)
{
    return Guard{std::make_shared<const Node>(Node{Op::Var, false, std::move(name), {}})};
}

Guard Guard::negate(Guard operand)
{
    return Guard{std::make_shared<const Node>(Node{Op::Not, false, {}, {std::move(operand)}})};
}

Guard Guard::conj(std::vector<Guard> operands)
{
    if (operands.empty())
        return constant(true);
    if (operands.size() == 1)
        return operands.front();
    return Guard{std::make_shared<const Node>(Node{Op::And, false, {}, std::move(operands)})};
}

Guard Guard::disj(std::vector<Guard> operands)
{
    if (operands.empty())
        return constant(false);
    if (operands.size() == 1)
        return operands.front();
    return Guard{std::make_shared<const Node>(Node{Op::Or, false, {}, std::move(operands)})};
}

Guard Guard::cube(const VariableScope& scope, Letter letter)
{
    std::vector<Guard> literals;
    for (std::size_t i = 0; i < scope.size(); ++i) {
        Guard v = var(scope.vars()[i]);
        literals.push_back(scope.bit(letter, i) ? v : negate(v));
    }
    return conj(std::move(literals));
}

Guard::Op Guard::op() const noexcept { return node_->op; }
bool Guard::value() const noexcept { return node_->value; }
const std::string& Guard::name() const noexcept { return node_->op == Op::Var ? node_->name : kEmptyName; }
std::span<const Guard> Guard::operands() const noexcept { return node_->operands; }

std::set<std::string> Guard::variables() const
{
    std::set<std::string> out;
    auto collect = [&](auto&& self, const Guard& g) -> void {
        if (g.op() == Op::Var)
            out.insert(g.name());
        for (const auto& c : g.operands())
            self(self, c);
    };
    collect(collect, *this);
    return out;
}

bool Guard::evaluate(const VariableScope& scope, Letter letter) const
{
    return evaluate([&](const std::string& n) {
        auto idx = scope.index_of(n);
        if (!idx)
            throw Error(ErrorKind::UndeclaredVariable, "guard mentions undeclared variable '" + n + "'");
        return scope.bit(letter, *idx);
    });
}

bool guard_eval(const Guard& g, const Valuation& v)
{
    return g.evaluate([&](const std::string& n) { return v.at(n); });
}

bool operator==(const Guard& a, const Guard& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.op() != b.op())
        return false;
    switch (a.op()) {
    case Guard::Op::Const: return a.value() == b.value();
    case Guard::Op::Var: return a.name() == b.name();
    default: break;
    }
    auto ka = a.operands();
    auto kb = b.operands();
    return std::equal(ka.begin(), ka.end(), kb.begin(), kb.end());
}

namespace {

bool needs_parens(const Guard& child, Guard::Op parent)
{
    switch (parent) {
    case Guard::Op::Not: return child.op() == Guard::Op::And || child.op() == Guard::Op::Or;
    case Guard::Op::And: return child.op() == Guard::Op::Or;
    default: return false;
    }
}

void print(const Guard& g, std::string& out)
{
    auto child = [&](const Guard& c) {
        if (needs_parens(c, g.op())) {
            out += '(';
            print(c, out);
            out += ')';
        } else {
            print(c, out);
        }
    };
    switch (g.op()) {
    case Guard::Op::Const: out += g.value() ? "true" : "false"; return;
    case Guard::Op::Var: out += g.name(); return;
    case Guard::Op::Not:
        out += '!';
        child(g.operands().front());
        return;
    case Guard::Op::And:
    case Guard::Op::Or: {
        const char* sep = g.op() == Guard::Op::And ? " & " : " | ";
        bool first = true;
        for (const auto& c : g.operands()) {
            if (!first)
                out += sep;
            first = false;
            child(c);
        }
        return;
    }
    }
}

Guard normalize(const Guard& g, bool negated);

Guard combine(Guard::Op op, std::vector<Guard> operands)
{
    const bool is_and = op == Guard::Op::And;
    std::vector<Guard> flat;
    for (auto& c : operands) {
        if (c.op() == op) {
            for (const auto& cc : c.operands())
                flat.push_back(cc);
        } else if (c.op() == Guard::Op::Const) {
            // Absorbing constant decides the result; neutral one is dropped.
            if (c.value() != is_and)
                return Guard::constant(!is_and);
        } else {
            flat.push_back(c);
        }
    }
    using Key = std::tuple<std::string, std::string>;
    std::vector<std::pair<Key, Guard>> keyed;
    for (auto& c : flat) {
        auto vars = c.variables();
        keyed.emplace_back(Key{vars.empty() ? std::string{} : *vars.begin(), c.to_string()}, std::move(c));
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<Guard> sorted;
    for (auto& [key, c] : keyed)
        sorted.push_back(std::move(c));
    return is_and ? Guard::conj(std::move(sorted)) : Guard::disj(std::move(sorted));
}

Guard normalize(const Guard& g, bool negated)
{
    switch (g.op()) {
    case Guard::Op::Const: return Guard::constant(g.value() != negated);
    case Guard::Op::Var: return negated ? Guard::negate(g) : g;
    case Guard::Op::Not: return normalize(g.operands().front(), !negated);
    case Guard::Op::And:
    case Guard::Op::Or: {
        std::vector<Guard> kids;
        for (const auto& c : g.operands())
            kids.push_back(normalize(c, negated));
        const bool is_and = (g.op() == Guard::Op::And) != negated;
        return combine(is_and ? Guard::Op::And : Guard::Op::Or, std::move(kids));
    }
    }
    return g;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Guard parse()
    {
        Guard g = parse_or();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& message) const
    {
        throw Error(ErrorKind::Parse, message + " in guard '" + std::string(text_) + "'",
                    SourceLocation{1, pos_ + 1});
    }

    void skip_space()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Guard parse_or()
    {
        std::vector<Guard> kids{parse_and()};
        while (accept('|'))
            kids.push_back(parse_and());
        return Guard::disj(std::move(kids));
    }

    Guard parse_and()
    {
        std::vector<Guard> kids{parse_unary()};
        while (accept('&'))
            kids.push_back(parse_unary());
        return Guard::conj(std::move(kids));
    }

    Guard parse_unary()
    {
        if (accept('!'))
            return Guard::negate(parse_unary());
        if (accept('(')) {
            Guard g = parse_or();
            if (!accept(')'))
                fail("expected ')'");
            return g;
        }
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (is_identifier(text_.substr(start, pos_ - start + 1))))
            ++pos_;
        if (pos_ == start)
            fail(pos_ == text_.size() ? "expected an operand" : "unexpected '" + std::string(1, text_[pos_]) + "'");
        std::string_view word = text_.substr(start, pos_ - start);
        if (word == "true")
            return Guard::constant(true);
        if (word == "false")
            return Guard::constant(false);
        return Guard::var(std::string(word));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Guard Guard::canonical() const { return normalize(*this, false); }

std::string Guard::to_string() const
{
    std::string out;
    print(*this, out);
    return out;
}

Guard Guard::parse(std::string_view text) { return Parser(text).parse(); }

} // namespace causa
