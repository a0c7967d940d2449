#include "causa/diagnostic.hpp"
#include "causa/error.hpp"

#include <sstream>

namespace causa {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::MissingVariable: return "MissingVariable";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::DuplicateAssignment: return "DuplicateAssignment";
    case ErrorKind::HorizonMismatch: return "HorizonMismatch";
    case ErrorKind::UnknownComponent: return "UnknownComponent";
    case ErrorKind::NotAnErrorTrace: return "NotAnErrorTrace";
    case ErrorKind::ScopeTooLarge: return "ScopeTooLarge";
    }
    return "Error";
}

namespace {

std::string format_error(ErrorKind kind, const std::string& message, const std::optional<SourceLocation>& where)
{
    std::ostringstream os;
    os << to_string(kind);
    if (where)
        os << " at " << where->line << ':' << where->column;
    os << ": " << message;
    return os.str();
}

std::string summarize(const std::vector<Diagnostic>& diagnostics)
{
    std::string out;
    for (const auto& d : diagnostics) {
        if (!out.empty())
            out += "; ";
        out += d.to_string();
    }
    return out;
}

} // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<SourceLocation> where)
    : std::runtime_error(format_error(kind, message, where)), kind_(kind), where_(where), detail_(message)
{
}

std::string Diagnostic::to_string() const
{
    std::string out = rule;
    if (!subject.empty())
        out += " [" + subject + "]";
    if (!message.empty())
        out += ": " + message;
    return out;
}

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorKind::Validation, summarize(diagnostics)), diagnostics_(std::move(diagnostics))
{
}

} // namespace causa
