#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace causa {

enum class ErrorKind {
    Parse,
    Schema,
    Validation,
    UndeclaredVariable,
    DomainMismatch,
    MissingVariable,
    UnknownVariable,
    DuplicateAssignment,
    HorizonMismatch,
    UnknownComponent,
    NotAnErrorTrace,
    ScopeTooLarge,
};

std::string_view to_string(ErrorKind kind);

/// 1-based position inside a text document.
struct SourceLocation {
    std::size_t line = 1;
    std::size_t column = 1;
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<SourceLocation> where = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    const std::optional<SourceLocation>& where() const noexcept { return where_; }
    /// Message without the kind/location prefix added by what().
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::optional<SourceLocation> where_;
    std::string detail_;
};

} // namespace causa
