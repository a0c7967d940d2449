#pragma once

#include "causa/error.hpp"
#include "causa/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace causa {

/// A named rule violation found while checking an automaton or a system.
struct Diagnostic {
    std::string rule;    // e.g. "NondeterministicState", "OutputOverlap"
    std::string subject; // component / state the rule is about
    std::string message;
    std::optional<Trace> witness;

    std::string to_string() const;
};

/// Raised when a document parses but violates a structural invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

} // namespace causa
