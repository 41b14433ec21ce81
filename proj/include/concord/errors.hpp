#pragma once

#include <stdexcept>
#include <string>

namespace concord {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct NotAnEigenprojector : std::runtime_error {
    explicit NotAnEigenprojector(const std::string& what) : std::runtime_error(what) {}
};

struct NotQuantumClassical : std::runtime_error {
    explicit NotQuantumClassical(const std::string& what) : std::runtime_error(what) {}
};

struct GateTooLarge : std::runtime_error {
    explicit GateTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct SupportTooLarge : std::runtime_error {
    explicit SupportTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct NoPermutation : std::runtime_error {
    explicit NoPermutation(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the concordance promise is violated: no candidate projector
// admits a complete local-basis solution, or a derived update fails its
// exact verification.
struct PromiseViolation : std::runtime_error {
    explicit PromiseViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace concord
