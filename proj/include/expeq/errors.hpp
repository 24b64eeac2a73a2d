#pragma once

#include <stdexcept>
#include <string>

namespace expeq {

// Exit codes shared by the CLI and the structured error types.
//   0 certificate / result produced
//   2 invalid input
//   3 precision exhausted (probable statuses remain)
//   4 guard exceeded
enum class ExitCode : int {
    ok = 0,
    invalid_input = 2,
    precision_exhausted = 3,
    guard_exceeded = 4,
};

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what, ExitCode exit_code)
        : std::runtime_error(what), code_(std::move(code)), exit_(exit_code) {}

    const std::string& code() const { return code_; }
    ExitCode exit_code() const { return exit_; }

private:
    std::string code_;
    ExitCode exit_;
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what)
        : Error("precision-exhausted", what, ExitCode::precision_exhausted) {}
};

struct DegreeGuardExceeded : Error {
    explicit DegreeGuardExceeded(const std::string& what)
        : Error("degree-guard-exceeded", what, ExitCode::guard_exceeded) {}
};

struct GuardExceeded : Error {
    explicit GuardExceeded(const std::string& what)
        : Error("guard-exceeded", what, ExitCode::guard_exceeded) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& what)
        : Error("division-by-zero", what, ExitCode::invalid_input) {}
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& what)
        : Error("invalid-input", what, ExitCode::invalid_input) {}
};

struct DependenceDetected : Error {
    explicit DependenceDetected(const std::string& what)
        : Error("dependence-detected", what, ExitCode::invalid_input) {}
};

struct DirectionDegenerate : Error {
    explicit DirectionDegenerate(const std::string& what)
        : Error("direction-degenerate", what, ExitCode::invalid_input) {}
};

struct SpecializationAnnihilates : Error {
    explicit SpecializationAnnihilates(const std::string& what)
        : Error("specialization-annihilates", what, ExitCode::invalid_input) {}
};

struct BoundaryZeroSuspected : Error {
    explicit BoundaryZeroSuspected(const std::string& what)
        : Error("boundary-zero-suspected", what, ExitCode::precision_exhausted) {}
};

} // namespace expeq
