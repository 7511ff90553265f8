#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rainbow {

/// Base of every error thrown by the library. `kind()` is a short
/// machine-readable tag ("input", "gate", ...) used by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Malformed or contract-violating input (dimension mismatch, degenerate
/// simplex, bad file, ...).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error("input", what) {}
    InputError(std::string kind, const std::string& what) : Error(std::move(kind), what) {}
};

/// Configuration failed validation; `witness` names the offending indices.
class ValidationError : public InputError {
public:
    ValidationError(const std::string& reason, std::string witness)
        : InputError("validation", reason + (witness.empty() ? "" : ": " + witness)),
          reason_(reason), witness_(std::move(witness)) {}

    const std::string& reason() const noexcept { return reason_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string reason_;
    std::string witness_;
};

/// A combinatorial budget or dimension gate refused the request.
class GateError : public Error {
public:
    explicit GateError(const std::string& what) : Error("gate", what) {}
};

/// A pipeline stage failed; `stage()` names it.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error("stage", what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace rainbow
