#pragma once

#include <stdexcept>
#include <string>

namespace spikewalk {

// Error taxonomy shared by the library and the CLI. The CLI maps categories
// to process exit codes: config -> 2, constraint -> 3, capacity -> 4.
enum class ErrorKind {
    config,      // malformed or contradictory run configuration
    domain,      // argument outside the mathematical domain of an operation
    constraint,  // a modeling constraint (e.g. time-step acceptance) failed
    capacity,    // a platform resource limit would be exceeded
    structural,  // an internal wiring/consistency invariant was violated
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace spikewalk
