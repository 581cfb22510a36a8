#pragma once

#include <stdexcept>
#include <string>

namespace ikl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivideByZero : Error {
    explicit DivideByZero(const std::string& msg) : Error(msg) {}
};

// Bad input: index/letter outside the alphabet, wrong family, malformed job.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Mismatched lengths or incompatible Fock shapes.
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// An invariant the library itself guarantees was violated; indicates a bug
// upstream, not bad user input.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

// A bar matrix fed to the canonical-basis solver is not an involution
// (a correction defect acquired a constant term).
struct BarMatrixInconsistent : Error {
    explicit BarMatrixInconsistent(const std::string& msg) : Error(msg) {}
};

} // namespace ikl
