#ifndef ABSLOG_ERRORS_HPP
#define ABSLOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abslog {

// Base class for all library errors. Subclasses distinguish the failure
// modes that callers are expected to handle programmatically (the CLI maps
// them to exit codes).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A value of the wrong carrier was passed to a lattice/monoid/domain
// operation (e.g. an interval where a state set was expected).
struct CarrierMismatch : Error {
    explicit CarrierMismatch(const std::string& what) : Error("carrier mismatch: " + what) {}
};

// The basis decomposition of an element is not finitely enumerable
// (e.g. an unbounded interval under the singleton basis).
struct InfiniteBasisDecomposition : Error {
    explicit InfiniteBasisDecomposition(const std::string& offending)
        : Error("infinite basis decomposition: " + offending) {}
};

// The carrier has no closed form for the infinite sum that was requested.
struct UnsupportedInfiniteSum : Error {
    explicit UnsupportedInfiniteSum(const std::string& what)
        : Error("unsupported infinite sum: " + what) {}
};

// Iteration (star) evaluation exhausted its budget and no fallback applied.
struct StarDidNotStabilize : Error {
    explicit StarDidNotStabilize(const std::string& what)
        : Error("star evaluation did not stabilize: " + what) {}
};

// The inductive-semantics fast path was requested for a domain that does
// not declare it.
struct FastPathUnavailable : Error {
    explicit FastPathUnavailable(const std::string& what)
        : Error("inductive fast path unavailable: " + what) {}
};

// A down-set operation fell outside the supported generator algebra
// (concrete generators, arithmetic singleton progressions, affine maps).
struct UnsupportedGeneratorAlgebra : Error {
    explicit UnsupportedGeneratorAlgebra(const std::string& what)
        : Error("unsupported generator algebra: " + what) {}
};

// Malformed textual input (programs, value literals, scripts, domain specs).
struct ParseError : Error {
    int line = 0, col = 0;
    ParseError(const std::string& what, int line_, int col_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + what),
          line(line_), col(col_) {}
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

// Any other evaluation-time failure (state-space cap exceeded, unsupported
// star shapes in the proof generator, ...).
struct EvalError : Error {
    explicit EvalError(const std::string& what) : Error(what) {}
};

} // namespace abslog

#endif // ABSLOG_ERRORS_HPP
