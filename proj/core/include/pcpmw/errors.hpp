#pragma once

#include <stdexcept>
#include <string>

namespace pcpmw {

// Base class for every error raised by the library. Subclasses exist so
// callers (and tests) can catch a specific failure mode by type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The requested modulus factors over F2.
struct ReducibleModulus : Error { using Error::Error; };

// A bit pattern or coefficient vector does not fit the field's extension degree.
struct DegreeMismatch : Error { using Error::Error; };

// Two operands belong to different field specs; there is no implicit coercion.
struct SpecMismatch : Error { using Error::Error; };

// Multiplicative inverse of zero.
struct ZeroInverse : Error { using Error::Error; };

// Interpolation nodes repeat.
struct DuplicateNode : Error { using Error::Error; };

// Point/vector dimension disagrees with the ambient space.
struct DimensionMismatch : Error { using Error::Error; };

// A line through two identical points is not determined.
struct DegeneratePoints : Error { using Error::Error; };

// A partial-sum prefix is as long as the full variable vector.
struct PrefixTooLong : Error { using Error::Error; };

// The instance's variable count is not a power of two.
struct NotPowerOfTwo : Error { using Error::Error; };

// An assignment claimed to satisfy an instance does not.
struct NotSatisfying : Error { using Error::Error; };

// A verifier read hit a hole in a committed table.
struct MissingTableEntry : Error { using Error::Error; };

// An enumeration or memory budget would be exceeded.
struct BudgetExceeded : Error { using Error::Error; };

// Soundness boosting needs at least as many field points as equations.
struct TooManyEquations : Error { using Error::Error; };

// A nonzero-label set is empty where a choice is required.
struct EmptySet : Error { using Error::Error; };

// No solution vector hits the requested target.
struct InfeasibleTarget : Error { using Error::Error; };

// The hardness parameter must satisfy 0 < epsilon < 1.
struct InvalidEpsilon : Error { using Error::Error; };

// Malformed external input (DIMACS, serialized instances, CLI flags).
struct InputError : Error { using Error::Error; };

} // namespace pcpmw
