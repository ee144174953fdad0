#ifndef COMFACTOR_ERRORS_HPP
#define COMFACTOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace comfactor {

// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An assignment does not match a factor's argument list.
struct InvalidAssignment : Error {
    using Error::Error;
};

// A joint evaluation was requested with at least one RV left unassigned.
struct IncompleteAssignment : Error {
    using Error::Error;
};

// Full enumeration was requested for a state space above the configured cap.
struct StateSpaceTooLarge : Error {
    using Error::Error;
};

// A commutativity check was requested for a subset with fewer than two members.
struct SubsetTooSmall : Error {
    using Error::Error;
};

// A commutativity check was requested across arguments with different ranges.
struct MixedRanges : Error {
    using Error::Error;
};

// The brute-force subset budget was exhausted before a result was found.
struct BudgetExceeded : Error {
    using Error::Error;
};

// compress() was called with a subset the factor is not commutative with
// respect to.
struct NotCommutative : Error {
    using Error::Error;
};

// Two ground rows that must agree under a verified commutative subset carry
// different potential tokens. Signals broken token quantisation upstream.
struct WellDefinednessViolation : Error {
    using Error::Error;
};

// Malformed input document (JSON schema violations, bad tokens, ...).
struct ParseError : Error {
    using Error::Error;
};

// Filesystem failures: unreadable or unwritable paths.
struct IoError : Error {
    using Error::Error;
};

// Cooperative timeout, thrown when an algorithm polls an expired deadline.
struct DeadlineExpired : Error {
    using Error::Error;
};

}  // namespace comfactor

#endif
