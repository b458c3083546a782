#ifndef KUMMER_ERRORS_HPP_
#define KUMMER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace kummer {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// modarith
struct ZeroInput : Error { using Error::Error; };
struct DegenerateModulus : Error { using Error::Error; };
struct InvalidPair : Error { using Error::Error; };

// invariants
struct IndexOutOfRange : Error { using Error::Error; };
struct OracleBoundExceeded : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };

// regularity
struct OutOfRange : Error { using Error::Error; };
struct EvenExponent : Error { using Error::Error; };
struct BadExponent : Error { using Error::Error; };

// selmer
struct BadIndex : Error { using Error::Error; };
struct RootStatusMismatch : Error { using Error::Error; };

// survey
struct BadRange : Error { using Error::Error; };
struct MixedP : Error { using Error::Error; };
struct IoFailure : Error { using Error::Error; };
struct ConfigMismatch : Error { using Error::Error; };

} // namespace kummer

#endif // KUMMER_ERRORS_HPP_
