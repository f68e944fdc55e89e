#pragma once

#include <stdexcept>
#include <string>

namespace lpdo {

// Input outside an operation's mathematical domain (off-lattice point,
// length mismatch, non-Hermitian matrix handed to a Hermitian solver, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The request exceeds what an object can compute, e.g. more θ-derivatives
// than a symbol supports.
class CapabilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace lpdo
