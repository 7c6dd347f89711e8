#pragma once

#include <stdexcept>
#include <string>

namespace ltk {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid user input (bad primes, malformed polynomials, violated preconditions).
// The CLI maps these to exit code 2.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class NotPrime : public InvalidInput {
public:
    explicit NotPrime(const std::string& what) : InvalidInput(what) {}
};

class InvalidPrimePower : public InvalidInput {
public:
    explicit InvalidPrimePower(const std::string& what) : InvalidInput(what) {}
};

class ZeroConstantTerm : public InvalidInput {
public:
    explicit ZeroConstantTerm(const std::string& what) : InvalidInput(what) {}
};

class NotSimpleRoot : public InvalidInput {
public:
    explicit NotSimpleRoot(const std::string& what) : InvalidInput(what) {}
};

class NoSuchRoot : public InvalidInput {
public:
    explicit NoSuchRoot(const std::string& what) : InvalidInput(what) {}
};

// pi_hat^2 == q: the norm-form reduction applies and Z = Q(pi_hat) is not CM.
// places_above_p refuses this case; the certifier owns it.
class RealWeilNumber : public InvalidInput {
public:
    explicit RealWeilNumber(const std::string& what) : InvalidInput(what) {}
};

class OddProduct : public InvalidInput {
public:
    explicit OddProduct(const std::string& what) : InvalidInput(what) {}
};

class RecipeInvalid : public InvalidInput {
public:
    explicit RecipeInvalid(const std::string& what) : InvalidInput(what) {}
};

class DisjointnessFailure : public InvalidInput {
public:
    explicit DisjointnessFailure(const std::string& what) : InvalidInput(what) {}
};

class RadicalNotDividing : public InvalidInput {
public:
    explicit RadicalNotDividing(const std::string& what) : InvalidInput(what) {}
};

// Computational failures that a driver may retry at higher precision.
// Unresolved, they surface as a ScopeError verdict (CLI exit 3).
class Retryable : public Error {
public:
    using Error::Error;
};

class IsolationFailure : public Retryable {
public:
    explicit IsolationFailure(const std::string& what) : Retryable(what) {}
};

class AmbiguousRoot : public Retryable {
public:
    explicit AmbiguousRoot(const std::string& what) : Retryable(what) {}
};

class FactorizationUndetermined : public Retryable {
public:
    explicit FactorizationUndetermined(const std::string& what) : Retryable(what) {}
};

// Implementation bug surfaced by an internal consistency check.
class FactoryContractViolation : public Error {
public:
    explicit FactoryContractViolation(const std::string& what) : Error(what) {}
};

class InternalInconsistency : public Error {
public:
    explicit InternalInconsistency(const std::string& what) : Error(what) {}
};

} // namespace ltk
