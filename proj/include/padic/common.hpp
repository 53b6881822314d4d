#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace padic {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

// Error hierarchy. The C API maps each class onto a status code.

/// Caller supplied a value outside an operation's domain.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A p-adic computation needed more digits than the working precision.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two independent routes to the same quantity disagreed beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation requested too close to a pole of a rational zeta function.
class PoleProximity : public std::domain_error {
public:
    PoleProximity(const std::string& what, Complex root)
        : std::domain_error(what), root_(root) {}
    Complex root() const noexcept { return root_; }

private:
    Complex root_;
};

/// Numerical root finder failed to converge.
class RootFindingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic primality test, exact for every n < 2^31.
bool is_prime(std::uint64_t n) noexcept;

/// A prime p < 2^31. Construction validates primality.
class Prime {
public:
    explicit Prime(std::int64_t p);

    std::uint32_t value() const noexcept { return p_; }
    operator std::uint32_t() const noexcept { return p_; }

    friend bool operator==(Prime a, Prime b) noexcept { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

/// p^e as an exact rational; e may be negative.
Rational rational_pow(std::uint32_t p, long e);

/// p^e for e >= 0.
BigInt int_pow(std::uint32_t p, unsigned long e);

}  // namespace padic
