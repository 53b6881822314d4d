#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "padic/common.hpp"

namespace padic {

/// Polynomial with arbitrary-precision integer coefficients; index = power of z.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient list and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    const std::vector<BigInt>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    BigInt coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }

    /// Lowest power with a nonzero coefficient (-1 for the zero polynomial).
    int low_degree() const noexcept;

    IntPolynomial derivative() const;
    BigInt content() const;
    /// Divided by its content, leading coefficient made positive.
    IntPolynomial primitive_part() const;

    Complex eval(Complex z) const;
    double eval(double z) const;

    /// Coefficients of u -> P(z0 + u), computed in complex double precision.
    std::vector<Complex> taylor_at(Complex z0) const;

    /// Sum |c_k| |z|^k, the natural scale for judging |P(z)|.
    double magnitude_scale(double abs_z) const;

    std::string to_string(const char* var = "z") const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const BigInt& k, const IntPolynomial& a);
    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    void trim();
    std::vector<BigInt> c_;
};

/// Greatest common divisor, primitive with positive leading coefficient.
/// gcd(0, 0) = 0.
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

/// a / b when b divides a over Q with an integer quotient; throws otherwise.
IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b);

/// Yun decomposition: f = c * prod_i g_i^{m_i} with each g_i primitive,
/// square-free and pairwise coprime. Constant factors are omitted.
std::vector<std::pair<IntPolynomial, int>> square_free_decomposition(const IntPolynomial& f);

struct PolynomialRoot {
    Complex z;
    int multiplicity;
};

/// All complex roots with exact multiplicities. Each square-free factor is
/// solved via companion-matrix eigenvalues followed by Newton polishing;
/// |g(z)| <= tol * magnitude_scale is required after polishing.
std::vector<PolynomialRoot> polynomial_roots(const IntPolynomial& f, double tol = 1e-12);

}  // namespace padic
