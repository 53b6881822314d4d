#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "padic/common.hpp"

namespace padic {

/// Finite p-adic expansion sum_i digits[i] * p^(valuation + i), least
/// significant digit first. Every digit lies in [0, p-1].
struct PAdicDigits {
    std::int64_t valuation = 0;
    std::vector<std::uint32_t> digits;

    /// Digit at absolute exponent e (0 outside the stored window).
    std::uint32_t digit_at(std::int64_t e) const noexcept;

    /// Strip zero digits on both ends. The zero expansion becomes {0, {}}.
    void normalize();

    /// Exact value as a rational number.
    Rational value(std::uint32_t p) const;

    static PAdicDigits from_integer(std::uint32_t p, const BigInt& nonnegative);

    friend bool operator==(const PAdicDigits&, const PAdicDigits&) = default;
};

enum class BallRelation { disjoint, equal, first_inside_second, second_inside_first };

const char* to_string(BallRelation r) noexcept;

/// The ball a + p^n Z_p = { x : |x - a|_p <= p^-n }.
///
/// The center is kept truncated modulo p^n, so two balls are equal exactly
/// when their stored fields are equal.
class PAdicBall {
public:
    PAdicBall(Prime p, PAdicDigits center, std::int64_t radius_exp);

    static PAdicBall from_integer(Prime p, const BigInt& center, std::int64_t radius_exp);

    Prime prime() const noexcept { return p_; }
    const PAdicDigits& center() const noexcept { return center_; }
    std::int64_t radius_exp() const noexcept { return radius_exp_; }

    /// Canonical center representative sum_{i<n} d_i p^i as a rational.
    Rational center_value() const { return center_.value(p_); }

    bool contains(const PAdicDigits& x) const noexcept;

    /// The ball of radius p * r containing this one.
    PAdicBall parent() const;

    /// The p disjoint balls of radius r / p covering this one.
    std::vector<PAdicBall> children() const;

    friend bool operator==(const PAdicBall& a, const PAdicBall& b) {
        return a.p_ == b.p_ && a.radius_exp_ == b.radius_exp_ && a.center_ == b.center_;
    }
    /// Decreasing radius, then increasing canonical center.
    friend std::strong_ordering operator<=>(const PAdicBall& a, const PAdicBall& b);

private:
    Prime p_;
    PAdicDigits center_;
    std::int64_t radius_exp_;
};

/// x -> a x + b with |a|_p = p^-n, n >= 1. `unit` is a/p^n.
struct PAdicAffineMap {
    Prime p;
    std::int64_t scale_valuation;
    PAdicDigits unit;
    PAdicDigits shift;
    int working_precision = 64;

    PAdicAffineMap(Prime p, std::int64_t scale_valuation, std::vector<std::uint32_t> unit_digits,
                   std::vector<std::uint32_t> shift_digits, int working_precision = 64);

    Rational contraction_ratio() const { return rational_pow(p, -scale_valuation); }

    friend bool operator==(const PAdicAffineMap&, const PAdicAffineMap&) = default;
};

Rational haar_measure(const PAdicBall& b);
Rational sphere_measure(const PAdicBall& b);

/// Ultrametric trichotomy; partial overlap cannot occur.
BallRelation ball_relation(const PAdicBall& b1, const PAdicBall& b2);

/// Convex components of a finite union of balls inside `ambient`: disjoint,
/// maximal, sorted by decreasing radius then center.
std::vector<PAdicBall> canonical_decompose(std::span<const PAdicBall> balls,
                                           const PAdicBall& ambient);

/// Image of a ball in Z_p under an affine similarity.
PAdicBall apply_affine(const PAdicAffineMap& m, const PAdicBall& b);

/// Sends the ternary expansion sum a_j 3^-j to the 3-adic number sum a_j 3^j.
PAdicDigits cantor_digit_map(std::span<const int> ternary_digits);

/// Text literal "c+p^n*Z" (c may also be written "A/p^k" for a center of
/// negative valuation).
PAdicBall parse_ball(std::string_view text);
std::string format_ball(const PAdicBall& b);

}  // namespace padic
