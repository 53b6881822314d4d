#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padic/common.hpp"
#include "padic/fractal_string.hpp"
#include "padic/polynomial.hpp"

namespace padic {

/// Exponents (in units of d) the closed form was built from; kept so that
/// residues can be recomputed from the Moran-type formula after reduction.
struct SourceExponents {
    std::vector<std::int64_t> scaling;
    std::vector<std::int64_t> gaps;

    friend bool operator==(const SourceExponents&, const SourceExponents&) = default;
};

/// zeta(s) = num(z) / den(z) with z = p^(-d s), reduced so that num and den
/// are coprime and den(0) = 1.
struct RationalZeta {
    IntPolynomial num;
    IntPolynomial den;
    Prime p;
    std::int64_t d;
    std::optional<SourceExponents> source;

    /// d ln p, so that z = exp(-s * log_scale()).
    double log_scale() const;
    /// ln r = -d ln p.
    double log_ratio() const { return -log_scale(); }
    /// Vertical spacing of complex dimensions, 2 pi / (d ln p).
    double period() const;
    Complex z_of_s(Complex s) const;
};

/// Reduces by the exact integer-polynomial gcd and normalizes den(0) = 1.
RationalZeta make_rational_zeta(IntPolynomial num, IntPolynomial den, Prime p, std::int64_t d,
                                std::optional<SourceExponents> source = std::nullopt);

RationalZeta closed_form_zeta(const SelfSimilarSystem& sys);
RationalZeta euler_closed_form(Prime p);

/// Raises PoleProximity when z(s) lies within 1e-13 (relative, measured as
/// |den| / |den'|) of a root of the denominator.
Complex zeta_eval(const RationalZeta& rz, Complex s);

struct PartialSum {
    Complex value;
    double tail_bound;
    bool below_abscissa;
};

/// Sum of m p^(-n s) over the first `terms` spectrum entries. tail_bound
/// bounds the omitted terms; it is +inf when Re(s) is not above the abscissa.
PartialSum zeta_partial_sum(const LengthSpectrum& ls, Complex s, std::size_t terms);

double abscissa_of_convergence(const SelfSimilarSystem& sys);
double abscissa_of_convergence(const LengthSpectrum& ls);

struct IntegralCheck {
    Complex lhs;
    Complex zeta;
    double residual;
    bool below_abscissa;
};

/// Compares zeta(1) l_1^(s-1) + p (1-s) int_0^{l_1} V(eps) eps^(s-2) deps,
/// integrated exactly piecewise over scales up to scale_cutoff, with zeta(s)
/// from the closed form (or the finite sum for explicit lists).
IntegralCheck verify_integral_representation(const LengthSpectrum& ls, Complex s, std::int64_t scale_cutoff = 600);

/// ln m for a positive big integer, accurate for any size.
double log_bigint(const BigInt& m);

}  // namespace padic
