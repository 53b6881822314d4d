#pragma once

#include <vector>

#include "padic/common.hpp"
#include "padic/fractal_string.hpp"
#include "padic/zeta.hpp"

namespace padic {

/// One vertical line omega + i n P (n in Z) of poles, P the oscillatory
/// period. omega is the representative with Im(omega) in (-P/2, P/2].
struct DimensionLine {
    Complex omega;
    Complex z_root;
    int multiplicity = 1;
    /// Residue for simple poles; NaN otherwise.
    Complex residue;
    /// principal_part[k] = c_{-(k+1)}; length = multiplicity.
    std::vector<Complex> principal_part;
};

struct DimensionSet {
    std::vector<DimensionLine> lines;
    double period = 0;
    double D = 0;
};

/// Unique real root of sum_j p^(-n_j s) = 1, by bisection on [0, 1].
double moran_dimension(const SelfSimilarSystem& sys);

/// All complex roots of the denominator with exact multiplicities.
std::vector<PolynomialRoot> denominator_roots(const RationalZeta& rz, double tol = 1e-12);

/// omega = -(ln|z| + i arg z) / (d ln p); arg in (-pi, pi], so negative real
/// z maps to Im(omega) = P/2 exactly.
Complex omega_of_z(const RationalZeta& rz, Complex z);

/// Lines from the denominator roots, sorted by Re descending, then |Im|,
/// then Im. Zero roots of the denominator cannot occur (den(0) = 1).
///
/// Re(omega_u) < D for u >= 2 only when the reduced scaling exponents are
/// coprime. If they share a factor q, the denominator is a polynomial in z^q
/// and up to q lines sit on Re = D (e.g. z / (1 - 2z^2) at p = 2).
DimensionSet complex_dimensions(const RationalZeta& rz);
DimensionSet complex_dimensions(const SelfSimilarSystem& sys);

/// Residue at a simple pole. Evaluates the z-derivative formula and, when the
/// source exponents are known, the Moran-type formula; throws
/// ConsistencyError when they differ by more than 1e-10 relative.
Complex residue_at(const RationalZeta& rz, const DimensionLine& line);

/// Laurent coefficients at omega: result[k] = c_{-(k+1)}, k < order.
/// order must not exceed the multiplicity.
std::vector<Complex> principal_part_at(const RationalZeta& rz, const DimensionLine& line, int order);

/// Lines of zeros: numerator roots other than z = 0 mapped to s.
std::vector<DimensionLine> zeros_of_zeta(const RationalZeta& rz);

}  // namespace padic
