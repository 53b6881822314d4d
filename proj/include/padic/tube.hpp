#pragma once

#include <vector>

#include "padic/common.hpp"
#include "padic/dimensions.hpp"
#include "padic/fractal_string.hpp"
#include "padic/zeta.hpp"

namespace padic {

struct TubeSeriesConfig {
    enum class Lines { all, first_only };
    enum class Summation { symmetric, cesaro };

    int n_max = 4000;
    Lines lines = Lines::all;
    Summation summation = Summation::symmetric;
};

/// V(eps) = p^-1 * sum of m p^-n over lengths p^-n < eps. Exact.
Rational thin_tube_volume(const LengthSpectrum& ls, const Rational& eps);

/// (1 - 1/p) * sum_{p^-n >= eps} m p^-n + sum_{p^-n < eps} m p^-n. Exact.
Rational thick_tube_volume(const LengthSpectrum& ls, const Rational& eps);

/// (1 - 1/p) zeta(1).
Rational boundary_measure(const LengthSpectrum& ls);

/// Symmetric partial sum of the Fourier series of b^{-{x}}, b in (0, 1).
/// Integer x is rejected: the series converges to the jump midpoint there.
double fourier_frac_pow(double b, double x, int n_max);

/// Residue of zeta(s) eps^{1-s} / (p (1-s)) at s = omega + i n P.
Complex tubular_residue(const RationalZeta& rz, const DimensionLine& line, long n, double eps);

/// Sum of tubular residues over the selected lines. Truncation keeps the
/// terms conjugate-paired: n in [-N, N], or [-N-1, N] on a line with
/// Im(omega) = P/2. Throws ConsistencyError if the imaginary part of the sum
/// exceeds 1e-10.
double explicit_tube_formula(const RationalZeta& rz, const DimensionSet& dims, double eps,
                             const TubeSeriesConfig& cfg);

/// Same, for a self-similar system; eps must lie in (0, p^(n_N - m_K)).
double explicit_tube_formula(const SelfSimilarSystem& sys, double eps, const TubeSeriesConfig& cfg);

/// G_u(x) = res_u / p * sum_{|n| <= n_max} e^{2 pi i n x} / (1 - omega_u - i n P).
/// u counts lines from 1 in DimensionSet order.
Complex periodic_G(const SelfSimilarSystem& sys, int u, double x, int n_max);
Complex periodic_G(const RationalZeta& rz, const DimensionSet& dims, int u, double x, int n_max);

struct TruncatedTube {
    double main;
    /// eps^{-(1-D)} E(eps) = O(eps^delta).
    double delta;
};

/// First-line term eps^{1-D} G_1(log_{1/r} eps^-1).
TruncatedTube truncated_tube(const SelfSimilarSystem& sys, double eps, int n_max);

/// log_{1/r}(1/eps) = -ln(eps) / ln(1/r).
double lattice_coordinate(double eps, double ln_inv_r);

/// Moves eps so that the fractional part of its lattice coordinate lies in
/// [margin, 1 - margin], away from the jumps of the step function.
double avoid_jump(double eps, double ln_inv_r, double margin = 0.05);

/// count log-spaced points in [lo, hi], each passed through avoid_jump.
std::vector<double> jump_free_grid(double lo, double hi, int count, double ln_inv_r, double margin = 0.05);

}  // namespace padic
