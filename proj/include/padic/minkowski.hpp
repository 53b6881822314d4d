#pragma once

#include <vector>

#include "padic/common.hpp"
#include "padic/fractal_string.hpp"

namespace padic {

struct ContentReport {
    double D_used = 0;
    double M_av_numeric = 0;
    double M_av_closed = 0;
    /// sup / inf of eps^{-(1-D)} V(eps) over one multiplicative period.
    double oscillation_ratio = 1;
    double T_used = 0;
};

/// 1 - slope of the least-squares line through (ln eps, ln V(eps)).
/// The grid must span at least six decades.
double minkowski_dim_fit(const LengthSpectrum& ls, const std::vector<Rational>& eps_grid);

/// (1 / ln T) int_{1/T}^{1} eps^{D-2} V(eps) deps, integrated exactly on each
/// interval where V is constant. D must differ from 1; T > 1.
double average_minkowski_content_numeric(const LengthSpectrum& ls, double D, double T);

/// res(zeta; D) / (p (1 - D)). For self-similar systems the Moran-type
/// right-hand side is evaluated too and must agree within 1e-12.
double average_minkowski_content_closed(const SelfSimilarSystem& sys);
double average_minkowski_content_closed(const LengthSpectrum& ls);

/// sup / inf of eps^{-(1-D)} V(eps) at 200 log-spaced points of
/// [eps0 * r, eps0].
double measurability_diagnostic(const LengthSpectrum& ls, double eps0);
double measurability_diagnostic(const SelfSimilarSystem& sys, double eps0);

/// Dimension (Moran root, or 0 for Euler) used by the content routines.
double content_dimension(const LengthSpectrum& ls);

/// ln(1/r): d ln p for self-similar spectra, ln p otherwise.
double log_inverse_ratio(const LengthSpectrum& ls);

/// T = r^-periods.
double periods_to_T(const LengthSpectrum& ls, double periods);

/// Full report for the given T, with the diagnostic taken at eps0 = r.
ContentReport content_report(const LengthSpectrum& ls, double T);

}  // namespace padic
