#pragma once

#include <vector>

#include "padic/common.hpp"
#include "padic/dimensions.hpp"
#include "padic/fractal_string.hpp"
#include "padic/zeta.hpp"

namespace padic {

/// sum_{l >= 2 eps} 2 eps m + sum_{l < 2 eps} m l. Exact.
Rational real_tube_volume(const RealLengthSpectrum& rls, const Rational& eps);

/// Zeta function of the real Cantor string, sum 2^{n-1} 3^{-ns} = z/(1-2z),
/// z = 3^{-s}. It coincides with the one of the 3-adic Cantor string.
RationalZeta real_cantor_zeta();

/// 1/(2 ln 3) sum_{|n| <= n_max} (2 eps)^{1-w} / (w (1-w)) - 2 eps over
/// w = D + i n P; eps in (0, 1/6).
double real_cantor_tube_closed(double eps, int n_max);

/// (1 / ln T) int_{1/T}^{1} eps^{D-2} V(eps) deps for a real string, exact on
/// each piece where V is linear in eps.
double real_average_content_numeric(const RealLengthSpectrum& rls, double D, double T);

/// 2^{-D} / ((1 - D) ln 2), the value quoted for the real Cantor string.
double real_cantor_content_reference();

/// Same lines (omega, multiplicity, residue) and period within tol.
bool same_dimension_sets(const DimensionSet& a, const DimensionSet& b, double tol = 1e-12);

struct ComparisonRow {
    double eps;
    Rational v_cs;
    double v_cs_series;
    Rational v_cs3;
    double v_cs3_series;
    /// (2 eps)^{-(1-D)} V_CS(eps) and eps^{-(1-D)} V_CS3(eps).
    double g_cs;
    double g_cs3;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    DimensionSet dims_cs;
    DimensionSet dims_cs3;
    bool dimensions_equal = false;
    double content_cs_numeric = 0;
    double content_cs_reference = 0;
    double content_cs3_numeric = 0;
    double content_cs3_closed = 0;
};

/// Side-by-side table for the real and 3-adic Cantor strings. Throws
/// ConsistencyError if their dimension sets differ.
ComparisonReport comparison_report(const std::vector<double>& eps_grid, int n_max, double T);

}  // namespace padic
