#include "padic/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "padic/minkowski.hpp"
#include "padic/tube.hpp"

namespace padic {

Rational real_tube_volume(const RealLengthSpectrum& rls, const Rational& eps) {
    if (eps <= 0) throw InvalidArgument("eps must be positive");
    Rational two_eps = 2 * eps;
    Rational covered = 0;
    BigInt count = 0;
    for (const auto& e : rls.entries_down_to(two_eps)) {
        count += e.multiplicity;
        covered += e.length * Rational(e.multiplicity);
    }
    Rational v = two_eps * Rational(count) + (rls.total_length() - covered);
    v.canonicalize();
    return v;
}

RationalZeta real_cantor_zeta() {
    return make_rational_zeta(IntPolynomial{0, 1}, IntPolynomial{1, -2}, Prime(3), 1, SourceExponents{{1, 1}, {1}});
}

double real_cantor_tube_closed(double eps, int n_max) {
    if (!(eps > 0 && eps < 1.0 / 6.0)) throw InvalidArgument("real Cantor tube formula needs eps in (0, 1/6)");
    if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
    const double ln3 = std::log(3.0);
    const double D = std::numbers::ln2 / ln3;
    const double P = 2.0 * std::numbers::pi / ln3;
    const double l2e = std::log(2.0 * eps);
    Complex acc = 0;
    for (long k = 0; k <= n_max; ++k) {
        for (long n : {k, -k}) {
            Complex w(D, static_cast<double>(n) * P);
            acc += std::exp((1.0 - w) * l2e) / (w * (1.0 - w));
            if (k == 0) break;
        }
    }
    acc /= 2.0 * ln3;
    if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real()))) {
        throw ConsistencyError("real Cantor tube series is not conjugate-symmetric");
    }
    return acc.real() - 2.0 * eps;
}

double real_average_content_numeric(const RealLengthSpectrum& rls, double D, double T) {
    if (!(T > 1)) throw InvalidArgument("T must exceed 1");
    if (!(D > 0 && D < 1)) throw InvalidArgument("D must lie in (0, 1)");
    const double lnT = std::log(T);
    if (lnT > 700) throw InvalidArgument("T too large: 1/T underflows in double precision");
    const double eps_min = std::exp(-lnT);
    auto entries = rls.entries_down_to(Rational(2.0 * eps_min));
    const Rational total = rls.total_length();

    auto piece = [&](double a, double b, double A, double B) {
        if (!(b > a)) return 0.0;
        return 2.0 * A * (std::pow(b, D) - std::pow(a, D)) / D + B * (std::pow(b, D - 1.0) - std::pow(a, D - 1.0)) / (D - 1.0);
    };
    // On (l_{k+1}/2, l_k/2], V = 2 eps A + B with A the count of l >= 2 eps.
    double integral = 0;
    double upper = 1.0;
    double A = 0;
    Rational covered = 0;
    for (const auto& e : entries) {
        double half = e.length.get_d() / 2.0;
        double lower = std::max(half, eps_min);
        if (lower < upper) integral += piece(lower, upper, A, Rational(total - covered).get_d());
        upper = std::min(upper, half);
        A += e.multiplicity.get_d();
        covered += e.length * Rational(e.multiplicity);
    }
    integral += piece(eps_min, upper, A, Rational(total - covered).get_d());
    return integral / lnT;
}

double real_cantor_content_reference() {
    const double D = std::numbers::ln2 / std::log(3.0);
    return std::pow(2.0, -D) / ((1.0 - D) * std::numbers::ln2);
}

bool same_dimension_sets(const DimensionSet& a, const DimensionSet& b, double tol) {
    if (a.lines.size() != b.lines.size()) return false;
    if (std::abs(a.period - b.period) > tol || std::abs(a.D - b.D) > tol) return false;
    for (std::size_t i = 0; i < a.lines.size(); ++i) {
        const auto& x = a.lines[i];
        const auto& y = b.lines[i];
        if (x.multiplicity != y.multiplicity) return false;
        if (std::abs(x.omega - y.omega) > tol) return false;
        if (x.multiplicity == 1 && std::abs(x.residue - y.residue) > tol) return false;
    }
    return true;
}

ComparisonReport comparison_report(const std::vector<double>& eps_grid, int n_max, double T) {
    ComparisonReport rep;
    const SelfSimilarSystem cs3 = cantor_string_3();
    const LengthSpectrum cs3_spec = LengthSpectrum::self_similar(cs3);
    const RealLengthSpectrum cs = real_cantor_string();
    rep.dims_cs = complex_dimensions(real_cantor_zeta());
    rep.dims_cs3 = complex_dimensions(cs3);
    rep.dimensions_equal = same_dimension_sets(rep.dims_cs, rep.dims_cs3);
    if (!rep.dimensions_equal) throw ConsistencyError("real and 3-adic Cantor strings have different complex dimensions");

    const double D = rep.dims_cs3.D;
    TubeSeriesConfig cfg;
    cfg.n_max = n_max;
    const RationalZeta rz3 = closed_form_zeta(cs3);
    for (double eps : eps_grid) {
        ComparisonRow row;
        row.eps = eps;
        Rational e(eps);
        row.v_cs = real_tube_volume(cs, e);
        row.v_cs_series = real_cantor_tube_closed(eps, n_max);
        row.v_cs3 = thin_tube_volume(cs3_spec, e);
        row.v_cs3_series = explicit_tube_formula(rz3, rep.dims_cs3, eps, cfg);
        row.g_cs = std::pow(2.0 * eps, D - 1.0) * row.v_cs.get_d();
        row.g_cs3 = std::pow(eps, D - 1.0) * row.v_cs3.get_d();
        rep.rows.push_back(std::move(row));
    }
    rep.content_cs_numeric = real_average_content_numeric(cs, D, T);
    rep.content_cs_reference = real_cantor_content_reference();
    rep.content_cs3_numeric = average_minkowski_content_numeric(cs3_spec, D, T);
    rep.content_cs3_closed = average_minkowski_content_closed(cs3);
    return rep;
}

}  // namespace padic
