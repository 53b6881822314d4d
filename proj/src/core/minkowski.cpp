#include "padic/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "padic/dimensions.hpp"
#include "padic/tube.hpp"
#include "padic/zeta.hpp"

namespace padic {

namespace {

RationalZeta spectrum_zeta(const LengthSpectrum& ls) {
    switch (ls.kind()) {
        case SpectrumKind::euler: return euler_closed_form(ls.prime());
        case SpectrumKind::self_similar: return closed_form_zeta(*ls.system());
        case SpectrumKind::explicit_list: break;
    }
    throw InvalidArgument("no closed form for an explicit length list");
}

}  // namespace

double content_dimension(const LengthSpectrum& ls) { return abscissa_of_convergence(ls); }

double log_inverse_ratio(const LengthSpectrum& ls) {
    double lnp = std::log(static_cast<double>(ls.prime().value()));
    return ls.kind() == SpectrumKind::self_similar ? static_cast<double>(ls.system()->d()) * lnp : lnp;
}

double periods_to_T(const LengthSpectrum& ls, double periods) { return std::exp(periods * log_inverse_ratio(ls)); }

double minkowski_dim_fit(const LengthSpectrum& ls, const std::vector<Rational>& eps_grid) {
    if (eps_grid.size() < 2) throw InvalidArgument("degenerate grid: need at least two points");
    double lo = eps_grid.front().get_d();
    double hi = lo;
    for (const auto& e : eps_grid) {
        if (e <= 0) throw InvalidArgument("degenerate grid: eps must be positive");
        lo = std::min(lo, e.get_d());
        hi = std::max(hi, e.get_d());
    }
    if (std::log10(hi / lo) < 6.0 - 1e-9) throw InvalidArgument("degenerate grid: spans fewer than six decades");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& e : eps_grid) {
        Rational v = thin_tube_volume(ls, e);
        if (v <= 0) throw InvalidArgument("degenerate grid: V(eps) vanishes");
        // ln of a rational without leaving double range.
        double y = log_bigint(v.get_num()) - log_bigint(v.get_den());
        double x = log_bigint(e.get_num()) - log_bigint(e.get_den());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(eps_grid.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return 1.0 - slope;
}

double average_minkowski_content_numeric(const LengthSpectrum& ls, double D, double T) {
    if (!(T > 1)) throw InvalidArgument("T must exceed 1");
    if (D == 1.0) throw InvalidArgument("D = 1 makes the Cesaro integral singular");
    const std::uint32_t p = ls.prime();
    const double lnp = std::log(static_cast<double>(p));
    const double lnT = std::log(T);
    auto nmax = static_cast<std::int64_t>(std::ceil(lnT / lnp - 1e-12));
    auto entries = ls.prefix(nmax);

    // V on (p^{-(n+1)}, p^{-n}] is (zeta(1) - sum of lengths >= p^{-n}) / p.
    Rational remaining = total_length(ls).upper;
    std::size_t next = 0;
    double integral = 0;
    for (std::int64_t n = 0; n <= nmax; ++n) {
        while (next < entries.size() && entries[next].scale_exp <= n) {
            remaining -= Rational(entries[next].multiplicity) * rational_pow(p, -entries[next].scale_exp);
            ++next;
        }
        double ln_b = -static_cast<double>(n) * lnp;
        double ln_a = std::max(-static_cast<double>(n + 1) * lnp, -lnT);
        if (ln_a >= ln_b) break;
        double v = remaining.get_d() / static_cast<double>(p);
        integral += v * (std::exp((D - 1.0) * ln_b) - std::exp((D - 1.0) * ln_a)) / (D - 1.0);
    }
    return integral / lnT;
}

double average_minkowski_content_closed(const SelfSimilarSystem& sys) {
    RationalZeta rz = closed_form_zeta(sys);
    DimensionSet dims = complex_dimensions(sys);
    const double D = dims.D;
    const double p = static_cast<double>(sys.prime().value());
    const double value = dims.lines.front().residue.real() / (p * (1.0 - D));

    const double ln_r = rz.log_ratio();
    double top = 0;
    double bottom = 0;
    for (auto m : sys.reduced_gaps()) top += std::exp(static_cast<double>(m) * D * ln_r);
    for (auto n : sys.reduced_scaling()) bottom += static_cast<double>(n) * std::exp(static_cast<double>(n) * D * ln_r);
    const double rhs = top / (-ln_r * bottom) / (p * (1.0 - D));
    if (std::abs(value - rhs) >= 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "average content closed forms disagree: " << value << " vs " << rhs;
        throw ConsistencyError(os.str());
    }
    return value;
}

double average_minkowski_content_closed(const LengthSpectrum& ls) {
    if (ls.kind() == SpectrumKind::self_similar) return average_minkowski_content_closed(*ls.system());
    RationalZeta rz = spectrum_zeta(ls);
    DimensionSet dims = complex_dimensions(rz);
    const double D = dims.D;
    return dims.lines.front().residue.real() / (static_cast<double>(ls.prime().value()) * (1.0 - D));
}

double measurability_diagnostic(const LengthSpectrum& ls, double eps0) {
    if (!(eps0 > 0)) throw InvalidArgument("eps0 must be positive");
    const double D = content_dimension(ls);
    const double span = log_inverse_ratio(ls);
    const int points = 200;
    double lo = 0, hi = 0;
    for (int i = 0; i < points; ++i) {
        double eps = eps0 * std::exp(-span * static_cast<double>(i) / (points - 1));
        double v = thin_tube_volume(ls, Rational(eps)).get_d();
        double g = std::pow(eps, D - 1.0) * v;
        if (i == 0) lo = hi = g;
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    if (!(lo > 0)) throw InvalidArgument("eps0 is beyond the string: tube volume vanishes");
    return hi / lo;
}

double measurability_diagnostic(const SelfSimilarSystem& sys, double eps0) {
    return measurability_diagnostic(LengthSpectrum::self_similar(sys), eps0);
}

ContentReport content_report(const LengthSpectrum& ls, double T) {
    ContentReport r;
    r.D_used = content_dimension(ls);
    r.T_used = T;
    r.M_av_numeric = average_minkowski_content_numeric(ls, r.D_used, T);
    r.M_av_closed = average_minkowski_content_closed(ls);
    auto first = ls.first_terms(1);
    double largest = first.empty() ? 1.0 : std::pow(static_cast<double>(ls.prime().value()),
                                                    -static_cast<double>(first.front().scale_exp));
    r.oscillation_ratio = measurability_diagnostic(ls, largest * std::exp(-2.0 * log_inverse_ratio(ls)));
    return r;
}

}  // namespace padic
