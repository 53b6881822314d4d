#include "padic/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace padic {

namespace {

using Series = std::vector<Complex>;

Series series_mul(const Series& a, const Series& b, std::size_t len) {
    Series out(len, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// sum_i coeffs[i] u^i, truncated to len terms; u has zero constant term.
Series series_compose(const std::vector<Complex>& coeffs, const Series& u, std::size_t len) {
    Series out(len, Complex(0.0, 0.0));
    Series power(len, Complex(0.0, 0.0));
    power[0] = 1.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (std::size_t k = 0; k < len; ++k) out[k] += coeffs[i] * power[k];
        power = series_mul(power, u, len);
    }
    return out;
}

Series series_div(const Series& a, const Series& b, std::size_t len) {
    Series q(len, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < len; ++k) {
        Complex acc = k < a.size() ? a[k] : Complex(0.0, 0.0);
        for (std::size_t j = 1; j <= k && j < b.size(); ++j) acc -= b[j] * q[k - j];
        q[k] = acc / b[0];
    }
    return q;
}

// Trapezoidal rule on a circle; exact up to aliasing for meromorphic f.
Complex contour_residue(const RationalZeta& rz, Complex center, double radius, int points) {
    Complex acc = 0;
    for (int k = 0; k < points; ++k) {
        double th = 2.0 * std::numbers::pi * (k + 0.5) / points;
        Complex h = std::polar(radius, th);
        acc += h * zeta_eval(rz, center + h);
    }
    return acc / static_cast<double>(points);
}

double pole_separation(const RationalZeta& rz, const DimensionLine& line) {
    double P = rz.period();
    double best = P;
    for (const auto& r : denominator_roots(rz)) {
        if (std::abs(r.z - line.z_root) <= 1e-12 * std::max(1.0, std::abs(r.z))) continue;
        Complex w = omega_of_z(rz, r.z);
        for (int k = -1; k <= 1; ++k) best = std::min(best, std::abs(w + Complex(0.0, k * P) - line.omega));
    }
    return best;
}

// Re descending. Real parts that agree to rounding (roots of equal modulus,
// as for a denominator in z^q) tie, and then the line nearest the real axis
// comes first.
bool line_order(const DimensionLine& a, const DimensionLine& b) {
    double ra = a.omega.real(), rb = b.omega.real();
    if (std::abs(ra - rb) > 1e-12 * std::max(1.0, std::abs(ra))) return ra > rb;
    double ia = std::abs(a.omega.imag()), ib = std::abs(b.omega.imag());
    if (ia != ib) return ia < ib;
    return a.omega.imag() < b.omega.imag();
}

}  // namespace

double moran_dimension(const SelfSimilarSystem& sys) {
    require_valid(sys);
    const double lnp = std::log(static_cast<double>(sys.prime().value()));
    auto f = [&](double s) {
        double acc = -1.0;
        for (auto n : sys.scaling_exps()) acc += std::exp(-static_cast<double>(n) * s * lnp);
        return acc;
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) > 0) lo = mid;
        else hi = mid;
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

std::vector<PolynomialRoot> denominator_roots(const RationalZeta& rz, double tol) {
    if (rz.den.degree() < 1) return {};
    return polynomial_roots(rz.den, tol);
}

Complex omega_of_z(const RationalZeta& rz, Complex z) {
    if (z == 0.0) throw InvalidArgument("z = 0 corresponds to no finite s");
    double c = rz.log_scale();
    // + 0.0 turns -0.0 into 0.0 so that serialized output is stable.
    double re = -std::log(std::abs(z)) / c + 0.0;
    if (z.imag() == 0.0 && z.real() < 0.0) return {re, rz.period() / 2.0};
    return {re, -std::arg(z) / c + 0.0};
}

DimensionSet complex_dimensions(const RationalZeta& rz) {
    DimensionSet out;
    out.period = rz.period();
    for (const auto& r : denominator_roots(rz)) {
        DimensionLine line;
        line.z_root = r.z;
        line.omega = omega_of_z(rz, r.z);
        line.multiplicity = r.multiplicity;
        line.principal_part = principal_part_at(rz, line, r.multiplicity);
        if (r.multiplicity == 1) {
            line.residue = residue_at(rz, line);
            line.principal_part[0] = line.residue;
        } else {
            double nan = std::numeric_limits<double>::quiet_NaN();
            line.residue = Complex(nan, nan);
        }
        out.lines.push_back(std::move(line));
    }
    std::sort(out.lines.begin(), out.lines.end(), line_order);
    out.D = out.lines.empty() ? -std::numeric_limits<double>::infinity() : out.lines.front().omega.real();
    return out;
}

DimensionSet complex_dimensions(const SelfSimilarSystem& sys) {
    double D = moran_dimension(sys);
    DimensionSet out = complex_dimensions(closed_form_zeta(sys));
    if (out.lines.empty()) throw ConsistencyError("self-similar zeta function has no poles");
    const auto& first = out.lines.front();
    if (first.multiplicity != 1 || first.omega.imag() != 0.0 || std::abs(first.omega.real() - D) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "leading complex dimension " << first.omega << " does not match Moran root " << D;
        throw ConsistencyError(os.str());
    }
    out.D = D;
    return out;
}

Complex residue_at(const RationalZeta& rz, const DimensionLine& line) {
    if (line.multiplicity != 1) throw InvalidArgument("residue_at needs a simple pole; use principal_part_at");
    const Complex z0 = line.z_root;
    const double ln_r = rz.log_ratio();
    Complex a = rz.num.eval(z0) / (rz.den.derivative().eval(z0) * z0 * ln_r);

    Complex b;
    if (rz.source) {
        Complex top = 0;
        Complex bottom = 0;
        for (auto m : rz.source->gaps) top += std::exp(static_cast<double>(m) * line.omega * ln_r);
        for (auto n : rz.source->scaling) bottom += static_cast<double>(n) * std::exp(static_cast<double>(n) * line.omega * ln_r);
        b = top / (-ln_r * bottom);
    } else {
        b = contour_residue(rz, line.omega, 0.25 * pole_separation(rz, line), 64);
    }
    if (std::abs(a - b) >= 1e-10 * std::abs(a)) {
        std::ostringstream os;
        os.precision(17);
        os << "residue formulas disagree at omega = " << line.omega << ": " << a << " vs " << b;
        throw ConsistencyError(os.str());
    }
    return a;
}

std::vector<Complex> principal_part_at(const RationalZeta& rz, const DimensionLine& line, int order) {
    const int m = line.multiplicity;
    if (order < 1 || order > m) {
        throw InvalidArgument("principal part order " + std::to_string(order) + " exceeds pole multiplicity " +
                              std::to_string(m));
    }
    const auto len = static_cast<std::size_t>(2 * m);
    const double c = rz.log_scale();
    const Complex z0 = line.z_root;

    // u(t) = z(omega + t) - z0 = z0 (e^{-ct} - 1).
    Series u(len, Complex(0.0, 0.0));
    double fact = 1.0;
    for (std::size_t k = 1; k < len; ++k) {
        fact *= static_cast<double>(k);
        u[k] = z0 * std::pow(-c, static_cast<double>(k)) / fact;
    }
    std::vector<Complex> pt = rz.num.taylor_at(z0);
    std::vector<Complex> qt = rz.den.taylor_at(z0);
    for (int i = 0; i < m && i < static_cast<int>(qt.size()); ++i) qt[static_cast<std::size_t>(i)] = 0.0;

    Series A = series_compose(pt, u, len);
    Series B = series_compose(qt, u, len);
    Series Bt(B.begin() + m, B.end());
    Series L = series_div(A, Bt, static_cast<std::size_t>(m));

    std::vector<Complex> out(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) out[static_cast<std::size_t>(k)] = L[static_cast<std::size_t>(m - k - 1)];
    return out;
}

std::vector<DimensionLine> zeros_of_zeta(const RationalZeta& rz) {
    std::vector<DimensionLine> out;
    if (rz.num.degree() < 1) return out;
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : polynomial_roots(rz.num)) {
        if (r.z == 0.0) continue;
        DimensionLine line;
        line.z_root = r.z;
        line.omega = omega_of_z(rz, r.z);
        line.multiplicity = r.multiplicity;
        line.residue = Complex(nan, nan);
        out.push_back(std::move(line));
    }
    std::sort(out.begin(), out.end(), line_order);
    return out;
}

}  // namespace padic
