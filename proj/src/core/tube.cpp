#include "padic/tube.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace padic {

namespace {

// Largest K with p^-K >= eps (K = -1 when eps exceeds every length).
std::int64_t last_scale_at_least(std::uint32_t p, const Rational& eps) {
    if (eps <= 0) throw InvalidArgument("eps must be positive");
    if (eps > 1) return -1;
    std::int64_t k = 0;
    Rational len = 1;
    Rational step(BigInt(1), BigInt(p));
    while (len * step >= eps) {
        len *= step;
        ++k;
    }
    return k;
}

Rational kept_length(const LengthSpectrum& ls, std::int64_t k) {
    Rational s = 0;
    if (k < 0) return s;
    for (const auto& e : ls.prefix(k)) s += Rational(e.multiplicity) * rational_pow(ls.prime(), -e.scale_exp);
    return s;
}

Rational one_minus_inv(std::uint32_t p) {
    Rational f(BigInt(p - 1), BigInt(p));
    f.canonicalize();
    return f;
}

const DimensionLine& line_at(const DimensionSet& dims, int u) {
    if (u < 1 || u > static_cast<int>(dims.lines.size())) {
        throw InvalidArgument("line index " + std::to_string(u) + " out of range 1.." + std::to_string(dims.lines.size()));
    }
    return dims.lines[static_cast<std::size_t>(u - 1)];
}

bool half_period_line(const RationalZeta& rz, const DimensionLine& line) {
    return line.omega.imag() == rz.period() / 2.0;
}

}  // namespace

Rational thin_tube_volume(const LengthSpectrum& ls, const Rational& eps) {
    std::int64_t k = last_scale_at_least(ls.prime(), eps);
    Rational v = (total_length(ls).upper - kept_length(ls, k)) / Rational(ls.prime().value());
    v.canonicalize();
    return v;
}

Rational thick_tube_volume(const LengthSpectrum& ls, const Rational& eps) {
    std::int64_t k = last_scale_at_least(ls.prime(), eps);
    Rational kept = kept_length(ls, k);
    Rational v = one_minus_inv(ls.prime()) * kept + (total_length(ls).upper - kept);
    v.canonicalize();
    return v;
}

Rational boundary_measure(const LengthSpectrum& ls) {
    Rational v = one_minus_inv(ls.prime()) * total_length(ls).upper;
    v.canonicalize();
    return v;
}

double fourier_frac_pow(double b, double x, int n_max) {
    if (!(b > 0.0 && b < 1.0)) throw InvalidArgument("fourier_frac_pow needs b in (0, 1)");
    if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
    if (x == std::floor(x)) throw InvalidArgument("fourier_frac_pow is undefined at integer x (jump point)");
    const double lb = std::log(b);
    const double two_pi = 2.0 * std::numbers::pi;
    double acc = 1.0 / lb;
    for (int n = 1; n <= n_max; ++n) {
        Complex t = std::polar(1.0, two_pi * n * x) / Complex(lb, two_pi * n);
        acc += 2.0 * t.real();
    }
    return (b - 1.0) / b * acc;
}

Complex tubular_residue(const RationalZeta& rz, const DimensionLine& line, long n, double eps) {
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    const Complex w = line.omega + Complex(0.0, static_cast<double>(n) * rz.period());
    const Complex a = 1.0 - w;
    if (std::abs(a) == 0.0) throw InvalidArgument("complex dimension collides with s = 1");
    const double p = static_cast<double>(rz.p.value());
    const double L = std::log(eps);
    const Complex lead = std::exp(a * L) / p;

    if (line.multiplicity == 1) {
        Complex res = std::isfinite(line.residue.real()) ? line.residue : residue_at(rz, line);
        return res * lead / a;
    }
    std::vector<Complex> pp = line.principal_part.size() == static_cast<std::size_t>(line.multiplicity)
                                  ? line.principal_part
                                  : principal_part_at(rz, line, line.multiplicity);
    // Taylor coefficients of eps^{1-w-t} / (p (a - t)) at t = 0.
    Complex acc = 0;
    for (int k = 1; k <= line.multiplicity; ++k) {
        Complex fk = 0;
        double fact = 1.0;
        for (int j = 0; j < k; ++j) {
            if (j > 0) fact *= j;
            fk += std::pow(-L, static_cast<double>(j)) / fact / std::pow(a, static_cast<double>(k - j));
        }
        acc += pp[static_cast<std::size_t>(k - 1)] * fk;
    }
    return acc * lead;
}

double explicit_tube_formula(const RationalZeta& rz, const DimensionSet& dims, double eps, const TubeSeriesConfig& cfg) {
    if (cfg.n_max < 1) throw InvalidArgument("n_max must be >= 1");
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    std::size_t count = cfg.lines == TubeSeriesConfig::Lines::first_only ? std::min<std::size_t>(1, dims.lines.size())
                                                                         : dims.lines.size();
    const long N = cfg.n_max;
    Complex total = 0;
    for (std::size_t u = 0; u < count; ++u) {
        const auto& line = dims.lines[u];
        bool shifted = half_period_line(rz, line);
        Complex line_sum = 0;
        // n = 0, then the conjugate partners pair by pair.
        for (long k = 0; k <= N; ++k) {
            double w = cfg.summation == TubeSeriesConfig::Summation::cesaro
                           ? 1.0 - static_cast<double>(k) / static_cast<double>(N + 1)
                           : 1.0;
            long partner = shifted ? -k - 1 : -k;
            Complex t = tubular_residue(rz, line, k, eps);
            if (partner != k) t += tubular_residue(rz, line, partner, eps);
            line_sum += w * t;
        }
        total += line_sum;
    }
    // A complex line and its conjugate contribute conjugate sums.
    if (std::abs(total.imag()) > 1e-10 * std::max(1.0, std::abs(total.real()))) {
        std::ostringstream os;
        os.precision(17);
        os << "tube series is not conjugate-symmetric at eps = " << eps << ": imaginary part " << total.imag();
        throw ConsistencyError(os.str());
    }
    return total.real();
}

double explicit_tube_formula(const SelfSimilarSystem& sys, double eps, const TubeSeriesConfig& cfg) {
    RationalZeta rz = closed_form_zeta(sys);
    std::int64_t edge = sys.scaling_exps().back() - sys.gap_exps().back();
    double limit = std::pow(static_cast<double>(sys.prime().value()), static_cast<double>(edge));
    if (!(eps > 0 && eps < limit)) {
        std::ostringstream os;
        os << "eps = " << eps << " outside the validity range (0, " << limit << ")";
        throw InvalidArgument(os.str());
    }
    return explicit_tube_formula(rz, complex_dimensions(sys), eps, cfg);
}

Complex periodic_G(const RationalZeta& rz, const DimensionSet& dims, int u, double x, int n_max) {
    if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
    const auto& line = line_at(dims, u);
    if (line.multiplicity != 1) throw InvalidArgument("periodic_G needs a simple line");
    const double two_pi = 2.0 * std::numbers::pi;
    const double P = rz.period();
    Complex acc = 0;
    for (long k = 0; k <= n_max; ++k) {
        for (long n : {k, -k}) {
            acc += std::polar(1.0, two_pi * static_cast<double>(n) * x) / (1.0 - line.omega - Complex(0.0, n * P));
            if (k == 0) break;
        }
    }
    return line.residue / static_cast<double>(rz.p.value()) * acc;
}

Complex periodic_G(const SelfSimilarSystem& sys, int u, double x, int n_max) {
    return periodic_G(closed_form_zeta(sys), complex_dimensions(sys), u, x, n_max);
}

TruncatedTube truncated_tube(const SelfSimilarSystem& sys, double eps, int n_max) {
    RationalZeta rz = closed_form_zeta(sys);
    DimensionSet dims = complex_dimensions(sys);
    double x = lattice_coordinate(eps, rz.log_scale());
    Complex g = periodic_G(rz, dims, 1, x, n_max);
    double main = std::pow(eps, 1.0 - dims.D) * g.real();
    double delta = dims.lines.size() > 1 ? dims.D - dims.lines[1].omega.real() : dims.D;
    return {main, delta};
}

double lattice_coordinate(double eps, double ln_inv_r) { return -std::log(eps) / ln_inv_r; }

double avoid_jump(double eps, double ln_inv_r, double margin) {
    double x = lattice_coordinate(eps, ln_inv_r);
    double k = std::floor(x);
    double f = std::clamp(x - k, margin, 1.0 - margin);
    return std::exp(-(k + f) * ln_inv_r);
}

std::vector<double> jump_free_grid(double lo, double hi, int count, double ln_inv_r, double margin) {
    if (!(lo > 0 && hi >= lo) || count < 1) throw InvalidArgument("bad eps grid");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    double a = std::log(lo);
    double b = std::log(hi);
    for (int i = 0; i < count; ++i) {
        double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        out.push_back(avoid_jump(std::exp(a + t * (b - a)), ln_inv_r, margin));
    }
    return out;
}

}  // namespace padic
