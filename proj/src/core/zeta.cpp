#include "padic/zeta.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "padic/dimensions.hpp"

namespace padic {

namespace {

IntPolynomial sparse_sum(const std::vector<std::int64_t>& exps) {
    std::int64_t top = 0;
    for (auto e : exps) top = std::max(top, e);
    std::vector<BigInt> c(static_cast<std::size_t>(top + 1), BigInt(0));
    for (auto e : exps) c[static_cast<std::size_t>(e)] += 1;
    return IntPolynomial(std::move(c));
}

Complex length_pow(std::uint32_t p, std::int64_t n, Complex s) {
    return std::exp(-s * (static_cast<double>(n) * std::log(static_cast<double>(p))));
}

}  // namespace

double log_bigint(const BigInt& m) {
    if (m <= 0) throw InvalidArgument("log of nonpositive integer");
    long e = 0;
    double mant = mpz_get_d_2exp(&e, m.get_mpz_t());
    return std::log(mant) + static_cast<double>(e) * std::numbers::ln2;
}

double RationalZeta::log_scale() const { return static_cast<double>(d) * std::log(static_cast<double>(p.value())); }

double RationalZeta::period() const { return 2.0 * std::numbers::pi / log_scale(); }

Complex RationalZeta::z_of_s(Complex s) const { return std::exp(-s * log_scale()); }

RationalZeta make_rational_zeta(IntPolynomial num, IntPolynomial den, Prime p, std::int64_t d,
                                std::optional<SourceExponents> source) {
    if (d < 1) throw InvalidArgument("d must be a positive integer");
    if (den.is_zero()) throw InvalidArgument("zero denominator");
    IntPolynomial g = num.is_zero() ? IntPolynomial{1} : poly_gcd(num, den);
    if (g.degree() >= 1) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    BigInt c0 = den.coeff(0);
    if (c0 == 0) throw InvalidArgument("denominator vanishes at z = 0: " + den.to_string());
    if (c0 != 1 && c0 != -1) {
        throw InvalidArgument("denominator constant term must be +-1 after reduction, got " + c0.get_str());
    }
    if (c0 == -1) {
        num = BigInt(-1) * num;
        den = BigInt(-1) * den;
    }
    return RationalZeta{std::move(num), std::move(den), p, d, std::move(source)};
}

RationalZeta closed_form_zeta(const SelfSimilarSystem& sys) {
    require_valid(sys);
    auto n = sys.reduced_scaling();
    auto m = sys.reduced_gaps();
    IntPolynomial num = sparse_sum(m);
    IntPolynomial den = IntPolynomial{1} - sparse_sum(n);
    return make_rational_zeta(std::move(num), std::move(den), sys.prime(), sys.d(), SourceExponents{n, m});
}

RationalZeta euler_closed_form(Prime p) {
    // Same shape as a system with one map of ratio 1/p and a gap of measure 1.
    return make_rational_zeta(IntPolynomial{1}, IntPolynomial{1, -1}, p, 1, SourceExponents{{1}, {0}});
}

Complex zeta_eval(const RationalZeta& rz, Complex s) {
    Complex z = rz.z_of_s(s);
    Complex q = rz.den.eval(z);
    Complex dq = rz.den.derivative().eval(z);
    double scale = std::max(1.0, std::abs(z));
    if (q == 0.0 || std::abs(q) < 1e-13 * scale * std::abs(dq)) {
        Complex nearest = z;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : denominator_roots(rz)) {
            if (std::abs(r.z - z) < best) {
                best = std::abs(r.z - z);
                nearest = r.z;
            }
        }
        std::ostringstream os;
        os << "s = " << s << " is within tolerance of a pole (z root " << nearest << ")";
        throw PoleProximity(os.str(), nearest);
    }
    return rz.num.eval(z) / q;
}

double abscissa_of_convergence(const SelfSimilarSystem& sys) { return moran_dimension(sys); }

double abscissa_of_convergence(const LengthSpectrum& ls) {
    switch (ls.kind()) {
        case SpectrumKind::euler: return 0.0;
        case SpectrumKind::self_similar: return moran_dimension(*ls.system());
        case SpectrumKind::explicit_list: break;
    }
    throw InvalidArgument("abscissa needs an euler or self-similar generator");
}

PartialSum zeta_partial_sum(const LengthSpectrum& ls, Complex s, std::size_t terms) {
    if (terms < 1) throw InvalidArgument("terms must be >= 1");
    const std::uint32_t p = ls.prime();
    const double lnp = std::log(static_cast<double>(p));
    auto terms_list = ls.first_terms(terms);
    Complex value = 0;
    double at_sigma = 0;
    for (const auto& e : terms_list) {
        double lm = log_bigint(e.multiplicity);
        value += std::exp(lm - s * (static_cast<double>(e.scale_exp) * lnp));
        at_sigma += std::exp(lm - s.real() * static_cast<double>(e.scale_exp) * lnp);
    }
    PartialSum out{value, 0.0, false};
    const double inf = std::numeric_limits<double>::infinity();
    const double sigma = s.real();
    switch (ls.kind()) {
        case SpectrumKind::euler:
            if (sigma <= 0) {
                out.below_abscissa = true;
                out.tail_bound = inf;
            } else {
                double q = std::exp(-sigma * lnp);
                out.tail_bound = std::pow(q, static_cast<double>(terms_list.size())) / (1.0 - q);
            }
            break;
        case SpectrumKind::self_similar: {
            double D = moran_dimension(*ls.system());
            if (sigma <= D) {
                out.below_abscissa = true;
                out.tail_bound = inf;
            } else {
                double full = zeta_eval(closed_form_zeta(*ls.system()), Complex(sigma, 0.0)).real();
                out.tail_bound = std::max(0.0, full - at_sigma) + 1e-15 * full;
            }
            break;
        }
        case SpectrumKind::explicit_list: {
            double rest = 0;
            const auto& all = ls.explicit_entries();
            for (std::size_t i = terms_list.size(); i < all.size(); ++i) {
                rest += std::exp(log_bigint(all[i].multiplicity) - sigma * static_cast<double>(all[i].scale_exp) * lnp);
            }
            out.tail_bound = rest;
            break;
        }
    }
    return out;
}

IntegralCheck verify_integral_representation(const LengthSpectrum& ls, Complex s, std::int64_t scale_cutoff) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (ls.kind() != SpectrumKind::explicit_list && s.real() <= abscissa_of_convergence(ls)) {
        return {Complex(nan, nan), Complex(nan, nan), std::numeric_limits<double>::infinity(), true};
    }
    const std::uint32_t p = ls.prime();
    auto entries = ls.prefix(scale_cutoff);
    if (entries.empty()) throw InvalidArgument("scale cutoff leaves no lengths");

    // tail[j] = sum_{i >= j} m_i L_i, exact; V = tail[j+1] / p on (L_{j+1}, L_j].
    Rational tail = total_length(ls).upper;
    Complex s1 = s - 1.0;
    Complex lhs = tail.get_d() * length_pow(p, entries[0].scale_exp, s1);
    for (std::size_t j = 0; j < entries.size(); ++j) {
        tail -= Rational(entries[j].multiplicity) * rational_pow(p, -entries[j].scale_exp);
        bool last = j + 1 == entries.size();
        if (last && ls.kind() != SpectrumKind::explicit_list) break;
        Complex upper = length_pow(p, entries[j].scale_exp, s1);
        Complex lower = last ? Complex(0.0, 0.0) : length_pow(p, entries[j + 1].scale_exp, s1);
        lhs -= tail.get_d() * (upper - lower);
    }

    Complex zeta;
    switch (ls.kind()) {
        case SpectrumKind::euler: zeta = zeta_eval(euler_closed_form(ls.prime()), s); break;
        case SpectrumKind::self_similar: zeta = zeta_eval(closed_form_zeta(*ls.system()), s); break;
        case SpectrumKind::explicit_list:
            zeta = 0;
            for (const auto& e : ls.explicit_entries()) {
                zeta += std::exp(log_bigint(e.multiplicity)) * length_pow(p, e.scale_exp, s);
            }
            break;
    }
    return {lhs, zeta, std::abs(lhs - zeta), false};
}

}  // namespace padic
