// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "padic/archimedean.hpp"
#include "padic/ball.hpp"
#include "padic/dimensions.hpp"
#include "padic/minkowski.hpp"
#include "padic/tube.hpp"
#include "padic/zeta.hpp"

using namespace padic;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

const double ln2 = std::numbers::ln2;
const double ln3 = std::log(3.0);
const double phi = std::numbers::phi;

// N(z0) / (dz/ds * Q'(z0)) with z = e^{-sL}, so dz/ds = -L z.
Complex residue_by_derivative(const RationalZeta& rz, Complex z0) {
    return rz.num.eval(z0) / (-rz.log_scale() * z0 * rz.den.derivative().eval(z0));
}

// sum r^{m_k D} / (ln(1/r) sum n_j r^{n_j D}) over the reduced exponents.
double residue_by_exponents(const SelfSimilarSystem& sys, double D) {
    const double L = static_cast<double>(sys.d()) * std::log(static_cast<double>(sys.prime().value()));
    double top = 0, bottom = 0;
    for (auto m : sys.reduced_gaps()) top += std::exp(-static_cast<double>(m) * D * L);
    for (auto n : sys.reduced_scaling()) bottom += static_cast<double>(n) * std::exp(-static_cast<double>(n) * D * L);
    return top / (L * bottom);
}

Outcome cantor_constants() {
    Outcome o;
    const auto sys = cantor_string_3();
    const double D = moran_dimension(sys);
    const double res = 1.0 / (2.0 * ln3);
    const auto rz = closed_form_zeta(sys);
    const auto dims = complex_dimensions(sys);
    const double ra = residue_by_derivative(rz, std::exp(-D * rz.log_scale())).real();
    const double rb = residue_by_exponents(sys, D);
    o.require(std::abs(D - ln2 / ln3) < 1e-12, "D");
    o.require(std::abs(ra - res) < 1e-12, "residue via z-derivative");
    o.require(std::abs(rb - res) < 1e-12, "residue via exponents");
    o.require(std::abs(dims.lines.front().residue.real() - res) < 1e-12, "library residue");
    o.require(std::abs(dims.period - 2.0 * std::numbers::pi / ln3) < 1e-12, "period");
    o.detail << "D=" << D << " res=" << ra << "/" << rb << " P=" << dims.period;
    return o;
}

Outcome fibonacci_structure() {
    Outcome o;
    const auto dims = complex_dimensions(fibonacci_string_2());
    // 1 - z - z^2 = 0 at z = 1/phi and z = -phi.
    const Complex w1 = -std::log(Complex(1.0 / phi, 0.0)) / ln2;
    const Complex w2(-std::log(phi) / ln2, std::numbers::pi / ln2);
    o.require(dims.lines.size() == 2, "two lines");
    if (dims.lines.size() == 2) {
        o.require(std::abs(dims.lines[0].omega - w1) < 1e-10, "first line at log2(phi)");
        o.require(std::abs(dims.lines[1].omega - w2) < 1e-10, "second line at -log2(phi) + i pi/ln2");
        o.require(dims.lines[0].multiplicity == 1 && dims.lines[1].multiplicity == 1, "simple");
        const double res = 1.0 / ((phi + 2.0) * ln2);
        o.require(std::abs(dims.lines[0].residue - res) < 1e-10, "residue at D");
        o.detail << "w1=" << dims.lines[0].omega << " w2=" << dims.lines[1].omega << " res=" << dims.lines[0].residue.real();
    }
    return o;
}

Outcome tube_oracle() {
    Outcome o;
    struct Case {
        const char* name;
        LengthSpectrum ls;
        RationalZeta rz;
    };
    std::vector<Case> cases{
        {"cantor3", LengthSpectrum::self_similar(cantor_string_3()), closed_form_zeta(cantor_string_3())},
        {"euler2", euler_string(Prime(2)), euler_closed_form(Prime(2))},
        {"euler3", euler_string(Prime(3)), euler_closed_form(Prime(3))},
        {"fibonacci2", LengthSpectrum::self_similar(fibonacci_string_2()), closed_form_zeta(fibonacci_string_2())},
    };
    o.detail.precision(3);
    for (const auto& c : cases) {
        const auto dims = complex_dimensions(c.rz);
        const auto grid = jump_free_grid(1e-6, 0.2, 50, c.rz.log_scale());
        std::vector<double> err4, err8;
        double ces4 = 0, ces8 = 0;
        for (double eps : grid) {
            const double exact = thin_tube_volume(c.ls, Rational(eps)).get_d();
            TubeSeriesConfig cfg;
            cfg.n_max = 4000;
            err4.push_back(std::abs(explicit_tube_formula(c.rz, dims, eps, cfg) - exact));
            cfg.n_max = 8000;
            err8.push_back(std::abs(explicit_tube_formula(c.rz, dims, eps, cfg) - exact));
            // Cesaro means, reported for comparison only.
            cfg.summation = TubeSeriesConfig::Summation::cesaro;
            ces8 = std::max(ces8, std::abs(explicit_tube_formula(c.rz, dims, eps, cfg) - exact));
            cfg.n_max = 4000;
            ces4 = std::max(ces4, std::abs(explicit_tube_formula(c.rz, dims, eps, cfg) - exact));
        }
        const double max4 = *std::max_element(err4.begin(), err4.end());
        const double max8 = *std::max_element(err8.begin(), err8.end());
        std::nth_element(err4.begin(), err4.begin() + 25, err4.end());
        double med = err4[25];
        std::nth_element(err4.begin(), err4.begin() + 24, err4.begin() + 25);
        med = (med + err4[24]) / 2.0;
        const std::string n = c.name;
        o.require(max4 < 1e-3, n + " max error");
        o.require(med < 1e-4, n + " median error");
        o.require(max4 / max8 >= 1.5, n + " doubling gain");
        o.detail << n << ": max=" << max4 << " med=" << med << " gain=" << max4 / max8
                 << " (cesaro gain=" << ces4 / ces8 << "); ";
    }
    return o;
}

Outcome euler_closed_form_check() {
    Outcome o;
    std::mt19937_64 rng(4242);
    int checked = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto ls = euler_string(Prime(p));
        for (int i = 0; i < 100; ++i) {
            const long b = 1 + static_cast<long>(rng() % 1000000000);
            const long a = 1 + static_cast<long>(rng() % static_cast<unsigned long>(b));
            Rational eps(a, b);
            eps.canonicalize();
            long k = 0;
            while (rational_pow(p, -(k + 1)) >= eps) ++k;
            Rational expect = Rational(BigInt(1), BigInt(p)) / Rational(p - 1) * rational_pow(p, -k);
            expect.canonicalize();
            if (thin_tube_volume(ls, eps) != expect) {
                o.require(false, "p=" + std::to_string(p) + " eps=" + eps.get_str());
            }
            ++checked;
        }
    }
    o.detail << checked << " exact comparisons";
    return o;
}

Outcome average_content() {
    Outcome o;
    o.detail.precision(10);
    const double s5 = std::sqrt(5.0);
    struct Case {
        const char* name;
        SelfSimilarSystem sys;
        double target;
    };
    std::vector<Case> cases{
        {"cantor3", cantor_string_3(), 1.0 / (6.0 * (ln3 - ln2))},
        {"fibonacci2", fibonacci_string_2(), 1.0 / ((5.0 + s5) * std::log(s5 - 1.0))},
    };
    for (const auto& c : cases) {
        const auto ls = LengthSpectrum::self_similar(c.sys);
        const auto dims = complex_dimensions(c.sys);
        const double D = dims.D;
        const double p = static_cast<double>(c.sys.prime().value());
        const double closed = average_minkowski_content_closed(c.sys);
        const double via_residue = dims.lines.front().residue.real() / (p * (1.0 - D));
        const double via_exponents = residue_by_exponents(c.sys, D) / (p * (1.0 - D));
        const double numeric = average_minkowski_content_numeric(ls, D, periods_to_T(ls, 40));
        const double gap = std::abs(numeric - closed) / closed;
        const std::string n = c.name;
        o.require(gap < 1e-2, n + " numeric vs closed");
        o.require(std::abs(closed - via_residue) < 1e-12, n + " residue expression");
        o.require(std::abs(closed - via_exponents) < 1e-12, n + " exponent expression");
        o.require(std::abs(closed - c.target) < 1e-12, n + " target");
        o.detail << n << ": numeric=" << numeric << " closed=" << closed << " rel=" << gap << "; ";
    }
    return o;
}

Outcome integral_representation() {
    Outcome o;
    o.detail.precision(3);
    std::vector<std::pair<const char*, LengthSpectrum>> cases{
        {"cantor3", LengthSpectrum::self_similar(cantor_string_3())},
        {"fibonacci2", LengthSpectrum::self_similar(fibonacci_string_2())},
        {"euler2", euler_string(Prime(2))},
    };
    for (const auto& [name, ls] : cases) {
        const double D = abscissa_of_convergence(ls);
        double worst = 0;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                Complex s(D + 0.1 + (1.5 - D - 0.1) * i / 4.0, -10.0 + 5.0 * j);
                worst = std::max(worst, verify_integral_representation(ls, s).residual);
            }
        }
        o.require(worst < 1e-9, std::string(name) + " residual");
        o.detail << name << ": max residual=" << worst << "; ";
    }
    return o;
}

BigInt mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

void multisets(int max_exp, std::size_t max_size, std::vector<std::int64_t>& cur, std::int64_t from,
               const std::function<void(const std::vector<std::int64_t>&)>& f) {
    if (!cur.empty()) f(cur);
    if (cur.size() == max_size) return;
    for (std::int64_t e = from; e <= max_exp; ++e) {
        cur.push_back(e);
        multisets(max_exp, max_size, cur, e, f);
        cur.pop_back();
    }
}

std::vector<std::int64_t> greedy_gaps(std::uint32_t p, const std::vector<std::int64_t>& n) {
    Rational rest = 1;
    for (auto e : n) rest -= rational_pow(p, -e);
    std::vector<std::int64_t> m;
    for (std::int64_t k = 1; rest > 0 && k < 40; ++k) {
        while (rest >= rational_pow(p, -k)) {
            rest -= rational_pow(p, -k);
            m.push_back(k);
        }
    }
    return m;
}

Outcome property_suites() {
    Outcome o;
    std::mt19937_64 rng(20240611);

    int trichotomy_violations = 0;
    const std::uint32_t primes[] = {2, 3, 5, 7};
    for (int t = 0; t < 10000; ++t) {
        const std::uint32_t p = primes[rng() % 4];
        const long n1 = static_cast<long>(rng() % 7), n2 = static_cast<long>(rng() % 7);
        const BigInt a1 = static_cast<unsigned long>(rng() % 5000);
        const BigInt a2 = rng() % 3 == 0
                              ? a1 + int_pow(p, static_cast<unsigned long>(std::min(n1, n2))) * BigInt(static_cast<unsigned long>(rng() % 9))
                              : BigInt(static_cast<unsigned long>(rng() % 5000));
        const BallRelation r =
            ball_relation(PAdicBall::from_integer(Prime(p), a1, n1), PAdicBall::from_integer(Prime(p), a2, n2));
        const BigInt m = int_pow(p, static_cast<unsigned long>(std::min(n1, n2)));
        BallRelation expect = mod(a1, m) != mod(a2, m) ? BallRelation::disjoint
                              : n1 == n2               ? BallRelation::equal
                              : n1 > n2                ? BallRelation::first_inside_second
                                                       : BallRelation::second_inside_first;
        if (r != expect) ++trichotomy_violations;
    }
    o.require(trichotomy_violations == 0, "trichotomy");

    int systems = 0, dp_mismatch = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        std::vector<std::int64_t> cur;
        multisets(4, 4, cur, 1, [&](const std::vector<std::int64_t>& n) {
            Rational s = 0;
            for (auto e : n) s += rational_pow(p, -e);
            if (n.size() < 2 || s >= 1) return;
            SelfSimilarSystem sys(Prime(p), n, greedy_gaps(p, n));
            if (!validate_system(sys).valid()) {
                ++dp_mismatch;
                return;
            }
            // Words of length <= 8 determine every scale below mmin + 9 nmin.
            const std::int64_t nmin = *std::min_element(n.begin(), n.end());
            const std::int64_t mmin = *std::min_element(sys.gap_exps().begin(), sys.gap_exps().end());
            const std::int64_t top = mmin + 9 * nmin - 1;
            std::map<std::int64_t, long> brute;
            std::function<void(std::int64_t, int)> walk = [&](std::int64_t w, int len) {
                for (auto m : sys.gap_exps())
                    if (w + m <= top) ++brute[w + m];
                if (len == 8) return;
                for (auto e : n) walk(w + e, len + 1);
            };
            walk(0, 0);
            std::map<std::int64_t, long> dp;
            for (const auto& e : self_similar_spectrum(sys, top)) dp[e.scale_exp] = e.multiplicity.get_si();
            if (dp != brute) ++dp_mismatch;
            ++systems;
        });
    }
    o.require(dp_mismatch == 0 && systems > 0, "DP vs brute force");

    auto fib = self_similar_spectrum(fibonacci_string_2(), 31);
    bool fib_ok = fib.size() == 30;
    BigInt a = 1, b = 1;
    for (std::size_t m = 0; fib_ok && m < 30; ++m) {
        fib_ok = fib[m].scale_exp == static_cast<std::int64_t>(m) + 2 && fib[m].multiplicity == a;
        BigInt c = a + b;
        a = b;
        b = c;
    }
    o.require(fib_ok, "Fibonacci recursion");

    int decompose_bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::uint32_t p = t % 2 ? 2 : 3;
        std::vector<PAdicBall> set;
        const int count = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < count; ++i) {
            set.push_back(PAdicBall::from_integer(Prime(p), BigInt(static_cast<unsigned long>(rng() % 200)),
                                                  1 + static_cast<long>(rng() % 4)));
        }
        const PAdicBall amb = PAdicBall::from_integer(Prime(p), 0, 0);
        const auto once = canonical_decompose(set, amb);
        if (canonical_decompose(once, amb) != once) ++decompose_bad;
        std::shuffle(set.begin(), set.end(), rng);
        if (canonical_decompose(set, amb) != once) ++decompose_bad;
    }
    o.require(decompose_bad == 0, "canonical_decompose");

    o.detail << "trichotomy violations=" << trichotomy_violations << ", DP systems=" << systems
             << " mismatches=" << dp_mismatch << ", Fibonacci m<=30 " << (fib_ok ? "ok" : "bad")
             << ", decompose failures=" << decompose_bad;
    return o;
}

Outcome non_measurability() {
    Outcome o;
    o.detail.precision(6);
    for (auto [name, sys] : {std::pair{"cantor3", cantor_string_3()}, std::pair{"fibonacci2", fibonacci_string_2()}}) {
        const auto ls = LengthSpectrum::self_similar(sys);
        const double ratio = content_report(ls, periods_to_T(ls, 40)).oscillation_ratio;
        o.require(ratio > 1.0 + 1e-3, std::string(name) + " oscillation");
        o.detail << name << " ratio=" << ratio << "; ";
    }
    const auto rep = comparison_report(jump_free_grid(1e-6, 0.15, 50, ln3), 4000, std::pow(3.0, 40));
    o.require(rep.dimensions_equal, "identical dimension sets");
    double worst = 0;
    for (const auto& r : rep.rows) worst = std::max(worst, std::abs(r.v_cs.get_d() - r.v_cs_series));
    o.require(worst < 1e-3, "real Cantor closed form");
    o.detail << "dims equal=" << (rep.dimensions_equal ? "yes" : "no") << " real Cantor max error=" << worst;
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "Cantor constants", 1, cantor_constants},
        {2, "Fibonacci structure", 1, fibonacci_structure},
        {3, "tube oracle vs series", 30, tube_oracle},
        {4, "Euler closed form", 1, euler_closed_form_check},
        {5, "average Minkowski content", 5, average_content},
        {6, "integral representation", 5, integral_representation},
        {7, "property suites", 60, property_suites},
        {8, "non-measurability certificates", 10, non_measurability},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs < c.budget_s, "runtime budget");
        if (!o.pass) ++failed;
        std::printf("%s %d %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
