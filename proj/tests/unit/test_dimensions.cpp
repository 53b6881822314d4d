#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <numbers>

#include "padic/dimensions.hpp"

using namespace padic;

namespace {

const double ln2 = std::numbers::ln2;
const double ln3 = std::log(3.0);
const double phi = (1 + std::sqrt(5.0)) / 2;

// (1 / 2 pi i) \oint (s - c)^k zeta(s) ds on a circle, trapezoid rule.
Complex contour_moment(const RationalZeta& rz, Complex c, double radius, int k, int points = 512) {
    Complex acc = 0;
    for (int j = 0; j < points; ++j) {
        double th = 2 * std::numbers::pi * j / points;
        Complex e = std::polar(1.0, th);
        Complex s = c + radius * e;
        acc += std::pow(radius * e, k) * zeta_eval(rz, s) * radius * e;
    }
    return acc / static_cast<double>(points);
}

void for_each_system(int max_exp, int max_size, const std::function<void(const SelfSimilarSystem&)>& f) {
    for (std::uint32_t p : {2u, 3u}) {
        std::vector<std::int64_t> cur;
        std::function<void(int)> rec = [&](int start) {
            if (cur.size() >= 2) {
                Rational rest = 1;
                for (auto e : cur) rest -= rational_pow(p, -e);
                if (rest > 0) {
                    std::vector<std::int64_t> m;
                    for (std::int64_t k = 1; rest > 0; ++k) {
                        while (rest >= rational_pow(p, -k)) {
                            rest -= rational_pow(p, -k);
                            m.push_back(k);
                        }
                    }
                    f(SelfSimilarSystem(Prime(p), cur, m));
                }
            }
            if (static_cast<int>(cur.size()) == max_size) return;
            for (int e = start; e <= max_exp; ++e) {
                cur.push_back(e);
                rec(e);
                cur.pop_back();
            }
        };
        rec(1);
    }
}

}  // namespace

TEST_CASE("Moran dimension") {
    auto cs = cantor_string_3();
    double D = moran_dimension(cs);
    CHECK(std::abs(D - ln2 / ln3) < 1e-14);
    CHECK(std::abs(2 * std::pow(3.0, -D) - 1) < 1e-14);
    CHECK(std::abs(moran_dimension(fibonacci_string_2()) - std::log(phi) / ln2) < 1e-14);
    // N equal ratios and one gap: D = ln N / ln(1/r).
    SelfSimilarSystem five(Prime(7), {1, 1, 1, 1, 1}, {1, 1});
    CHECK(std::abs(moran_dimension(five) - std::log(5.0) / std::log(7.0)) < 1e-14);
}

TEST_CASE("denominator roots") {
    auto r = denominator_roots(closed_form_zeta(cantor_string_3()));
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0].z - 0.5) < 1e-15);
    auto sq = make_rational_zeta(IntPolynomial{0, 1}, IntPolynomial{1, -2, 1}, Prime(2), 1);
    auto rs = denominator_roots(sq);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].multiplicity == 2);
}

TEST_CASE("named dimension sets") {
    auto cs = complex_dimensions(cantor_string_3());
    REQUIRE(cs.lines.size() == 1);
    CHECK(std::abs(cs.lines[0].omega - Complex(ln2 / ln3, 0)) < 1e-13);
    CHECK(std::abs(cs.period - 2 * std::numbers::pi / ln3) < 1e-13);
    CHECK(std::abs(cs.lines[0].residue - 1 / (2 * ln3)) < 1e-13);

    auto fs = complex_dimensions(fibonacci_string_2());
    REQUIRE(fs.lines.size() == 2);
    double D = std::log(phi) / ln2;
    CHECK(std::abs(fs.lines[0].omega - Complex(D, 0)) < 1e-12);
    CHECK(std::abs(fs.lines[1].omega.real() + D) < 1e-12);
    CHECK(fs.lines[1].omega.imag() == fs.period / 2);
    CHECK(std::abs(fs.lines[0].residue - 1 / ((phi + 2) * ln2)) < 1e-12);
    for (const auto& l : fs.lines) CHECK(l.multiplicity == 1);

    for (std::int64_t p : {2, 3, 5}) {
        auto e = complex_dimensions(euler_closed_form(Prime(p)));
        REQUIRE(e.lines.size() == 1);
        CHECK(e.lines[0].omega == Complex(0, 0));
        CHECK(std::abs(e.lines[0].residue - 1 / std::log(static_cast<double>(p))) < 1e-14);
    }
}

TEST_CASE("residues agree with contour integrals on every line copy") {
    for (const auto& rz : {closed_form_zeta(cantor_string_3()), closed_form_zeta(fibonacci_string_2()),
                           euler_closed_form(Prime(2))}) {
        auto ds = complex_dimensions(rz);
        for (const auto& line : ds.lines) {
            for (int n = -3; n <= 3; ++n) {
                Complex w = line.omega + Complex(0, n * ds.period);
                Complex numeric = contour_moment(rz, w, 0.05, 0);
                CHECK(std::abs(numeric - line.residue) < 1e-8);
            }
            for (int n = -5; n <= 5; ++n) {
                DimensionLine shifted = line;
                shifted.omega += Complex(0, n * ds.period);
                CHECK(std::abs(residue_at(rz, shifted) - line.residue) < 1e-12);
            }
        }
    }
}

TEST_CASE("principal parts") {
    auto cs = closed_form_zeta(cantor_string_3());
    auto line = complex_dimensions(cs).lines[0];
    auto pp = principal_part_at(cs, line, 1);
    CHECK(std::abs(pp[0] - line.residue) < 1e-14);
    CHECK_THROWS_AS(principal_part_at(cs, line, 2), InvalidArgument);

    auto sq = make_rational_zeta(IntPolynomial{0, 1}, IntPolynomial{1, -2, 1}, Prime(2), 1);
    auto ds = complex_dimensions(sq);
    REQUIRE(ds.lines.size() == 1);
    const auto& dl = ds.lines[0];
    CHECK(dl.multiplicity == 2);
    CHECK(std::isnan(dl.residue.real()));
    REQUIRE(dl.principal_part.size() == 2);
    CHECK(std::abs(dl.principal_part[0]) < 1e-12);
    CHECK(std::abs(dl.principal_part[1] - 1 / (ln2 * ln2)) < 1e-12);
    // Independent: c_{-1} and c_{-2} as contour moments.
    CHECK(std::abs(contour_moment(sq, dl.omega, 0.3, 0) - dl.principal_part[0]) < 1e-10);
    CHECK(std::abs(contour_moment(sq, dl.omega, 0.3, 1) - dl.principal_part[1]) < 1e-10);

    // Triple pole at a non-real root pair: (1 + z^2)^3, numerator 1.
    IntPolynomial q = IntPolynomial{1, 0, 1} * IntPolynomial{1, 0, 1} * IntPolynomial{1, 0, 1};
    auto tri = make_rational_zeta(IntPolynomial{1}, q, Prime(3), 1);
    for (const auto& l : complex_dimensions(tri).lines) {
        CHECK(l.multiplicity == 3);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(contour_moment(tri, l.omega, 0.3, k) - l.principal_part[k]) < 1e-9);
    }
}

TEST_CASE("a second line on Re = D when the scaling exponents share a factor") {
    SelfSimilarSystem sys(Prime(2), {2, 2}, {1});
    auto rz = closed_form_zeta(sys);
    CHECK(rz.num == IntPolynomial{0, 1});
    CHECK(rz.den == IntPolynomial{1, 0, -2});
    auto ds = complex_dimensions(sys);
    REQUIRE(ds.lines.size() == 2);
    CHECK(std::abs(ds.D - 0.5) < 1e-14);
    CHECK(std::abs(ds.lines[1].omega - Complex(0.5, ds.period / 2)) < 1e-13);
}

TEST_CASE("numerator cancellation can remove a line on Re = D") {
    // 3-adic, n = (2,2,2,2), m = (1,2,2): (z + 2z^2) / (1 - 4z^2) = z / (1 - 2z).
    SelfSimilarSystem sys(Prime(3), {2, 2, 2, 2}, {1, 2, 2});
    CHECK(closed_form_zeta(sys).den == IntPolynomial{1, -2});
    CHECK(complex_dimensions(sys).lines.size() == 1);
}

TEST_CASE("real parts below -1 occur") {
    // 1 - 3z^2 - z^3 has a root of modulus near 2.9 > 1/r = 2.
    SelfSimilarSystem sys(Prime(2), {2, 2, 2, 3}, {3});
    auto ds = complex_dimensions(sys);
    CHECK(ds.lines.back().omega.real() < -1.5);
}

TEST_CASE("zeros") {
    CHECK(zeros_of_zeta(closed_form_zeta(fibonacci_string_2())).empty());
    CHECK(zeros_of_zeta(closed_form_zeta(cantor_string_3())).empty());
    auto rz = make_rational_zeta(IntPolynomial{0, 1, 1}, IntPolynomial{1, -1, -1, -1}, Prime(2), 1);
    auto z = zeros_of_zeta(rz);
    REQUIRE(z.size() == 1);
    CHECK(std::abs(z[0].omega.real()) < 1e-14);
    CHECK(z[0].omega.imag() == rz.period() / 2);
}

TEST_CASE("structure over all small systems") {
    int count = 0;
    for_each_system(6, 4, [&](const SelfSimilarSystem& sys) {
        auto rz = closed_form_zeta(sys);
        auto ds = complex_dimensions(sys);
        int total = 0;
        for (const auto& l : ds.lines) total += l.multiplicity;
        CHECK(total == rz.den.degree());
        CHECK(ds.D < 1);
        double lhs = 0;
        for (auto n : sys.scaling_exps()) lhs += std::pow(static_cast<double>(sys.prime().value()), -static_cast<double>(n) * ds.D);
        CHECK(std::abs(lhs - 1) < 1e-14);
        // Strictly dominant unless the reduced scaling exponents share a factor q;
        // then up to q lines (z rotated by q-th roots of unity, unless the
        // numerator cancels them) have Re = D.
        std::int64_t q = 0;
        for (auto n : sys.reduced_scaling()) q = std::gcd(q, n);
        int on_D = 0;
        for (std::size_t u = 0; u < ds.lines.size(); ++u) {
            CHECK(ds.lines[u].omega.real() <= ds.D + 1e-12);
            if (std::abs(ds.lines[u].omega.real() - ds.D) < 1e-9) ++on_D;
        }
        CHECK(on_D >= 1);
        CHECK(on_D <= q);
        CHECK(ds.lines[0].omega.imag() == 0.0);
        for (const auto& l : ds.lines) {
            CHECK(std::abs(rz.den.eval(l.z_root)) < 1e-10);
            // Cauchy's root bound |z| <= 1 + max |a_i / a_n| limits Re from below.
            double amax = 0;
            for (const auto& a : rz.den.coeffs()) amax = std::max(amax, std::abs(a.get_d()));
            double lead = std::abs(rz.den.coeffs().back().get_d());
            CHECK(l.omega.real() >= -std::log(1 + amax / lead) / rz.log_scale() - 1e-12);
            CHECK(l.omega.real() == -std::log(std::abs(l.z_root)) / rz.log_scale() + 0.0);
        }
        ++count;
    });
    CHECK(count > 100);
}
