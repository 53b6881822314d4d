#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "padic/polynomial.hpp"

using namespace padic;

namespace {

// Sorted by (re, im) for comparison against hand-derived roots.
std::vector<PolynomialRoot> sorted_roots(const IntPolynomial& f) {
    auto r = polynomial_roots(f);
    std::sort(r.begin(), r.end(), [](const PolynomialRoot& a, const PolynomialRoot& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    return r;
}

}  // namespace

TEST_CASE("basic algebra") {
    IntPolynomial a{1, -2};
    IntPolynomial b{0, 1};
    CHECK((a * b) == IntPolynomial{0, 1, -2});
    CHECK((a + b) == IntPolynomial{1, -1});
    CHECK((a - a).is_zero());
    CHECK((a - a).degree() == -1);
    CHECK(IntPolynomial{3, 6, 9}.content() == 3);
    CHECK(IntPolynomial{-3, 6, -9}.primitive_part() == IntPolynomial{1, -2, 3});
    CHECK(IntPolynomial{1, 1, 1, 1}.derivative() == IntPolynomial{1, 2, 3});
    CHECK(IntPolynomial{0, 0, 1}.low_degree() == 2);
    CHECK(IntPolynomial{1, -1, -1}.eval(2.0) == doctest::Approx(-5.0));
}

TEST_CASE("gcd and exact division") {
    IntPolynomial f = IntPolynomial{1, -1} * IntPolynomial{1, 1};
    IntPolynomial g = IntPolynomial{1, -1} * IntPolynomial{2, 1};
    IntPolynomial d = poly_gcd(f, g);
    CHECK(d.degree() == 1);
    CHECK(std::abs(d.eval(1.0)) < 1e-15);
    CHECK(exact_div(f, IntPolynomial{1, 1}) == IntPolynomial{1, -1});
    CHECK_THROWS_AS(exact_div(IntPolynomial{1, 0, 1}, IntPolynomial{1, 1}), ConsistencyError);
    CHECK(poly_gcd(IntPolynomial{0, 1}, IntPolynomial{1, -2}).degree() == 0);
}

TEST_CASE("square-free decomposition") {
    // (1 - z)^2 (1 + z)
    IntPolynomial f = IntPolynomial{1, -1} * IntPolynomial{1, -1} * IntPolynomial{1, 1};
    auto parts = square_free_decomposition(f);
    int total = 0;
    for (const auto& [g, m] : parts) total += g.degree() * m;
    CHECK(total == 3);
    bool has_double = std::any_of(parts.begin(), parts.end(), [](const auto& pm) { return pm.second == 2 && pm.first.degree() == 1; });
    CHECK(has_double);
}

TEST_CASE("roots of the named denominators") {
    auto r1 = polynomial_roots(IntPolynomial{1, -2});
    REQUIRE(r1.size() == 1);
    CHECK(std::abs(r1[0].z - Complex(0.5, 0)) < 1e-15);

    auto r2 = sorted_roots(IntPolynomial{1, -1, -1});
    REQUIRE(r2.size() == 2);
    const double s5 = std::sqrt(5.0);
    CHECK(std::abs(r2[0].z - Complex((-1 - s5) / 2, 0)) < 1e-14);
    CHECK(std::abs(r2[1].z - Complex((-1 + s5) / 2, 0)) < 1e-14);
    CHECK(r2[0].z.imag() == 0.0);

    auto r3 = polynomial_roots(IntPolynomial{1, -2, 1});
    REQUIRE(r3.size() == 1);
    CHECK(r3[0].multiplicity == 2);
    CHECK(std::abs(r3[0].z - Complex(1, 0)) < 1e-14);
}

TEST_CASE("conjugate pairs come out exactly conjugate") {
    // 1 - z^3: roots 1 and exp(+-2 pi i / 3)
    auto r = polynomial_roots(IntPolynomial{1, 0, 0, -1});
    REQUIRE(r.size() == 3);
    int complex_count = 0;
    for (const auto& a : r) {
        CHECK(std::abs(std::abs(a.z) - 1.0) < 1e-14);
        if (a.z.imag() != 0) {
            ++complex_count;
            bool found = std::any_of(r.begin(), r.end(), [&](const PolynomialRoot& b) { return b.z == std::conj(a.z); });
            CHECK(found);
        }
    }
    CHECK(complex_count == 2);
}

TEST_CASE("random products of known linear factors") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long> roots;
        IntPolynomial f{1};
        int deg = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < deg; ++i) {
            long a = static_cast<long>(rng() % 7) - 3;
            if (a == 0) a = 5;
            roots.push_back(a);
            f = f * IntPolynomial{-a, 1};
        }
        auto found = polynomial_roots(f);
        int count = 0;
        for (const auto& r : found) {
            count += r.multiplicity;
            long nearest = std::lround(r.z.real());
            CHECK(std::abs(r.z - Complex(static_cast<double>(nearest), 0)) < 1e-9);
            CHECK(std::count(roots.begin(), roots.end(), nearest) == r.multiplicity);
        }
        CHECK(count == deg);
    }
}
