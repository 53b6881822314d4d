#include "padic/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace padic {

namespace {

using RatPoly = std::vector<Rational>;

void trim(RatPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

RatPoly to_rat(const IntPolynomial& p) {
    RatPoly r;
    r.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) r.emplace_back(c);
    return r;
}

IntPolynomial to_primitive_int(const RatPoly& a) {
    if (a.empty()) return {};
    BigInt l = 1;
    for (const auto& c : a) {
        BigInt den = c.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<BigInt> out;
    out.reserve(a.size());
    for (const auto& c : a) {
        Rational s = c * Rational(l);
        out.push_back(s.get_num());
    }
    return IntPolynomial(std::move(out)).primitive_part();
}

RatPoly rat_derivative(const RatPoly& a) {
    RatPoly d;
    for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * Rational(static_cast<long>(k)));
    trim(d);
    return d;
}

RatPoly rat_sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
    trim(a);
    return a;
}

std::pair<RatPoly, RatPoly> rat_divmod(RatPoly a, const RatPoly& b) {
    if (b.empty()) throw InvalidArgument("polynomial division by zero");
    trim(a);
    if (a.size() < b.size()) return {RatPoly{}, a};
    RatPoly q(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    for (std::size_t i = a.size() - 1;; --i) {
        Rational f = a[i] / lead;
        q[i - (b.size() - 1)] = f;
        if (f != 0) {
            for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= f * b[j];
        }
        if (i == b.size() - 1) break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

RatPoly rat_monic(RatPoly a) {
    trim(a);
    if (a.empty()) return a;
    Rational l = a.back();
    for (auto& c : a) c /= l;
    return a;
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = rat_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return rat_monic(a);
}

RatPoly rat_exact_div(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = rat_divmod(a, b);
    if (!r.empty()) throw ConsistencyError("polynomial division left a remainder");
    return q;
}

using LComplex = std::complex<long double>;

LComplex eval_l(const IntPolynomial& p, LComplex z) {
    LComplex acc = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + static_cast<long double>(it->get_d());
    return acc;
}

LComplex polish(const IntPolynomial& g, const IntPolynomial& dg, LComplex z) {
    for (int it = 0; it < 80; ++it) {
        LComplex fz = eval_l(g, z);
        LComplex dz = eval_l(dg, z);
        if (std::abs(dz) == 0.0L) break;
        LComplex step = fz / dz;
        z -= step;
        if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(z))) break;
    }
    return z;
}

std::vector<Complex> solve_square_free(const IntPolynomial& g, double tol) {
    int n = g.degree();
    std::vector<Complex> roots;
    if (n < 1) return roots;
    if (n == 1) {
        Rational r(-g.coeff(0), g.coeff(1));
        r.canonicalize();
        roots.emplace_back(r.get_d(), 0.0);
        return roots;
    }
    // Low-order zero roots are exact.
    int low = g.low_degree();
    if (low > 0) {
        // Square-free, so low == 1.
        roots.emplace_back(0.0, 0.0);
        std::vector<BigInt> rest(g.coeffs().begin() + low, g.coeffs().end());
        auto more = solve_square_free(IntPolynomial(std::move(rest)), tol);
        roots.insert(roots.end(), more.begin(), more.end());
        return roots;
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    double lead = g.coeff(static_cast<std::size_t>(n)).get_d();
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -g.coeff(static_cast<std::size_t>(i)).get_d() / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) {
        throw RootFindingError("eigenvalue solver failed for " + g.to_string());
    }
    IntPolynomial dg = g.derivative();
    std::vector<Complex> raw;
    for (int i = 0; i < n; ++i) raw.push_back(es.eigenvalues()[i]);

    std::vector<Complex> upper;
    std::vector<double> real;
    int lower = 0;
    for (auto z : raw) {
        double thr = 1e-8 * std::max(1.0, std::abs(z));
        if (std::abs(z.imag()) <= thr) real.push_back(z.real());
        else if (z.imag() > 0) upper.push_back(z);
        else ++lower;
    }
    bool paired = lower == static_cast<int>(upper.size());
    if (paired) {
        for (double x : real) {
            LComplex z = polish(g, dg, LComplex(x, 0.0L));
            roots.emplace_back(static_cast<double>(z.real()), 0.0);
        }
        for (auto u : upper) {
            LComplex z = polish(g, dg, LComplex(u.real(), u.imag()));
            Complex zd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
            roots.push_back(zd);
            roots.push_back(std::conj(zd));
        }
    } else {
        for (auto u : raw) {
            LComplex z = polish(g, dg, LComplex(u.real(), u.imag()));
            roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        }
    }
    for (auto z : roots) {
        double scale = g.magnitude_scale(std::abs(z));
        if (std::abs(g.eval(z)) > tol * scale) {
            std::ostringstream os;
            os << "root polishing did not converge for " << g.to_string() << " near " << z;
            throw RootFindingError(os.str());
        }
    }
    return roots;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
    for (long c : coeffs) c_.emplace_back(c);
    trim();
}

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int IntPolynomial::low_degree() const noexcept {
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] != 0) return static_cast<int>(k);
    }
    return -1;
}

IntPolynomial IntPolynomial::derivative() const {
    std::vector<BigInt> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<unsigned long>(k));
    return IntPolynomial(std::move(d));
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (c_.empty()) return {};
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> out;
    out.reserve(c_.size());
    for (const auto& c : c_) {
        BigInt q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        out.push_back(q);
    }
    return IntPolynomial(std::move(out));
}

Complex IntPolynomial::eval(Complex z) const {
    Complex acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->get_d();
    return acc;
}

double IntPolynomial::eval(double z) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->get_d();
    return acc;
}

std::vector<Complex> IntPolynomial::taylor_at(Complex z0) const {
    std::vector<Complex> b;
    b.reserve(c_.size());
    for (const auto& c : c_) b.emplace_back(c.get_d(), 0.0);
    // Repeated synthetic division by (z - z0).
    std::size_t n = b.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t i = n - 1; i > k; --i) b[i - 1] += z0 * b[i];
    }
    return b;
}

double IntPolynomial::magnitude_scale(double abs_z) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * abs_z + std::abs(it->get_d());
    return acc;
}

std::string IntPolynomial::to_string(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        BigInt a = abs(c_[k]);
        if (first) {
            if (c_[k] < 0) os << "-";
        } else {
            os << (c_[k] < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0 || a != 1) os << a.get_str();
        if (k >= 1) os << var;
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] += b.c_[k];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] -= b.c_[k];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const BigInt& k, const IntPolynomial& a) {
    std::vector<BigInt> out;
    out.reserve(a.c_.size());
    for (const auto& c : a.c_) out.push_back(k * c);
    return IntPolynomial(std::move(out));
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
    return to_primitive_int(rat_gcd(to_rat(a), to_rat(b)));
}

IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b) {
    RatPoly q = rat_exact_div(to_rat(a), to_rat(b));
    std::vector<BigInt> out;
    for (const auto& c : q) {
        if (c.get_den() != 1) throw ConsistencyError("polynomial quotient is not integral");
        out.push_back(c.get_num());
    }
    return IntPolynomial(std::move(out));
}

std::vector<std::pair<IntPolynomial, int>> square_free_decomposition(const IntPolynomial& f) {
    std::vector<std::pair<IntPolynomial, int>> out;
    RatPoly a = to_rat(f);
    if (a.size() <= 1) return out;
    RatPoly b = rat_derivative(a);
    RatPoly c = rat_gcd(a, b);
    RatPoly w = rat_exact_div(a, c);
    RatPoly y = rat_exact_div(b, c);
    RatPoly z = rat_sub(y, rat_derivative(w));
    for (int i = 1; w.size() > 1; ++i) {
        RatPoly g = rat_gcd(w, z);
        if (g.size() > 1) out.emplace_back(to_primitive_int(g), i);
        w = rat_exact_div(w, g);
        y = rat_exact_div(z, g);
        z = rat_sub(y, rat_derivative(w));
    }
    return out;
}

std::vector<PolynomialRoot> polynomial_roots(const IntPolynomial& f, double tol) {
    std::vector<PolynomialRoot> out;
    for (const auto& [g, m] : square_free_decomposition(f)) {
        for (auto z : solve_square_free(g, tol)) out.push_back({z, m});
    }
    return out;
}

}  // namespace padic
