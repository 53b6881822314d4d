#include "padic/ball.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

namespace padic {

std::uint32_t PAdicDigits::digit_at(std::int64_t e) const noexcept {
    if (e < valuation) return 0;
    auto i = static_cast<std::uint64_t>(e - valuation);
    return i < digits.size() ? digits[i] : 0;
}

void PAdicDigits::normalize() {
    while (!digits.empty() && digits.back() == 0) digits.pop_back();
    std::size_t lead = 0;
    while (lead < digits.size() && digits[lead] == 0) ++lead;
    if (lead == digits.size()) {
        digits.clear();
        valuation = 0;
        return;
    }
    digits.erase(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(lead));
    valuation += static_cast<std::int64_t>(lead);
}

Rational PAdicDigits::value(std::uint32_t p) const {
    BigInt a = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        a *= p;
        a += *it;
    }
    Rational r(a);
    return r * rational_pow(p, static_cast<long>(valuation));
}

PAdicDigits PAdicDigits::from_integer(std::uint32_t p, const BigInt& nonnegative) {
    if (nonnegative < 0) throw InvalidArgument("negative integer has no finite p-adic digit expansion");
    PAdicDigits out;
    BigInt q = nonnegative;
    while (q != 0) {
        out.digits.push_back(static_cast<std::uint32_t>(mpz_fdiv_q_ui(q.get_mpz_t(), q.get_mpz_t(), p)));
    }
    out.normalize();
    return out;
}

const char* to_string(BallRelation r) noexcept {
    switch (r) {
        case BallRelation::disjoint: return "disjoint";
        case BallRelation::equal: return "equal";
        case BallRelation::first_inside_second: return "b1_inside_b2";
        case BallRelation::second_inside_first: return "b2_inside_b1";
    }
    return "?";
}

PAdicBall::PAdicBall(Prime p, PAdicDigits center, std::int64_t radius_exp)
    : p_(p), center_(std::move(center)), radius_exp_(radius_exp) {
    for (auto d : center_.digits) {
        if (d >= p_.value()) throw InvalidArgument("digit out of range for p = " + std::to_string(p_.value()));
    }
    if (center_.valuation >= radius_exp_) {
        center_.digits.clear();
    } else {
        auto keep = static_cast<std::uint64_t>(radius_exp_ - center_.valuation);
        if (center_.digits.size() > keep) center_.digits.resize(keep);
    }
    center_.normalize();
}

PAdicBall PAdicBall::from_integer(Prime p, const BigInt& center, std::int64_t radius_exp) {
    if (radius_exp <= 0) return PAdicBall(p, PAdicDigits{}, radius_exp);
    BigInt m = int_pow(p, static_cast<unsigned long>(radius_exp));
    BigInt c;
    mpz_fdiv_r(c.get_mpz_t(), center.get_mpz_t(), m.get_mpz_t());
    return PAdicBall(p, PAdicDigits::from_integer(p, c), radius_exp);
}

bool PAdicBall::contains(const PAdicDigits& x) const noexcept {
    std::int64_t lo = std::min(x.valuation, center_.valuation);
    std::int64_t hi = std::max(x.valuation + static_cast<std::int64_t>(x.digits.size()),
                               center_.valuation + static_cast<std::int64_t>(center_.digits.size()));
    hi = std::min(hi, radius_exp_);
    for (std::int64_t e = lo; e < hi; ++e) {
        if (x.digit_at(e) != center_.digit_at(e)) return false;
    }
    return true;
}

PAdicBall PAdicBall::parent() const { return PAdicBall(p_, center_, radius_exp_ - 1); }

std::vector<PAdicBall> PAdicBall::children() const {
    std::int64_t base = center_.digits.empty() ? radius_exp_ : std::min(center_.valuation, radius_exp_);
    PAdicDigits d;
    d.valuation = base;
    d.digits.assign(static_cast<std::size_t>(radius_exp_ - base + 1), 0);
    for (std::int64_t e = base; e < radius_exp_; ++e) d.digits[static_cast<std::size_t>(e - base)] = center_.digit_at(e);
    std::vector<PAdicBall> out;
    out.reserve(p_.value());
    for (std::uint32_t k = 0; k < p_.value(); ++k) {
        d.digits.back() = k;
        out.emplace_back(p_, d, radius_exp_ + 1);
    }
    return out;
}

std::strong_ordering operator<=>(const PAdicBall& a, const PAdicBall& b) {
    if (auto c = a.radius_exp_ <=> b.radius_exp_; c != 0) return c;
    if (auto c = a.p_.value() <=> b.p_.value(); c != 0) return c;
    int cmp = ::cmp(a.center_value(), b.center_value());
    if (cmp < 0) return std::strong_ordering::less;
    if (cmp > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

PAdicAffineMap::PAdicAffineMap(Prime p_, std::int64_t scale_valuation_, std::vector<std::uint32_t> unit_digits,
                               std::vector<std::uint32_t> shift_digits, int working_precision_)
    : p(p_), scale_valuation(scale_valuation_), working_precision(working_precision_) {
    if (scale_valuation < 1) throw InvalidArgument("affine scale must have valuation >= 1");
    if (working_precision < 1) throw InvalidArgument("working precision must be positive");
    if (unit_digits.empty() || unit_digits.front() == 0 || unit_digits.front() >= p.value()) {
        throw InvalidArgument("affine scale unit must start with a nonzero digit");
    }
    for (auto d : unit_digits) {
        if (d >= p.value()) throw InvalidArgument("unit digit out of range");
    }
    for (auto d : shift_digits) {
        if (d >= p.value()) throw InvalidArgument("shift digit out of range");
    }
    auto cap = static_cast<std::size_t>(working_precision);
    if (unit_digits.size() > cap) unit_digits.resize(cap);
    if (shift_digits.size() > cap) shift_digits.resize(cap);
    // Digits are kept as given so that serialized systems round-trip.
    unit = PAdicDigits{0, std::move(unit_digits)};
    shift = PAdicDigits{0, std::move(shift_digits)};
}

Rational haar_measure(const PAdicBall& b) { return rational_pow(b.prime(), -b.radius_exp()); }

Rational sphere_measure(const PAdicBall& b) {
    Rational f(BigInt(b.prime().value() - 1), BigInt(b.prime().value()));
    f.canonicalize();
    return f * haar_measure(b);
}

BallRelation ball_relation(const PAdicBall& b1, const PAdicBall& b2) {
    if (!(b1.prime() == b2.prime())) throw InvalidArgument("prime mismatch in ball_relation");
    if (b1.radius_exp() == b2.radius_exp()) {
        return b1.center() == b2.center() ? BallRelation::equal : BallRelation::disjoint;
    }
    if (b1.radius_exp() > b2.radius_exp()) {
        return b2.contains(b1.center()) ? BallRelation::first_inside_second : BallRelation::disjoint;
    }
    return b1.contains(b2.center()) ? BallRelation::second_inside_first : BallRelation::disjoint;
}

std::vector<PAdicBall> canonical_decompose(std::span<const PAdicBall> balls, const PAdicBall& ambient) {
    for (const auto& b : balls) {
        auto rel = ball_relation(b, ambient);
        if (rel != BallRelation::equal && rel != BallRelation::first_inside_second) {
            throw InvalidArgument("ball " + format_ball(b) + " lies outside " + format_ball(ambient));
        }
    }
    std::vector<PAdicBall> sorted(balls.begin(), balls.end());
    std::sort(sorted.begin(), sorted.end());

    // Largest first, so a ball is dropped iff an ancestor was already kept.
    std::set<PAdicBall> kept;
    for (const auto& b : sorted) {
        bool covered = false;
        for (PAdicBall a = b; a.radius_exp() >= ambient.radius_exp(); a = a.parent()) {
            if (kept.count(a)) {
                covered = true;
                break;
            }
            if (a.radius_exp() == ambient.radius_exp()) break;
        }
        if (!covered) kept.insert(b);
    }

    if (kept.empty()) return {};
    std::int64_t deepest = kept.rbegin()->radius_exp();
    for (std::int64_t n = deepest; n > ambient.radius_exp(); --n) {
        std::map<PAdicBall, std::vector<PAdicBall>> by_parent;
        for (const auto& b : kept) {
            if (b.radius_exp() == n) by_parent[b.parent()].push_back(b);
        }
        for (auto& [par, kids] : by_parent) {
            if (kids.size() == ambient.prime().value()) {
                for (const auto& k : kids) kept.erase(k);
                kept.insert(par);
            }
        }
    }
    return {kept.begin(), kept.end()};
}

PAdicBall apply_affine(const PAdicAffineMap& m, const PAdicBall& b) {
    if (!(m.p == b.prime())) throw InvalidArgument("prime mismatch in apply_affine");
    if (b.radius_exp() < 0 || b.center().valuation < 0) {
        throw InvalidArgument("apply_affine expects a ball inside Z_p");
    }
    std::int64_t k = b.radius_exp() + m.scale_valuation;
    if (k > m.working_precision) {
        throw PrecisionExhausted("image radius p^-" + std::to_string(k) + " exceeds working precision " +
                                 std::to_string(m.working_precision));
    }
    BigInt a = b.center_value().get_num();
    BigInt u = m.unit.value(m.p).get_num();
    BigInt s = m.shift.value(m.p).get_num();
    BigInt image = int_pow(m.p, static_cast<unsigned long>(m.scale_valuation)) * u * a + s;
    return PAdicBall::from_integer(m.p, image, k);
}

PAdicDigits cantor_digit_map(std::span<const int> ternary_digits) {
    PAdicDigits out;
    out.digits.reserve(ternary_digits.size());
    for (int d : ternary_digits) {
        if (d != 0 && d != 2) throw InvalidArgument("Cantor digits must be 0 or 2, got " + std::to_string(d));
        out.digits.push_back(static_cast<std::uint32_t>(d));
    }
    return out;
}

PAdicBall parse_ball(std::string_view text) {
    static const std::regex re(R"(^\s*(\d+)(?:/(\d+)\^(\d+))?\s*\+\s*(\d+)\^(-?\d+)\*Z\s*$)");
    std::string s(text);
    std::smatch mt;
    if (!std::regex_match(s, mt, re)) throw InvalidArgument("bad ball literal: '" + s + "'");
    std::int64_t pv = 0;
    std::int64_t n = 0;
    try {
        pv = std::stoll(mt[4].str());
        n = std::stoll(mt[5].str());
    } catch (const std::exception&) {
        throw InvalidArgument("bad ball literal: '" + s + "'");
    }
    Prime p(pv);
    BigInt c(mt[1].str());
    if (!mt[2].matched) return PAdicBall::from_integer(p, c, n);
    if (std::stoll(mt[2].str()) != pv) throw InvalidArgument("center denominator base differs from p: '" + s + "'");
    std::int64_t k = std::stoll(mt[3].str());
    PAdicDigits d = PAdicDigits::from_integer(p, c);
    d.valuation -= k;
    return PAdicBall(p, std::move(d), n);
}

std::string format_ball(const PAdicBall& b) {
    std::string p = std::to_string(b.prime().value());
    std::string tail = "+" + p + "^" + std::to_string(b.radius_exp()) + "*Z";
    const auto& c = b.center();
    if (c.valuation >= 0 || c.digits.empty()) return b.center_value().get_num().get_str() + tail;
    Rational scaled = b.center_value() * rational_pow(b.prime(), -c.valuation);
    return scaled.get_num().get_str() + "/" + p + "^" + std::to_string(-c.valuation) + tail;
}

}  // namespace padic
