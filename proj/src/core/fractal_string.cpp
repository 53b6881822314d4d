#include "padic/fractal_string.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace padic {

namespace {

Rational sum_powers(std::uint32_t p, const std::vector<std::int64_t>& exps) {
    Rational s = 0;
    for (auto e : exps) s += rational_pow(p, -e);
    return s;
}

std::vector<std::int64_t> sorted_copy(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

class EulerCursor final : public SpectrumCursor {
public:
    std::optional<SpectrumEntry> next() override { return SpectrumEntry{n_++, BigInt(1)}; }

private:
    std::int64_t n_ = 0;
};

class ListCursor final : public SpectrumCursor {
public:
    explicit ListCursor(const std::vector<SpectrumEntry>& e) : e_(e) {}
    std::optional<SpectrumEntry> next() override {
        if (i_ >= e_.size()) return std::nullopt;
        return e_[i_++];
    }

private:
    const std::vector<SpectrumEntry>& e_;
    std::size_t i_ = 0;
};

// N(0) = 1, N(w) = sum_j N(w - n_j'); c(w) = sum_k N(w - m_k').
class SelfSimilarCursor final : public SpectrumCursor {
public:
    explicit SelfSimilarCursor(const SelfSimilarSystem& sys)
        : n_(sys.reduced_scaling()), m_(sys.reduced_gaps()), d_(sys.d()), words_{BigInt(1)} {}

    std::optional<SpectrumEntry> next() override {
        for (;;) {
            ++w_;
            extend(w_);
            BigInt c = 0;
            for (auto mk : m_) {
                if (mk <= w_) c += words_[static_cast<std::size_t>(w_ - mk)];
            }
            if (c != 0) return SpectrumEntry{d_ * w_, c};
        }
    }

private:
    void extend(std::int64_t w) {
        while (static_cast<std::int64_t>(words_.size()) <= w) {
            auto cur = static_cast<std::int64_t>(words_.size());
            BigInt v = 0;
            for (auto nj : n_) {
                if (nj <= cur) v += words_[static_cast<std::size_t>(cur - nj)];
            }
            words_.push_back(v);
        }
    }

    std::vector<std::int64_t> n_, m_;
    std::int64_t d_;
    std::vector<BigInt> words_;
    std::int64_t w_ = 0;
};

}  // namespace

SelfSimilarSystem::SelfSimilarSystem(Prime p, std::vector<std::int64_t> scaling_exps,
                                     std::vector<std::int64_t> gap_exps, std::vector<PAdicAffineMap> maps,
                                     std::vector<PAdicBall> gaps)
    : p_(p), n_(sorted_copy(std::move(scaling_exps))), m_(sorted_copy(std::move(gap_exps))),
      maps_(std::move(maps)), gaps_(std::move(gaps)) {
    if (n_.empty() && m_.empty()) throw InvalidArgument("system needs at least one exponent");
    std::int64_t g = 0;
    for (auto e : n_) {
        if (e < 1) throw InvalidArgument("scaling exponents must be positive integers");
        g = std::gcd(g, e);
    }
    for (auto e : m_) {
        if (e < 1) throw InvalidArgument("gap exponents must be positive integers");
        g = std::gcd(g, e);
    }
    d_ = g;
    for (const auto& m : maps_) {
        if (!(m.p == p_)) throw InvalidArgument("affine map prime differs from system prime");
    }
    for (const auto& b : gaps_) {
        if (!(b.prime() == p_)) throw InvalidArgument("gap ball prime differs from system prime");
    }
}

std::vector<std::int64_t> SelfSimilarSystem::reduced_scaling() const {
    std::vector<std::int64_t> out;
    for (auto e : n_) out.push_back(e / d_);
    return out;
}

std::vector<std::int64_t> SelfSimilarSystem::reduced_gaps() const {
    std::vector<std::int64_t> out;
    for (auto e : m_) out.push_back(e / d_);
    return out;
}

Rational SelfSimilarSystem::zeta_at_one() const {
    Rational denom = Rational(1) - sum_powers(p_, n_);
    if (denom <= 0) throw InvalidArgument("sum of scaling ratios must be below 1");
    Rational z = sum_powers(p_, m_) / denom;
    z.canonicalize();
    return z;
}

ValidationReport validate_system(const SelfSimilarSystem& sys) {
    ValidationReport rep;
    const std::uint32_t p = sys.prime();
    rep.scaling_sum = sum_powers(p, sys.scaling_exps());
    rep.gap_sum = sum_powers(p, sys.gap_exps());
    auto add = [&](std::string code, std::string msg) { rep.violations.push_back({std::move(code), std::move(msg)}); };

    if (sys.scaling_exps().size() < 2) {
        add("scaling_count", "need at least 2 scaling maps, got " + std::to_string(sys.scaling_exps().size()));
    }
    if (sys.gap_exps().empty()) add("gap_count", "need at least 1 gap, got 0");
    if (rep.scaling_sum >= 1) {
        add("scaling_sum", "sum of scaling ratios is " + rep.scaling_sum.get_str() + ", must be < 1");
    }
    Rational total = rep.scaling_sum + rep.gap_sum;
    if (total != 1) {
        add("gap_identity", "scaling ratios plus gaps sum to " + total.get_str() + ", must equal 1");
    }

    const auto& maps = sys.maps();
    const auto& gaps = sys.gaps();
    if (maps.empty() && gaps.empty()) return rep;
    if (maps.empty() || gaps.empty()) {
        add("geometry_incomplete", "maps and gaps must be given together");
        return rep;
    }
    std::vector<std::int64_t> map_exps;
    for (const auto& m : maps) map_exps.push_back(m.scale_valuation);
    std::sort(map_exps.begin(), map_exps.end());
    if (map_exps != sys.scaling_exps()) add("map_scales", "map scale valuations do not match scaling_exps");
    std::vector<std::int64_t> gap_exps;
    PAdicBall unit(sys.prime(), PAdicDigits{}, 0);
    for (const auto& g : gaps) {
        gap_exps.push_back(g.radius_exp());
        auto rel = ball_relation(g, unit);
        if (rel != BallRelation::equal && rel != BallRelation::first_inside_second) {
            add("gap_outside", "gap " + format_ball(g) + " is not inside Z_p");
        }
    }
    std::sort(gap_exps.begin(), gap_exps.end());
    if (gap_exps != sys.gap_exps()) add("gap_radii", "gap ball radii do not match gap_exps");

    std::vector<std::pair<std::string, PAdicBall>> pieces;
    for (std::size_t j = 0; j < maps.size(); ++j) {
        try {
            pieces.emplace_back("Phi_" + std::to_string(j + 1) + "(Z_p)", apply_affine(maps[j], unit));
        } catch (const std::exception& e) {
            add("map_image", e.what());
        }
    }
    for (const auto& g : gaps) pieces.emplace_back("gap " + format_ball(g), g);
    for (std::size_t a = 0; a < pieces.size(); ++a) {
        for (std::size_t b = a + 1; b < pieces.size(); ++b) {
            if (ball_relation(pieces[a].second, pieces[b].second) != BallRelation::disjoint) {
                add("overlap", pieces[a].first + " = " + format_ball(pieces[a].second) + " meets " + pieces[b].first +
                                   " = " + format_ball(pieces[b].second));
            }
        }
    }
    return rep;
}

void require_valid(const SelfSimilarSystem& sys) {
    auto rep = validate_system(sys);
    if (rep.valid()) return;
    std::ostringstream os;
    os << "invalid self-similar system:";
    for (const auto& v : rep.violations) os << " [" << v.code << "] " << v.message << ";";
    throw InvalidArgument(os.str());
}

const char* to_string(SpectrumKind k) noexcept {
    switch (k) {
        case SpectrumKind::euler: return "euler";
        case SpectrumKind::self_similar: return "self-similar";
        case SpectrumKind::explicit_list: return "explicit-list";
    }
    return "?";
}

LengthSpectrum LengthSpectrum::euler(Prime p) { return LengthSpectrum(p, SpectrumKind::euler); }

LengthSpectrum LengthSpectrum::self_similar(const SelfSimilarSystem& sys) {
    require_valid(sys);
    LengthSpectrum ls(sys.prime(), SpectrumKind::self_similar);
    ls.sys_ = std::make_shared<const SelfSimilarSystem>(sys);
    return ls;
}

LengthSpectrum LengthSpectrum::explicit_list(Prime p, std::vector<SpectrumEntry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.scale_exp < b.scale_exp; });
    std::vector<SpectrumEntry> merged;
    for (auto& e : entries) {
        if (e.multiplicity < 0) throw InvalidArgument("negative multiplicity");
        if (e.multiplicity == 0) continue;
        if (!merged.empty() && merged.back().scale_exp == e.scale_exp) {
            merged.back().multiplicity += e.multiplicity;
        } else {
            merged.push_back(std::move(e));
        }
    }
    LengthSpectrum ls(p, SpectrumKind::explicit_list);
    ls.entries_ = std::move(merged);
    return ls;
}

std::unique_ptr<SpectrumCursor> LengthSpectrum::cursor() const {
    switch (kind_) {
        case SpectrumKind::euler: return std::make_unique<EulerCursor>();
        case SpectrumKind::self_similar: return std::make_unique<SelfSimilarCursor>(*sys_);
        case SpectrumKind::explicit_list: return std::make_unique<ListCursor>(entries_);
    }
    return nullptr;
}

std::vector<SpectrumEntry> LengthSpectrum::prefix(std::int64_t max_scale_exp) const {
    std::vector<SpectrumEntry> out;
    auto cur = cursor();
    while (auto e = cur->next()) {
        if (e->scale_exp > max_scale_exp) break;
        out.push_back(std::move(*e));
    }
    return out;
}

std::vector<SpectrumEntry> LengthSpectrum::first_terms(std::size_t count) const {
    std::vector<SpectrumEntry> out;
    auto cur = cursor();
    while (out.size() < count) {
        auto e = cur->next();
        if (!e) break;
        out.push_back(std::move(*e));
    }
    return out;
}

SelfSimilarSystem cantor_string_3() {
    Prime p(3);
    std::vector<PAdicAffineMap> maps{PAdicAffineMap(p, 1, {1}, {}), PAdicAffineMap(p, 1, {1}, {2})};
    std::vector<PAdicBall> gaps{PAdicBall::from_integer(p, 1, 1)};
    return SelfSimilarSystem(p, {1, 1}, {1}, std::move(maps), std::move(gaps));
}

SelfSimilarSystem fibonacci_string_2() {
    Prime p(2);
    std::vector<PAdicAffineMap> maps{PAdicAffineMap(p, 1, {1}, {}), PAdicAffineMap(p, 2, {1}, {1})};
    std::vector<PAdicBall> gaps{PAdicBall::from_integer(p, 3, 2)};
    return SelfSimilarSystem(p, {1, 2}, {2}, std::move(maps), std::move(gaps));
}

LengthSpectrum euler_string(Prime p) { return LengthSpectrum::euler(p); }

LengthSpectrum self_similar_spectrum_stream(const SelfSimilarSystem& sys) { return LengthSpectrum::self_similar(sys); }

std::vector<SpectrumEntry> self_similar_spectrum(const SelfSimilarSystem& sys, std::int64_t max_scale_exp) {
    return LengthSpectrum::self_similar(sys).prefix(max_scale_exp);
}

std::vector<PAdicBall> enumerate_intervals(const SelfSimilarSystem& sys, int depth) {
    if (depth < 0) throw InvalidArgument("depth must be nonnegative");
    if (!sys.has_geometry()) throw InvalidArgument("system carries no affine maps and gap balls");
    require_valid(sys);
    std::vector<PAdicBall> all;
    std::vector<PAdicBall> level(sys.gaps().begin(), sys.gaps().end());
    for (int a = 0; a < depth; ++a) {
        all.insert(all.end(), level.begin(), level.end());
        if (a + 1 == depth) break;
        std::vector<PAdicBall> next;
        next.reserve(level.size() * sys.maps().size());
        for (const auto& m : sys.maps()) {
            for (const auto& b : level) next.push_back(apply_affine(m, b));
        }
        level = std::move(next);
    }
    std::sort(all.begin(), all.end());
    std::set<PAdicBall> seen;
    for (const auto& b : all) {
        for (PAdicBall a = b;; a = a.parent()) {
            if (seen.count(a)) throw InvalidArgument("intervals overlap at " + format_ball(b) + " (invalid system)");
            if (a.radius_exp() <= 0) break;
        }
        seen.insert(b);
    }
    return all;
}

LengthBounds total_length(const LengthSpectrum& ls) {
    Rational t;
    switch (ls.kind()) {
        case SpectrumKind::euler: {
            std::uint32_t p = ls.prime();
            t = Rational(BigInt(p), BigInt(p - 1));
            t.canonicalize();
            break;
        }
        case SpectrumKind::self_similar: t = ls.system()->zeta_at_one(); break;
        case SpectrumKind::explicit_list:
            t = 0;
            for (const auto& e : ls.explicit_entries()) t += Rational(e.multiplicity) * rational_pow(ls.prime(), -e.scale_exp);
            break;
    }
    return {t, t};
}

LengthBounds prefix_bounds(const LengthSpectrum& ls, std::int64_t max_scale_exp) {
    Rational lower = 0;
    for (const auto& e : ls.prefix(max_scale_exp)) lower += Rational(e.multiplicity) * rational_pow(ls.prime(), -e.scale_exp);
    return {lower, total_length(ls).upper};
}

RealLengthSpectrum::RealLengthSpectrum(std::vector<RealLengthEntry> entries, std::optional<GeometricTail> tail)
    : entries_(std::move(entries)), tail_(std::move(tail)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].length <= 0 || entries_[i].multiplicity < 1) throw InvalidArgument("bad real length entry");
        if (i > 0 && !(entries_[i].length < entries_[i - 1].length)) {
            throw InvalidArgument("real lengths must be strictly decreasing");
        }
    }
    if (tail_) {
        const auto& t = *tail_;
        if (t.first_length <= 0 || t.length_ratio <= 0 || t.length_ratio >= 1 || t.first_multiplicity < 1 ||
            t.multiplicity_ratio < 1) {
            throw InvalidArgument("bad geometric tail");
        }
        if (Rational(t.multiplicity_ratio) * t.length_ratio >= 1) throw InvalidArgument("geometric tail does not converge");
        if (!entries_.empty() && !(t.first_length < entries_.back().length)) {
            throw InvalidArgument("geometric tail must start below the explicit lengths");
        }
    }
}

Rational RealLengthSpectrum::total_length() const {
    Rational s = 0;
    for (const auto& e : entries_) s += e.length * Rational(e.multiplicity);
    if (tail_) {
        const auto& t = *tail_;
        s += Rational(t.first_multiplicity) * t.first_length / (Rational(1) - Rational(t.multiplicity_ratio) * t.length_ratio);
    }
    s.canonicalize();
    return s;
}

std::vector<RealLengthEntry> RealLengthSpectrum::entries_down_to(const Rational& min_length) const {
    std::vector<RealLengthEntry> out;
    for (const auto& e : entries_) {
        if (e.length >= min_length) out.push_back(e);
    }
    if (tail_ && min_length > 0) {
        Rational l = tail_->first_length;
        BigInt m = tail_->first_multiplicity;
        while (l >= min_length) {
            out.push_back({l, m});
            l *= tail_->length_ratio;
            m *= tail_->multiplicity_ratio;
        }
    }
    return out;
}

RealLengthSpectrum real_cantor_string() {
    return RealLengthSpectrum({}, GeometricTail{Rational(1, 3), Rational(1, 3), BigInt(1), BigInt(2)});
}

}  // namespace padic
