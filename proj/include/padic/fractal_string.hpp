#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padic/ball.hpp"
#include "padic/common.hpp"

namespace padic {

/// `multiplicity` intervals of length p^-scale_exp.
struct SpectrumEntry {
    std::int64_t scale_exp;
    BigInt multiplicity;

    friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// A p-adic self-similar string given by its scaling exponents n_j
/// (r_j = p^-n_j) and gap exponents m_k (g_k = p^-m_k). Affine maps and gap
/// balls are optional and only needed for enumerate_intervals.
///
/// Construction checks shape only (positive exponents, matching primes);
/// measure identities are reported by validate_system.
class SelfSimilarSystem {
public:
    SelfSimilarSystem(Prime p, std::vector<std::int64_t> scaling_exps, std::vector<std::int64_t> gap_exps,
                      std::vector<PAdicAffineMap> maps = {}, std::vector<PAdicBall> gaps = {});

    Prime prime() const noexcept { return p_; }
    const std::vector<std::int64_t>& scaling_exps() const noexcept { return n_; }
    const std::vector<std::int64_t>& gap_exps() const noexcept { return m_; }
    const std::vector<PAdicAffineMap>& maps() const noexcept { return maps_; }
    const std::vector<PAdicBall>& gaps() const noexcept { return gaps_; }
    bool has_geometry() const noexcept { return !maps_.empty() && !gaps_.empty(); }

    /// gcd of all n_j and m_k.
    std::int64_t d() const noexcept { return d_; }
    std::vector<std::int64_t> reduced_scaling() const;
    std::vector<std::int64_t> reduced_gaps() const;
    /// r = p^-d.
    Rational base_ratio() const { return rational_pow(p_, -d_); }

    /// Sum_k g_k / (1 - Sum_j r_j), the total length.
    Rational zeta_at_one() const;

    friend bool operator==(const SelfSimilarSystem&, const SelfSimilarSystem&) = default;

private:
    Prime p_;
    std::vector<std::int64_t> n_;
    std::vector<std::int64_t> m_;
    std::vector<PAdicAffineMap> maps_;
    std::vector<PAdicBall> gaps_;
    std::int64_t d_ = 1;
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    Rational scaling_sum;
    Rational gap_sum;
    bool valid() const noexcept { return violations.empty(); }
};

/// Never throws on mathematically invalid input; returns every violation.
ValidationReport validate_system(const SelfSimilarSystem& sys);

/// Throws InvalidArgument listing the violations when the system is invalid.
void require_valid(const SelfSimilarSystem& sys);

enum class SpectrumKind { euler, self_similar, explicit_list };

const char* to_string(SpectrumKind k) noexcept;

/// Pull-based cursor over a length spectrum, yielding entries in strictly
/// increasing scale exponent. Each cursor owns its own generator state, so
/// several cursors over one spectrum can run concurrently.
class SpectrumCursor {
public:
    virtual ~SpectrumCursor() = default;
    virtual std::optional<SpectrumEntry> next() = 0;
};

/// A p-adic fractal string reduced to its length spectrum, tagged with the
/// generator that produced it so closed forms can dispatch.
class LengthSpectrum {
public:
    static LengthSpectrum euler(Prime p);
    static LengthSpectrum self_similar(const SelfSimilarSystem& sys);
    /// Finite list; entries are sorted and merged by scale exponent.
    static LengthSpectrum explicit_list(Prime p, std::vector<SpectrumEntry> entries);

    Prime prime() const noexcept { return p_; }
    SpectrumKind kind() const noexcept { return kind_; }
    /// The generating system for self-similar spectra, else null.
    const SelfSimilarSystem* system() const noexcept { return sys_.get(); }
    const std::vector<SpectrumEntry>& explicit_entries() const noexcept { return entries_; }

    std::unique_ptr<SpectrumCursor> cursor() const;

    /// All entries with scale_exp <= max_scale_exp.
    std::vector<SpectrumEntry> prefix(std::int64_t max_scale_exp) const;
    /// The first `count` entries (fewer if the spectrum is finite).
    std::vector<SpectrumEntry> first_terms(std::size_t count) const;

private:
    LengthSpectrum(Prime p, SpectrumKind k) : p_(p), kind_(k) {}
    Prime p_;
    SpectrumKind kind_;
    std::shared_ptr<const SelfSimilarSystem> sys_;
    std::vector<SpectrumEntry> entries_;
};

SelfSimilarSystem cantor_string_3();
SelfSimilarSystem fibonacci_string_2();
LengthSpectrum euler_string(Prime p);

/// Multiplicities by the weighted-composition recursion over word weights.
LengthSpectrum self_similar_spectrum_stream(const SelfSimilarSystem& sys);
std::vector<SpectrumEntry> self_similar_spectrum(const SelfSimilarSystem& sys, std::int64_t max_scale_exp);

/// All balls Phi_w(G_k) for words w of length < depth, sorted canonically.
std::vector<PAdicBall> enumerate_intervals(const SelfSimilarSystem& sys, int depth);

/// Exact total length when the generator has a closed form (euler,
/// self-similar) or the list is finite; `lower == upper` in that case.
/// `prefix_bounds` gives the bracket for a prefix cut at a scale exponent.
struct LengthBounds {
    Rational lower;
    Rational upper;
    bool exact() const { return lower == upper; }
};
LengthBounds total_length(const LengthSpectrum& ls);
LengthBounds prefix_bounds(const LengthSpectrum& ls, std::int64_t max_scale_exp);

/// Archimedean length spectrum: an explicit list of (length, multiplicity)
/// pairs followed by an optional geometric tail with lengths l q^k and
/// multiplicities m t^k, k >= 0.
struct GeometricTail {
    Rational first_length;
    Rational length_ratio;
    BigInt first_multiplicity;
    BigInt multiplicity_ratio;
};

struct RealLengthEntry {
    Rational length;
    BigInt multiplicity;
};

class RealLengthSpectrum {
public:
    RealLengthSpectrum(std::vector<RealLengthEntry> entries, std::optional<GeometricTail> tail);

    const std::vector<RealLengthEntry>& entries() const noexcept { return entries_; }
    const std::optional<GeometricTail>& tail() const noexcept { return tail_; }

    Rational total_length() const;
    /// Entries (explicit then tail) with length >= min_length.
    std::vector<RealLengthEntry> entries_down_to(const Rational& min_length) const;

private:
    std::vector<RealLengthEntry> entries_;
    std::optional<GeometricTail> tail_;
};

/// Real Cantor string: lengths 3^-n with multiplicity 2^(n-1), n >= 1.
RealLengthSpectrum real_cantor_string();

}  // namespace padic
