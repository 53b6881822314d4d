#include "padic/common.hpp"

namespace padic {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    // Witnesses {2,3,5,7} are deterministic below 3,215,031,751.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Prime::Prime(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(static_cast<std::uint64_t>(p))) {
        throw InvalidArgument("not a prime below 2^31: " + std::to_string(p));
    }
    p_ = static_cast<std::uint32_t>(p);
}

BigInt int_pow(std::uint32_t p, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

Rational rational_pow(std::uint32_t p, long e) {
    if (e >= 0) return Rational(int_pow(p, static_cast<unsigned long>(e)));
    Rational r(BigInt(1), int_pow(p, static_cast<unsigned long>(-e)));
    r.canonicalize();
    return r;
}

}  // namespace padic
