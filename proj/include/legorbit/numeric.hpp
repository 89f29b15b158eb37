#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace legorbit {

using i64 = std::int64_t;

inline i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

// Least non-negative residue of a mod m (m > 0).
inline i64 mod_nonneg(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    // Residues stay below 2^31 in every supported context, so the product
    // fits in a signed 64-bit integer.
    return (a * b) % m;
}

inline i64 pow_mod(i64 base, i64 exp, i64 m) {
    if (m == 1) return 0;
    i64 result = 1;
    base = mod_nonneg(base, m);
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Checked n = p^f; nullopt on overflow past 2^62.
inline std::optional<i64> checked_pow(i64 p, int f) {
    i64 n = 1;
    constexpr i64 cap = i64{1} << 62;
    for (int j = 0; j < f; ++j) {
        if (n > cap / p) return std::nullopt;
        n *= p;
    }
    return n;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer product overflows 64 bits");
    return r;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 q = 3; q * q <= n; q += 2)
        if (n % q == 0) return false;
    return true;
}

// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
inline i64 multiplicative_order(i64 a, i64 m) {
    if (m <= 0) throw std::domain_error("modulus must be positive");
    if (m == 1) return 1;
    a = mod_nonneg(a, m);
    if (std::gcd(a, m) != 1)
        throw std::domain_error("order undefined: arguments not coprime");
    i64 x = a, n = 1;
    while (x != 1) {
        x = mul_mod(x, a, m);
        ++n;
        if (n > m) throw std::logic_error("order search exceeded modulus");
    }
    return n;
}

// Least f >= 1 with p^f = -1 (mod m), if any.  The search stops once the
// subgroup generated by p has been exhausted.
inline std::optional<i64> least_negation_exponent(i64 p, i64 m) {
    if (m <= 2) return 1;  // -1 = 1 in Z/1 and Z/2
    i64 t = mod_nonneg(p, m);
    if (std::gcd(t, m) != 1) return std::nullopt;
    i64 x = t;
    for (i64 f = 1; f <= m; ++f) {
        if (x == m - 1) return f;
        if (x == 1) return std::nullopt;
        x = mul_mod(x, t, m);
    }
    return std::nullopt;
}

}  // namespace legorbit
