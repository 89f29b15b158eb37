#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "legorbit/errors.hpp"
#include "legorbit/rational.hpp"
#include "legorbit/words.hpp"

namespace legorbit {

// ---------------------------------------------------------------------------
// Patterns: length-f prefixes of words over Z/(p^f+1), used for counting.
// ---------------------------------------------------------------------------

inline i64 pattern_modulus(i64 p, int f) {
    auto d = checked_pow(p, f);
    if (!d) throw capacity_error("pattern: p^f does not fit in 64 bits");
    return *d + 1;
}

// Letters classify -p^{j-1} i for j = 1..f, exactly as words do.
inline Word pattern_of(i64 i, i64 p, int f) {
    if (!is_prime(p)) throw std::domain_error("pattern_of: p must be prime");
    if (f < 1) throw std::domain_error("pattern_of: f must be >= 1");
    const i64 d = pattern_modulus(p, f);
    if (i <= 0 || i >= d || 2 * i == d)
        throw std::domain_error("pattern_of: i must avoid 0 and d/2");
    std::string s;
    s.reserve(static_cast<std::size_t>(f));
    i64 x = i;
    const i64 pm = mod_nonneg(p, d);
    for (int j = 0; j < f; ++j) {
        s += (halfplane_class(d - x, d) == HalfPlane::Upper) ? 'u' : 'l';
        x = mul_mod(x, pm, d);
    }
    return Word(std::move(s));
}

// Same pattern computed purely from base-p digits of i - 1: the first digit
// (scanning i_f, i_{f-1}, ...) away from the midpoint (p-1)/2 decides the
// letter, and multiplication by p rotates the tuple with a complement.
inline Word pattern_of_digits(std::vector<int> digits, i64 p) {
    if (p < 3 || p % 2 == 0) throw std::domain_error("pattern_of_digits: p must be odd");
    const int f = static_cast<int>(digits.size());
    if (f < 1) throw std::domain_error("pattern_of_digits: empty tuple");
    const int center = static_cast<int>((p - 1) / 2);
    for (int v : digits)
        if (v < 0 || v >= p) throw std::domain_error("pattern_of_digits: digit out of range");

    auto first_letter = [&]() -> char {
        for (int j = f - 1; j >= 0; --j) {
            if (digits[static_cast<std::size_t>(j)] < center) return 'u';
            if (digits[static_cast<std::size_t>(j)] > center) return 'l';
        }
        throw std::domain_error("pattern_of_digits: all digits at midpoint");
    };

    std::string s;
    s.reserve(static_cast<std::size_t>(f));
    for (int j = 0; j < f; ++j) {
        s += first_letter();
        int last = digits.back();
        digits.pop_back();
        digits.insert(digits.begin(), static_cast<int>(p - 1) - last);
    }
    return Word(std::move(s));
}

// Digit tuple (i_1..i_f) <-> residue 1 + sum i_j p^{j-1}.
inline i64 residue_of_digits(const std::vector<int>& digits, i64 p) {
    i64 v = 0, scale = 1;
    for (int dgt : digits) {
        v += dgt * scale;
        scale *= p;
    }
    return v + 1;
}

// ---------------------------------------------------------------------------
// Closed-form counts.
// ---------------------------------------------------------------------------

// Number of i in Z/(p^f+1) minus {0, d/2} whose pattern is exactly the given
// u^{e1} l^{e2} ... u^{ek} (k odd).  In characteristic 2 the count collapses
// to one element per pattern; that mode must be requested explicitly.
inline i64 count_by_pattern(const Word& pattern, i64 p, bool char2_mode = false) {
    if (pattern[0] != 'u' || pattern[pattern.size() - 1] != 'u')
        throw std::domain_error("count_by_pattern: pattern must start and end with u");
    int runs = 1;
    for (std::size_t j = 1; j < pattern.size(); ++j)
        if (pattern[j] != pattern[j - 1]) ++runs;
    if (runs % 2 == 0) throw std::domain_error("count_by_pattern: run count must be odd");
    if (p == 2) {
        if (!char2_mode) throw std::domain_error("count_by_pattern: p = 2 needs char2 mode");
        return 1;
    }
    if (p < 3 || p % 2 == 0) throw std::domain_error("count_by_pattern: p must be odd");
    const i64 f = static_cast<i64>(pattern.size());
    i64 count = 1;
    for (i64 t = 0; t < runs; ++t) count = checked_mul(count, (p - 1) / 2);
    for (i64 t = 0; t < f - runs; ++t) count = checked_mul(count, (p + 1) / 2);
    return count;
}

// Number of i whose pattern starts "lu" resp. "ll".
inline i64 count_prefix(std::string_view prefix, i64 p, int f) {
    if (f < 2) throw std::domain_error("count_prefix: requires f >= 2");
    if (p < 3 || p % 2 == 0) throw std::domain_error("count_prefix: p must be odd");
    const i64 half_power = (pattern_modulus(p, f - 1) - 1);  // p^{f-1}
    if (prefix == "lu") return ((p - 1) / 2) * ((half_power + 1) / 2);
    if (prefix == "ll") return ((p + 1) / 2) * ((half_power - 1) / 2);
    throw std::domain_error("count_prefix: prefix must be \"lu\" or \"ll\"");
}

inline i64 h1_dimension(i64 p, int f) {
    if (f < 1) throw std::domain_error("h1_dimension: f must be >= 1");
    if (p < 3 || p % 2 == 0) throw std::domain_error("h1_dimension: p must be odd");
    const i64 half_power = pattern_modulus(p, f - 1) - 1;
    return ((p - 1) / 2) * ((half_power + 1) / 2);
}

inline i64 selmer_dimension(i64 p, int f) {
    if (f < 1) throw std::domain_error("selmer_dimension: f must be >= 1");
    if (p < 3 || p % 2 == 0) throw std::domain_error("selmer_dimension: p must be odd");
    const i64 half_power = pattern_modulus(p, f - 1) - 1;
    return checked_mul(checked_mul((p - 1) / 2, half_power + 1), f);
}

// ---------------------------------------------------------------------------
// Total order exponent and its interpolation in p.
// ---------------------------------------------------------------------------

// inv(o) = |o| (f - ht(o)) summed over all orbits of Z/(p^f+1).
inline i64 sha_order_exponent(const OrbitContext& ctx, int f) {
    ctx.validate();
    auto d = checked_pow(ctx.p, f);
    if (!d || *d + 1 != ctx.d)
        throw unsupported_configuration("sha_order_exponent: requires d = p^f + 1");
    i64 total = 0;
    for_each_orbit(ctx, OrbitFilter::O, [&](const Orbit& o) {
        const int ht = height_profile(word_at_standard(o)).height;
        total += o.size() * (f - ht);
    });
    return total;
}

namespace detail {

// Visit all compositions of f (each part >= 1) in lexicographic cut order.
template <typename Fn>
void for_each_composition(int f, Fn&& fn) {
    const unsigned long long masks = 1ULL << (f - 1);
    std::vector<int> parts;
    for (unsigned long long m = 0; m < masks; ++m) {
        parts.clear();
        int run = 1;
        for (int t = 0; t < f - 1; ++t) {
            if (m & (1ULL << t)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        fn(parts);
    }
}

}  // namespace detail

// The polynomial F with |sha| = p^{F(p)} for d = p^f + 1, independent of p.
// Sum over cyclic classes of full-length good words w = h || complement(h),
// h running over compositions of f into an odd number of parts:
//   period(w) * (f - ht(w)) * ((T-1)/2)^k ((T+1)/2)^{f-k}.
// A class with several good rotations (possible from f = 4 on) must be
// counted once, so only the canonical rotation contributes; the element
// count per pattern is the same for every good rotation of the class.
inline RationalPoly interpolation_poly(int f) {
    if (f < 1) throw std::domain_error("interpolation_poly: f must be >= 1");
    if (f > 22) throw capacity_error("interpolation_poly: f > 22");

    std::map<int, i64> weight_by_k;
    detail::for_each_composition(f, [&](const std::vector<int>& parts) {
        const int k = static_cast<int>(parts.size());
        if (k % 2 == 0) return;
        std::string half;
        half.reserve(static_cast<std::size_t>(f));
        for (int t = 0; t < k; ++t)
            half.append(static_cast<std::size_t>(parts[static_cast<std::size_t>(t)]),
                        t % 2 == 0 ? 'u' : 'l');
        Word h(std::move(half));
        Word w(h.str() + h.complement().str());
        HeightProfile hp = height_profile(w);
        if (!hp.stays_nonnegative()) return;
        if (canonical_rotation(w) != w) return;
        const i64 weight =
            static_cast<i64>(primitive_period(w)) * (f - hp.height);
        if (weight != 0) weight_by_k[k] += weight;
    });

    RationalPoly t_minus(std::vector<Rational>{Rational(-1, 2), Rational(1, 2)});
    RationalPoly t_plus(std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    RationalPoly total;
    for (const auto& [k, weight] : weight_by_k)
        total += Rational(weight) * (t_minus.pow(k) * t_plus.pow(f - k));
    return total;
}

// Evaluate the interpolation claim at the given odd primes.
inline bool verify_interpolation(int f, const std::vector<i64>& primes) {
    RationalPoly F = interpolation_poly(f);
    for (i64 p : primes) {
        if (p == 2 || !is_prime(p))
            throw std::domain_error("verify_interpolation: primes must be odd");
        const i64 d = pattern_modulus(p, f);
        const i64 expected = sha_order_exponent(OrbitContext(d, p), f);
        if (F.evaluate(Rational(p)) != Rational(expected)) return false;
    }
    return true;
}

}  // namespace legorbit
