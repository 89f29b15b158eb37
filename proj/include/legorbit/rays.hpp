#pragma once

#include <set>
#include <vector>

#include "legorbit/words.hpp"

namespace legorbit {

// Which side of the wall <i/d> + <j/r> = 1 counts as "upper" (the
// holomorphic side).  SumLessIsUpper makes the r = 2 case match the residue
// machinery: the upper class is then exactly the residues below d/2.
enum class RayConvention { SumLessIsUpper, SumGreaterIsUpper };

struct RayContext {
    i64 d = 2;
    i64 r = 2;
    i64 p = 3;
    RayConvention convention = RayConvention::SumLessIsUpper;

    RayContext() = default;
    RayContext(i64 d_, i64 r_, i64 p_,
               RayConvention conv = RayConvention::SumLessIsUpper)
        : d(d_), r(r_), p(p_), convention(conv) {
        validate();
    }

    void validate() const {
        if (d < 2 || r < 2) throw std::domain_error("ray context: d and r must be > 1");
        if (d > (i64{1} << 31) || r > (i64{1} << 31))
            throw capacity_error("ray context: d or r too large");
        if (!is_prime(p)) throw std::domain_error("ray context: p must be prime");
        if (gcd_i64(p, d) != 1 || gcd_i64(p, r) != 1)
            throw std::domain_error("ray context: p must not divide d or r");
    }

    i64 lcm_dr() const { return d / gcd_i64(d, r) * r; }

    friend bool operator==(const RayContext&, const RayContext&) = default;
};

// A character pair (i mod d, j mod r).
struct Ray {
    i64 i = 0;
    i64 j = 0;
    friend bool operator==(const Ray&, const Ray&) = default;
    friend auto operator<=>(const Ray&, const Ray&) = default;
};

enum class RayClass { Lower, Upper };

namespace detail {

// Sign of <i/d> + <j/r> - 1 in exact integer arithmetic; 0 on the wall.
inline int wall_side(const RayContext& ctx, const Ray& ray) {
    const i64 i = mod_nonneg(ray.i, ctx.d);
    const i64 j = mod_nonneg(ray.j, ctx.r);
    const i64 lhs = i * ctx.r + j * ctx.d;
    const i64 rhs = ctx.d * ctx.r;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace detail

inline bool ray_in_S(const RayContext& ctx, const Ray& ray) {
    const i64 i = mod_nonneg(ray.i, ctx.d);
    const i64 j = mod_nonneg(ray.j, ctx.r);
    return i != 0 && j != 0 && detail::wall_side(ctx, ray) != 0;
}

inline RayClass ray_class(const RayContext& ctx, const Ray& ray) {
    if (!ray_in_S(ctx, ray))
        throw std::domain_error("ray_class: ray not in S (zero coordinate or wall)");
    const bool sum_less = detail::wall_side(ctx, ray) < 0;
    const bool upper = ctx.convention == RayConvention::SumLessIsUpper ? sum_less : !sum_less;
    return upper ? RayClass::Upper : RayClass::Lower;
}

// Orbit of the diagonal multiplication (i, j) -> (p i, p j), in cycle order
// from the given ray.
inline std::vector<Ray> ray_orbit(const RayContext& ctx, const Ray& ray) {
    if (!ray_in_S(ctx, ray)) throw std::domain_error("ray_orbit: ray not in S");
    std::vector<Ray> orbit;
    Ray start{mod_nonneg(ray.i, ctx.d), mod_nonneg(ray.j, ctx.r)};
    Ray x = start;
    do {
        orbit.push_back(x);
        x = Ray{mul_mod(x.i, mod_nonneg(ctx.p, ctx.d), ctx.d),
                mul_mod(x.j, mod_nonneg(ctx.p, ctx.r), ctx.r)};
    } while (!(x == start));
    return orbit;
}

// Balanced means: for every unit t modulo lcm(d, r), the orbit of t(i, j)
// splits evenly across the wall.
inline bool is_balanced_ray(const RayContext& ctx, const Ray& ray) {
    if (!ray_in_S(ctx, ray)) throw std::domain_error("is_balanced_ray: ray not in S");
    const i64 L = ctx.lcm_dr();
    std::set<Ray> checked;
    for (i64 t = 1; t < L; ++t) {
        if (gcd_i64(t, L) != 1) continue;
        Ray translated{mul_mod(mod_nonneg(ray.i, ctx.d), t % ctx.d, ctx.d),
                       mul_mod(mod_nonneg(ray.j, ctx.r), t % ctx.r, ctx.r)};
        if (checked.count(translated)) continue;
        i64 below = 0, above = 0;
        for (const Ray& x : ray_orbit(ctx, translated)) {
            checked.insert(x);
            (detail::wall_side(ctx, x) < 0 ? below : above)++;
        }
        if (below != above) return false;
    }
    return true;
}

// Word of a ray orbit from the given base, with the same negation rule as
// the residue machinery: letter j classifies -p^{j-1} * base, and 'u' marks
// the non-holomorphic (Lower) class.
inline Word ray_word(const RayContext& ctx, const std::vector<Ray>& orbit, const Ray& base) {
    if (std::find(orbit.begin(), orbit.end(), base) == orbit.end())
        throw std::domain_error("ray_word: base not in orbit");
    std::string s;
    s.reserve(orbit.size());
    Ray x{mod_nonneg(base.i, ctx.d), mod_nonneg(base.j, ctx.r)};
    for (std::size_t n = 0; n < orbit.size(); ++n) {
        Ray neg{mod_nonneg(-x.i, ctx.d), mod_nonneg(-x.j, ctx.r)};
        s += (ray_class(ctx, neg) == RayClass::Lower) ? 'u' : 'l';
        x = Ray{mul_mod(x.i, mod_nonneg(ctx.p, ctx.d), ctx.d),
                mul_mod(x.j, mod_nonneg(ctx.p, ctx.r), ctx.r)};
    }
    return Word(std::move(s));
}

// All ray orbits in S, sorted by least ray.
inline std::vector<std::vector<Ray>> ray_decompose(const RayContext& ctx) {
    std::set<Ray> seen;
    std::vector<std::vector<Ray>> out;
    for (i64 i = 1; i < ctx.d; ++i)
        for (i64 j = 1; j < ctx.r; ++j) {
            Ray ray{i, j};
            if (seen.count(ray) || !ray_in_S(ctx, ray)) continue;
            auto orbit = ray_orbit(ctx, ray);
            seen.insert(orbit.begin(), orbit.end());
            out.push_back(std::move(orbit));
        }
    return out;
}

}  // namespace legorbit
